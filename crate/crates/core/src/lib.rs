//! Cubic lattice knots.
//!
//! A cubic knot is a closed polygon in the 1-skeleton of the unit cubulation
//! of R³. This crate encodes such knots as cyclic vertex sequences or as
//! anchored words over the six unit directions, rewrites them with the
//! subdivision (M1) and face boundary (M2) moves, projects them along
//! `N = (1, π, π²)` with exact arithmetic in `Q[π]`, reads off a regular
//! diagram, and computes invariants of that diagram. A bounded search over
//! the M2 move graph produces replayable move certificates.
//!
//! Data-parallel loops (crossing-pair tests, state sums, frontier expansion,
//! injectivity sweeps) run on rayon when the `parallel` feature is enabled
//! and fall back to plain iterators otherwise. See [`Execution`].

pub mod catalog;
pub mod diagram;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod moves;
mod par;
pub mod pi;
pub mod qpi;
pub mod search;

pub use diagram::{build_diagram, Crossing, DiagramError, KnotDiagram};
pub use invariants::{colorings, determinant, jones, kauffman_bracket, ColoringCount};
pub use lattice::{
    canonical_form, equivalent_as_anchored, AnchoredWord, Axis, CanonicalForm, CubicKnot,
    Direction, KnotError, LatticePoint,
};
pub use laurent::LaurentPoly;
pub use moves::{
    apply_m1, apply_m2, enumerate_m2, invert, replay, M2Case, MoveCertificate, MoveError,
    MoveM1, MoveM2, Step,
};
pub use par::Execution;
pub use qpi::{LambdaPoint, PiPoly, ProjectedSegment};
pub use search::{find_certificate, simplify, verify_certificate, SearchBudget, SearchOutcome};
