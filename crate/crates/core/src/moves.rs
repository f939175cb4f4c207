//! The cubulated moves as exact rewrites.
//!
//! M1 subdivides every edge into `m` edges. It is realized as the homothety
//! `v ↦ m·v`, so coordinates stay in Z³ and the word repeats every letter
//! `m` times.
//!
//! M2 replaces an arc of the boundary of a unit square face by the
//! complementary arc. On words this is one of three local rewrites at a
//! cyclic position `p`:
//!
//! * `OneToThree`: `(e) → (d, e, -d)` with bump `d ⊥ e`, adding two vertices;
//! * `ThreeToOne`: `(d, e, -d) → (e)`, removing two vertices;
//! * `TwoSwap`: `(a, b) → (b, a)` with `a ⊥ b`, moving one vertex.
//!
//! A move is only allowed when every vertex it creates is not already a
//! vertex of the knot and the result still has at least four edges.
//!
//! When a move removes or replaces the anchor the result is re-anchored:
//! `TwoSwap` at `p = n-1` anchors at the replacement vertex
//! `v₁ + e_{i₁} - e_{iₙ}`; `ThreeToOne` across the anchor anchors at the
//! first surviving vertex after it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{
    content_lines, parse_anchor_line, parse_letters, AnchoredWord, CubicKnot, Direction,
    KnotError, LatticePoint, DEFAULT_MAX_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("subdivision factor {0} is below 2")]
    BadFactor(u32),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("vertex {0} is already on the knot")]
    VertexCollision(LatticePoint),
    #[error("result would have fewer than 4 edges")]
    TooShortResult,
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("step {index} failed: {cause}")]
    StepFailed { index: usize, cause: Box<MoveError> },
}

/// Subdivision by an integer factor `m ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveM1 {
    pub factor: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum M2Case {
    OneToThree,
    ThreeToOne,
    TwoSwap,
}

impl M2Case {
    pub fn token(self) -> &'static str {
        match self {
            M2Case::OneToThree => "1to3",
            M2Case::ThreeToOne => "3to1",
            M2Case::TwoSwap => "swap",
        }
    }
}

/// One face boundary rewrite. Field order gives the enumeration order
/// `(case, position, bump)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveM2 {
    pub case: M2Case,
    pub position: usize,
    pub bump: Option<Direction>,
}

impl MoveM2 {
    pub fn one_to_three(position: usize, bump: Direction) -> Self {
        MoveM2 {
            case: M2Case::OneToThree,
            position,
            bump: Some(bump),
        }
    }

    pub fn three_to_one(position: usize) -> Self {
        MoveM2 {
            case: M2Case::ThreeToOne,
            position,
            bump: None,
        }
    }

    pub fn swap(position: usize) -> Self {
        MoveM2 {
            case: M2Case::TwoSwap,
            position,
            bump: None,
        }
    }

    /// Change in edge count.
    pub fn length_delta(&self) -> isize {
        match self.case {
            M2Case::OneToThree => 2,
            M2Case::ThreeToOne => -2,
            M2Case::TwoSwap => 0,
        }
    }
}

impl fmt::Display for MoveM2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.case.token(), self.position)?;
        if let Some(d) = self.bump {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveM2 {
    type Err = String;

    /// `1to3 <pos> <bump>`, `3to1 <pos>` or `swap <pos>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let pos = |t: Option<&&str>| -> Result<usize, String> {
            let t = t.ok_or("missing position")?;
            t.parse().map_err(|_| format!("bad position `{t}`"))
        };
        let mv = match toks.first().copied() {
            Some("1to3") => {
                if toks.len() != 3 {
                    return Err("expected `1to3 <position> <bump>`".into());
                }
                MoveM2::one_to_three(pos(toks.get(1))?, toks[2].parse()?)
            }
            Some("3to1") if toks.len() == 2 => MoveM2::three_to_one(pos(toks.get(1))?),
            Some("swap") if toks.len() == 2 => MoveM2::swap(pos(toks.get(1))?),
            Some(other) => return Err(format!("bad M2 move `{other} …`")),
            None => return Err("empty move".into()),
        };
        Ok(mv)
    }
}

/// A single certificate step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    M1(MoveM1),
    M2(MoveM2),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::M1(m) => write!(f, "M1 {}", m.factor),
            Step::M2(mv) => write!(f, "M2 {mv}"),
        }
    }
}

impl FromStr for Step {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("M1 ") {
            let factor = rest
                .trim()
                .parse()
                .map_err(|_| format!("bad factor `{}`", rest.trim()))?;
            Ok(Step::M1(MoveM1 { factor }))
        } else if let Some(rest) = s.strip_prefix("M2 ") {
            Ok(Step::M2(rest.parse()?))
        } else {
            Err(format!("expected `M1 …` or `M2 …`, found `{s}`"))
        }
    }
}

/// A start word and a sequence of moves. Positions refer to the word of the
/// knot current at each step, so replay is representation sensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveCertificate {
    pub start: AnchoredWord,
    pub steps: Vec<Step>,
}

impl MoveCertificate {
    pub fn empty(start: &CubicKnot) -> Self {
        MoveCertificate {
            start: start.to_anchored_word(),
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Anchored word header followed by one step per line.
    pub fn to_text(&self) -> String {
        let mut s = self.start.to_text();
        for st in &self.steps {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, KnotError> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| KnotError::Parse {
            line: 1,
            message: "missing `anchor` line".into(),
        })?;
        let anchor = parse_anchor_line(ln, header)?;
        let (ln, letters) = lines.next().ok_or_else(|| KnotError::Parse {
            line: ln + 1,
            message: "missing word line".into(),
        })?;
        let word = parse_letters(ln, letters)?;
        let steps = lines
            .map(|(ln, l)| {
                l.parse::<Step>()
                    .map_err(|message| KnotError::Parse { line: ln, message })
            })
            .collect::<Result<_, _>>()?;
        Ok(MoveCertificate {
            start: AnchoredWord { anchor, word },
            steps,
        })
    }
}

pub fn apply_m1(k: &CubicKnot, m: u32) -> Result<CubicKnot, MoveError> {
    if m < 2 {
        return Err(MoveError::BadFactor(m));
    }
    let n = k.len();
    let total = n.saturating_mul(m as usize);
    if total > DEFAULT_MAX_VERTICES {
        return Err(KnotError::TooLong {
            len: total,
            cap: DEFAULT_MAX_VERTICES,
        }
        .into());
    }
    let m = m as i64;
    let mut pts = Vec::with_capacity(total);
    for i in 0..n {
        let base = k.vertex(i) * m;
        let step = k.step(i).unit();
        for j in 0..m {
            pts.push(base + step * j);
        }
    }
    Ok(CubicKnot::from_vertices_unchecked(pts))
}

fn occupancy(k: &CubicKnot) -> HashSet<LatticePoint> {
    k.vertices().iter().copied().collect()
}

pub fn apply_m2(k: &CubicKnot, mv: MoveM2) -> Result<CubicKnot, MoveError> {
    apply_with(k, &occupancy(k), mv)
}

/// Checks applicability without building the result.
fn check(k: &CubicKnot, occ: &HashSet<LatticePoint>, mv: MoveM2) -> Result<(), MoveError> {
    let n = k.len();
    let p = mv.position;
    if p >= n {
        return Err(MoveError::NotApplicable(format!(
            "position {p} out of range for {n} edges"
        )));
    }
    match mv.case {
        M2Case::OneToThree => {
            let d = mv
                .bump
                .ok_or_else(|| MoveError::NotApplicable("1to3 needs a bump direction".into()))?;
            let e = k.step(p);
            if !d.is_perpendicular(e) {
                return Err(MoveError::NotApplicable(format!(
                    "bump {d} is not perpendicular to edge {e}"
                )));
            }
            if n + 2 > DEFAULT_MAX_VERTICES {
                return Err(KnotError::TooLong {
                    len: n + 2,
                    cap: DEFAULT_MAX_VERTICES,
                }
                .into());
            }
            for v in [k.vertex(p) + d, k.vertex(p + 1) + d] {
                if occ.contains(&v) {
                    return Err(MoveError::VertexCollision(v));
                }
            }
        }
        M2Case::ThreeToOne => {
            if mv.bump.is_some() {
                return Err(MoveError::NotApplicable("3to1 takes no bump".into()));
            }
            let (d, e, back) = (k.step(p), k.step(p + 1), k.step(p + 2));
            if back != -d || !e.is_perpendicular(d) {
                return Err(MoveError::NotApplicable(format!(
                    "letters {d} {e} {back} at {p} are not of the form (d, e, -d)"
                )));
            }
            if n - 2 < 4 {
                return Err(MoveError::TooShortResult);
            }
        }
        M2Case::TwoSwap => {
            if mv.bump.is_some() {
                return Err(MoveError::NotApplicable("swap takes no bump".into()));
            }
            let (a, b) = (k.step(p), k.step(p + 1));
            if !a.is_perpendicular(b) {
                return Err(MoveError::NotApplicable(format!(
                    "letters {a} {b} at {p} are parallel"
                )));
            }
            let v = k.vertex(p) + b;
            if occ.contains(&v) {
                return Err(MoveError::VertexCollision(v));
            }
        }
    }
    Ok(())
}

fn apply_with(
    k: &CubicKnot,
    occ: &HashSet<LatticePoint>,
    mv: MoveM2,
) -> Result<CubicKnot, MoveError> {
    check(k, occ, mv)?;
    let n = k.len();
    let p = mv.position;
    let verts = k.vertices();
    let pts = match mv.case {
        M2Case::OneToThree => {
            let d = mv.bump.expect("checked");
            let mut pts = Vec::with_capacity(n + 2);
            pts.extend_from_slice(&verts[..=p]);
            pts.push(k.vertex(p) + d);
            pts.push(k.vertex(p + 1) + d);
            pts.extend_from_slice(&verts[p + 1..]);
            pts
        }
        M2Case::ThreeToOne => {
            let gone = [(p + 1) % n, (p + 2) % n];
            let start = if gone.contains(&0) { (p + 3) % n } else { 0 };
            (0..n)
                .map(|j| (start + j) % n)
                .filter(|i| !gone.contains(i))
                .map(|i| verts[i])
                .collect()
        }
        M2Case::TwoSwap => {
            let mut pts = verts.to_vec();
            pts[(p + 1) % n] = k.vertex(p) + k.step(p + 1);
            pts
        }
    };
    Ok(CubicKnot::from_vertices_unchecked(pts))
}

/// All applicable M2 moves in `(case, position, bump)` order.
pub fn enumerate_m2(k: &CubicKnot) -> Vec<MoveM2> {
    let occ = occupancy(k);
    let n = k.len();
    let mut out = Vec::new();
    for p in 0..n {
        for d in k.step(p).perpendiculars() {
            let mv = MoveM2::one_to_three(p, d);
            if check(k, &occ, mv).is_ok() {
                out.push(mv);
            }
        }
    }
    for case in [M2Case::ThreeToOne, M2Case::TwoSwap] {
        for p in 0..n {
            let mv = MoveM2 {
                case,
                position: p,
                bump: None,
            };
            if check(k, &occ, mv).is_ok() {
                out.push(mv);
            }
        }
    }
    out
}

/// Every applicable move paired with its result, in enumeration order.
pub fn successors(k: &CubicKnot) -> Vec<(MoveM2, CubicKnot)> {
    let occ = occupancy(k);
    enumerate_m2(k)
        .into_iter()
        .map(|mv| (mv, apply_with(k, &occ, mv).expect("enumerated move applies")))
        .collect()
}

/// The move undoing `mv`: applied to `apply_m2(k, mv)` it returns a knot
/// with the same canonical form as `k`.
pub fn invert(mv: MoveM2, k: &CubicKnot) -> Result<MoveM2, MoveError> {
    check(k, &occupancy(k), mv)?;
    let n = k.len();
    let p = mv.position;
    Ok(match mv.case {
        M2Case::OneToThree => MoveM2::three_to_one(p),
        M2Case::ThreeToOne => {
            // across the anchor the merged letter ends up last
            let q = if p + 2 < n { p } else { n - 3 };
            MoveM2::one_to_three(q, k.step(p))
        }
        M2Case::TwoSwap => MoveM2::swap(p),
    })
}

pub fn apply_step(k: &CubicKnot, step: Step) -> Result<CubicKnot, MoveError> {
    match step {
        Step::M1(m) => apply_m1(k, m.factor),
        Step::M2(mv) => apply_m2(k, mv),
    }
}

/// Applies the certificate from its start word.
pub fn replay(cert: &MoveCertificate) -> Result<CubicKnot, MoveError> {
    let start = CubicKnot::from_anchored_word(&cert.start)?;
    replay_from(&start, &cert.steps)
}

pub fn replay_from(start: &CubicKnot, steps: &[Step]) -> Result<CubicKnot, MoveError> {
    let mut k = start.clone();
    for (index, &st) in steps.iter().enumerate() {
        k = apply_step(&k, st).map_err(|cause| MoveError::StepFailed {
            index,
            cause: Box::new(cause),
        })?;
    }
    Ok(k)
}

/// The M2 sequence on the `m`-fold subdivision that performs the same face
/// rewrite as `mv`. The rewrite of a subdivided face sweeps its `m × m`
/// grid one row or one cell at a time. Valid when the letters touched by
/// `mv` do not wrap past the anchor.
pub fn lift(mv: MoveM2, m: u32) -> Vec<MoveM2> {
    let m = m as usize;
    let base = mv.position * m;
    let mut out = Vec::new();
    match mv.case {
        M2Case::OneToThree => {
            let d = mv.bump.expect("1to3 carries a bump");
            // d^r e^m (-d)^r → d^(r+1) e^m (-d)^(r+1)
            for r in 0..m {
                out.push(MoveM2::one_to_three(base + r, d));
                out.extend((r + 2..=r + m).map(|j| MoveM2::swap(base + j)));
            }
        }
        M2Case::ThreeToOne => {
            for r in (0..m).rev() {
                out.extend((r + 2..=r + m).rev().map(|j| MoveM2::swap(base + j)));
                out.push(MoveM2::three_to_one(base + r));
            }
        }
        M2Case::TwoSwap => {
            // f^i e^m f^(m-i) → f^(i+1) e^m f^(m-i-1)
            for i in 0..m {
                out.extend((i..i + m).rev().map(|j| MoveM2::swap(base + j)));
            }
        }
    }
    out
}
