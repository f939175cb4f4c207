//! Bounded search for move certificates.
//!
//! States are unoriented canonical forms, so translation, cyclic relabeling
//! and reversal are quotiented out. The search is a layer-synchronous
//! bidirectional BFS over M2 moves: the smaller frontier is expanded (in
//! parallel), successors are merged in frontier order, and the first state
//! seen by both sides closes the path. A certificate is then rebuilt by
//! replaying real knots along the canonical path, picking at every step the
//! first enumerated move that reaches the next state. Nothing about the
//! search has to be trusted; [`verify_certificate`] replays the result.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{canonical_form, CanonicalForm, CubicKnot};
use crate::moves::{
    apply_m1, enumerate_m2, replay_from, successors, M2Case, MoveCertificate, MoveError, MoveM1,
    Step,
};
use crate::par::{map_slice, Execution};

pub const DEFAULT_MAX_STATES: usize = 100_000;
/// Word-length slack above the longest endpoint when no ceiling is given.
pub const DEFAULT_LENGTH_SLACK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Ceiling on distinct states visited by both sides together.
    pub max_states: usize,
    /// Word-length ceiling. `None`: longest endpoint plus
    /// [`DEFAULT_LENGTH_SLACK`].
    pub max_length: Option<usize>,
    /// Per-axis extent ceiling (knots are compared up to translation).
    /// `None`: the larger endpoint extent plus one on every axis.
    pub bounding_box: Option<[i64; 3]>,
    /// Subdivision factors tried on the start knot before the search. Empty
    /// disables M1.
    pub m1_factors: Vec<u32>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: DEFAULT_MAX_STATES,
            max_length: None,
            bounding_box: None,
            m1_factors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `max_states` was reached.
    StateLimit,
    /// One side ran out of states inside the length and box limits.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub states: usize,
    pub forward_layers: usize,
    pub backward_layers: usize,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states {} forward-layers {} backward-layers {}",
            self.states, self.forward_layers, self.backward_layers
        )
    }
}

/// `NotFound` is inconclusive: it only says the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        certificate: MoveCertificate,
        stats: SearchStats,
    },
    NotFound {
        reason: StopReason,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&MoveCertificate> {
        match self {
            SearchOutcome::Found { certificate, .. } => Some(certificate),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::NotFound { stats, .. } => *stats,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Limits {
    max_length: usize,
    extents: [i64; 3],
}

impl Limits {
    fn admits(&self, k: &CubicKnot) -> bool {
        let e = k.extents();
        k.len() <= self.max_length && (0..3).all(|i| e[i] <= self.extents[i])
    }
}

fn successor_states(s: &CanonicalForm, lim: Limits) -> Vec<CanonicalForm> {
    successors(&s.to_knot())
        .into_iter()
        .filter(|(_, k)| lim.admits(k))
        .map(|(_, k)| canonical_form(&k, false))
        .collect()
}

/// One search direction: visited states with BFS parents.
#[derive(Default)]
struct Side {
    index: HashMap<CanonicalForm, u32>,
    states: Vec<CanonicalForm>,
    parent: Vec<Option<u32>>,
    frontier: Vec<u32>,
    layers: usize,
}

impl Side {
    fn insert(&mut self, s: CanonicalForm, parent: Option<u32>) -> Option<u32> {
        if self.index.contains_key(&s) {
            return None;
        }
        let id = self.states.len() as u32;
        self.index.insert(s.clone(), id);
        self.states.push(s);
        self.parent.push(parent);
        Some(id)
    }

    /// States from the root down to `id`.
    fn path_to(&self, mut id: u32) -> Vec<CanonicalForm> {
        let mut out = vec![self.states[id as usize].clone()];
        while let Some(p) = self.parent[id as usize] {
            out.push(self.states[p as usize].clone());
            id = p;
        }
        out.reverse();
        out
    }
}

pub fn find_certificate(
    k1: &CubicKnot,
    k2: &CubicKnot,
    b: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    find_certificate_with(k1, k2, b, Execution::default())
}

pub fn find_certificate_with(
    k1: &CubicKnot,
    k2: &CubicKnot,
    b: &SearchBudget,
    exec: Execution,
) -> Result<SearchOutcome, SearchError> {
    if b.max_states == 0 {
        return Err(SearchError::InvalidBudget("max_states must be positive".into()));
    }
    if let Some(&m) = b.m1_factors.iter().find(|&&m| m < 2) {
        return Err(SearchError::InvalidBudget(format!("M1 factor {m} is below 2")));
    }
    // forward roots: the start knot, then its subdivisions
    let mut roots: Vec<(Option<u32>, CubicKnot)> = vec![(None, k1.clone())];
    for &m in &b.m1_factors {
        let scaled = apply_m1(k1, m).map_err(|e| SearchError::InvalidBudget(e.to_string()))?;
        roots.push((Some(m), scaled));
    }
    let lim = Limits {
        max_length: b.max_length.unwrap_or_else(|| {
            roots.iter().map(|(_, k)| k.len()).max().unwrap_or(0).max(k2.len())
                + DEFAULT_LENGTH_SLACK
        }),
        extents: b.bounding_box.unwrap_or_else(|| {
            let mut e = k2.extents();
            for (_, k) in &roots {
                let x = k.extents();
                (0..3).for_each(|i| e[i] = e[i].max(x[i]));
            }
            e.map(|v| v + 1)
        }),
    };
    for (name, k) in [("start", k1), ("target", k2)] {
        if !lim.admits(k) {
            return Err(SearchError::InvalidBudget(format!(
                "{name} knot exceeds the length or box limits"
            )));
        }
    }

    let mut fwd = Side::default();
    let mut bwd = Side::default();
    let mut root_factor: HashMap<u32, u32> = HashMap::new();
    let target = canonical_form(k2, false);
    bwd.insert(target.clone(), None);
    bwd.frontier.push(0);
    for (factor, k) in &roots {
        if factor.is_some() && !lim.admits(k) {
            continue;
        }
        if let Some(id) = fwd.insert(canonical_form(k, false), None) {
            if let Some(m) = factor {
                root_factor.insert(id, *m);
            }
            fwd.frontier.push(id);
        }
    }
    let stats = |f: &Side, g: &Side| SearchStats {
        states: f.states.len() + g.states.len(),
        forward_layers: f.layers,
        backward_layers: g.layers,
    };

    // a root may already be the target
    let mut meet = fwd
        .frontier
        .iter()
        .find(|&&id| bwd.index.contains_key(&fwd.states[id as usize]))
        .map(|&id| (id, 0u32));

    while meet.is_none() {
        if stats(&fwd, &bwd).states >= b.max_states {
            return Ok(SearchOutcome::NotFound {
                reason: StopReason::StateLimit,
                stats: stats(&fwd, &bwd),
            });
        }
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return Ok(SearchOutcome::NotFound {
                reason: StopReason::Exhausted,
                stats: stats(&fwd, &bwd),
            });
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let layer: Vec<CanonicalForm> = this
            .frontier
            .iter()
            .map(|&id| this.states[id as usize].clone())
            .collect();
        let expanded = map_slice(exec, &layer, |s| successor_states(s, lim));
        let parents = std::mem::take(&mut this.frontier);
        this.layers += 1;
        let mut budget_left = b.max_states.saturating_sub(this.states.len() + other.states.len());
        'merge: for (&parent, succs) in parents.iter().zip(expanded) {
            for s in succs {
                if let Some(&oid) = other.index.get(&s) {
                    let id = match this.index.get(&s) {
                        Some(&id) => id,
                        None => this.insert(s, Some(parent)).expect("absent"),
                    };
                    meet = Some(if forward { (id, oid) } else { (oid, id) });
                    break 'merge;
                }
                if budget_left == 0 {
                    break 'merge;
                }
                if let Some(id) = this.insert(s, Some(parent)) {
                    this.frontier.push(id);
                    budget_left -= 1;
                }
            }
        }
    }

    let (fid, bid) = meet.expect("loop exits on a meet");
    let mut path = fwd.path_to(fid);
    let mut back = bwd.path_to(bid);
    back.reverse();
    path.extend(back.into_iter().skip(1));

    let mut root = fid;
    while let Some(p) = fwd.parent[root as usize] {
        root = p;
    }
    let mut steps = Vec::new();
    let mut current = k1.clone();
    if let Some(&m) = root_factor.get(&root) {
        steps.push(Step::M1(MoveM1 { factor: m }));
        current = apply_m1(k1, m).expect("checked above");
    }
    for next in &path[1..] {
        let (mv, k) = successors(&current)
            .into_iter()
            .find(|(_, k)| canonical_form(k, false) == *next)
            .expect("canonical successor is realized on every representative");
        steps.push(Step::M2(mv));
        current = k;
    }
    Ok(SearchOutcome::Found {
        certificate: MoveCertificate {
            start: k1.to_anchored_word(),
            steps,
        },
        stats: stats(&fwd, &bwd),
    })
}

/// Shrinks `k` by greedy `ThreeToOne` moves; when none applies, a bounded
/// BFS looks for any strictly shorter state. Never lengthens the knot, and
/// a second call on the output returns it unchanged.
pub fn simplify(k: &CubicKnot, b: &SearchBudget) -> (CubicKnot, MoveCertificate) {
    simplify_with(k, b, Execution::default())
}

pub fn simplify_with(k: &CubicKnot, b: &SearchBudget, exec: Execution) -> (CubicKnot, MoveCertificate) {
    let mut current = k.clone();
    let mut steps = Vec::new();
    loop {
        let shrink = enumerate_m2(&current)
            .into_iter()
            .find(|mv| mv.case == M2Case::ThreeToOne);
        if let Some(mv) = shrink {
            current = crate::moves::apply_m2(&current, mv).expect("enumerated move applies");
            steps.push(Step::M2(mv));
            continue;
        }
        match shorter_state(&current, b, exec) {
            Some(more) => {
                current = replay_from(&current, &more).expect("search replays");
                steps.extend(more);
            }
            None => break,
        }
    }
    let cert = MoveCertificate {
        start: k.to_anchored_word(),
        steps,
    };
    (current, cert)
}

/// BFS from `k` until some state is shorter than `k`; returns the moves.
fn shorter_state(k: &CubicKnot, b: &SearchBudget, exec: Execution) -> Option<Vec<Step>> {
    let n = k.len();
    let lim = Limits {
        max_length: b.max_length.unwrap_or(n + 2).max(n),
        extents: b.bounding_box.unwrap_or_else(|| k.extents().map(|v| v + 1)),
    };
    if !lim.admits(k) {
        return None;
    }
    let mut side = Side::default();
    side.insert(canonical_form(k, false), None);
    side.frontier.push(0);
    let mut found = None;
    while found.is_none() && !side.frontier.is_empty() && side.states.len() < b.max_states {
        let layer: Vec<CanonicalForm> = side
            .frontier
            .iter()
            .map(|&id| side.states[id as usize].clone())
            .collect();
        let expanded = map_slice(exec, &layer, |s| successor_states(s, lim));
        let parents = std::mem::take(&mut side.frontier);
        'merge: for (&parent, succs) in parents.iter().zip(expanded) {
            for s in succs {
                if side.states.len() >= b.max_states {
                    break 'merge;
                }
                let short = s.len() < n;
                if let Some(id) = side.insert(s, Some(parent)) {
                    if short {
                        found = Some(id);
                        break 'merge;
                    }
                    side.frontier.push(id);
                }
            }
        }
    }
    let path = side.path_to(found?);
    let mut current = k.clone();
    let mut steps = Vec::new();
    for next in &path[1..] {
        let (mv, next_k) = successors(&current)
            .into_iter()
            .find(|(_, x)| canonical_form(x, false) == *next)
            .expect("canonical successor is realized on every representative");
        steps.push(Step::M2(mv));
        current = next_k;
    }
    Some(steps)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate does not start at the given knot")]
    WrongStart,
    #[error(transparent)]
    Replay(#[from] MoveError),
    #[error("replay ends at a different knot")]
    WrongEnd,
}

/// Replays `cert` from `k1` and compares the result with `k2` up to
/// translation, relabeling and orientation.
pub fn verify_certificate(k1: &CubicKnot, cert: &MoveCertificate, k2: &CubicKnot) -> bool {
    check_certificate(k1, cert, k2, false).is_ok()
}

/// As [`verify_certificate`] but orientation must also match.
pub fn verify_certificate_oriented(k1: &CubicKnot, cert: &MoveCertificate, k2: &CubicKnot) -> bool {
    check_certificate(k1, cert, k2, true).is_ok()
}

/// [`verify_certificate`] with the reason for a rejection.
pub fn check_certificate(
    k1: &CubicKnot,
    cert: &MoveCertificate,
    k2: &CubicKnot,
    oriented: bool,
) -> Result<(), VerifyError> {
    if cert.start != k1.to_anchored_word() {
        return Err(VerifyError::WrongStart);
    }
    let end = replay_from(k1, &cert.steps)?;
    if canonical_form(&end, oriented) != canonical_form(k2, oriented) {
        return Err(VerifyError::WrongEnd);
    }
    Ok(())
}
