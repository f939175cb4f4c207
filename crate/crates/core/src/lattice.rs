//! Lattice points, unit directions and the two discrete encodings of a
//! cubic knot: a cyclic sequence of vertices and an anchored word of
//! directions.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Default ceiling on the number of vertices accepted by the validating
/// constructors.
pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("knot has {0} vertices, at least 4 are required")]
    TooShort(usize),
    #[error("knot has {len} vertices, limit is {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("step {0} is not a unit lattice step")]
    NonUnitStep(usize),
    #[error("vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("word does not close up")]
    NotClosed,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> KnotError {
    KnotError::Parse {
        line,
        message: message.into(),
    }
}

/// A point of Z³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn coords(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// The direction `d` with `self + d.unit() == other`, if the two points
    /// are lattice neighbours.
    pub fn step_to(self, other: LatticePoint) -> Option<Direction> {
        let d = other - self;
        Direction::ALL.into_iter().find(|dir| dir.unit() == d)
    }
}

impl From<(i64, i64, i64)> for LatticePoint {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        LatticePoint { x, y, z }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = LatticePoint;
    fn mul(self, m: i64) -> LatticePoint {
        LatticePoint::new(self.x * m, self.y * m, self.z * m)
    }
}

impl Add<Direction> for LatticePoint {
    type Output = LatticePoint;
    fn add(self, d: Direction) -> LatticePoint {
        self + d.unit()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// One of the six unit steps `±e₁, ±e₂, ±e₃`.
///
/// The derived order `X+ < X- < Y+ < Y- < Z+ < Z-` is the letter order used
/// for canonical forms and for deterministic move enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    ZPlus,
    ZMinus,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::XPlus,
        Direction::XMinus,
        Direction::YPlus,
        Direction::YMinus,
        Direction::ZPlus,
        Direction::ZMinus,
    ];

    pub fn new(axis: Axis, positive: bool) -> Self {
        match (axis, positive) {
            (Axis::X, true) => Direction::XPlus,
            (Axis::X, false) => Direction::XMinus,
            (Axis::Y, true) => Direction::YPlus,
            (Axis::Y, false) => Direction::YMinus,
            (Axis::Z, true) => Direction::ZPlus,
            (Axis::Z, false) => Direction::ZMinus,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Direction::XPlus | Direction::XMinus => Axis::X,
            Direction::YPlus | Direction::YMinus => Axis::Y,
            Direction::ZPlus | Direction::ZMinus => Axis::Z,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Direction::XPlus | Direction::YPlus | Direction::ZPlus)
    }

    pub fn sign(self) -> i64 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn unit(self) -> LatticePoint {
        let s = self.sign();
        match self.axis() {
            Axis::X => LatticePoint::new(s, 0, 0),
            Axis::Y => LatticePoint::new(0, s, 0),
            Axis::Z => LatticePoint::new(0, 0, s),
        }
    }

    pub fn is_perpendicular(self, other: Direction) -> bool {
        self.axis() != other.axis()
    }

    /// The four directions perpendicular to `self`, in letter order.
    pub fn perpendiculars(self) -> impl Iterator<Item = Direction> {
        Direction::ALL
            .into_iter()
            .filter(move |d| d.is_perpendicular(self))
    }

    pub fn token(self) -> &'static str {
        match self {
            Direction::XPlus => "X+",
            Direction::XMinus => "X-",
            Direction::YPlus => "Y+",
            Direction::YMinus => "Y-",
            Direction::ZPlus => "Z+",
            Direction::ZMinus => "Z-",
        }
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction::new(self.axis(), !self.is_positive())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.token() == s)
            .ok_or_else(|| format!("unknown direction token `{s}`"))
    }
}

/// A cubic knot as a cyclic sequence of pairwise distinct lattice points,
/// consecutive points (cyclically) one unit step apart. The stored order is
/// the orientation; the first vertex is the anchor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicKnot {
    vertices: Vec<LatticePoint>,
}

impl CubicKnot {
    pub fn from_vertices(pts: Vec<LatticePoint>) -> Result<Self, KnotError> {
        Self::from_vertices_capped(pts, DEFAULT_MAX_VERTICES)
    }

    pub fn from_vertices_capped(pts: Vec<LatticePoint>, cap: usize) -> Result<Self, KnotError> {
        let n = pts.len();
        if n < 4 {
            return Err(KnotError::TooShort(n));
        }
        if n > cap {
            return Err(KnotError::TooLong { len: n, cap });
        }
        for i in 0..n {
            if pts[i].step_to(pts[(i + 1) % n]).is_none() {
                return Err(KnotError::NonUnitStep(i));
            }
        }
        check_distinct(&pts)?;
        Ok(CubicKnot { vertices: pts })
    }

    /// Caller guarantees validity; checked in debug builds.
    pub(crate) fn from_vertices_unchecked(pts: Vec<LatticePoint>) -> Self {
        debug_assert!(
            Self::from_vertices_capped(pts.clone(), usize::MAX).is_ok(),
            "invalid knot constructed internally"
        );
        CubicKnot { vertices: pts }
    }

    pub fn from_anchored_word(w: &AnchoredWord) -> Result<Self, KnotError> {
        Self::from_anchored_word_capped(w, DEFAULT_MAX_VERTICES)
    }

    pub fn from_anchored_word_capped(w: &AnchoredWord, cap: usize) -> Result<Self, KnotError> {
        let n = w.word.len();
        if n < 4 {
            return Err(KnotError::TooShort(n));
        }
        if n > cap {
            return Err(KnotError::TooLong { len: n, cap });
        }
        let pts = w.partial_sums();
        let end = *pts.last().unwrap() + w.word[n - 1];
        if end != w.anchor {
            return Err(KnotError::NotClosed);
        }
        check_distinct(&pts)?;
        Ok(CubicKnot { vertices: pts })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<LatticePoint> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn anchor(&self) -> LatticePoint {
        self.vertices[0]
    }

    /// Vertex `i`, read cyclically.
    pub fn vertex(&self, i: usize) -> LatticePoint {
        self.vertices[i % self.vertices.len()]
    }

    /// Direction of edge `i`, from vertex `i` to vertex `i + 1`.
    pub fn step(&self, i: usize) -> Direction {
        let n = self.len();
        let a = self.vertices[i % n];
        let b = self.vertices[(i + 1) % n];
        a.step_to(b).expect("consecutive vertices are adjacent")
    }

    pub fn word(&self) -> Vec<Direction> {
        (0..self.len()).map(|i| self.step(i)).collect()
    }

    pub fn to_anchored_word(&self) -> AnchoredWord {
        AnchoredWord {
            anchor: self.anchor(),
            word: self.word(),
        }
    }

    pub fn translate(&self, t: LatticePoint) -> CubicKnot {
        CubicKnot {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Same cycle, re-anchored at vertex `r`.
    pub fn rotate(&self, r: usize) -> CubicKnot {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(r % self.len());
        CubicKnot { vertices }
    }

    /// Same vertex set traversed backwards, keeping the anchor.
    pub fn reverse(&self) -> CubicKnot {
        let mut vertices = self.vertices.clone();
        vertices[1..].reverse();
        CubicKnot { vertices }
    }

    /// Image under the point reflection `v ↦ -v`, an orientation-reversing
    /// isometry of R³, so the result is the mirror knot.
    pub fn mirror(&self) -> CubicKnot {
        CubicKnot {
            vertices: self.vertices.iter().map(|&v| -v).collect(),
        }
    }

    /// Image under `(x, y, z) ↦ (x, y, -z)`.
    pub fn reflect_z(&self) -> CubicKnot {
        CubicKnot {
            vertices: self
                .vertices
                .iter()
                .map(|v| LatticePoint::new(v.x, v.y, -v.z))
                .collect(),
        }
    }

    /// Componentwise `(min, max)` of the vertex coordinates.
    pub fn bounds(&self) -> (LatticePoint, LatticePoint) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = LatticePoint::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = LatticePoint::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    /// Side lengths of the bounding box.
    pub fn extents(&self) -> [i64; 3] {
        let (lo, hi) = self.bounds();
        (hi - lo).coords()
    }

    /// Number of steps along each axis, `[x, y, z]`.
    pub fn axis_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for d in self.word() {
            c[d.axis().index()] += 1;
        }
        c
    }

    /// One `x y z` line per vertex.
    pub fn to_vertex_text(&self) -> String {
        let mut s = String::with_capacity(self.len() * 8);
        for v in &self.vertices {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn to_word_text(&self) -> String {
        self.to_anchored_word().to_text()
    }
}

fn check_distinct(pts: &[LatticePoint]) -> Result<(), KnotError> {
    let mut seen: HashMap<LatticePoint, usize> = HashMap::with_capacity(pts.len());
    for (j, p) in pts.iter().enumerate() {
        if let Some(&i) = seen.get(p) {
            return Err(KnotError::RepeatedVertex(i, j));
        }
        seen.insert(*p, j);
    }
    Ok(())
}

/// An anchor vertex plus a cyclic word of unit directions. Not necessarily a
/// valid knot; see [`CubicKnot::from_anchored_word`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnchoredWord {
    pub anchor: LatticePoint,
    pub word: Vec<Direction>,
}

impl AnchoredWord {
    pub fn new(anchor: LatticePoint, word: Vec<Direction>) -> Self {
        AnchoredWord { anchor, word }
    }

    /// `anchor + word[0] + … + word[k-1]` for `k` in `0..len`.
    pub fn partial_sums(&self) -> Vec<LatticePoint> {
        let mut pts = Vec::with_capacity(self.word.len());
        let mut p = self.anchor;
        for &d in &self.word {
            pts.push(p);
            p = p + d;
        }
        pts
    }

    /// Two lines: `anchor x y z`, then the space separated letters.
    pub fn to_text(&self) -> String {
        let letters: Vec<&str> = self.word.iter().map(|d| d.token()).collect();
        format!("anchor {}\n{}\n", self.anchor, letters.join(" "))
    }

    pub fn parse(text: &str) -> Result<Self, KnotError> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing `anchor` line"))?;
        let anchor = parse_anchor_line(ln, header)?;
        let (ln, letters) = lines
            .next()
            .ok_or_else(|| parse_err(ln + 1, "missing word line"))?;
        let word = parse_letters(ln, letters)?;
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "unexpected trailing content"));
        }
        Ok(AnchoredWord { anchor, word })
    }
}

pub(crate) fn parse_anchor_line(ln: usize, line: &str) -> Result<LatticePoint, KnotError> {
    let rest = line
        .strip_prefix("anchor")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| parse_err(ln, "expected `anchor x y z`"))?;
    parse_triple(ln, rest)
}

pub(crate) fn parse_letters(ln: usize, line: &str) -> Result<Vec<Direction>, KnotError> {
    line.split_whitespace()
        .map(|t| t.parse::<Direction>().map_err(|e| parse_err(ln, e)))
        .collect()
}

fn parse_triple(ln: usize, s: &str) -> Result<LatticePoint, KnotError> {
    let nums: Vec<&str> = s.split_whitespace().collect();
    if nums.len() != 3 {
        return Err(parse_err(ln, format!("expected 3 integers, found {}", nums.len())));
    }
    let mut c = [0i64; 3];
    for (slot, tok) in c.iter_mut().zip(&nums) {
        *slot = tok
            .parse()
            .map_err(|_| parse_err(ln, format!("bad integer `{tok}`")))?;
    }
    Ok(LatticePoint::new(c[0], c[1], c[2]))
}

/// Non-blank lines with `#` comments removed, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parse the vertex text format: one `x y z` per line.
pub fn parse_vertices(text: &str) -> Result<Vec<LatticePoint>, KnotError> {
    content_lines(text)
        .map(|(ln, l)| parse_triple(ln, l))
        .collect()
}

/// Input text format of a knot file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotFormat {
    Vertices,
    Word,
}

/// Detects the format (word files start with an `anchor` line), parses and
/// validates.
pub fn parse_knot(text: &str) -> Result<(CubicKnot, KnotFormat), KnotError> {
    let is_word = content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.starts_with("anchor"));
    if is_word {
        let w = AnchoredWord::parse(text)?;
        Ok((CubicKnot::from_anchored_word(&w)?, KnotFormat::Word))
    } else {
        let pts = parse_vertices(text)?;
        Ok((CubicKnot::from_vertices(pts)?, KnotFormat::Vertices))
    }
}

/// Translation- and rotation-free representative of a knot: the
/// lexicographically least rotation of its word, anchored at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    word: Vec<Direction>,
}

impl CanonicalForm {
    pub fn word(&self) -> &[Direction] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn to_anchored_word(&self) -> AnchoredWord {
        AnchoredWord::new(LatticePoint::ORIGIN, self.word.clone())
    }

    pub fn to_knot(&self) -> CubicKnot {
        let pts = self.to_anchored_word().partial_sums();
        CubicKnot::from_vertices_unchecked(pts)
    }
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        match a.cmp(b) {
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            std::cmp::Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

fn min_rotation(word: &[Direction]) -> Vec<Direction> {
    let r = least_rotation(word);
    let mut w = word.to_vec();
    w.rotate_left(r);
    w
}

/// The word of the reversed traversal: letters reversed and negated.
pub fn reversed_word(word: &[Direction]) -> Vec<Direction> {
    word.iter().rev().map(|&d| -d).collect()
}

pub fn canonical_form(k: &CubicKnot, oriented: bool) -> CanonicalForm {
    canonical_form_of_word(&k.word(), oriented)
}

pub fn canonical_form_of_word(word: &[Direction], oriented: bool) -> CanonicalForm {
    let fwd = min_rotation(word);
    if oriented {
        return CanonicalForm { word: fwd };
    }
    let bwd = min_rotation(&reversed_word(word));
    CanonicalForm {
        word: fwd.min(bwd),
    }
}

/// Equality of anchored words up to the translation carrying one anchor onto
/// a vertex of the other, i.e. the vertex cycles agree after translation and
/// cyclic relabeling. Invalid words are equivalent to nothing.
pub fn equivalent_as_anchored(k1: &AnchoredWord, k2: &AnchoredWord) -> bool {
    let (Ok(a), Ok(b)) = (
        CubicKnot::from_anchored_word_capped(k1, usize::MAX),
        CubicKnot::from_anchored_word_capped(k2, usize::MAX),
    ) else {
        return false;
    };
    if a.len() != b.len() {
        return false;
    }
    let Some(r) = rotation_offset(&a.word(), &b.word()) else {
        return false;
    };
    // h(x) = x + b₁ - v_r maps the cycle of `a` read from vertex r onto `b`
    let shift = b.anchor() - a.vertex(r);
    (0..a.len()).all(|i| a.vertex(r + i) + shift == b.vertex(i))
}

/// Some `r` with `a` rotated left by `r` equal to `b`.
fn rotation_offset(a: &[Direction], b: &[Direction]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let ra = least_rotation(a);
    let rb = least_rotation(b);
    let same = (0..n).all(|i| a[(ra + i) % n] == b[(rb + i) % n]);
    same.then(|| (ra + n - rb) % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    pub(crate) fn square() -> CubicKnot {
        CubicKnot::from_vertices(vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]).unwrap()
    }

    fn bent() -> CubicKnot {
        CubicKnot::from_vertices(vec![
            p(0, 0, 0),
            p(0, 0, 1),
            p(1, 0, 1),
            p(1, 0, 0),
            p(1, 1, 0),
            p(0, 1, 0),
        ])
        .unwrap()
    }

    #[test]
    fn from_vertices_errors() {
        assert_eq!(
            CubicKnot::from_vertices(vec![p(0, 0, 0), p(2, 0, 0)]),
            Err(KnotError::TooShort(2))
        );
        assert_eq!(
            CubicKnot::from_vertices(vec![p(0, 0, 0), p(1, 0, 0), p(0, 0, 0), p(0, 1, 0)]),
            Err(KnotError::RepeatedVertex(0, 2))
        );
        assert_eq!(
            CubicKnot::from_vertices(vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 2, 0)]),
            Err(KnotError::NonUnitStep(2))
        );
        // open path: fails at the wrap-around step
        assert_eq!(
            CubicKnot::from_vertices(vec![p(0, 0, 0), p(1, 0, 0), p(2, 0, 0), p(3, 0, 0)]),
            Err(KnotError::NonUnitStep(3))
        );
        let big: Vec<_> = square().into_vertices();
        assert_eq!(
            CubicKnot::from_vertices_capped(big, 3),
            Err(KnotError::TooLong { len: 4, cap: 3 })
        );
    }

    #[test]
    fn words() {
        let sq = square();
        assert_eq!(
            sq.to_anchored_word(),
            AnchoredWord::new(p(0, 0, 0), vec![XPlus, YPlus, XMinus, YMinus])
        );
        assert_eq!(
            sq.reverse().to_anchored_word(),
            AnchoredWord::new(p(0, 0, 0), vec![YPlus, XPlus, YMinus, XMinus])
        );
        assert_eq!(
            bent().to_anchored_word().word,
            vec![ZPlus, XPlus, ZMinus, YPlus, XMinus, YMinus]
        );
    }

    #[test]
    fn from_word() {
        let w = AnchoredWord::new(p(0, 0, 0), vec![XPlus, YPlus, XMinus, YMinus]);
        assert_eq!(CubicKnot::from_anchored_word(&w).unwrap(), square());
        let w = AnchoredWord::new(p(0, 0, 0), vec![XPlus, XMinus, YPlus, YMinus]);
        assert_eq!(
            CubicKnot::from_anchored_word(&w),
            Err(KnotError::RepeatedVertex(0, 2))
        );
        let w = AnchoredWord::new(p(5, 5, 5), vec![XPlus, YPlus, XMinus, YMinus]);
        assert_eq!(
            CubicKnot::from_anchored_word(&w).unwrap(),
            square().translate(p(5, 5, 5))
        );
        let w = AnchoredWord::new(p(0, 0, 0), vec![XPlus, YPlus, XMinus, XMinus]);
        assert_eq!(
            CubicKnot::from_anchored_word(&w),
            Err(KnotError::NotClosed)
        );
    }

    #[test]
    fn canonical_square() {
        // all four rotations of the square word, least is X+ Y+ X- Y-
        let rotations: Vec<Vec<Direction>> = (0..4)
            .map(|r| {
                let mut w = vec![XPlus, YPlus, XMinus, YMinus];
                w.rotate_left(r);
                w
            })
            .collect();
        let least = rotations.iter().min().unwrap().clone();
        assert_eq!(least, vec![XPlus, YPlus, XMinus, YMinus]);
        for r in 0..4 {
            let k = square().rotate(r).translate(p(3, -2, 7));
            assert_eq!(canonical_form(&k, true).word(), &least[..]);
        }
        // reversed square: rotations of (Y+ X+ Y- X-) have least X+ Y- X- Y+
        let rev = square().reverse();
        assert_eq!(canonical_form(&rev, true).word(), &[XPlus, YMinus, XMinus, YPlus]);
        assert_eq!(canonical_form(&rev, false), canonical_form(&square(), false));
        assert_ne!(canonical_form(&rev, true), canonical_form(&square(), true));
    }

    #[test]
    fn anchored_equivalence() {
        let sq = square().to_anchored_word();
        let moved = square().translate(p(1, 1, 1)).to_anchored_word();
        assert!(equivalent_as_anchored(&sq, &moved));
        assert!(!equivalent_as_anchored(&sq, &bent().to_anchored_word()));
        // quarter turn about z: (x, y) -> (-y, x)
        let turned = CubicKnot::from_vertices(
            square()
                .vertices()
                .iter()
                .map(|v| p(-v.y, v.x, v.z))
                .collect(),
        )
        .unwrap();
        assert!(equivalent_as_anchored(&sq, &turned.to_anchored_word()));
        let invalid = AnchoredWord::new(p(0, 0, 0), vec![XPlus, XPlus]);
        assert!(!equivalent_as_anchored(&invalid, &invalid));
    }

    #[test]
    fn text_formats() {
        let text = "# square\n0 0 0\n1 0 0\n\n1 1 0  # corner\n0 1 0\n";
        let (k, fmt) = parse_knot(text).unwrap();
        assert_eq!(fmt, KnotFormat::Vertices);
        assert_eq!(k, square());
        assert_eq!(k.to_vertex_text(), "0 0 0\n1 0 0\n1 1 0\n0 1 0\n");
        let wt = k.to_word_text();
        assert_eq!(wt, "anchor 0 0 0\nX+ Y+ X- Y-\n");
        let (k2, fmt) = parse_knot(&wt).unwrap();
        assert_eq!(fmt, KnotFormat::Word);
        assert_eq!(k2, k);
        assert!(matches!(
            parse_knot("0 0 0\n1 0 x\n"),
            Err(KnotError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            AnchoredWord::parse("anchor 0 0 0\nX+ W+\n"),
            Err(KnotError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            AnchoredWord::parse("anchor 0 0\nX+\n"),
            Err(KnotError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        let words: [&[u8]; 6] = [b"abab", b"bbba", b"a", b"cabcab", b"baaab", b"zzz"];
        for w in words {
            let brute = (0..w.len())
                .min_by_key(|&r| {
                    let mut v = w.to_vec();
                    v.rotate_left(r);
                    v
                })
                .unwrap();
            let mut a = w.to_vec();
            a.rotate_left(brute);
            let mut b = w.to_vec();
            b.rotate_left(least_rotation(w));
            assert_eq!(a, b);
        }
    }
}
