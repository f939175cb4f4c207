//! Exact arithmetic in `Q[π]` and the projection along `N = (1, π, π²)`.
//!
//! A nonzero rational polynomial never vanishes at π, so a [`PiPoly`] is
//! zero exactly when all its coefficients are, and otherwise its sign can be
//! settled by evaluating on ever tighter enclosures of π. Every geometric
//! predicate below reduces to the sign of such a polynomial.
//!
//! Points of the projected lattice `Λ_P = p(Z³)` are stored by their
//! coordinates in the basis `f_i = p(e_i)`. Because `p` is injective on Z³
//! these coordinates coincide with the source lattice point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{Axis, LatticePoint};
use crate::par::{any_range, Execution};
use crate::pi;

/// Largest degree a [`PiPoly`] may have.
pub const MAX_DEGREE: usize = 16;

const START_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpiError {
    #[error("polynomial degree {0} exceeds the bound {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("degenerate intersection: projection is not generic for this pair")]
    DegenerateIntersection,
}

/// `Σ c_k π^k` with exact rational coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: Vec<BigRational>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self, QpiError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(QpiError::DegreeOverflow(coeffs.len() - 1));
        }
        Ok(PiPoly { coeffs })
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        assert!(coeffs.len() <= MAX_DEGREE + 1, "degree bound");
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
            .expect("degree checked")
    }

    pub fn zero() -> Self {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c]).expect("degree 0")
    }

    /// π itself.
    pub fn pi() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn checked_mul(&self, other: &PiPoly) -> Result<PiPoly, QpiError> {
        if self.is_zero() || other.is_zero() {
            return Ok(PiPoly::zero());
        }
        let deg = self.coeffs.len() + other.coeffs.len() - 2;
        if deg > MAX_DEGREE {
            return Err(QpiError::DegreeOverflow(deg));
        }
        let mut out = vec![BigRational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|a| a * c).collect()).expect("degree unchanged")
    }

    /// Display-grade value at π.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * std::f64::consts::PI + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Exact sign of the value at π: `-1`, `0` or `1`.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.float_filter() {
            return s;
        }
        self.sign_exact()
    }

    /// Sign from a double evaluation when the value clears a generous error
    /// bound; `None` when undecided.
    fn float_filter(&self) -> Option<i32> {
        let pi = std::f64::consts::PI;
        let mut val = 0.0f64;
        let mut mag = 0.0f64;
        let mut pk = 1.0f64;
        for c in &self.coeffs {
            let cf = c.to_f64()?;
            if !cf.is_finite() || (cf == 0.0 && !c.is_zero()) {
                return None;
            }
            val += cf * pk;
            mag += cf.abs() * pk;
            pk *= pi;
        }
        // rounding error is below ~4e-15·mag for degree ≤ 16
        let ok = mag.is_finite() && mag > 1e-250 && val.abs() > mag * 1e-12;
        ok.then_some(if val > 0.0 { 1 } else { -1 })
    }

    /// Interval evaluation on dyadic enclosures of π at 64, 128, … bits
    /// until the enclosure excludes zero.
    pub fn sign_exact(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let ints = self.cleared_integers();
        let mut bits = START_BITS;
        loop {
            MAX_BITS_USED.fetch_max(bits, AtomicOrdering::Relaxed);
            let e = pi::enclosure(bits);
            let (lo, hi) = interval_eval(&ints, &e);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Coefficients times the (positive) lcm of their denominators.
    fn cleared_integers(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }
}

static MAX_BITS_USED: AtomicU32 = AtomicU32::new(0);

/// Highest π precision, in bits, any exact sign evaluation has needed so far.
pub fn max_precision_used() -> u32 {
    MAX_BITS_USED.load(AtomicOrdering::Relaxed)
}

/// Bounds of `Σ a_k x^k` over `x ∈ [lo, hi] / 2^s`, scaled by `2^(s·d)`.
/// Needs `lo > 0` so every power is monotone.
fn interval_eval(a: &[BigInt], e: &pi::PiEnclosure) -> (BigInt, BigInt) {
    let d = a.len() - 1;
    let s = e.scale as usize;
    let mut lo_pow = BigInt::from(1);
    let mut hi_pow = BigInt::from(1);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (k, ak) in a.iter().enumerate() {
        if !ak.is_zero() {
            let shift = s * (d - k);
            let (small, big) = (ak * &lo_pow, ak * &hi_pow);
            if ak.is_positive() {
                lo += small << shift;
                hi += big << shift;
            } else {
                lo += big << shift;
                hi += small << shift;
            }
        }
        lo_pow *= &e.lo;
        hi_pow *= &e.hi;
    }
    (lo, hi)
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, o: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        PiPoly::new(coeffs).expect("degree does not grow")
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, o: &PiPoly) -> PiPoly {
        self + &(-o)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(self, o: PiPoly) -> PiPoly {
        &self + &o
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, o: PiPoly) -> PiPoly {
        &self - &o
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*pi"),
                _ => format!("{c}*pi^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// An element `m₁f₁ + m₂f₂ + m₃f₃` of `Λ_P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LambdaPoint {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
}

impl LambdaPoint {
    pub const fn new(m1: i64, m2: i64, m3: i64) -> Self {
        LambdaPoint { m1, m2, m3 }
    }

    fn coords(self) -> [i64; 3] {
        [self.m1, self.m2, self.m3]
    }
}

impl Add for LambdaPoint {
    type Output = LambdaPoint;
    fn add(self, o: LambdaPoint) -> LambdaPoint {
        LambdaPoint::new(self.m1 + o.m1, self.m2 + o.m2, self.m3 + o.m3)
    }
}

impl Sub for LambdaPoint {
    type Output = LambdaPoint;
    fn sub(self, o: LambdaPoint) -> LambdaPoint {
        LambdaPoint::new(self.m1 - o.m1, self.m2 - o.m2, self.m3 - o.m3)
    }
}

/// `p(v)` in the basis `(f₁, f₂, f₃)`.
pub fn project(v: LatticePoint) -> LambdaPoint {
    LambdaPoint::new(v.x, v.y, v.z)
}

/// `⟨v, N⟩ = x + yπ + zπ²`, the position along the viewing direction.
pub fn height(v: LatticePoint) -> PiPoly {
    dot_n(project(v))
}

fn dot_n(w: LambdaPoint) -> PiPoly {
    PiPoly::from_ints(&[w.m1, w.m2, w.m3])
}

/// `N = (1, π, π²)`.
pub fn normal() -> [PiPoly; 3] {
    [
        PiPoly::from_ints(&[1]),
        PiPoly::from_ints(&[0, 1]),
        PiPoly::from_ints(&[0, 0, 1]),
    ]
}

/// `⟨N, N⟩ = 1 + π² + π⁴`.
pub fn normal_sq() -> PiPoly {
    PiPoly::from_ints(&[1, 0, 1, 0, 1])
}

/// R³ coordinates of the projected point times `⟨N, N⟩`:
/// `⟨N,N⟩·w − ⟨w,N⟩·N`.
pub fn embed(w: LambdaPoint) -> Result<[PiPoly; 3], QpiError> {
    let c = embed_coeffs(w);
    let mut out: [PiPoly; 3] = Default::default();
    for i in 0..3 {
        let coeffs = c[i]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        out[i] = PiPoly::new(coeffs)?;
    }
    Ok(out)
}

/// Integer coefficients (in powers of π, degree ≤ 4) of [`embed`]. Row `i`
/// is `c_i·(1 + π² + π⁴) − (m₁ + m₂π + m₃π²)·π^i`.
fn embed_coeffs(w: LambdaPoint) -> [[i128; 5]; 3] {
    let c = w.coords().map(i128::from);
    let mut out = [[0i128; 5]; 3];
    for i in 0..3 {
        for k in [0, 2, 4] {
            out[i][k] += c[i];
        }
        for j in 0..3 {
            out[i][i + j] -= c[j];
        }
    }
    out
}

/// Whether two of `points` share a projection. A difference projects to
/// zero iff its embedding is the zero polynomial triple; since π is
/// transcendental that test is exact.
pub fn projection_collides(points: &[LatticePoint], exec: Execution) -> bool {
    let n = points.len();
    any_range(exec, n, |i| {
        (i + 1..n).any(|j| {
            let w = project(points[j]) - project(points[i]);
            embed_coeffs(w).iter().flatten().all(|&v| v == 0)
        })
    })
}

/// `(u × w) · N` for integer vectors: the oriented area of the projected
/// pair as seen from the `+N` side.
fn cross_n(u: LambdaPoint, w: LambdaPoint) -> PiPoly {
    let (u, w) = (u.coords(), w.coords());
    PiPoly::from_ints(&[
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    ])
}

/// Inner product of the projections of `u` and `w`, times `⟨N, N⟩`.
fn dot_p(u: LambdaPoint, w: LambdaPoint) -> PiPoly {
    let plain: i64 = u.coords().iter().zip(w.coords()).map(|(a, b)| a * b).sum();
    let lhs = normal_sq().scale(&BigRational::from_integer(plain.into()));
    let rhs = dot_n(u).checked_mul(&dot_n(w)).expect("degree 4");
    &lhs - &rhs
}

/// Sign of `det[p(b−a), p(c−a), N]`; positive is counterclockwise seen from
/// the `+N` side.
///
/// Subtracting multiples of the last row `N` leaves the determinant
/// unchanged, so it equals `((b−a) × (c−a)) · N`, a degree-2 polynomial.
pub fn orient(a: LambdaPoint, b: LambdaPoint, c: LambdaPoint) -> i32 {
    cross_n(b - a, c - a).sign()
}

/// Projection of one knot edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectedSegment {
    pub start: LambdaPoint,
    pub end: LambdaPoint,
    pub family: Axis,
    pub edge: usize,
}

impl ProjectedSegment {
    /// `None` unless `a` and `b` are lattice neighbours.
    pub fn from_edge(a: LatticePoint, b: LatticePoint, edge: usize) -> Option<Self> {
        let d = a.step_to(b)?;
        Some(ProjectedSegment {
            start: project(a),
            end: project(b),
            family: d.axis(),
            edge,
        })
    }

    fn dir(&self) -> LambdaPoint {
        self.end - self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    /// The projections are disjoint.
    None,
    /// The open segments meet in a single interior point.
    Proper,
    /// An endpoint lies on the other closed segment, or they overlap.
    Degenerate,
}

/// Given `c` collinear with `a b`, whether it lies on the closed segment.
fn on_segment(a: LambdaPoint, b: LambdaPoint, c: LambdaPoint) -> bool {
    let along = dot_p(c - a, b - a);
    let full = dot_p(b - a, b - a);
    along.sign() >= 0 && (&full - &along).sign() >= 0
}

/// Intersection type of two projected segments from non-adjacent edges.
pub fn segments_cross(s1: &ProjectedSegment, s2: &ProjectedSegment) -> SegmentRelation {
    let (a, b, c, d) = (s1.start, s1.end, s2.start, s2.end);
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return if o1 != o2 && o3 != o4 {
            SegmentRelation::Proper
        } else {
            SegmentRelation::None
        };
    }
    let touches = (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b));
    if touches {
        SegmentRelation::Degenerate
    } else {
        SegmentRelation::None
    }
}

/// An exact quotient `num / den` of polynomials in π, `den ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiRatio {
    pub num: PiPoly,
    pub den: PiPoly,
}

impl PiRatio {
    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }

    /// Exact comparison of two quotients.
    pub fn cmp_exact(&self, other: &PiRatio) -> Ordering {
        let cross = &self.num.checked_mul(&other.den).expect("degree")
            - &other.num.checked_mul(&self.den).expect("degree");
        let s = cross.sign() * self.den.sign() * other.den.sign();
        s.cmp(&0)
    }
}

/// Segment parameters `(t, u)` of the crossing point:
/// `start₁ + t·dir₁ = start₂ + u·dir₂`.
pub fn crossing_params(s1: &ProjectedSegment, s2: &ProjectedSegment) -> (PiRatio, PiRatio) {
    let (r, s) = (s1.dir(), s2.dir());
    let ca = s2.start - s1.start;
    let den = cross_n(r, s);
    (
        PiRatio {
            num: cross_n(ca, s),
            den: den.clone(),
        },
        PiRatio {
            num: cross_n(ca, r),
            den,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Over {
    First,
    Second,
}

/// Which strand passes over at a proper crossing: the one whose source
/// point on the fibre has the larger height `⟨·, N⟩`.
pub fn over_under(s1: &ProjectedSegment, s2: &ProjectedSegment) -> Result<Over, QpiError> {
    let (t, u) = crossing_params(s1, s2);
    let den_sign = t.den.sign();
    if den_sign == 0 {
        return Err(QpiError::DegenerateIntersection);
    }
    // den·(h₁ − h₂) = den·⟨A−C,N⟩ + t_num·⟨r,N⟩ − u_num·⟨s,N⟩
    let base = t.den.checked_mul(&dot_n(s1.start - s2.start))?;
    let along1 = t.num.checked_mul(&dot_n(s1.dir()))?;
    let along2 = u.num.checked_mul(&dot_n(s2.dir()))?;
    let scaled = &(&base + &along1) - &along2;
    match scaled.sign() * den_sign {
        1 => Ok(Over::First),
        -1 => Ok(Over::Second),
        _ => Err(QpiError::DegenerateIntersection),
    }
}

/// Significant-digit decimal rendering for display.
pub(crate) fn fmt_sig(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.max(1) - 1, x)
}

/// Display-only decimal coordinates of the projected point in R³.
pub fn format_embedded(w: LambdaPoint, digits: usize) -> String {
    let pi = std::f64::consts::PI;
    let n = [1.0, pi, pi * pi];
    let c = w.coords().map(|v| v as f64);
    let h: f64 = c.iter().zip(n).map(|(a, b)| a * b).sum();
    let nn: f64 = n.iter().map(|v| v * v).sum();
    let p: Vec<String> = (0..3).map(|i| fmt_sig(c[i] - h / nn * n[i], digits)).collect();
    p.join(" ")
}
