//! Knot invariants read from the PD code of a diagram: Fox p-colorings, the
//! determinant, the Kauffman bracket and the Jones polynomial.
//!
//! The Jones polynomial is kept in the bracket variable `A`; substitute
//! `t = A⁻⁴` for the usual form.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{pd_code, writhe, KnotDiagram};
use crate::laurent::LaurentPoly;
use crate::par::{fold_range, Execution};

/// Default ceiling on crossings for the `2^c` state sum.
pub const DEFAULT_CROSSING_CAP: usize = 20;
/// Hard ceiling regardless of the requested cap.
pub const MAX_CROSSINGS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{count} crossings exceed the state-sum cap of {cap}")]
    TooManyCrossings { count: usize, cap: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// Fox arcs: arc labels glued across over passages. Returns the class of
/// every label `1..=2c` (index 0 unused) and the number of classes.
fn fox_arcs(pd: &[[usize; 4]]) -> (Vec<usize>, usize) {
    let m = 2 * pd.len();
    let mut parent: Vec<usize> = (0..=m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in pd {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a] = b;
    }
    let mut class = vec![usize::MAX; m + 1];
    let mut next = 0;
    for l in 1..=m {
        let r = find(&mut parent, l);
        if class[r] == usize::MAX {
            class[r] = next;
            next += 1;
        }
        class[l] = class[r];
    }
    (class, next.max(1))
}

/// Rows `2·over − in − out`, one per crossing, over the Fox arcs.
pub fn coloring_matrix(pd: &[[usize; 4]]) -> Vec<Vec<i64>> {
    let (class, arcs) = fox_arcs(pd);
    pd.iter()
        .map(|x| {
            let mut row = vec![0i64; arcs];
            row[class[x[1]]] += 2;
            row[class[x[0]]] -= 1;
            row[class[x[2]]] -= 1;
            row
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCount {
    pub p: u64,
    /// Number of Fox arcs (unknowns).
    pub arcs: usize,
    /// Rank of the relation matrix over `Z/p`.
    pub rank: usize,
    /// `p^(arcs − rank)`.
    pub count: BigUint,
    /// Whether non-constant colorings exist.
    pub nontrivial: bool,
}

fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: u64) -> usize {
    let p = p as i64;
    for row in rows.iter_mut() {
        for v in row.iter_mut() {
            *v = v.rem_euclid(p);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inverse(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (v, &q) in row.iter_mut().zip(&pivot) {
                    *v = (*v - f * q).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = a.extended_gcd(&p);
    e.x.rem_euclid(p)
}

pub fn colorings(d: &KnotDiagram, p: u64) -> Result<ColoringCount, InvariantError> {
    colorings_from_pd(&pd_code(d), p)
}

pub fn colorings_from_pd(pd: &[[usize; 4]], p: u64) -> Result<ColoringCount, InvariantError> {
    if !is_odd_prime(p) {
        return Err(InvariantError::NotOddPrime(p));
    }
    let m = coloring_matrix(pd);
    let arcs = fox_arcs(pd).1;
    let rank = rank_mod_p(m, p);
    let free = arcs - rank;
    Ok(ColoringCount {
        p,
        arcs,
        rank,
        count: BigUint::from(p).pow(free as u32),
        nontrivial: free > 1,
    })
}

/// Diagonalizes an integer matrix by unimodular row and column operations
/// and returns the diagonal (length `min(rows, cols)`).
fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(rows.min(cols), BigInt::zero());
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&piv);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(i);
                    for (v, u) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *v -= &q * u;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&piv);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Order of the torsion of the coloring module: the product of the
/// invariant factors of the relation matrix with one arc pinned to zero,
/// or `0` when that matrix is rank deficient.
pub fn determinant(d: &KnotDiagram) -> BigUint {
    determinant_from_pd(&pd_code(d))
}

pub fn determinant_from_pd(pd: &[[usize; 4]]) -> BigUint {
    let m = coloring_matrix(pd);
    let pinned: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row[1..].iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let cols = fox_arcs(pd).1 - 1;
    if cols == 0 {
        return BigUint::one();
    }
    let diag = smith_diagonal(pinned);
    if diag.len() < cols {
        return BigUint::zero();
    }
    diag.iter()
        .fold(BigInt::one(), |acc, v| acc * v)
        .to_biguint()
        .expect("absolute values")
}

/// `δ = −A² − A⁻²`.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(2, -1), (-2, -1)])
}

pub fn kauffman_bracket(d: &KnotDiagram) -> Result<LaurentPoly, InvariantError> {
    bracket_from_pd(&pd_code(d), DEFAULT_CROSSING_CAP, Execution::default())
}

/// `Σ_s A^(a(s) − b(s)) δ^(loops(s) − 1)` over all `2^c` smoothings, where
/// the A-smoothing of `X(a,b,c,d)` pairs `(a,b)(c,d)` and the B-smoothing
/// pairs `(a,d)(b,c)`.
pub fn bracket_from_pd(
    pd: &[[usize; 4]],
    cap: usize,
    exec: Execution,
) -> Result<LaurentPoly, InvariantError> {
    let c = pd.len();
    let cap = cap.min(MAX_CROSSINGS);
    if c > cap {
        return Err(InvariantError::TooManyCrossings { count: c, cap });
    }
    if c == 0 {
        return Ok(LaurentPoly::one());
    }
    let m = 2 * c;
    // histogram[b][loops]: states with b B-smoothings and that many loops
    let width = c + 2;
    let hist = fold_range(
        exec,
        1u64 << c,
        || vec![0u64; (c + 1) * width],
        |mut h, state| {
            let loops = count_loops(pd, m, state);
            h[state.count_ones() as usize * width + loops] += 1;
            h
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let delta = loop_value();
    let mut delta_pow = vec![LaurentPoly::one()];
    for i in 1..width {
        let next = &delta_pow[i - 1] * &delta;
        delta_pow.push(next);
    }
    let mut out = LaurentPoly::zero();
    for b in 0..=c {
        for loops in 1..width {
            let n = hist[b * width + loops];
            if n > 0 {
                let shift = c as i32 - 2 * b as i32;
                out = &out
                    + &delta_pow[loops - 1].shifted(shift, &BigRational::from_integer(n.into()));
            }
        }
    }
    Ok(out)
}

fn count_loops(pd: &[[usize; 4]], m: usize, state: u64) -> usize {
    let mut parent = [0u8; 2 * MAX_CROSSINGS + 1];
    let parent = &mut parent[..=m];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    fn find(p: &mut [u8], mut x: usize) -> usize {
        while p[x] as usize != x {
            p[x] = p[p[x] as usize];
            x = p[x] as usize;
        }
        x
    }
    let mut comps = m;
    let mut join = |p: &mut [u8], a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb as u8;
            comps -= 1;
        }
    };
    for (i, x) in pd.iter().enumerate() {
        if state >> i & 1 == 0 {
            join(parent, x[0], x[1]);
            join(parent, x[2], x[3]);
        } else {
            join(parent, x[0], x[3]);
            join(parent, x[1], x[2]);
        }
    }
    comps
}

pub fn jones(d: &KnotDiagram) -> Result<LaurentPoly, InvariantError> {
    jones_capped(d, DEFAULT_CROSSING_CAP)
}

pub fn jones_capped(d: &KnotDiagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    jones_from_pd(&pd_code(d), writhe(d), cap, Execution::default())
}

/// `(−A)^(−3w) · ⟨D⟩`.
pub fn jones_from_pd(
    pd: &[[usize; 4]],
    writhe: i32,
    cap: usize,
    exec: Execution,
) -> Result<LaurentPoly, InvariantError> {
    let bracket = bracket_from_pd(pd, cap, exec)?;
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    Ok(bracket.shifted(-3 * writhe, &BigRational::from_integer(sign.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    // KnotAtlas conventions: left-handed trefoil and figure-eight
    const TREFOIL: [[usize; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
    const FIG8: [[usize; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];

    #[test]
    fn unknot_values() {
        let c = colorings_from_pd(&[], 3).unwrap();
        assert_eq!(c.count, BigUint::from(3u32));
        assert!(!c.nontrivial);
        assert_eq!(determinant_from_pd(&[]), BigUint::one());
        assert_eq!(
            bracket_from_pd(&[], 20, Execution::Sequential).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn curls() {
        let a = bracket_from_pd(&[[1, 1, 2, 2]], 20, Execution::Sequential).unwrap();
        assert_eq!(a, LaurentPoly::monomial(3, -1));
        let b = bracket_from_pd(&[[1, 2, 2, 1]], 20, Execution::Sequential).unwrap();
        assert_eq!(b, LaurentPoly::monomial(-3, -1));
        // a curl is an unknot once normalized
        assert_eq!(
            jones_from_pd(&[[1, 1, 2, 2]], 1, 20, Execution::Sequential).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn trefoil_values() {
        let c = colorings_from_pd(&TREFOIL, 3).unwrap();
        assert_eq!(c.count, BigUint::from(9u32));
        assert!(c.nontrivial);
        assert_eq!(determinant_from_pd(&TREFOIL), BigUint::from(3u32));
        // V = -t^-4 + t^-3 + t^-1 with t = A^-4
        let v = jones_from_pd(&TREFOIL, -3, 20, Execution::Sequential).unwrap();
        assert_eq!(v, LaurentPoly::from_int_terms(&[(16, -1), (12, 1), (4, 1)]));
    }

    #[test]
    fn figure_eight_values() {
        assert_eq!(colorings_from_pd(&FIG8, 3).unwrap().count, BigUint::from(3u32));
        assert_eq!(colorings_from_pd(&FIG8, 5).unwrap().count, BigUint::from(25u32));
        assert_eq!(determinant_from_pd(&FIG8), BigUint::from(5u32));
        let v = jones_from_pd(&FIG8, 0, 20, Execution::Parallel).unwrap();
        assert_eq!(
            v,
            LaurentPoly::from_int_terms(&[(8, 1), (4, -1), (0, 1), (-4, -1), (-8, 1)])
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            colorings_from_pd(&TREFOIL, 9),
            Err(InvariantError::NotOddPrime(9))
        );
        assert_eq!(
            colorings_from_pd(&TREFOIL, 2),
            Err(InvariantError::NotOddPrime(2))
        );
        assert_eq!(
            bracket_from_pd(&TREFOIL, 2, Execution::Sequential),
            Err(InvariantError::TooManyCrossings { count: 3, cap: 2 })
        );
    }

    #[test]
    fn smith_examples() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        let d = smith_diagonal(m(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.iter().fold(BigInt::one(), |a, v| a * v), BigInt::from(8));
        let d = smith_diagonal(m(&[&[1, 2], &[2, 4]]));
        assert!(d.iter().any(Zero::is_zero));
    }
}
