//! Test-side oracles and helpers, written independently of the production
//! algorithms they check.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use cubeknot::diagram::{build_diagram, pd_code};
use cubeknot::moves::{apply_m2, enumerate_m2};
use cubeknot::{CubicKnot, LaurentPoly, PiPoly};

/// π to 220 decimals.
pub const PI_DIGITS: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679821480865132823066470938446095505822317253594081284811174502841027019385211055596446229489549303819644288109756659334461284";

/// π as a rational with error below `10^-219`.
pub fn pi_rational() -> BigRational {
    let digits = PI_DIGITS.replace('.', "");
    let num: BigInt = digits.parse().unwrap();
    let den = BigInt::from(10).pow((digits.len() - 1) as u32);
    BigRational::new(num, den)
}

/// Sign of `p(π)` from the decimal expansion. Values within `10^-150` of
/// zero are reported as `None` (the oracle cannot decide them).
pub fn numeric_sign(p: &PiPoly) -> Option<i32> {
    let pi = pi_rational();
    let mut acc = BigRational::zero();
    let mut pk = BigRational::one();
    for c in p.coeffs() {
        acc += c * &pk;
        pk *= &pi;
    }
    let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(150));
    if acc.abs() < eps {
        return if p.is_zero() { Some(0) } else { None };
    }
    Some(if acc.is_positive() { 1 } else { -1 })
}

/// `δ = −A² − A⁻²`.
fn delta() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(2, -1), (-2, -1)])
}

/// Kauffman bracket by the skein recursion
/// `⟨X⟩ = A⟨A-smoothing⟩ + A⁻¹⟨B-smoothing⟩`, counting loops of the final
/// smoothing by walking the label graph.
pub fn skein_bracket(pd: &[[usize; 4]]) -> LaurentPoly {
    fn go(rest: &[[usize; 4]], pairs: &mut Vec<(usize, usize)>, labels: usize) -> LaurentPoly {
        let Some((x, tail)) = rest.split_first() else {
            return delta().pow(count_cycles(pairs, labels) as u32 - 1);
        };
        let [a, b, c, d] = *x;
        pairs.extend([(a, b), (c, d)]);
        let sa = go(tail, pairs, labels);
        pairs.truncate(pairs.len() - 2);
        pairs.extend([(a, d), (b, c)]);
        let sb = go(tail, pairs, labels);
        pairs.truncate(pairs.len() - 2);
        &(&sa * &LaurentPoly::monomial(1, 1)) + &(&sb * &LaurentPoly::monomial(-1, 1))
    }
    if pd.is_empty() {
        return LaurentPoly::one();
    }
    go(pd, &mut Vec::new(), 2 * pd.len())
}

fn count_cycles(pairs: &[(usize, usize)], labels: usize) -> usize {
    let mut adj = vec![Vec::new(); labels + 1];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; labels + 1];
    let mut cycles = 0;
    for start in 1..=labels {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    cycles
}

/// `(−A)^(−3w)·⟨D⟩` from the skein oracle.
pub fn skein_jones(pd: &[[usize; 4]], writhe: i32) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::monomial(-3 * writhe, sign) * &skein_bracket(pd)
}

/// Arc of each label after gluing across over passages, by a direct scan
/// (arcs are maximal runs of labels between under passages).
fn arcs_by_walk(pd: &[[usize; 4]]) -> (Vec<usize>, usize) {
    let m = 2 * pd.len();
    // label l ends in an under passage iff l is some crossing's entry a
    let mut under_in = vec![false; m + 1];
    for x in pd {
        under_in[x[0]] = true;
    }
    let mut arc = vec![0; m + 1];
    let Some(first) = (1..=m).find(|&l| under_in[l]) else {
        return (vec![0; m + 1], 1);
    };
    let mut count = 0;
    let mut l = first % m + 1;
    for _ in 0..m {
        arc[l] = count;
        if under_in[l] {
            count += 1;
        }
        l = l % m + 1;
    }
    (arc, count.max(1))
}

/// Number of Fox `p`-colorings by exhaustion.
pub fn brute_colorings(pd: &[[usize; 4]], p: u64) -> u64 {
    let (arc, arcs) = arcs_by_walk(pd);
    let mut count = 0;
    let total = p.pow(arcs as u32);
    let mut col = vec![0u64; arcs];
    for code in 0..total {
        let mut c = code;
        for slot in col.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        let ok = pd.iter().all(|x| {
            let (a, b, c) = (col[arc[x[0]]], col[arc[x[1]]], col[arc[x[2]]]);
            (2 * b + 2 * p - a - c).is_multiple_of(p)
        });
        count += ok as u64;
    }
    count
}

/// `|det|` of the relation matrix with the first row and column removed,
/// by fraction-free Bareiss elimination.
pub fn bareiss_determinant(pd: &[[usize; 4]]) -> BigUint {
    if pd.is_empty() {
        return BigUint::one();
    }
    let (arc, arcs) = arcs_by_walk(pd);
    let mut full = vec![vec![BigInt::zero(); arcs]; pd.len()];
    for (i, x) in pd.iter().enumerate() {
        full[i][arc[x[1]]] += 2;
        full[i][arc[x[0]]] -= 1;
        full[i][arc[x[2]]] -= 1;
    }
    let n = arcs - 1;
    if pd.len() - 1 != n {
        return BigUint::zero();
    }
    let mut a: Vec<Vec<BigInt>> = full[1..].iter().map(|r| r[1..].to_vec()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigUint::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() * sign };
    d.abs().to_biguint().unwrap()
}

/// Random walk of M2 moves from `k`. Moves whose result fails `keep` are
/// skipped; the walk stops early when nothing is admissible.
pub fn walk<R: Rng>(
    k: &CubicKnot,
    steps: usize,
    rng: &mut R,
    keep: impl Fn(&CubicKnot) -> bool,
) -> Vec<CubicKnot> {
    let mut out = vec![k.clone()];
    let mut cur = k.clone();
    for _ in 0..steps {
        let mut moves = enumerate_m2(&cur);
        moves.shuffle(rng);
        let Some(next) = moves
            .into_iter()
            .map(|mv| apply_m2(&cur, mv).unwrap())
            .find(|n| keep(n))
        else {
            break;
        };
        cur = next;
        out.push(cur.clone());
    }
    out
}

pub fn crossings(k: &CubicKnot) -> usize {
    build_diagram(k).map(|d| d.crossing_count()).unwrap_or(usize::MAX)
}

pub fn pd_of(k: &CubicKnot) -> Vec<[usize; 4]> {
    pd_code(&build_diagram(k).unwrap())
}

/// Knot-table PD codes.
pub const TABLE: &[(&str, &[[usize; 4]])] = &[
    ("3_1", &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]),
    ("4_1", &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    ("5_1", &[[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]]),
    ("5_2", &[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
    ("curl", &[[1, 1, 2, 2]]),
];
