//! Rigorous dyadic enclosures of π.
//!
//! `π = 16·atan(1/5) − 4·atan(1/239)`, each arctangent summed in fixed
//! point with floor division. Every truncation is tracked so the returned
//! interval provably contains π.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `lo / 2^scale ≤ π ≤ hi / 2^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiEnclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl PiEnclosure {
    pub fn width_bits(&self) -> u64 {
        (&self.hi - &self.lo).bits()
    }
}

const GUARD_BITS: u32 = 32;

/// `floor(2^w · atan(1/x))` up to an absolute error (in units of `2^-w`)
/// returned alongside.
fn atan_inv(x: u32, w: u32) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    // power_k ≈ 2^w / x^(2k+1); each floor adds < 1 and earlier errors
    // shrink by x², so |power_k - exact| < 2
    let mut power = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // per term error < 3; the omitted alternating tail is below the first
    // omitted term, itself < 2
    let err = BigInt::from(3 * (k + 1) + 2);
    (sum, err)
}

/// Computes an enclosure of width at most about `2^-(bits-8)`.
pub fn compute(bits: u32) -> PiEnclosure {
    let w = bits + GUARD_BITS;
    let (a5, e5) = atan_inv(5, w);
    let (a239, e239) = atan_inv(239, w);
    let mid = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    PiEnclosure {
        lo: &mid - &err,
        hi: &mid + &err,
        scale: w,
    }
}

fn cache() -> &'static RwLock<BTreeMap<u32, PiEnclosure>> {
    static CACHE: OnceLock<RwLock<BTreeMap<u32, PiEnclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// Cached [`compute`]. Safe to call from several threads; the answer for a
/// given precision never changes.
pub fn enclosure(bits: u32) -> PiEnclosure {
    if let Some(e) = cache().read().unwrap().get(&bits) {
        return e.clone();
    }
    let e = compute(bits);
    cache().write().unwrap().entry(bits).or_insert(e).clone()
}
