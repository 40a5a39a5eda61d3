//! Solves for the epsilon threshold as a function of the target size.
//!
//! For c = 0 the setting is epsilon = constant * k * N^(-1/(2k-1)); for
//! c >= 1 the general form is
//! constant * k^((k-1)(2k+2c)/D) * N^(-(k+2c)/D) with D = 2k^2 + 2kc - k.
//! Epsilon is rounded down so that 1/epsilon is an integer (rounding
//! 1/epsilon up); a smaller epsilon only loosens the kill bound.
//!
//! The rounding is computed exactly with big integers: r = 1/epsilon is
//! the least integer satisfying a monotone polynomial inequality, found by
//! binary search, so no floating-point cube roots can nudge the result.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::One;

use crate::error::{Error, Result};
use crate::weight::Weight;

const MAX_INV_EPSILON: i64 = 1 << 40;

/// Least r >= 1 with predicate(r) true; predicate must be monotone in r.
fn least_satisfying(hint: f64, predicate: impl Fn(&BigInt) -> bool) -> i64 {
    let mut hi = BigInt::from((hint.max(1.0) * 2.0) as i64 + 16);
    while !predicate(&hi) {
        hi *= 2;
    }
    let mut lo = BigInt::one();
    // invariant: predicate(hi), lo is below the answer or equal to it
    while lo < hi {
        let mid = (&lo + &hi) / 2;
        if predicate(&mid) {
            hi = mid.clone();
        } else {
            lo = mid + 1;
        }
    }
    // fits i64 by the caller's overflow check afterwards
    i64::try_from(lo).unwrap_or(i64::MAX)
}

/// Epsilon threshold for a target spanning-cycle size `n_target`. Returns
/// epsilon = 1/r with integral r.
pub fn solve_epsilon(n_target: u64, k: usize, c: usize, constant: Weight) -> Result<Weight> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    if n_target == 0 {
        return Err(Error::Parameter("target size must be positive".into()));
    }
    if constant <= Ratio::new(0, 1) {
        return Err(Error::Parameter("constant must be positive".into()));
    }
    let p = BigInt::from(*constant.numer());
    let q = BigInt::from(*constant.denom());
    let n = BigInt::from(n_target);
    let kf = k as f64;
    let nf = n_target as f64;
    let cf = crate::weight::weight_to_f64(&constant);

    let r = if c == 0 {
        // least r with (r * k * p)^(2k-1) >= N * q^(2k-1)
        let e = (2 * k - 1) as u32;
        let rhs = &n * q.pow(e);
        let kp = BigInt::from(k as i64) * &p;
        let hint = nf.powf(1.0 / (2.0 * kf - 1.0)) / (kf * cf);
        least_satisfying(hint, |r| (r * &kp).pow(e) >= rhs)
    } else {
        // least r with (r * p)^D * k^b >= N^a * q^D,
        // D = 2k^2 + 2kc - k, a = k + 2c, b = (k-1)(2k+2c)
        let d = (2 * k * k + 2 * k * c - k) as u32;
        let a = (k + 2 * c) as u32;
        let b = ((k - 1) * (2 * k + 2 * c)) as u32;
        let rhs = n.pow(a) * q.pow(d);
        let k_term = BigInt::from(k as i64).pow(b);
        let hint = nf.powf(a as f64 / d as f64) / (cf * kf.powf(b as f64 / d as f64));
        least_satisfying(hint, |r| (r * &p).pow(d) * &k_term >= rhs)
    };

    if r < 2 {
        return Err(Error::Parameter(format!(
            "parameters give epsilon >= 1 (1/epsilon rounded to {r}); increase the target size"
        )));
    }
    if r > MAX_INV_EPSILON {
        return Err(Error::Parameter(format!(
            "1/epsilon = {r} overflows the supported range"
        )));
    }
    Ok(Ratio::new(1, r))
}

/// Epsilon for a run whose base graph is fixed with `n_base` nodes: the
/// fixed point of epsilon = solve_epsilon(N) under N = 4 * k * r * n_base.
/// The iteration is monotone and settles in a few steps.
pub fn epsilon_for_base(n_base: u64, k: usize, c: usize, constant: Weight) -> Result<Weight> {
    if n_base == 0 {
        return Err(Error::Parameter("base must have nodes".into()));
    }
    let mut r: i64 = 2;
    for _ in 0..64 {
        let n_target = 4u128 * k as u128 * r as u128 * n_base as u128;
        let n_target = u64::try_from(n_target)
            .map_err(|_| Error::Parameter("target size overflows".into()))?;
        let eps = solve_epsilon(n_target, k, c, constant)?;
        let next = *eps.denom();
        if next == r {
            return Ok(eps);
        }
        r = next;
    }
    Err(Error::Parameter(
        "epsilon fixed point did not settle".into(),
    ))
}
