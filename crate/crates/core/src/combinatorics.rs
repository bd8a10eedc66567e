//! Exact integer combinatorics behind the moment method.
//!
//! The k-th moment of the squared limit law is `(1/k) C(2k, k-1)`, which is
//! the k-th Catalan number and the number of Dyck paths of length 2k. The
//! dominant graph classes in the trace expansion are counted by
//!
//! ```text
//! f_{t-1}(k) = (1/k) C(2k, t-1) C(k, t)
//! ```
//!
//! for t distinct row-index vertices, with `f_{k-1}(k)` recovering the
//! moment. For t >= 2 the total class count with s distinct column-index
//! vertices is bounded by `f_{t-1}(k) * C(2k - t, s - 1)`; for t = 1 the
//! bound is `C(2k, 2k - s)`.
//!
//! Everything here is exact big-integer arithmetic; `C(2k, k-1)` leaves the
//! u64 range past k = 33. The symbol's t and s count vertices and are named
//! `t_i` / `s_j` to keep them apart from the series lag.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k), exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::from(1u32);
    for i in 0..k {
        num *= n - i;
        num /= i + 1; // exact at every step: product of j consecutive integers
    }
    num
}

/// Catalan number C_k = C(2k, k) / (k + 1), exact.
pub fn catalan(k: u64) -> BigUint {
    let b = binomial(2 * k, k);
    let (q, r) = num_integer_div_rem(&b, k + 1);
    debug_assert!(r.is_zero());
    q
}

/// Catalan number as f64 (exact for k <= 30, nearest double beyond).
pub fn catalan_f64(k: u64) -> f64 {
    catalan(k).to_f64().unwrap_or(f64::INFINITY)
}

fn num_integer_div_rem(n: &BigUint, d: u64) -> (BigUint, BigUint) {
    let d = BigUint::from(d);
    (n / &d, n % &d)
}

/// Moment formula (1/k) C(2k, k-1) for k >= 1, exact; equals `catalan(k)`.
pub fn moment_formula(k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Domain("moment formula requires k >= 1".into()));
    }
    let b = binomial(2 * k, k - 1);
    let (q, r) = num_integer_div_rem(&b, k);
    if !r.is_zero() {
        return Err(Error::Internal(format!("C(2k, k-1) not divisible by k at k = {k}")));
    }
    Ok(q)
}

/// Budget cap for explicit Dyck path enumeration (~2.7M paths at k = 14).
pub const DYCK_ENUMERATION_CAP: u64 = 14;

/// Count Dyck paths of length 2k by explicit backtracking enumeration.
///
/// This is the independent oracle for [`moment_formula`]; it never touches
/// binomial coefficients.
pub fn count_dyck_paths(k: u64) -> Result<BigUint> {
    if k > DYCK_ENUMERATION_CAP {
        return Err(Error::Budget(format!(
            "dyck enumeration capped at k = {DYCK_ENUMERATION_CAP}, got {k}"
        )));
    }
    fn walk(steps_left: u64, height: u64) -> u64 {
        if steps_left == 0 {
            return u64::from(height == 0);
        }
        if height > steps_left {
            return 0; // cannot come back down in time
        }
        let mut total = walk(steps_left - 1, height + 1);
        if height > 0 {
            total += walk(steps_left - 1, height - 1);
        }
        total
    }
    Ok(BigUint::from(walk(2 * k, 0)))
}

/// Isomorphism-class count f_{t-1}(k) = (1/k) C(2k, t-1) C(k, t), exact.
///
/// Zero when t_i > k (the binomial factor vanishes), matching the degree
/// argument that forces t <= k. The formula is the exact count only at
/// (t, s) = (k, k+1); elsewhere it enters the class bound.
pub fn iso_class_count(k: u64, t_i: u64) -> Result<BigUint> {
    if k == 0 || t_i == 0 {
        return Err(Error::Domain("iso_class_count requires k >= 1 and t >= 1".into()));
    }
    let prod = binomial(2 * k, t_i - 1) * binomial(k, t_i);
    let (q, r) = num_integer_div_rem(&prod, k);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "C(2k, t-1) C(k, t) not divisible by k at k = {k}, t = {t_i}"
        )));
    }
    Ok(q)
}

/// Class-count bound f_{t-1}(k) * C(2k - t, s - 1) for t >= 2.
///
/// For t = 1 use [`iso_class_bound_t1`] instead.
pub fn iso_class_bound(k: u64, t_i: u64, s_j: u64) -> Result<BigUint> {
    if t_i < 2 {
        return Err(Error::Domain(
            "iso_class_bound requires t >= 2; use iso_class_bound_t1 for t = 1".into(),
        ));
    }
    if t_i > k {
        return Err(Error::Domain(format!("t = {t_i} exceeds k = {k}")));
    }
    if s_j == 0 {
        return Err(Error::Domain("iso_class_bound requires s >= 1".into()));
    }
    Ok(iso_class_count(k, t_i)? * binomial(2 * k - t_i, s_j - 1))
}

/// Class-count bound C(2k, 2k - s) for the single-row-vertex case t = 1.
pub fn iso_class_bound_t1(k: u64, s_j: u64) -> BigUint {
    binomial(2 * k, 2 * k - s_j.min(2 * k))
}
