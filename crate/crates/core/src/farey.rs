//! Farey fractions `a/q²` with `Q < q ≤ 2Q` lying close to `1/Q`.
//!
//! The set `S(Q)` collects coprime pairs `(a, q)` with `|a/q² − 1/Q| ≤ 1/Q³`.
//! Membership is always decided by the exact integer comparison
//! `|aQ − q²|·Q² ≤ q²`, boundary included; floating point never enters.
//!
//! Two routes produce elements of `S(Q)`:
//!
//! * [`witness_pairs`] builds one pair per square root of unity modulo an odd
//!   primorial `Q`, using `q² = 1 + aQ`;
//! * [`enumerate_sq_exact`] scans every `q` in `(Q, 2Q]` and tests the one or
//!   two numerators that can possibly qualify.

use crate::arith::{cube, roots_of_unity_in_dilate, OddPrimorial};
use crate::error::{domain, Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Above this `Q` the lemma report does not enumerate `S(Q)`.
pub const EXACT_COUNT_CUTOFF: i128 = 1_000_000;

/// Largest `Q` accepted by the `O(Q)` scans.
pub const SCAN_LIMIT: i128 = 10_000_000;

/// Largest number of candidate numerators examined for a single `q`.
pub const CANDIDATES_PER_Q_LIMIT: i128 = 1_000_000;

/// One coprime pair `(a, q)` standing for the fraction `a/q²`, together with
/// the ambient modulus `Q` and the signed discrepancy `aQ − q²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FareyPair {
    pub q: i128,
    pub a: i128,
    #[serde(rename = "Q")]
    pub modulus: i128,
    pub discrepancy: i128,
}

impl FareyPair {
    /// Returns the pair if it belongs to `S(Q)`.
    pub fn new(a: i128, q: i128, modulus: i128) -> Option<Self> {
        in_s(a, q, modulus).then(|| FareyPair {
            q,
            a,
            modulus,
            discrepancy: a * modulus - q * q,
        })
    }

    /// Re-checks every invariant with exact integers.
    pub fn is_valid(&self) -> bool {
        in_s(self.a, self.q, self.modulus)
            && self.discrepancy == self.a * self.modulus - self.q * self.q
    }
}

/// Exact membership test for `S(Q)`.
pub fn in_s(a: i128, q: i128, modulus: i128) -> bool {
    if modulus < 1 || q <= modulus || q > 2 * modulus {
        return false;
    }
    let q2 = q * q;
    if a < 1 || a > q2 || a.gcd(&q) != 1 {
        return false;
    }
    let gap = (a * modulus - q2).abs();
    match gap.checked_mul(modulus * modulus) {
        Some(lhs) => lhs <= q2,
        None => false,
    }
}

/// The `2^m` pairs `((q² − 1)/Q, q)` coming from square roots of unity.
pub fn witness_pairs(p: &OddPrimorial) -> Vec<FareyPair> {
    let modulus = p.modulus();
    roots_of_unity_in_dilate(p)
        .into_iter()
        .map(|q| {
            let q2 = q * q;
            assert_eq!((q2 - 1) % modulus, 0, "q² ≢ 1 mod Q for q = {q}");
            let a = (q2 - 1) / modulus;
            let pair = FareyPair::new(a, q, modulus).expect("witness pair outside S(Q)");
            debug_assert_eq!(pair.discrepancy, -1);
            pair
        })
        .collect()
}

fn check_scan_modulus(modulus: i128) -> Result<()> {
    if modulus < 3 {
        return Err(domain(format!("Q must be at least 3, got {modulus}")));
    }
    if modulus > SCAN_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "scanning (Q, 2Q] for Q = {modulus} exceeds the limit {SCAN_LIMIT}"
        )));
    }
    Ok(())
}

/// Candidate numerators for `|a/q² − 1/Q| ≤ num/den`, clamped to `[1, q²]`.
fn candidate_range(q: i128, modulus: i128, num: i128, den: i128) -> Result<(i128, i128)> {
    let q2 = q * q;
    let of = || Error::Overflow("candidate window");
    let centre = q2.checked_mul(den).ok_or_else(of)?;
    let spread = num
        .checked_mul(q2)
        .and_then(|x| x.checked_mul(modulus))
        .ok_or_else(of)?;
    let scale = modulus.checked_mul(den).ok_or_else(of)?;
    let lo = centre.checked_sub(spread).ok_or_else(of)?;
    let hi = centre.checked_add(spread).ok_or_else(of)?;
    let lo = Integer::div_ceil(&lo, &scale).max(1);
    let hi = Integer::div_floor(&hi, &scale).min(q2);
    if hi - lo + 1 > CANDIDATES_PER_Q_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "{} candidate numerators for q = {q} exceed {CANDIDATES_PER_Q_LIMIT}",
            hi - lo + 1
        )));
    }
    Ok((lo, hi))
}

fn scan<F>(modulus: i128, num: i128, den: i128, member: F) -> Result<Vec<FareyPair>>
where
    F: Fn(i128, i128) -> bool + Sync,
{
    let blocks: Result<Vec<Vec<FareyPair>>> = (modulus + 1..=2 * modulus)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|q| {
            let (lo, hi) = candidate_range(q, modulus, num, den)?;
            Ok((lo..=hi)
                .filter(|&a| a.gcd(&q) == 1 && member(a, q))
                .map(|a| FareyPair {
                    q,
                    a,
                    modulus,
                    discrepancy: a * modulus - q * q,
                })
                .collect())
        })
        .collect();
    Ok(blocks?.into_iter().flatten().collect())
}

/// The full set `S(Q)` in ascending `(q, a)` order, for any `Q ≥ 3`.
///
/// For each `q` only numerators between `⌈q²/Q − q²/Q³⌉` and
/// `⌊q²/Q + q²/Q³⌋` are tested. The result does not depend on the number of
/// worker threads.
pub fn enumerate_sq_exact(modulus: i128) -> Result<Vec<FareyPair>> {
    check_scan_modulus(modulus)?;
    let den = cube(modulus)?;
    scan(modulus, 1, den, |a, q| in_s(a, q, modulus))
}

/// Pairs `(a, q)`, `Q < q ≤ 2Q`, `gcd(a, q) = 1`, with
/// `|a/q² − 1/Q| ≤ delta`, ascending in `(q, a)`.
pub fn enumerate_window(modulus: i128, delta: Ratio<i128>) -> Result<Vec<FareyPair>> {
    check_scan_modulus(modulus)?;
    if *delta.numer() < 0 {
        return Err(domain("interval half-width must be nonnegative"));
    }
    let (num, den) = (*delta.numer(), *delta.denom());
    scan(modulus, num, den, |a, q| {
        let q2 = q * q;
        // |aQ − q²|·den ≤ num·q²·Q; overflow was excluded by candidate_range
        (a * modulus - q2).abs() * den <= num * q2 * modulus
    })
}

/// Outcome of checking `2^m ≥ Q^{log 2 / ((1+ε) log log Q)}` for one `(m, ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub m: usize,
    #[serde(rename = "Q")]
    pub modulus: i128,
    pub witness_count: u64,
    /// `♯S(Q)` when `Q ≤ 10^6`, otherwise `None`.
    pub exact_count: Option<u64>,
    pub epsilon: f64,
    pub bound: f64,
    pub epsilon_min: f64,
    pub passes: bool,
}

/// `Q^{log 2 / ((1+ε) log log Q)}`, natural logarithms.
pub fn count_bound(modulus: f64, epsilon: f64) -> Result<f64> {
    let ll = log_log(modulus)?;
    if !(epsilon >= 0.0) {
        return Err(domain(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    Ok(modulus.powf(std::f64::consts::LN_2 / ((1.0 + epsilon) * ll)))
}

/// Smallest ε with `2^m ≥ Q^{log 2/((1+ε) log log Q)}`: `log Q / (m log log Q) − 1`.
pub fn epsilon_min(m: usize, modulus: f64) -> Result<f64> {
    let ll = log_log(modulus)?;
    Ok(modulus.ln() / (m as f64 * ll) - 1.0)
}

fn log_log(modulus: f64) -> Result<f64> {
    let ll = modulus.ln().ln();
    if !(ll > 0.0) {
        return Err(domain(format!("log log Q is not positive for Q = {modulus}")));
    }
    Ok(ll)
}

/// Checks the counting bound for the `m`-th odd primorial.
///
/// `passes` is derived three ways (ε against `epsilon_min`, `2^m` against
/// `bound`, and their agreement); a disagreement is an error.
pub fn lemma_count_check(m: usize, epsilon: f64) -> Result<LemmaReport> {
    let p = crate::arith::odd_primorial(m)?;
    let modulus = p.modulus();
    if m >= 64 {
        return Err(Error::Overflow("2^m"));
    }
    let witness_count = 1u64 << m;
    let q = modulus as f64;
    let bound = count_bound(q, epsilon)?;
    let eps_min = epsilon_min(m, q)?;

    let by_count = witness_count as f64 >= bound;
    let by_epsilon = epsilon >= eps_min;
    if by_count != by_epsilon {
        return Err(Error::Inconsistent(format!(
            "m = {m}, ε = {epsilon}: 2^m ≥ bound is {by_count} but ε ≥ ε_min is {by_epsilon}"
        )));
    }

    let exact_count = if modulus <= EXACT_COUNT_CUTOFF {
        let s = enumerate_sq_exact(modulus)?;
        debug_assert!(s.len() as u64 >= witness_count);
        Some(s.len() as u64)
    } else {
        None
    };

    Ok(LemmaReport {
        m,
        modulus,
        witness_count,
        exact_count,
        epsilon,
        bound,
        epsilon_min: eps_min,
        passes: by_count,
    })
}

/// Observed versus heuristically expected number of fractions near `1/Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    #[serde(rename = "Q")]
    pub modulus: i128,
    pub delta_num: i128,
    pub delta_den: i128,
    pub observed: u64,
    /// `Q³·2δ`, heuristic with implied constant 1.
    pub expected_heuristic: f64,
    /// `None` when the expectation is zero.
    pub ratio: Option<f64>,
    pub implied_constant: f64,
}

/// Counts `a/q²` in `[1/Q − δ, 1/Q + δ]` and compares with `Q³·2δ`.
pub fn clustering_ratio(modulus: i128, delta: Ratio<i128>) -> Result<ClusterReport> {
    let observed = enumerate_window(modulus, delta)?.len() as u64;
    let (num, den) = (*delta.numer(), *delta.denom());
    let expected = match cube(modulus).ok().and_then(|c| c.checked_mul(2 * num)) {
        Some(top) => top as f64 / den as f64,
        None => (modulus as f64).powi(3) * 2.0 * (num as f64 / den as f64),
    };
    let ratio = (expected > 0.0).then(|| observed as f64 / expected);
    Ok(ClusterReport {
        modulus,
        delta_num: num,
        delta_den: den,
        observed,
        expected_heuristic: expected,
        ratio,
        implied_constant: 1.0,
    })
}
