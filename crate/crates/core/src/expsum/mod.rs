//! Inner exponential sums `Σ a_n e(an/q²)`.
//!
//! Three evaluation routes are provided and cross-checked against each other:
//!
//! * [`direct_exp_sum`] sums the terms one by one, reducing every phase
//!   `a·n mod q²` with exact integers before it touches floating point;
//! * [`geometric_sum`] uses the closed form of `Σ_{n=1}^{N} e(nδ)`, which is
//!   what the extremal sequence `a_n = e(−n/Q)` turns each inner sum into;
//! * [`coprime_power_spectrum`] folds the coefficients modulo `q²` and gets the
//!   whole coprime block `Σ_{(a,q)=1} |S(a)|²` from discrete Fourier
//!   transforms, using Möbius inclusion–exclusion over `d | q`.
//!
//! Phases are measured in turns throughout: `e(x) = exp(2πi·x)`.

mod coeffs;
mod spectrum;

pub use coeffs::{
    parse_coeffs, read_coeff_file, CoeffKind, CoeffSpec, COEFF_FILE_LINE_LIMIT, MATERIALIZE_LIMIT,
};
pub use spectrum::{coprime_power_spectrum, power_spectrum, SPECTRUM_WORK_LIMIT};
pub(crate) use spectrum::spectrum_with;

use crate::error::{domain, Error, Result};
use crate::farey::FareyPair;
use crate::sum::pairwise_sum_complex;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// `e(num/den)`, with the fraction reduced modulo 1 in exact arithmetic.
pub fn unit(num: i128, den: i128) -> Complex64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    Complex64::cis(TAU * (r as f64 / den as f64))
}

/// Maps `num/den` to the representative in `(−1/2, 1/2]` (times `den`).
fn centred(num: i128, den: i128) -> i128 {
    let r = num.rem_euclid(den);
    if 2 * r > den {
        r - den
    } else {
        r
    }
}

/// The constant `C = cos(2π/9)` of the no-cancellation bound.
///
/// When every phase satisfies `|α_n| ≤ 1/9` turns each term has real part at
/// least `cos(2π/9)`, so `|Σ e(α_n)| ≥ cos(2π/9)·N`.
pub fn no_cancellation_constant() -> f64 {
    (TAU / 9.0).cos()
}

/// An exact phase increment `δ = numerator/denominator` in turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseDelta {
    numerator: i128,
    denominator: i128,
}

impl PhaseDelta {
    /// Builds `num/den` in lowest terms with a positive denominator.
    pub fn new(numerator: i128, denominator: i128) -> Result<Self> {
        if denominator == 0 {
            return Err(domain("phase denominator is zero"));
        }
        let g = numerator.gcd(&denominator);
        let sign = denominator.signum();
        Ok(PhaseDelta {
            numerator: sign * numerator / g,
            denominator: sign * denominator / g,
        })
    }

    /// `δ = a/q² − 1/Q = (aQ − q²)/(q²Q)` for a pair under the extremal
    /// sequence.
    pub fn for_pair(pair: &FareyPair) -> Result<Self> {
        let q2 = pair.q * pair.q;
        let den = q2
            .checked_mul(pair.modulus)
            .ok_or(Error::Overflow("q²Q"))?;
        Self::new(pair.discrepancy, den)
    }

    pub fn numerator(&self) -> i128 {
        self.numerator
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// `Σ_{n=1}^{N} e(nδ)` in closed form.
///
/// Returns exactly `N` when `δ` is an integer. Otherwise `δ` is first reduced
/// into `(−1/2, 1/2]`, and the value `e(δ(N+1)/2)·sin(πNδ)/sin(πδ)` is
/// evaluated with both trigonometric arguments reduced exactly beforehand.
pub fn geometric_sum(delta: PhaseDelta, len: i128) -> Result<Complex64> {
    if len < 1 {
        return Err(domain(format!("N must be at least 1, got {len}")));
    }
    if delta.is_integer() {
        return Ok(Complex64::new(len as f64, 0.0));
    }
    let den = delta.denominator;
    let r = centred(delta.numerator, den);
    let of = || Error::Overflow("geometric sum phase");
    let twice = den.checked_mul(2).ok_or_else(of)?;

    // e(r(N+1)/(2·den))
    let rot_num = r
        .checked_mul(len.checked_add(1).ok_or_else(of)?)
        .ok_or_else(of)?;
    let rotation = unit(rot_num, twice);

    // sin(π·Nr/den), with Nr/den reduced into (−1, 1]
    let top = centred(r.checked_mul(len).ok_or_else(of)?, twice);
    let ratio = (PI * (top as f64 / den as f64)).sin() / (PI * (r as f64 / den as f64)).sin();
    Ok(rotation * ratio)
}

/// Largest `N` accepted by [`direct_exp_sum`].
pub const DIRECT_LEN_LIMIT: i128 = 100_000_000;

/// `Σ_{n=M+1}^{M+N} a_n e(an/q²)`, term by term.
pub fn direct_exp_sum(coeffs: &CoeffSpec, a: i128, q: i128) -> Result<Complex64> {
    if coeffs.len > DIRECT_LEN_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "N = {} exceeds the direct-sum limit {DIRECT_LEN_LIMIT}",
            coeffs.len
        )));
    }
    let values = coeffs.materialize()?;
    direct_with(&values, coeffs.offset, a, q)
}

/// Direct sum over already materialized coefficients `values[i] = a_{M+1+i}`.
pub(crate) fn direct_with(values: &[Complex64], offset: i128, a: i128, q: i128) -> Result<Complex64> {
    let q2 = q.checked_mul(q).ok_or(Error::Overflow("q²"))?;
    if q < 1 || a < 1 || a > q2 {
        return Err(domain(format!("need 1 ≤ a ≤ q², got a = {a}, q = {q}")));
    }
    offset
        .checked_add(values.len() as i128)
        .ok_or(Error::Overflow("M + N"))?;
    // (a mod q²)·(n mod q²) must stay exact
    q2.checked_mul(q2).ok_or(Error::Overflow("q⁴"))?;
    let a_mod = a % q2;
    let terms: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let n = (offset + 1 + i as i128).rem_euclid(q2);
            c * unit(a_mod * n, q2)
        })
        .collect();
    Ok(pairwise_sum_complex(&terms))
}

/// Magnitude of one inner sum against the floor `C·N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoCancellation {
    pub magnitude: f64,
    pub floor: f64,
    pub passes: bool,
}

/// Checks `|Σ_{n=1}^{N} e(nδ)| ≥ cos(2π/9)·N` for a pair of `S(Q)`.
///
/// Requires `N ≤ Q³/9`, which keeps every phase `n·δ` within `1/9` turns.
pub fn no_cancellation_check(pair: &FareyPair, len: i128) -> Result<NoCancellation> {
    if !pair.is_valid() {
        return Err(domain(format!("({}, {}) is not in S({})", pair.a, pair.q, pair.modulus)));
    }
    let cube = crate::arith::cube(pair.modulus)?;
    if len < 1 || len.checked_mul(9).map_or(true, |n9| n9 > cube) {
        return Err(domain(format!(
            "N = {len} violates 1 ≤ N ≤ Q³/9 for Q = {}",
            pair.modulus
        )));
    }
    let magnitude = geometric_sum(PhaseDelta::for_pair(pair)?, len)?.norm();
    let floor = no_cancellation_constant() * len as f64;
    Ok(NoCancellation {
        magnitude,
        floor,
        passes: magnitude >= floor,
    })
}
