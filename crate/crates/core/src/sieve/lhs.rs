//! The large-sieve quadratic form over square moduli,
//! `Σ_q Σ_{(a,q)=1, a ≤ q²} |Σ_n a_n e(an/q²)|²`.
//!
//! Work is split by `q`; each block is summed pairwise in ascending `a`, and
//! the per-`q` totals are summed pairwise in ascending `q`. The value is
//! therefore bit-identical for any worker count.

use crate::arith::coprime_pair_count;
use crate::error::{domain, Error, Result};
use crate::expsum::{direct_with, geometric_sum, spectrum_with, CoeffSpec, PhaseDelta};
use crate::farey::FareyPair;
use crate::sieve::bounds::{Comparators, IMPLIED_CONSTANT, IMPLIED_CONSTANT_POLICY};
use crate::sum::pairwise_sum;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

/// Maximum `pairs × N` for the direct engine.
pub const DIRECT_WORK_LIMIT: u128 = 1_000_000_000;
/// Maximum number of pairs for the closed-form engine.
pub const GEOMETRIC_PAIR_LIMIT: u128 = 100_000_000;
/// Maximum `Σ_q (N + q²)·τ(q)` for the spectral engine.
pub const SPECTRUM_RANGE_LIMIT: u128 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Term-by-term sums with exact phase reduction.
    Direct,
    /// Folding, Fourier transforms and Möbius inclusion–exclusion.
    Spectrum,
    /// Closed form; only for the extremal sequence.
    Geometric,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Spectrum => "spectrum",
            Engine::Geometric => "geometric",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Engine::Direct),
            "spectrum" => Ok(Engine::Spectrum),
            "geometric" => Ok(Engine::Geometric),
            _ => Err(Error::Parse(format!("unknown engine {s:?}"))),
        }
    }
}

/// The closed form for one fraction under `a_n = e(−n/Q)`; the offset `M`
/// only rotates the sum, so its magnitude is that of `Σ_{n=1}^{N} e(nδ)`.
fn geometric_term(a: i128, q: i128, modulus: i128, len: i128) -> Result<f64> {
    let q2 = q * q;
    let num = a
        .checked_mul(modulus)
        .ok_or(Error::Overflow("aQ"))?
        - q2;
    let den = q2.checked_mul(modulus).ok_or(Error::Overflow("q²Q"))?;
    Ok(geometric_sum(PhaseDelta::new(num, den)?, len)?.norm_sqr())
}

fn check_range(range: &RangeInclusive<i128>) -> Result<()> {
    if *range.start() < 1 || range.start() > range.end() {
        return Err(domain(format!(
            "q range {}..={} must be nonempty and start at 1 or above",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

fn qs(range: &RangeInclusive<i128>) -> Vec<i128> {
    range.clone().collect()
}

fn coprime_block(q: i128) -> impl Iterator<Item = i128> {
    (1..=q * q).filter(move |a| a.gcd(&q) == 1)
}

/// Evaluates the quadratic form over `q` in `range` with the chosen engine.
pub fn lhs_square_moduli(
    range: RangeInclusive<i128>,
    coeffs: &CoeffSpec,
    engine: Engine,
) -> Result<f64> {
    check_range(&range)?;
    let pairs = coprime_pair_count(*range.start() as u64 - 1, *range.end() as u64);
    let per_q: Vec<f64> = match engine {
        Engine::Geometric => {
            let modulus = coeffs.extremal_modulus().ok_or_else(|| {
                domain("the geometric engine needs the extremal sequence e(−n/Q)")
            })?;
            if pairs > GEOMETRIC_PAIR_LIMIT {
                return Err(Error::ResourceGuard(format!(
                    "{pairs} pairs exceed the closed-form limit {GEOMETRIC_PAIR_LIMIT}"
                )));
            }
            let len = coeffs.len;
            qs(&range)
                .into_par_iter()
                .map(|q| {
                    let terms = coprime_block(q)
                        .map(|a| geometric_term(a, q, modulus, len))
                        .collect::<Result<Vec<f64>>>()?;
                    Ok(pairwise_sum(&terms))
                })
                .collect::<Result<_>>()?
        }
        Engine::Direct => {
            let work = pairs.saturating_mul(coeffs.len as u128);
            if work > DIRECT_WORK_LIMIT {
                return Err(Error::ResourceGuard(format!(
                    "{pairs} pairs × N = {} exceed the direct limit {DIRECT_WORK_LIMIT}",
                    coeffs.len
                )));
            }
            let values = coeffs.materialize()?;
            qs(&range)
                .into_par_iter()
                .map(|q| {
                    let terms = coprime_block(q)
                        .map(|a| Ok(direct_with(&values, coeffs.offset, a, q)?.norm_sqr()))
                        .collect::<Result<Vec<f64>>>()?;
                    Ok(pairwise_sum(&terms))
                })
                .collect::<Result<_>>()?
        }
        Engine::Spectrum => {
            let work: u128 = range
                .clone()
                .map(|q| {
                    let tau = crate::arith::squarefree_divisors(q as u64).len() as u128;
                    (coeffs.len as u128 + (q * q) as u128) * tau
                })
                .sum();
            if work > SPECTRUM_RANGE_LIMIT {
                return Err(Error::ResourceGuard(format!(
                    "spectral work {work} exceeds the limit {SPECTRUM_RANGE_LIMIT}"
                )));
            }
            let values = coeffs.materialize()?;
            qs(&range)
                .into_par_iter()
                .map(|q| spectrum_with(&values, coeffs.offset, q))
                .collect()
        }
    };
    Ok(pairwise_sum(&per_q))
}

/// The quadratic form restricted to the given pairs, in the order given.
///
/// The spectral engine has no per-pair form, so it falls back to direct sums.
pub fn lhs_over_pairs(pairs: &[FareyPair], coeffs: &CoeffSpec, engine: Engine) -> Result<f64> {
    let terms: Vec<f64> = match engine {
        Engine::Geometric => {
            let modulus = coeffs.extremal_modulus().ok_or_else(|| {
                domain("the geometric engine needs the extremal sequence e(−n/Q)")
            })?;
            pairs
                .par_iter()
                .map(|p| geometric_term(p.a, p.q, modulus, coeffs.len))
                .collect::<Result<_>>()?
        }
        Engine::Direct | Engine::Spectrum => {
            let work = (pairs.len() as u128).saturating_mul(coeffs.len as u128);
            if work > DIRECT_WORK_LIMIT {
                return Err(Error::ResourceGuard(format!(
                    "{} pairs × N = {} exceed the direct limit {DIRECT_WORK_LIMIT}",
                    pairs.len(),
                    coeffs.len
                )));
            }
            let values = coeffs.materialize()?;
            pairs
                .par_iter()
                .map(|p| direct_with(&values, coeffs.offset, p.a, p.q).map(|s| s.norm_sqr()))
                .collect::<Result<_>>()?
        }
    };
    Ok(pairwise_sum(&terms))
}

/// One evaluation of the quadratic form with its comparators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhsReport {
    pub q_first: i128,
    pub q_last: i128,
    #[serde(rename = "M")]
    pub offset: i128,
    #[serde(rename = "N")]
    pub len: i128,
    pub coeffs: String,
    pub engine: Engine,
    pub epsilon: f64,
    pub lhs: f64,
    pub norm_sq: f64,
    /// `lhs / norm_sq`
    pub ratio: f64,
    pub implied_constant: f64,
    pub implied_constant_policy: String,
    /// Evaluated at `Q_eff = q_last`.
    pub comparators: Comparators,
}

pub fn lhs_report(
    range: RangeInclusive<i128>,
    coeffs: &CoeffSpec,
    engine: Engine,
    epsilon: f64,
) -> Result<LhsReport> {
    if !(epsilon >= 0.0) {
        return Err(domain(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    let (q_first, q_last) = (*range.start(), *range.end());
    let lhs = lhs_square_moduli(range, coeffs, engine)?;
    let norm_sq = coeffs.norm_sq();
    Ok(LhsReport {
        q_first,
        q_last,
        offset: coeffs.offset,
        len: coeffs.len,
        coeffs: coeffs.label(),
        engine,
        epsilon,
        lhs,
        norm_sq,
        ratio: lhs / norm_sq,
        implied_constant: IMPLIED_CONSTANT,
        implied_constant_policy: IMPLIED_CONSTANT_POLICY.to_string(),
        comparators: Comparators::at(q_last, coeffs.len, epsilon, norm_sq),
    })
}
