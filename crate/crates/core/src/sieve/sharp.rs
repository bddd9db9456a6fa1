//! Sharp constants by power iteration on the Gram matrix.
//!
//! For fractions `θ_1, …, θ_R` and length `N`, the best constant in
//! `Σ_r |Σ_n a_n e(θ_r n)|² ≤ Λ·Σ|a_n|²` is the top eigenvalue of the Hermitian
//! matrix `G[r,s] = Σ_{n=1}^{N} e((θ_r − θ_s)n)`.

use crate::error::{domain, Error, Result};
use crate::expsum::{geometric_sum, PhaseDelta};
use crate::sum::{pairwise_sum, pairwise_sum_complex};
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::ops::RangeInclusive;

/// Largest fraction system accepted.
pub const MAX_FRACTIONS: usize = 4000;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 100_000;

/// The fraction `a/q²` with `gcd(a, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareFraction {
    pub a: i128,
    pub q: i128,
}

impl SquareFraction {
    pub fn to_f64(self) -> f64 {
        self.a as f64 / (self.q * self.q) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramSpec {
    pub fractions: Vec<SquareFraction>,
    #[serde(rename = "N")]
    pub len: i128,
    pub tolerance: f64,
    pub max_iters: usize,
}

impl GramSpec {
    /// Validates the system: coprime, pairwise distinct, within the size guard.
    pub fn new(fractions: Vec<SquareFraction>, len: i128) -> Result<Self> {
        if fractions.is_empty() {
            return Err(domain("the fraction system is empty"));
        }
        if fractions.len() > MAX_FRACTIONS {
            return Err(Error::ResourceGuard(format!(
                "{} fractions exceed the limit {MAX_FRACTIONS}",
                fractions.len()
            )));
        }
        if len < 1 {
            return Err(domain(format!("N must be at least 1, got {len}")));
        }
        let mut seen = HashSet::new();
        for f in &fractions {
            if f.q < 1 || f.a < 1 || f.a > f.q * f.q || f.a.gcd(&f.q) != 1 {
                return Err(domain(format!("{}/{}² is not an admissible fraction", f.a, f.q)));
            }
            // coprime a/q² is in lowest terms, so equal rationals are equal pairs
            if !seen.insert(*f) {
                return Err(domain(format!("{}/{}² appears twice", f.a, f.q)));
            }
        }
        Ok(GramSpec {
            fractions,
            len,
            tolerance: DEFAULT_TOLERANCE,
            max_iters: DEFAULT_MAX_ITERS,
        })
    }

    /// Every `a/q²` with `1 ≤ a ≤ q²`, `gcd(a, q) = 1`, for `q` in the range,
    /// ordered by `(q, a)`.
    pub fn from_q_range(range: RangeInclusive<i128>, len: i128) -> Result<Self> {
        if *range.start() < 1 {
            return Err(domain("q must be positive"));
        }
        let fractions = range
            .flat_map(|q| {
                (1..=q * q)
                    .filter(move |a| a.gcd(&q) == 1)
                    .map(move |a| SquareFraction { a, q })
            })
            .take(MAX_FRACTIONS + 1)
            .collect();
        Self::new(fractions, len)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }
}

/// Dense Gram matrix, row-major.
pub fn gram_matrix(spec: &GramSpec) -> Result<Vec<Vec<Complex64>>> {
    let fr = &spec.fractions;
    fr.par_iter()
        .map(|r| {
            fr.iter()
                .map(|s| {
                    let (qr2, qs2) = (r.q * r.q, s.q * s.q);
                    let of = || Error::Overflow("Gram phase");
                    let num = r
                        .a
                        .checked_mul(qs2)
                        .zip(s.a.checked_mul(qr2))
                        .map(|(x, y)| x - y)
                        .ok_or_else(of)?;
                    let den = qr2.checked_mul(qs2).ok_or_else(of)?;
                    geometric_sum(PhaseDelta::new(num, den)?, spec.len)
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpReport {
    #[serde(rename = "R")]
    pub size: usize,
    #[serde(rename = "N")]
    pub len: i128,
    pub lambda_max: f64,
    pub iters: usize,
    pub converged: bool,
    pub tolerance: f64,
}

fn mat_vec(g: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    g.par_iter()
        .map(|row| {
            let terms: Vec<Complex64> = row.iter().zip(v).map(|(a, b)| a * b).collect();
            pairwise_sum_complex(&terms)
        })
        .collect()
}

fn norm(v: &[Complex64]) -> f64 {
    let sq: Vec<f64> = v.iter().map(|z| z.norm_sqr()).collect();
    pairwise_sum(&sq).sqrt()
}

/// Largest eigenvalue of the Gram matrix.
///
/// Starts from the normalized all-ones vector and stops once
/// `‖Gv − λv‖ ≤ tolerance·λ` with `λ = v*Gv`.
pub fn sharp_constant(spec: &GramSpec) -> Result<SharpReport> {
    let g = gram_matrix(spec)?;
    let r = g.len();
    let mut v = vec![Complex64::new(1.0 / (r as f64).sqrt(), 0.0); r];
    let mut lambda = 0.0;
    let mut converged = false;
    let mut iters = 0;
    while iters < spec.max_iters {
        iters += 1;
        let w = mat_vec(&g, &v);
        let dots: Vec<Complex64> = v.iter().zip(&w).map(|(a, b)| a.conj() * b).collect();
        lambda = pairwise_sum_complex(&dots).re;
        let resid: Vec<Complex64> = w.iter().zip(&v).map(|(a, b)| a - b * lambda).collect();
        if norm(&resid) <= spec.tolerance * lambda.abs() {
            converged = true;
            break;
        }
        let nw = norm(&w);
        if nw == 0.0 {
            break;
        }
        v = w.into_iter().map(|z| z / nw).collect();
    }
    Ok(SharpReport {
        size: r,
        len: spec.len,
        lambda_max: lambda,
        iters,
        converged,
        tolerance: spec.tolerance,
    })
}
