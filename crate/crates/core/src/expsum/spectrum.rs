use crate::arith::squarefree_divisors;
use crate::error::{domain, Error, Result};
use crate::expsum::{unit, CoeffSpec};
use crate::sum::{pairwise_sum, pairwise_sum_complex};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Upper bound on `Σ_{d|q, μ(d)≠0} (N + q²/d)` for one spectrum evaluation.
pub const SPECTRUM_WORK_LIMIT: u128 = 2_000_000_000;

/// Transforms shorter than this are evaluated directly.
const DIRECT_DFT_BELOW: usize = 64;

/// `|X_b|²` for `X_b = Σ_s c_s e(bs/L)`, `b = 0..L`.
pub fn power_spectrum(c: &[Complex64]) -> Vec<f64> {
    let len = c.len();
    if len < DIRECT_DFT_BELOW {
        let l = len as i128;
        return (0..l)
            .map(|b| {
                let terms: Vec<Complex64> = c
                    .iter()
                    .enumerate()
                    .map(|(s, &cs)| cs * unit(b * s as i128 % l, l))
                    .collect();
                pairwise_sum_complex(&terms).norm_sqr()
            })
            .collect();
    }
    // the inverse transform carries the positive exponent; no normalization
    let fft = FftPlanner::new().plan_fft_inverse(len);
    let mut buf = c.to_vec();
    fft.process(&mut buf);
    buf.iter().map(|z| z.norm_sqr()).collect()
}

fn fold(values: &[Complex64], offset: i128, len: usize) -> Vec<Complex64> {
    let l = len as i128;
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &v) in values.iter().enumerate() {
        out[(offset + 1 + i as i128).rem_euclid(l) as usize] += v;
    }
    out
}

/// `Σ_{1 ≤ a ≤ q², gcd(a,q)=1} |Σ_n a_n e(an/q²)|²` through Fourier transforms.
///
/// With `c_r` the coefficients folded modulo `q²`, the frequencies divisible by
/// a squarefree `d | q` are exactly the spectrum of the sequence refolded modulo
/// `q²/d`. Inclusion–exclusion `Σ_{d|q} μ(d)·P_d` leaves the coprime ones.
pub fn coprime_power_spectrum(q: i128, coeffs: &CoeffSpec) -> Result<f64> {
    if q < 1 {
        return Err(domain(format!("q must be positive, got {q}")));
    }
    let divisors = squarefree_divisors(q as u64);
    let q2 = q.checked_mul(q).ok_or(Error::Overflow("q²"))?;
    let work: u128 = divisors
        .iter()
        .map(|&(d, _)| coeffs.len as u128 + (q2 as u128) / d as u128)
        .sum();
    if work > SPECTRUM_WORK_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "spectrum for q = {q}, N = {} needs {work} steps, limit {SPECTRUM_WORK_LIMIT}",
            coeffs.len
        )));
    }
    let values = coeffs.materialize()?;
    Ok(spectrum_with(&values, coeffs.offset, q))
}

pub(crate) fn spectrum_with(values: &[Complex64], offset: i128, q: i128) -> f64 {
    let q2 = (q * q) as usize;
    let folded = fold(values, offset, q2);
    let signed: Vec<f64> = squarefree_divisors(q as u64)
        .into_iter()
        .map(|(d, mu)| {
            let refolded = fold(&folded, -1, q2 / d as usize);
            f64::from(mu) * pairwise_sum(&power_spectrum(&refolded))
        })
        .collect();
    pairwise_sum(&signed)
}
