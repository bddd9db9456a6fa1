//! Upper-bound comparators and the theorem's growth factor.
//!
//! Comparator formulas are stated up to an implied constant, which is taken
//! to be 1 here and labelled as such in every report.

use crate::error::{domain, Result};
use crate::expsum::no_cancellation_constant;
use serde::{Deserialize, Serialize};

/// Implied constant used for all `≪` comparators.
pub const IMPLIED_CONSTANT: f64 = 1.0;

pub const IMPLIED_CONSTANT_POLICY: &str = "up to implied constant; implied constant set to 1";

/// `D = C²/10` with `C = cos(2π/9)`.
pub fn d_effective() -> f64 {
    let c = no_cancellation_constant();
    c * c / 10.0
}

/// Classical large sieve: `(Q² + N − 1)·‖a‖²`.
pub fn classical_rhs(q_eff: i128, len: i128, norm_sq: f64) -> f64 {
    let q = q_eff as f64;
    (q * q + len as f64 - 1.0) * norm_sq
}

/// Conjectured square-moduli bound: `Q^ε·(Q³ + N)·‖a‖²`.
pub fn conjectured_rhs(q_eff: i128, len: i128, epsilon: f64, norm_sq: f64) -> f64 {
    let q = q_eff as f64;
    IMPLIED_CONSTANT * q.powf(epsilon) * (q.powi(3) + len as f64) * norm_sq
}

/// Best known square-moduli bound:
/// `(QN)^ε·(Q³ + N + min(√Q·N, √N·Q²))·‖a‖²`.
pub fn best_known_rhs(q_eff: i128, len: i128, epsilon: f64, norm_sq: f64) -> f64 {
    let q = q_eff as f64;
    let n = len as f64;
    let cross = (q.sqrt() * n).min(n.sqrt() * q * q);
    IMPLIED_CONSTANT * (q * n).powf(epsilon) * (q.powi(3) + n + cross) * norm_sq
}

/// `Q^{log 2 / ((1+ε) log log Q)}`.
pub fn theorem_factor(modulus: i128, epsilon: f64) -> Result<f64> {
    if modulus < 3 {
        return Err(domain(format!("Q must be at least 3, got {modulus}")));
    }
    crate::farey::count_bound(modulus as f64, epsilon)
}

/// The three comparators evaluated at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparators {
    pub q_eff: i128,
    pub classical_rhs: f64,
    pub conjectured_rhs: f64,
    pub best_known_rhs: f64,
}

impl Comparators {
    pub fn at(q_eff: i128, len: i128, epsilon: f64, norm_sq: f64) -> Self {
        Comparators {
            q_eff,
            classical_rhs: classical_rhs(q_eff, len, norm_sq),
            conjectured_rhs: conjectured_rhs(q_eff, len, epsilon, norm_sq),
            best_known_rhs: best_known_rhs(q_eff, len, epsilon, norm_sq),
        }
    }
}
