use crate::error::{domain, Error, Result};
use crate::expsum::unit;
use crate::sum::pairwise_sum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Largest `N` that may be materialized as a coefficient vector.
pub const MATERIALIZE_LIMIT: i128 = 100_000_000;

/// Largest number of lines read from a coefficient file.
pub const COEFF_FILE_LINE_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoeffKind {
    /// `a_n = e(−n/Q)`.
    Extremal {
        #[serde(rename = "Q")]
        modulus: i128,
    },
    AllOnes,
    /// `values[i]` is `a_{M+1+i}`.
    Custom { values: Vec<Complex64> },
}

/// A coefficient sequence `a_{M+1}, …, a_{M+N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSpec {
    pub kind: CoeffKind,
    /// `M`
    pub offset: i128,
    /// `N`
    pub len: i128,
}

impl CoeffSpec {
    pub fn extremal(modulus: i128, len: i128) -> Result<Self> {
        if modulus < 1 {
            return Err(domain(format!("Q must be positive, got {modulus}")));
        }
        Self::checked(CoeffKind::Extremal { modulus }, 0, len)
    }

    pub fn all_ones(len: i128) -> Result<Self> {
        Self::checked(CoeffKind::AllOnes, 0, len)
    }

    pub fn custom(values: Vec<Complex64>) -> Result<Self> {
        let len = values.len() as i128;
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("coefficients must be finite"));
        }
        Self::checked(CoeffKind::Custom { values }, 0, len)
    }

    pub fn with_offset(mut self, offset: i128) -> Self {
        self.offset = offset;
        self
    }

    fn checked(kind: CoeffKind, offset: i128, len: i128) -> Result<Self> {
        if len < 1 {
            return Err(domain(format!("N must be at least 1, got {len}")));
        }
        Ok(CoeffSpec { kind, offset, len })
    }

    pub fn is_extremal_for(&self, modulus: i128) -> bool {
        matches!(self.kind, CoeffKind::Extremal { modulus: m } if m == modulus)
    }

    pub fn extremal_modulus(&self) -> Option<i128> {
        match self.kind {
            CoeffKind::Extremal { modulus } => Some(modulus),
            _ => None,
        }
    }

    /// Index of the last coefficient, `M + N`.
    pub fn last_index(&self) -> Result<i128> {
        self.offset
            .checked_add(self.len)
            .ok_or(Error::Overflow("M + N"))
    }

    /// `a_n` for `M < n ≤ M + N`.
    pub fn coefficient(&self, n: i128) -> Complex64 {
        debug_assert!(n > self.offset && n <= self.offset + self.len);
        match &self.kind {
            CoeffKind::Extremal { modulus } => unit(-n, *modulus),
            CoeffKind::AllOnes => Complex64::new(1.0, 0.0),
            CoeffKind::Custom { values } => values[(n - self.offset - 1) as usize],
        }
    }

    /// All coefficients in index order.
    pub fn materialize(&self) -> Result<Vec<Complex64>> {
        if self.len > MATERIALIZE_LIMIT {
            return Err(Error::ResourceGuard(format!(
                "N = {} exceeds the materialization limit {MATERIALIZE_LIMIT}",
                self.len
            )));
        }
        self.last_index()?;
        if let CoeffKind::Custom { values } = &self.kind {
            return Ok(values.clone());
        }
        Ok((1..=self.len).map(|i| self.coefficient(self.offset + i)).collect())
    }

    /// `Σ |a_n|²`; exactly `N` for unimodular sequences.
    pub fn norm_sq(&self) -> f64 {
        match &self.kind {
            CoeffKind::Extremal { .. } | CoeffKind::AllOnes => self.len as f64,
            CoeffKind::Custom { values } => {
                let sq: Vec<f64> = values.iter().map(|z| z.norm_sqr()).collect();
                pairwise_sum(&sq)
            }
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            CoeffKind::Extremal { modulus } => format!("extremal({modulus})"),
            CoeffKind::AllOnes => "all_ones".into(),
            CoeffKind::Custom { .. } => "custom".into(),
        }
    }
}

/// Parses the coefficient text format: one `re im` pair per line, blank lines
/// and lines starting with `#` skipped.
pub fn parse_coeffs(text: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno >= COEFF_FILE_LINE_LIMIT {
            return Err(Error::ResourceGuard(format!(
                "coefficient file longer than {COEFF_FILE_LINE_LIMIT} lines"
            )));
        }
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected `re im`, got {line:?}", lineno + 1));
        let mut it = line.split_whitespace();
        let re: f64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let im: f64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

pub fn read_coeff_file(path: &Path) -> Result<CoeffSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let values = parse_coeffs(&text)?;
    if values.is_empty() {
        return Err(Error::Parse(format!("{}: no coefficients", path.display())));
    }
    CoeffSpec::custom(values)
}
