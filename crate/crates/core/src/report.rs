//! Deterministic CSV and JSON emission.
//!
//! CSV: one header row, fixed column order per report type, `.` as decimal
//! separator, reals with 17 significant digits. JSON: field names follow the
//! report structs, arrays keep the order produced by the computing module.

use crate::error::{Error, Result};
use crate::farey::{ClusterReport, FareyPair, LemmaReport};
use crate::sieve::{LhsReport, SharpReport, SieveReport};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Formats a real with 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// A report with a flat CSV rendering.
pub trait Tabular {
    fn header() -> &'static [&'static str];
    fn rows(&self) -> Vec<Vec<String>>;
}

/// A list of `S(Q)` members, either witnesses or the full enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairsReport {
    #[serde(rename = "Q")]
    pub modulus: i128,
    /// `"witness"` or `"exact"`.
    pub source: String,
    pub count: usize,
    pub pairs: Vec<FareyPair>,
}

impl Tabular for PairsReport {
    fn header() -> &'static [&'static str] {
        &["q", "a", "discrepancy"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.pairs
            .iter()
            .map(|p| vec![p.q.to_string(), p.a.to_string(), p.discrepancy.to_string()])
            .collect()
    }
}

impl Tabular for LemmaReport {
    fn header() -> &'static [&'static str] {
        &["m", "Q", "witness_count", "exact_count", "epsilon", "bound", "epsilon_min", "passes"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.m.to_string(),
            self.modulus.to_string(),
            self.witness_count.to_string(),
            opt(self.exact_count),
            real(self.epsilon),
            real(self.bound),
            real(self.epsilon_min),
            self.passes.to_string(),
        ]]
    }
}

impl Tabular for ClusterReport {
    fn header() -> &'static [&'static str] {
        &["Q", "delta_num", "delta_den", "observed", "expected_heuristic", "ratio", "implied_constant"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.modulus.to_string(),
            self.delta_num.to_string(),
            self.delta_den.to_string(),
            self.observed.to_string(),
            real(self.expected_heuristic),
            opt_real(self.ratio),
            real(self.implied_constant),
        ]]
    }
}

impl Tabular for LhsReport {
    fn header() -> &'static [&'static str] {
        &[
            "q_first", "q_last", "M", "N", "coeffs", "engine", "epsilon", "lhs", "norm_sq",
            "ratio", "Q_eff", "classical_rhs", "conjectured_rhs", "best_known_rhs",
            "implied_constant",
        ]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.q_first.to_string(),
            self.q_last.to_string(),
            self.offset.to_string(),
            self.len.to_string(),
            self.coeffs.clone(),
            self.engine.to_string(),
            real(self.epsilon),
            real(self.lhs),
            real(self.norm_sq),
            real(self.ratio),
            self.comparators.q_eff.to_string(),
            real(self.comparators.classical_rhs),
            real(self.comparators.conjectured_rhs),
            real(self.comparators.best_known_rhs),
            real(self.implied_constant),
        ]]
    }
}

/// One row per chain step, then one per comparator (relation `le_bound`,
/// `passes` left empty since the bounds carry unknown constants).
impl Tabular for SieveReport {
    fn header() -> &'static [&'static str] {
        &[
            "m", "Q", "N", "epsilon", "engine", "C", "D_effective", "implied_constant", "item",
            "relation", "lhs", "rhs", "passes", "asserted",
        ]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        let prefix = [
            self.m.to_string(),
            self.modulus.to_string(),
            self.len.to_string(),
            real(self.epsilon),
            self.engine.to_string(),
            real(self.c),
            real(self.d_effective),
            real(self.implied_constant),
        ];
        let row = |item: &str, rel: &str, lhs: f64, rhs: f64, passes: String, asserted: bool| {
            let mut r = prefix.to_vec();
            r.extend([
                item.to_string(),
                rel.to_string(),
                real(lhs),
                real(rhs),
                passes,
                asserted.to_string(),
            ]);
            r
        };
        let mut rows: Vec<Vec<String>> = self
            .chain
            .iter()
            .map(|s| {
                let rel = match s.relation {
                    crate::sieve::Relation::Ge => "ge",
                    crate::sieve::Relation::Eq => "eq",
                };
                row(&s.name, rel, s.lhs, s.rhs, s.passes.to_string(), s.asserted)
            })
            .collect();
        let lhs = self.lhs();
        let c = &self.comparators;
        for (name, v) in [
            ("classical_rhs", c.classical_rhs),
            ("conjectured_rhs", c.conjectured_rhs),
            ("best_known_rhs", c.best_known_rhs),
        ] {
            rows.push(row(name, "le_bound", lhs, v, String::new(), false));
        }
        rows
    }
}

impl Tabular for SharpReport {
    fn header() -> &'static [&'static str] {
        &["R", "N", "lambda_max", "iters", "converged", "tolerance"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.size.to_string(),
            self.len.to_string(),
            real(self.lambda_max),
            self.iters.to_string(),
            self.converged.to_string(),
            real(self.tolerance),
        ]]
    }
}

/// Renders a report into bytes.
pub fn render<R: Tabular + Serialize>(report: &R, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(R::header()).map_err(io)?;
            for row in report.rows() {
                w.write_record(&row).map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

/// Writes a report to `path`, or to standard output when `path` is `None`.
pub fn emit_report<R: Tabular + Serialize>(
    report: &R,
    format: Format,
    path: Option<&Path>,
) -> Result<()> {
    let bytes = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
