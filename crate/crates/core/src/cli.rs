//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a lemma/chain check failed or power iteration
//! did not converge (the report is still written), `2` usage, parse or I/O
//! error, `3` resource guard or exact-integer overflow.

use crate::arith::odd_primorial;
use crate::error::{domain, Error, Result};
use crate::expsum::{read_coeff_file, CoeffSpec};
use crate::farey::{clustering_ratio, enumerate_sq_exact, lemma_count_check, witness_pairs};
use crate::report::{emit_report, Format, PairsReport};
use crate::sieve::{lhs_report, sharp_constant, verify_theorem_chain, Engine, GramSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use std::ffi::OsString;
use std::path::PathBuf;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "SQSIEVE_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "sqsieve", version, about = "Large sieve with square moduli: witnesses, sums and bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,

    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EngineArg {
    Direct,
    Spectrum,
    Geometric,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Direct => Engine::Direct,
            EngineArg::Spectrum => Engine::Spectrum,
            EngineArg::Geometric => Engine::Geometric,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoeffArg {
    /// a_n = e(−n/Q)
    Extremal,
    Ones,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum RangeArg {
    /// Q < q ≤ 2Q
    Proof,
    /// 1 ≤ q ≤ Q
    Statement,
}

/// Either the index of an odd primorial or an explicit modulus.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ModulusArg {
    /// Use Q = 3·5⋯p_m.
    #[arg(long)]
    pub m: Option<usize>,
    /// Use an explicit Q.
    #[arg(long = "Q", alias = "modulus")]
    pub modulus: Option<i128>,
}

impl ModulusArg {
    fn resolve(&self) -> Result<i128> {
        match (self.m, self.modulus) {
            (Some(m), _) => Ok(odd_primorial(m)?.modulus()),
            (None, Some(q)) => Ok(q),
            (None, None) => Err(domain("one of --m or --Q is required")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witness pairs ((q²−1)/Q, q) for the m-th odd primorial.
    Witness {
        #[arg(long)]
        m: usize,
    },
    /// Every member of S(Q).
    Enumerate {
        #[command(flatten)]
        modulus: ModulusArg,
    },
    /// Check 2^m ≥ Q^{log 2/((1+ε) log log Q)}.
    Lemma {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
    /// Count fractions a/q² near 1/Q against the Q³·2δ heuristic.
    Cluster {
        #[command(flatten)]
        modulus: ModulusArg,
        /// Half-width as `num/den` or an integer; defaults to 1/Q³.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Evaluate the quadratic form over a range of square moduli.
    Lhs {
        #[command(flatten)]
        modulus: ModulusArg,
        /// Sequence length; defaults to ⌊Q³/9⌋.
        #[arg(long)]
        n: Option<i128>,
        /// Offset M.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        offset: i128,
        #[arg(long, value_enum, default_value_t = RangeArg::Proof)]
        range: RangeArg,
        /// Explicit first q (overrides --range).
        #[arg(long, requires = "q_last")]
        q_first: Option<i128>,
        #[arg(long, requires = "q_first")]
        q_last: Option<i128>,
        #[arg(long, value_enum, default_value_t = CoeffArg::Extremal, conflicts_with = "coeff_file")]
        coeffs: CoeffArg,
        /// Plain-text coefficients, one `re im` pair per line.
        #[arg(long)]
        coeff_file: Option<PathBuf>,
        /// Defaults to geometric for the extremal sequence, direct otherwise.
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
    /// Verify the lower-bound chain for the m-th odd primorial.
    Chain {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Also sum over every coprime pair in (Q, 2Q].
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = EngineArg::Geometric)]
        engine: EngineArg,
    },
    /// Top eigenvalue of the Gram matrix of all a/q², q in [q-first, q-last].
    Sharp {
        #[arg(long)]
        q_first: i128,
        #[arg(long)]
        q_last: i128,
        #[arg(long)]
        n: i128,
        #[arg(long, default_value_t = crate::sieve::sharp::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = crate::sieve::sharp::DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
}

fn parse_delta(s: &str) -> Result<Ratio<i128>> {
    let bad = || Error::Parse(format!("delta must be `num/den` or an integer, got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if den <= 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

/// Outcome of one command: whether every asserted check held.
type Outcome = Result<bool>;

fn execute(cli: &Cli) -> Outcome {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Witness { m } => {
            let p = odd_primorial(*m)?;
            let pairs = witness_pairs(&p);
            let r = PairsReport {
                modulus: p.modulus(),
                source: "witness".into(),
                count: pairs.len(),
                pairs,
            };
            emit_report(&r, format, out)?;
            Ok(true)
        }
        Command::Enumerate { modulus } => {
            let q = modulus.resolve()?;
            let pairs = enumerate_sq_exact(q)?;
            let r = PairsReport {
                modulus: q,
                source: "exact".into(),
                count: pairs.len(),
                pairs,
            };
            emit_report(&r, format, out)?;
            Ok(true)
        }
        Command::Lemma { m, epsilon } => {
            let r = lemma_count_check(*m, *epsilon)?;
            emit_report(&r, format, out)?;
            if !r.passes {
                eprintln!(
                    "sqsieve: m = {m} is not large enough for ε = {epsilon} (ε_min = {:.6})",
                    r.epsilon_min
                );
            }
            Ok(r.passes)
        }
        Command::Cluster { modulus, delta } => {
            let q = modulus.resolve()?;
            let delta = match delta {
                Some(s) => parse_delta(s)?,
                None => Ratio::new(1, crate::arith::cube(q)?),
            };
            let r = clustering_ratio(q, delta)?;
            emit_report(&r, format, out)?;
            Ok(true)
        }
        Command::Lhs {
            modulus,
            n,
            offset,
            range,
            q_first,
            q_last,
            coeffs,
            coeff_file,
            engine,
            epsilon,
        } => {
            let q = modulus.resolve()?;
            let len = match n {
                Some(n) => *n,
                None => (crate::arith::cube(q)? / 9).max(1),
            };
            let spec = match (coeff_file, coeffs) {
                (Some(path), _) => read_coeff_file(path)?,
                (None, CoeffArg::Extremal) => CoeffSpec::extremal(q, len)?,
                (None, CoeffArg::Ones) => CoeffSpec::all_ones(len)?,
            }
            .with_offset(*offset);
            let engine = engine.map(Engine::from).unwrap_or(if spec.is_extremal_for(q) {
                Engine::Geometric
            } else {
                Engine::Direct
            });
            let q_range = match (q_first, q_last, range) {
                (Some(a), Some(b), _) => *a..=*b,
                (_, _, RangeArg::Proof) => q + 1..=2 * q,
                (_, _, RangeArg::Statement) => 1..=q,
            };
            let r = lhs_report(q_range, &spec, engine, *epsilon)?;
            emit_report(&r, format, out)?;
            Ok(true)
        }
        Command::Chain {
            m,
            epsilon,
            full,
            engine,
        } => {
            let r = verify_theorem_chain(*m, *epsilon, *full, (*engine).into())?;
            emit_report(&r, format, out)?;
            for s in r.chain.iter().filter(|s| !s.passes) {
                let note = if s.asserted { "FAILED" } else { "not asserted: m not sufficiently large" };
                eprintln!("sqsieve: step {} does not hold ({note})", s.name);
            }
            Ok(r.asserted_steps_pass())
        }
        Command::Sharp {
            q_first,
            q_last,
            n,
            tolerance,
            max_iters,
        } => {
            let spec = GramSpec::from_q_range(*q_first..=*q_last, *n)?
                .with_tolerance(*tolerance)
                .with_max_iters(*max_iters);
            let r = sharp_constant(&spec)?;
            emit_report(&r, format, out)?;
            if !r.converged {
                eprintln!("sqsieve: power iteration stopped after {} iterations without converging", r.iters);
            }
            Ok(r.converged)
        }
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceGuard(_) | Error::Overflow(_) => 3,
        Error::Inconsistent(_) => 1,
        Error::Domain(_) | Error::NotCoprime(..) | Error::Parse(_) | Error::Io(_) => 2,
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        eprintln!("sqsieve: error: --workers must be at least 1");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("sqsieve: error: cannot start {workers} workers: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("sqsieve: error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_parsing() {
        assert_eq!(parse_delta("1/27").unwrap(), Ratio::new(1, 27));
        assert_eq!(parse_delta("2").unwrap(), Ratio::new(2, 1));
        assert!(parse_delta("1/0").is_err());
        assert!(parse_delta("0.1").is_err());
    }

    #[test]
    fn codes() {
        assert_eq!(exit_code(&Error::ResourceGuard(String::new())), 3);
        assert_eq!(exit_code(&Error::Parse(String::new())), 2);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
