//! Numerical laboratory for the large sieve with square moduli.
//!
//! The crate builds the extremal configurations showing that the conjectured
//! bound
//!
//! ```text
//! Σ_{q ≤ Q} Σ_{(a,q)=1, a ≤ q²} |Σ_n a_n e(an/q²)|²  ≪  Q^ε (Q³ + N) Σ |a_n|²
//! ```
//!
//! cannot hold without the `Q^ε`, and checks every step of that argument with
//! exact integers wherever set membership is concerned:
//!
//! * [`arith`]: odd primorials `Q = 3·5⋯p_m`, CRT, Möbius, and the `2^m`
//!   square roots of unity modulo `Q` lifted into `(Q, 2Q]`;
//! * [`farey`]: the set `S(Q)` of fractions `a/q²` within `1/Q³` of `1/Q`,
//!   built from those roots and, independently, by scanning;
//! * [`expsum`]: inner sums by direct summation, closed form, or Fourier
//!   spectra with Möbius inclusion–exclusion;
//! * [`sieve`]: the full quadratic form, comparator bounds, the end-to-end
//!   chain and Gram-matrix sharp constants;
//! * [`report`] and [`cli`]: deterministic CSV/JSON output and the `sqsieve`
//!   binary.
//!
//! ```
//! use sqsieve::{arith, farey};
//!
//! let p = arith::odd_primorial(2)?;
//! let witnesses = farey::witness_pairs(&p);
//! assert_eq!(witnesses.len(), 4);
//! assert_eq!(farey::enumerate_sq_exact(15)?, witnesses);
//! # Ok::<(), sqsieve::Error>(())
//! ```
//!
//! A guide with worked examples lives in the `book/` directory; every Rust
//! snippet in it is compiled and run as a doctest of this crate.

pub mod arith;
pub mod cli;
mod error;
pub mod expsum;
pub mod farey;
pub mod report;
pub mod sieve;
pub mod sum;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    struct Arithmetic;
    #[doc = include_str!("../../../book/src/farey.md")]
    struct Farey;
    #[doc = include_str!("../../../book/src/sums.md")]
    struct Sums;
    #[doc = include_str!("../../../book/src/chain.md")]
    struct Chain;
    #[doc = include_str!("../../../book/src/sharp.md")]
    struct Sharp;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
