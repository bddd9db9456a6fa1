//! The large-sieve quadratic form for square moduli: evaluation engines,
//! comparator bounds, the end-to-end chain check, and sharp constants.

pub mod bounds;
pub mod chain;
pub mod lhs;
pub mod sharp;

pub use bounds::{
    best_known_rhs, classical_rhs, conjectured_rhs, d_effective, theorem_factor, Comparators,
    IMPLIED_CONSTANT, IMPLIED_CONSTANT_POLICY,
};
pub use chain::{verify_theorem_chain, ChainStep, Relation, SieveReport, FULL_PAIR_LIMIT};
pub use lhs::{lhs_over_pairs, lhs_report, lhs_square_moduli, Engine, LhsReport};
pub use sharp::{gram_matrix, sharp_constant, GramSpec, SharpReport, SquareFraction};
