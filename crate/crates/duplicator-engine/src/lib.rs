//! Duplicators and the constructions they induce.
//!
//! A duplicator `Γ` over a signature `Σ` is a finite set of `m`-tuples of
//! `Σ`-terms. Each tuple becomes an operation on `N^m` for every `Σ`-algebra
//! `N`, giving the power `P_Γ(N)`; under disjoint coordinate use the same
//! entries also act on mixed products `A₁ ⊙_Γ ⋯ ⊙_Γ A_m`.
//!
//! Conditions (L), (L′), (M), (P) and (D) are decided either by checking
//! supplied witness terms or by exact closure search over term functions.

mod conditions;
mod construct;
mod duplicator;
mod search;
mod smoke;

pub use conditions::{
    check_condition, check_condition_d, check_condition_l, check_condition_l_prime, check_condition_m,
    check_condition_p, CheckMode, Condition, ConditionReport, Obligation, Verdict,
};
pub use construct::{
    duplicate, duplicate_mixed, element_coordinates, element_index, lift_map, lift_morphism,
};
pub use duplicator::{
    gamma_signature, validate_duplicator, Duplicator, DuplicatorEntry, DuplicatorFile,
    EntryFile, LWitness, LWitnessFile, Mode, PWitness, PWitnessFile, Violation, Witnesses,
    WitnessesFile,
};
pub use search::{
    clone_search, Budget, Certificate, FunctionSpace, MultiOutcome, Restriction, SearchOutcome,
    Target,
};
pub use smoke::{equivalence_smoke_test, SmokeClause, SmokeReport};

use finite_algebra::AlgebraError;
use term_core::TermError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid duplicator: {0}")]
    Invalid(String),
    #[error("{0}")]
    Mode(String),
    #[error("lifted map is not a homomorphism: {0}")]
    Lift(String),
    #[error("{what} exceeds the limit of {limit}")]
    Resource { what: String, limit: usize },
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}
