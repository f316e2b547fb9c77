//! Finite algebras as flattened operation tables, with the standard
//! computations on them: products, subalgebras, congruences, homomorphisms,
//! identities, orders, residua, free algebras and separation.

mod algebra;
pub mod builders;
mod congruence;
mod free;
mod hom;
mod identity;
mod order;
mod product;
mod separation;
mod sub;
mod tuples;

pub use algebra::{AlgebraFile, FiniteAlgebra, SymbolSpec};
pub use congruence::{
    compatibility_violation, congruence_generated, congruence_lattice, is_congruence,
    is_subdirectly_irreducible, principal_congruence, quotient_by, Congruence,
    CongruenceLattice,
};
pub use free::{free_algebra, FreeAlgebraResult};
pub use hom::{
    enumerate_homomorphisms, extend_from_generators, find_isomorphism, is_homomorphism,
    HomEnumeration, Homomorphism,
};
pub use identity::{check_identity, check_identity_with, IdentityOutcome};
pub use order::{
    check_antitonicity, check_monotonicity, induced_order, residuum, MonotonicityOutcome, Order,
    ResiduumOutcome,
};
pub use product::{direct_product, dual_of, product_coordinates, product_index};
pub use separation::{separates_into, Separation};
pub use sub::{
    all_subuniverses, closure, extend_closure, generating_set, subalgebra_generated, Closure,
    Derivation,
};
pub use tuples::{for_each_new_tuple, for_each_tuple, for_each_tuple_in};

use term_core::TermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("symbol `{0}` is missing from `{1}`")]
    MissingSymbol(String, String),
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("symbols `{0}` and `{1}` have different arities")]
    ArityMismatch(String, String),
    #[error("subset is not closed under `{0}`")]
    NotClosed(String),
    #[error("not a lattice order: {0}")]
    NotAnOrder(String),
    #[error("element {0} out of range for universe of size {1}")]
    ElementOutOfRange(usize, usize),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },
    #[error("incompatible partition: {0}")]
    Incompatible(String),
    #[error("`{0}` has fewer than two elements")]
    TooSmall(String),
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Resource guards shared by the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of assignments evaluated by an identity check.
    pub eval_cap: usize,
    /// Largest universe for which the congruence lattice is computed.
    pub con_universe_cap: usize,
    /// Maximum number of congruences collected.
    pub con_count_cap: usize,
    /// Maximum number of elements materialised by `free_algebra`.
    pub free_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            eval_cap: 10_000_000,
            con_universe_cap: 64,
            con_count_cap: 1_000_000,
            free_cap: 100_000,
        }
    }
}
