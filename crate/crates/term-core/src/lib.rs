//! Operation signatures, first-order terms over 1-based variables, a small
//! prefix-notation parser, and evaluation of terms over finite operation tables.

mod eval;
mod parse;
mod signature;
mod term;

pub use eval::{eval_term, table_index, CompiledTerm, Interpretation};
pub use parse::{parse_term, parse_term_with_width};
pub use signature::{is_identifier, Signature, Symbol};
pub use term::{
    check_span, free_variable_span, indexed_term, projection_term, render_term, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` takes {expected} argument(s), got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("variable indices start at 1")]
    ZeroVariable,
    #[error("index {index} exceeds width {width}")]
    OutOfRange { index: usize, width: usize },
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("assignment has {given} value(s) but the term reads {needed}")]
    ShortAssignment { given: usize, needed: usize },
    #[error("symbol `{0}` has no operation in the algebra")]
    MissingOperation(String),
    #[error("element {element} out of range for universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
}
