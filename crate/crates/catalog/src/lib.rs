//! Named finite algebras, duplicators and axiom suites.
//!
//! Keys are matched ignoring underscores, so `2Du` and `2_Du` name the same
//! algebra. Shipped JSON copies of every algebra and duplicator live under
//! `data/` and are checked against the builders by the test suite.

mod algebras;
mod duplicators;
mod suites;

use std::path::PathBuf;

use duplicator_engine::{Condition, Duplicator, EngineError};
use finite_algebra::{AlgebraError, FiniteAlgebra};
use term_core::TermError;

pub use suites::{
    check_suite, check_suite_with, Axiom, AxiomKind, AxiomOutcome, AxiomResult, AxiomSuite, Side,
    SuiteReport, DEFAULT_EVAL_CAP,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Algebra,
    Duplicator,
    AxiomSuite,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Duplicator => "duplicator",
            Kind::AxiomSuite => "axiom-suite",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Algebra(FiniteAlgebra),
    Duplicator(Duplicator),
    AxiomSuite(AxiomSuite),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub kind: Kind,
    pub payload: Payload,
    pub provenance: String,
}

/// A listed key without its payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    pub key: &'static str,
    pub kind: Kind,
    pub provenance: &'static str,
}

/// What a duplicator is expected to do over its base class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicatorProfile {
    pub base_class: Vec<&'static str>,
    pub holds: Vec<Condition>,
    pub fails: Vec<Condition>,
}

fn normalize(key: &str) -> String {
    key.chars().filter(|&c| c != '_').collect()
}

fn find_by<'a, T>(items: &'a [T], key: &str, name: impl Fn(&T) -> &str) -> Option<&'a T> {
    let k = normalize(key);
    items.iter().find(|i| normalize(name(i)) == k)
}

pub(crate) fn find_algebra(key: &str) -> Result<&'static algebras::AlgebraSpec, CatalogError> {
    find_by(algebras::ALGEBRAS, key, |s| s.key).ok_or_else(|| CatalogError::UnknownKey(key.into()))
}

pub(crate) fn find_duplicator(
    key: &str,
) -> Result<&'static duplicators::DuplicatorSpec, CatalogError> {
    find_by(duplicators::DUPLICATORS, key, |s| s.key)
        .ok_or_else(|| CatalogError::UnknownKey(key.into()))
}

pub fn catalog_algebra(key: &str) -> Result<FiniteAlgebra, CatalogError> {
    (find_algebra(key)?.build)()
}

pub fn catalog_duplicator(key: &str) -> Result<Duplicator, CatalogError> {
    (find_duplicator(key)?.build)()
}

pub fn catalog_axiom_suite(key: &str) -> Result<AxiomSuite, CatalogError> {
    suites::suite(key).ok_or_else(|| CatalogError::UnknownKey(key.into()))
}

/// The suite an algebra is expected to satisfy.
pub fn intended_suite(algebra_key: &str) -> Result<&'static str, CatalogError> {
    Ok(find_algebra(algebra_key)?.suite)
}

pub fn duplicator_profile(key: &str) -> Result<DuplicatorProfile, CatalogError> {
    let s = find_duplicator(key)?;
    Ok(DuplicatorProfile {
        base_class: s.base_class.to_vec(),
        holds: s.holds.to_vec(),
        fails: s.fails.to_vec(),
    })
}

/// All keys of the given kind, or every key when `kind` is `None`, in catalog order.
pub fn catalog_list(kind: Option<Kind>) -> Vec<Listing> {
    let mut out = Vec::new();
    if kind.is_none_or(|k| k == Kind::Algebra) {
        out.extend(algebras::ALGEBRAS.iter().map(|s| Listing {
            key: s.key,
            kind: Kind::Algebra,
            provenance: s.provenance,
        }));
    }
    if kind.is_none_or(|k| k == Kind::Duplicator) {
        out.extend(duplicators::DUPLICATORS.iter().map(|s| Listing {
            key: s.key,
            kind: Kind::Duplicator,
            provenance: s.provenance,
        }));
    }
    if kind.is_none_or(|k| k == Kind::AxiomSuite) {
        out.extend(suites::SUITES.iter().map(|&(key, provenance)| Listing {
            key,
            kind: Kind::AxiomSuite,
            provenance,
        }));
    }
    out
}

/// Looks a key up among algebras, then duplicators, then suites.
pub fn catalog_entry(key: &str) -> Result<CatalogEntry, CatalogError> {
    if let Ok(s) = find_algebra(key) {
        return Ok(CatalogEntry {
            key: s.key.into(),
            kind: Kind::Algebra,
            payload: Payload::Algebra((s.build)()?),
            provenance: s.provenance.into(),
        });
    }
    if let Ok(s) = find_duplicator(key) {
        return Ok(CatalogEntry {
            key: s.key.into(),
            kind: Kind::Duplicator,
            payload: Payload::Duplicator((s.build)()?),
            provenance: s.provenance.into(),
        });
    }
    let listing = catalog_list(Some(Kind::AxiomSuite))
        .into_iter()
        .find(|l| l.key == key)
        .ok_or_else(|| CatalogError::UnknownKey(key.into()))?;
    Ok(CatalogEntry {
        key: listing.key.into(),
        kind: Kind::AxiomSuite,
        payload: Payload::AxiomSuite(catalog_axiom_suite(key)?),
        provenance: listing.provenance.into(),
    })
}

/// Directory holding the shipped JSON copies (`algebras/`, `duplicators/`).
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// File name used for a key in the data directory.
pub fn data_file_name(key: &str) -> String {
    let safe: String = key
        .chars()
        .map(|c| match c {
            '^' => '_',
            '+' => 'p',
            '-' => 'm',
            c => c,
        })
        .collect();
    format!("{safe}.json")
}
