//! Resolution of `catalog:<key>` references and file paths.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use duplicator_engine::Duplicator;
use finite_algebra::FiniteAlgebra;

const PREFIX: &str = "catalog:";

/// The catalog key of a reference, if it names one.
pub fn catalog_key(reference: &str) -> Option<&str> {
    reference.strip_prefix(PREFIX)
}

fn read(path: &str) -> Result<String> {
    if !Path::new(path).exists() {
        bail!("no such file `{path}` (catalog entries are written `{PREFIX}<key>`)");
    }
    fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
}

pub fn algebra(reference: &str) -> Result<FiniteAlgebra> {
    match catalog_key(reference) {
        Some(key) => Ok(catalog::catalog_algebra(key)?),
        None => {
            let text = read(reference)?;
            FiniteAlgebra::from_json(&text).map_err(|e| anyhow!("{reference}: {e}"))
        }
    }
}

pub fn algebras(references: &[String]) -> Result<Vec<FiniteAlgebra>> {
    references.iter().map(|r| algebra(r)).collect()
}

pub fn duplicator(reference: &str) -> Result<Duplicator> {
    match catalog_key(reference) {
        Some(key) => Ok(catalog::catalog_duplicator(key)?),
        None => {
            let text = read(reference)?;
            Duplicator::from_json(&text).map_err(|e| anyhow!("{reference}: {e}"))
        }
    }
}
