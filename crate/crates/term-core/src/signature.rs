use std::collections::HashMap;
use std::fmt;

use crate::TermError;

/// An operation symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with unique names.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Signature {}

/// Returns true when `name` may be used as an operation symbol.
///
/// Symbols start with a letter or underscore and continue with letters, digits,
/// underscores or primes. Names of the form `x<digits>` are reserved for variables.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
        return false;
    }
    !is_variable_name(name)
}

pub(crate) fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].chars().all(|c| c.is_ascii_digit())
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in symbols {
            sig.push(name.into(), arity)?;
        }
        Ok(sig)
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    fn push(&mut self, name: String, arity: usize) -> Result<(), TermError> {
        if !is_identifier(&name) {
            return Err(TermError::InvalidIdentifier(name));
        }
        if self.index.contains_key(&name) {
            return Err(TermError::DuplicateSymbol(name));
        }
        self.index.insert(name.clone(), self.symbols.len());
        self.symbols.push(Symbol { name, arity });
        Ok(())
    }

    /// A copy of this signature with one more symbol appended.
    pub fn with_symbol(&self, name: &str, arity: usize) -> Result<Self, TermError> {
        let mut sig = self.clone();
        sig.push(name.to_string(), arity)?;
        Ok(sig)
    }

    /// The sub-signature consisting of the named symbols, in the given order.
    pub fn restrict(&self, names: &[&str]) -> Result<Self, TermError> {
        let mut sig = Signature::default();
        for name in names {
            let arity = self
                .arity(name)
                .ok_or_else(|| TermError::UnknownSymbol(name.to_string()))?;
            sig.push(name.to_string(), arity)?;
        }
        Ok(sig)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.symbols[i].arity)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|s| s.name.as_str())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", s.name, s.arity)?;
        }
        write!(f, "}}")
    }
}
