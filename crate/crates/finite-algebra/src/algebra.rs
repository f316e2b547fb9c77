use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use term_core::{table_index, Interpretation, Signature};

use crate::AlgebraError;

/// A finite algebra on the universe `0..size`, one flattened table per symbol.
///
/// Tables are row-major with the leftmost argument most significant, so the
/// entry for `(a1,…,ak)` sits at `Σ a_j · n^(k-1-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    sig: Signature,
    size: usize,
    labels: Option<Vec<String>>,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Builds and validates an algebra; `tables` follow the order of `sig`.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        let alg = FiniteAlgebra {
            name: name.into(),
            sig,
            size,
            labels,
            tables,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds an algebra by evaluating `f(symbol index, args)` on every tuple.
    pub fn from_fn(
        name: impl Into<String>,
        sig: Signature,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self, AlgebraError> {
        let mut tables = Vec::with_capacity(sig.len());
        for (i, s) in sig.symbols().iter().enumerate() {
            let mut t = Vec::with_capacity(size.pow(s.arity as u32));
            crate::for_each_tuple(size, s.arity, |args| t.push(f(i, args)));
            tables.push(t);
        }
        FiniteAlgebra::new(name, sig, size, tables, None)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        if self.size == 0 {
            return Err(AlgebraError::Invalid("universe must be non-empty".into()));
        }
        if self.tables.len() != self.sig.len() {
            return Err(AlgebraError::Invalid(format!(
                "{} table(s) for {} symbol(s)",
                self.tables.len(),
                self.sig.len()
            )));
        }
        for (s, t) in self.sig.symbols().iter().zip(&self.tables) {
            let expected = checked_pow(self.size, s.arity).ok_or_else(|| {
                AlgebraError::Invalid(format!("table for `{}` is too large", s.name))
            })?;
            if t.len() != expected {
                return Err(AlgebraError::Invalid(format!(
                    "table for `{}` has {} entries, expected {}",
                    s.name,
                    t.len(),
                    expected
                )));
            }
            if let Some(bad) = t.iter().find(|&&v| v >= self.size) {
                return Err(AlgebraError::Invalid(format!(
                    "table for `{}` contains {} outside the universe",
                    s.name, bad
                )));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.size {
                return Err(AlgebraError::Invalid(format!(
                    "{} label(s) for {} element(s)",
                    labels.len(),
                    self.size
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of element `i`, or its index when unlabelled.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&i| i < self.size),
        }
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table_at(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn op_table(&self, symbol: &str) -> Option<&[usize]> {
        self.sig.index_of(symbol).map(|i| self.tables[i].as_slice())
    }

    pub fn arity_at(&self, op: usize) -> usize {
        self.sig.symbols()[op].arity
    }

    /// Applies the operation at signature position `op`.
    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][table_index(self.size, args)]
    }

    /// Applies the named operation, panicking if it does not exist.
    pub fn apply_named(&self, symbol: &str, args: &[usize]) -> usize {
        let op = self
            .sig
            .index_of(symbol)
            .unwrap_or_else(|| panic!("no operation `{symbol}` in {}", self.name));
        self.apply(op, args)
    }

    pub fn op_index(&self, symbol: &str) -> Result<usize, AlgebraError> {
        self.sig
            .index_of(symbol)
            .ok_or_else(|| AlgebraError::MissingSymbol(symbol.to_string(), self.name.clone()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Self, AlgebraError> {
        self.labels = labels;
        self.validate()?;
        Ok(self)
    }

    /// Adds one operation with the given table.
    pub fn with_op(
        &self,
        symbol: &str,
        arity: usize,
        table: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let sig = self.sig.with_symbol(symbol, arity)?;
        let mut tables = self.tables.clone();
        tables.push(table);
        FiniteAlgebra::new(self.name.clone(), sig, self.size, tables, self.labels.clone())
    }

    /// The reduct to the named symbols, in the given order.
    pub fn reduct(&self, symbols: &[&str]) -> Result<Self, AlgebraError> {
        let sig = self.sig.restrict(symbols)?;
        let tables = symbols
            .iter()
            .map(|s| self.tables[self.sig.index_of(s).unwrap()].clone())
            .collect();
        FiniteAlgebra::new(self.name.clone(), sig, self.size, tables, self.labels.clone())
    }

    /// Renames symbols through `(old, new)` pairs; unlisted symbols keep their names.
    pub fn rename_symbols(&self, pairs: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let mut names = Vec::new();
        for s in self.sig.symbols() {
            let new = pairs
                .iter()
                .find(|(o, _)| *o == s.name)
                .map(|(_, n)| n.to_string())
                .unwrap_or_else(|| s.name.clone());
            names.push((new, s.arity));
        }
        for (old, _) in pairs {
            if !self.sig.contains(old) {
                return Err(AlgebraError::MissingSymbol(old.to_string(), self.name.clone()));
            }
        }
        let sig = Signature::new(names)?;
        FiniteAlgebra::new(
            self.name.clone(),
            sig,
            self.size,
            self.tables.clone(),
            self.labels.clone(),
        )
    }

    /// Reorders the tables to follow `sig`, which must list the same symbols.
    pub fn conform_to(&self, sig: &Signature) -> Result<Self, AlgebraError> {
        if sig.len() != self.sig.len() {
            return Err(AlgebraError::SignatureMismatch {
                left: self.sig.to_string(),
                right: sig.to_string(),
            });
        }
        let mut tables = Vec::with_capacity(sig.len());
        for s in sig.symbols() {
            match self.sig.index_of(&s.name) {
                Some(i) if self.sig.symbols()[i].arity == s.arity => {
                    tables.push(self.tables[i].clone())
                }
                _ => {
                    return Err(AlgebraError::SignatureMismatch {
                        left: self.sig.to_string(),
                        right: sig.to_string(),
                    })
                }
            }
        }
        FiniteAlgebra::new(self.name.clone(), sig.clone(), self.size, tables, self.labels.clone())
    }

    /// `self` with its tables in the symbol order of `other`, borrowed when already aligned.
    pub fn aligned_with(&self, other: &FiniteAlgebra) -> Result<Cow<'_, FiniteAlgebra>, AlgebraError> {
        if self.sig.symbols() == other.sig.symbols() {
            Ok(Cow::Borrowed(self))
        } else {
            Ok(Cow::Owned(self.conform_to(&other.sig)?))
        }
    }

    /// True when both algebras interpret the same symbols with the same arities.
    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        self.sig.len() == other.sig.len()
            && self
                .sig
                .symbols()
                .iter()
                .all(|s| other.sig.arity(&s.name) == Some(s.arity))
    }

    pub fn require_same_signature(&self, other: &FiniteAlgebra) -> Result<(), AlgebraError> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(AlgebraError::SignatureMismatch {
                left: self.sig.to_string(),
                right: other.sig.to_string(),
            })
        }
    }

    /// The algebra induced on a subset closed under all operations.
    ///
    /// Element `i` of the result is `subset[i]`.
    pub fn induced(&self, subset: &[usize], name: impl Into<String>) -> Result<Self, AlgebraError> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in subset.iter().enumerate() {
            pos[e] = i;
        }
        let mut tables = Vec::with_capacity(self.sig.len());
        for (op, s) in self.sig.symbols().iter().enumerate() {
            let mut t = Vec::with_capacity(subset.len().pow(s.arity as u32));
            let mut args = vec![0; s.arity];
            let mut failed = None;
            crate::for_each_tuple(subset.len(), s.arity, |idx| {
                for (a, &i) in args.iter_mut().zip(idx) {
                    *a = subset[i];
                }
                let v = pos[self.apply(op, &args)];
                if v == usize::MAX && failed.is_none() {
                    failed = Some(s.name.clone());
                }
                t.push(v);
            });
            if let Some(sym) = failed {
                return Err(AlgebraError::NotClosed(sym));
            }
            tables.push(t);
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| subset.iter().map(|&e| l[e].clone()).collect());
        FiniteAlgebra::new(name, self.sig.clone(), subset.len(), tables, labels)
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            name: self.name.clone(),
            signature: self
                .sig
                .symbols()
                .iter()
                .map(|s| SymbolSpec {
                    symbol: s.name.clone(),
                    arity: s.arity,
                })
                .collect(),
            size: self.size,
            labels: self.labels.clone(),
            ops: self
                .sig
                .symbols()
                .iter()
                .zip(&self.tables)
                .map(|(s, t)| (s.name.clone(), t.clone()))
                .collect(),
        }
    }

    pub fn from_file(file: AlgebraFile) -> Result<Self, AlgebraError> {
        let sig = Signature::new(file.signature.iter().map(|s| (s.symbol.clone(), s.arity)))?;
        let mut tables = Vec::with_capacity(sig.len());
        for s in sig.symbols() {
            let t = file
                .ops
                .get(&s.name)
                .ok_or_else(|| AlgebraError::Invalid(format!("no table for `{}`", s.name)))?;
            tables.push(t.clone());
        }
        if let Some(extra) = file.ops.keys().find(|k| !sig.contains(k)) {
            return Err(AlgebraError::Invalid(format!(
                "table `{extra}` is not in the signature"
            )));
        }
        FiniteAlgebra::new(file.name, sig, file.size, tables, file.labels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("algebra serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_file()).expect("algebra serialises");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| AlgebraError::Json {
            line: e.line(),
            column: e.column(),
            message: e
                .to_string()
                .trim_end_matches(&format!(" at line {} column {}", e.line(), e.column()))
                .to_string(),
        })?;
        FiniteAlgebra::from_file(file)
    }
}

fn checked_pow(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

impl Interpretation for FiniteAlgebra {
    fn size(&self) -> usize {
        self.size
    }

    fn table(&self, symbol: &str) -> Option<(usize, &[usize])> {
        self.sig
            .index_of(symbol)
            .map(|i| (self.sig.symbols()[i].arity, self.tables[i].as_slice()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub symbol: String,
    pub arity: usize,
}

/// On-disk form of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub signature: Vec<SymbolSpec>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub ops: BTreeMap<String, Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::chain;

    #[test]
    fn validation_catches_bad_tables() {
        let sig = Signature::new([("join", 2)]).unwrap();
        assert!(FiniteAlgebra::new("a", sig.clone(), 2, vec![vec![0, 1, 1]], None).is_err());
        assert!(FiniteAlgebra::new("a", sig.clone(), 2, vec![vec![0, 1, 1, 2]], None).is_err());
        assert!(FiniteAlgebra::new("a", sig.clone(), 0, vec![vec![]], None).is_err());
        assert!(FiniteAlgebra::new("a", sig, 2, vec![vec![0, 1, 1, 1]], Some(vec!["0".into()])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = chain(3);
        let back = FiniteAlgebra::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_errors_carry_position() {
        match FiniteAlgebra::from_json("{\n \"name\": 3 }") {
            Err(AlgebraError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduct_and_rename() {
        let c = chain(2);
        let r = c.reduct(&["meet"]).unwrap();
        assert_eq!(r.sig().len(), 1);
        let d = c.rename_symbols(&[("join", "meet"), ("meet", "join")]).unwrap();
        assert_eq!(d.op_table("join"), c.op_table("meet"));
    }

    #[test]
    fn induced_requires_closure() {
        let c = chain(3);
        let sub = c.induced(&[0, 2], "ends").unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.apply_named("join", &[0, 1]), 1);
        let sig = Signature::new([("succ", 1)]).unwrap();
        let s = FiniteAlgebra::new("s", sig, 3, vec![vec![1, 2, 0]], None).unwrap();
        assert!(matches!(s.induced(&[0], "x"), Err(AlgebraError::NotClosed(_))));
    }
}
