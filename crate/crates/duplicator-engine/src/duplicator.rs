use std::collections::BTreeSet;
use std::fmt;

use finite_algebra::SymbolSpec;
use serde::{Deserialize, Serialize};
use term_core::{is_identifier, parse_term, Signature, Term};

use crate::EngineError;

/// Whether coordinates may read each other (`linked`) or must stay apart (`disjoint`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Linked,
    Disjoint,
}

/// One operation symbol of the duplicated language: an `m`-tuple of base terms.
///
/// Argument `i` (1-based) contributes base variables `m(i-1)+1 … m·i`; the
/// variable for coordinate `j` of argument `i` is `x_{m(i-1)+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicatorEntry {
    pub name: String,
    pub arity: usize,
    pub terms: Vec<Term>,
}

impl DuplicatorEntry {
    /// The base variable index of coordinate `coord` of argument `arg` (both 1-based).
    pub fn variable(m: usize, arg: usize, coord: usize) -> usize {
        m * (arg - 1) + coord
    }
}

/// `π_coordinate(term(δx1, …, δxk)) = symbol(x1, …, xk)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LWitness {
    pub symbol: String,
    pub coordinate: usize,
    pub term: Term,
}

/// A unary term with `π_i(term(a)) = a_{σ(i)}`, `σ` given by its images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PWitness {
    pub permutation: Vec<usize>,
    pub term: Term,
}

/// Witness terms written in the duplicated language.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub l: Vec<LWitness>,
    pub m: Option<Term>,
    pub p: Vec<PWitness>,
    /// Names of the algebras the witnesses were derived for.
    pub targets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duplicator {
    pub name: String,
    pub base_sig: Signature,
    pub m: usize,
    pub mode: Mode,
    pub entries: Vec<DuplicatorEntry>,
    pub witnesses: Witnesses,
}

impl Duplicator {
    pub fn new(name: impl Into<String>, base_sig: Signature, m: usize, mode: Mode) -> Self {
        Duplicator {
            name: name.into(),
            base_sig,
            m,
            mode,
            entries: Vec::new(),
            witnesses: Witnesses::default(),
        }
    }

    /// Adds an entry whose coordinate terms are parsed against the base signature.
    pub fn with_entry(
        mut self,
        name: &str,
        arity: usize,
        terms: &[&str],
    ) -> Result<Self, EngineError> {
        let parsed = terms
            .iter()
            .map(|t| parse_term(t, &self.base_sig))
            .collect::<Result<Vec<_>, _>>()?;
        self.entries.push(DuplicatorEntry { name: name.to_string(), arity, terms: parsed });
        Ok(self)
    }

    pub fn with_l_witness(
        mut self,
        symbol: &str,
        coordinate: usize,
        term: &str,
    ) -> Result<Self, EngineError> {
        let term = parse_term(term, &self.gamma_signature()?)?;
        self.witnesses.l.push(LWitness { symbol: symbol.to_string(), coordinate, term });
        Ok(self)
    }

    pub fn with_m_witness(mut self, term: &str) -> Result<Self, EngineError> {
        self.witnesses.m = Some(parse_term(term, &self.gamma_signature()?)?);
        Ok(self)
    }

    pub fn with_p_witness(mut self, permutation: &[usize], term: &str) -> Result<Self, EngineError> {
        let term = parse_term(term, &self.gamma_signature()?)?;
        self.witnesses.p.push(PWitness { permutation: permutation.to_vec(), term });
        Ok(self)
    }

    pub fn with_targets(mut self, targets: &[&str]) -> Self {
        self.witnesses.targets = targets.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn entry(&self, name: &str) -> Option<&DuplicatorEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The signature of the duplicated language: one symbol per entry.
    pub fn gamma_signature(&self) -> Result<Signature, EngineError> {
        Ok(Signature::new(self.entries.iter().map(|e| (e.name.as_str(), e.arity)))?)
    }

    pub fn to_file(&self) -> DuplicatorFile {
        DuplicatorFile {
            name: self.name.clone(),
            base_signature: self
                .base_sig
                .symbols()
                .iter()
                .map(|s| SymbolSpec { symbol: s.name.clone(), arity: s.arity })
                .collect(),
            m: self.m,
            mode: self.mode,
            entries: self
                .entries
                .iter()
                .map(|e| EntryFile {
                    name: e.name.clone(),
                    arity: e.arity,
                    terms: e.terms.iter().map(Term::to_string).collect(),
                })
                .collect(),
            witnesses: WitnessesFile {
                l: self
                    .witnesses
                    .l
                    .iter()
                    .map(|w| LWitnessFile {
                        symbol: w.symbol.clone(),
                        coordinate: w.coordinate,
                        term: w.term.to_string(),
                    })
                    .collect(),
                m: self.witnesses.m.as_ref().map(Term::to_string),
                p: self
                    .witnesses
                    .p
                    .iter()
                    .map(|w| PWitnessFile {
                        permutation: w.permutation.clone(),
                        term: w.term.to_string(),
                    })
                    .collect(),
                targets: self.witnesses.targets.clone(),
            },
        }
    }

    pub fn from_file(file: DuplicatorFile) -> Result<Self, EngineError> {
        let base_sig =
            Signature::new(file.base_signature.iter().map(|s| (s.symbol.as_str(), s.arity)))?;
        let mut d = Duplicator::new(file.name, base_sig, file.m, file.mode);
        for e in &file.entries {
            let terms: Vec<&str> = e.terms.iter().map(String::as_str).collect();
            d = d.with_entry(&e.name, e.arity, &terms)?;
        }
        for w in &file.witnesses.l {
            d = d.with_l_witness(&w.symbol, w.coordinate, &w.term)?;
        }
        if let Some(m) = &file.witnesses.m {
            d = d.with_m_witness(m)?;
        }
        for w in &file.witnesses.p {
            d = d.with_p_witness(&w.permutation, &w.term)?;
        }
        d.witnesses.targets = file.witnesses.targets;
        Ok(d)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("duplicator files serialise")
    }

    pub fn from_json(text: &str) -> Result<Self, EngineError> {
        let file: DuplicatorFile = serde_json::from_str(text).map_err(|e| EngineError::Json {
            line: e.line(),
            column: e.column(),
            message: e
                .to_string()
                .trim_end_matches(&format!(" at line {} column {}", e.line(), e.column()))
                .to_string(),
        })?;
        Duplicator::from_file(file)
    }
}

/// On-disk form of a duplicator; all terms are kept as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuplicatorFile {
    pub name: String,
    pub base_signature: Vec<SymbolSpec>,
    pub m: usize,
    pub mode: Mode,
    pub entries: Vec<EntryFile>,
    #[serde(default)]
    pub witnesses: WitnessesFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub name: String,
    pub arity: usize,
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessesFile {
    #[serde(rename = "L", default, skip_serializing_if = "Vec::is_empty")]
    pub l: Vec<LWitnessFile>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(rename = "P", default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<PWitnessFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LWitnessFile {
    pub symbol: String,
    pub coordinate: usize,
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PWitnessFile {
    pub permutation: Vec<usize>,
    pub term: String,
}

/// A structural problem found by [`validate_duplicator`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.entry {
            Some(e) => write!(f, "entry `{e}`: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

pub fn gamma_signature(g: &Duplicator) -> Result<Signature, EngineError> {
    g.gamma_signature()
}

/// The first variable of `t` that breaks disjointness for coordinate `coord`.
pub(crate) fn disjointness_breach(t: &Term, m: usize, coord: usize) -> Option<usize> {
    t.variables().into_iter().find(|&v| (v - 1) % m != coord - 1)
}

/// Checks arities, spans, name uniqueness, witness shapes and, in disjoint
/// mode, the syntactic (D) test. An empty result means the duplicator is valid.
pub fn validate_duplicator(g: &Duplicator) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |entry: Option<&str>, message: String| {
        out.push(Violation { entry: entry.map(str::to_string), message })
    };
    if g.m == 0 {
        push(None, "m must be at least 1".into());
    }
    let mut names = BTreeSet::new();
    for e in &g.entries {
        let en = Some(e.name.as_str());
        if !is_identifier(&e.name) {
            push(en, "name is not an identifier".into());
        }
        if !names.insert(e.name.as_str()) {
            push(en, "duplicate entry name".into());
        }
        if e.terms.len() != g.m {
            push(en, format!("has {} terms, expected {}", e.terms.len(), g.m));
        }
        for (j, t) in e.terms.iter().enumerate() {
            if let Err(err) = t.check(&g.base_sig) {
                push(en, format!("coordinate {}: {err}", j + 1));
            }
            let span = t.span();
            if span > g.m * e.arity {
                push(
                    en,
                    format!(
                        "coordinate {} reads x{span}, beyond the {} variables of an arity-{} entry",
                        j + 1,
                        g.m * e.arity,
                        e.arity
                    ),
                );
            }
            if g.mode == Mode::Disjoint && g.m > 0 {
                if let Some(v) = disjointness_breach(t, g.m, j + 1) {
                    push(en, format!("coordinate {} reads x{v}, breaking (D)", j + 1));
                }
            }
        }
    }
    let gsig = match g.gamma_signature() {
        Ok(s) => s,
        Err(_) => return out,
    };
    for w in &g.witnesses.l {
        let label = format!("(L) witness for `{}` at coordinate {}", w.symbol, w.coordinate);
        match g.base_sig.arity(&w.symbol) {
            None => push(None, format!("{label}: unknown base symbol")),
            Some(a) if w.term.span() > a => {
                push(None, format!("{label}: reads x{} but `{}` has arity {a}", w.term.span(), w.symbol))
            }
            _ => {}
        }
        if w.coordinate == 0 || w.coordinate > g.m {
            push(None, format!("{label}: coordinate out of range"));
        }
        if let Err(e) = w.term.check(&gsig) {
            push(None, format!("{label}: {e}"));
        }
    }
    if let Some(v) = &g.witnesses.m {
        if v.span() > g.m {
            push(None, format!("(M) witness reads x{}, beyond {}", v.span(), g.m));
        }
        if let Err(e) = v.check(&gsig) {
            push(None, format!("(M) witness: {e}"));
        }
    }
    for w in &g.witnesses.p {
        let mut sorted = w.permutation.clone();
        sorted.sort_unstable();
        if sorted != (1..=g.m).collect::<Vec<_>>() {
            push(None, format!("(P) witness {:?} is not a permutation of 1..{}", w.permutation, g.m));
        }
        if w.term.span() > 1 {
            push(None, format!("(P) witness for {:?} is not unary", w.permutation));
        }
        if let Err(e) = w.term.check(&gsig) {
            push(None, format!("(P) witness for {:?}: {e}", w.permutation));
        }
    }
    out
}
