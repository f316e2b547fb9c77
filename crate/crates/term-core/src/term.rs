use std::collections::BTreeSet;
use std::fmt;

use crate::{Signature, TermError};

/// A first-order term. Variables are 1-based: `Var(1)` is `x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn app(symbol: impl Into<String>, children: Vec<Term>) -> Term {
        Term::App(symbol.into(), children)
    }

    pub fn constant(symbol: impl Into<String>) -> Term {
        Term::App(symbol.into(), Vec::new())
    }

    /// Largest variable index occurring in the term, 0 for closed terms.
    pub fn span(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::App(_, children) => children.iter().map(Term::span).max().unwrap_or(0),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, children) => 1 + children.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, children) => 1 + children.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::App(_, children) => children.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    pub fn symbols(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        if let Term::App(s, children) = self {
            out.insert(s.as_str());
            children.iter().for_each(|c| c.collect_symbols(out));
        }
    }

    /// Replaces `x_i` by `args[i-1]`. Variables beyond `args` are left in place.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => match args.get(i.wrapping_sub(1)) {
                Some(t) => t.clone(),
                None => self.clone(),
            },
            Term::App(s, children) => {
                Term::App(s.clone(), children.iter().map(|c| c.substitute(args)).collect())
            }
        }
    }

    /// Renames variables through `f`.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> Term {
        match self {
            Term::Var(i) => Term::Var(f(*i)),
            Term::App(s, children) => {
                Term::App(s.clone(), children.iter().map(|c| c.map_vars(f)).collect())
            }
        }
    }

    /// Renames operation symbols through `f`.
    pub fn map_symbols(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(s, children) => {
                Term::App(f(s), children.iter().map(|c| c.map_symbols(f)).collect())
            }
        }
    }

    /// Checks symbols and arities against `sig` and that no variable is `x0`.
    pub fn check(&self, sig: &Signature) -> Result<(), TermError> {
        match self {
            Term::Var(0) => Err(TermError::ZeroVariable),
            Term::Var(_) => Ok(()),
            Term::App(s, children) => {
                let arity = sig
                    .arity(s)
                    .ok_or_else(|| TermError::UnknownSymbol(s.clone()))?;
                if arity != children.len() {
                    return Err(TermError::Arity {
                        symbol: s.clone(),
                        expected: arity,
                        found: children.len(),
                    });
                }
                children.iter().try_for_each(|c| c.check(sig))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(s, children) if children.is_empty() => write!(f, "{s}"),
            Term::App(s, children) => {
                write!(f, "({s}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn render_term(t: &Term) -> String {
    t.to_string()
}

pub fn free_variable_span(t: &Term) -> usize {
    t.span()
}

/// Fails unless every variable of `t` is at most `width`.
pub fn check_span(t: &Term, width: usize) -> Result<(), TermError> {
    let span = t.span();
    if span > width {
        Err(TermError::OutOfRange { index: span, width })
    } else {
        Ok(())
    }
}

/// The term `f(x_{i1},…,x_{in})` in a context of `width` variables.
pub fn indexed_term(
    symbol: &str,
    sig: &Signature,
    width: usize,
    indices: &[usize],
) -> Result<Term, TermError> {
    let arity = sig
        .arity(symbol)
        .ok_or_else(|| TermError::UnknownSymbol(symbol.to_string()))?;
    if arity != indices.len() {
        return Err(TermError::Arity {
            symbol: symbol.to_string(),
            expected: arity,
            found: indices.len(),
        });
    }
    let mut children = Vec::with_capacity(indices.len());
    for &i in indices {
        children.push(projection_term(width, i)?);
    }
    Ok(Term::App(symbol.to_string(), children))
}

/// The variable `x_i` in a context of `width` variables.
pub fn projection_term(width: usize, i: usize) -> Result<Term, TermError> {
    if i == 0 {
        return Err(TermError::ZeroVariable);
    }
    if i > width {
        return Err(TermError::OutOfRange { index: i, width });
    }
    Ok(Term::Var(i))
}
