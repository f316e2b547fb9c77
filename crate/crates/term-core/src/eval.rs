use crate::{Term, TermError};

/// Anything that interprets operation symbols as flattened tables over `0..size`.
///
/// Tables are row-major with the leftmost argument most significant.
pub trait Interpretation {
    fn size(&self) -> usize;
    /// Arity and flattened table of `symbol`, if interpreted.
    fn table(&self, symbol: &str) -> Option<(usize, &[usize])>;
}

/// Row-major index of an argument tuple in a table over `n` elements.
#[inline]
pub fn table_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Evaluates `t` under `assignment` (position `i-1` holds the value of `x_i`).
pub fn eval_term<I: Interpretation + ?Sized>(
    t: &Term,
    alg: &I,
    assignment: &[usize],
) -> Result<usize, TermError> {
    let needed = t.span();
    if assignment.len() < needed {
        return Err(TermError::ShortAssignment {
            given: assignment.len(),
            needed,
        });
    }
    if let Some(&bad) = assignment.iter().find(|&&a| a >= alg.size()) {
        return Err(TermError::ElementOutOfRange {
            element: bad,
            size: alg.size(),
        });
    }
    eval_rec(t, alg, assignment)
}

fn eval_rec<I: Interpretation + ?Sized>(
    t: &Term,
    alg: &I,
    assignment: &[usize],
) -> Result<usize, TermError> {
    match t {
        Term::Var(0) => Err(TermError::ZeroVariable),
        Term::Var(i) => Ok(assignment[i - 1]),
        Term::App(s, children) => {
            let (arity, table) = alg
                .table(s)
                .ok_or_else(|| TermError::MissingOperation(s.clone()))?;
            if arity != children.len() {
                return Err(TermError::Arity {
                    symbol: s.clone(),
                    expected: arity,
                    found: children.len(),
                });
            }
            let n = alg.size();
            let mut idx = 0;
            for c in children {
                idx = idx * n + eval_rec(c, alg, assignment)?;
            }
            Ok(table[idx])
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Var(usize),
    Op { table: usize, arity: usize },
}

/// A term resolved against one interpretation, evaluated with a postfix stack.
#[derive(Clone, Debug)]
pub struct CompiledTerm<'a> {
    code: Vec<Instr>,
    tables: Vec<&'a [usize]>,
    n: usize,
    span: usize,
}

impl<'a> CompiledTerm<'a> {
    pub fn compile<I: Interpretation + ?Sized>(t: &Term, alg: &'a I) -> Result<Self, TermError> {
        let mut c = CompiledTerm {
            code: Vec::new(),
            tables: Vec::new(),
            n: alg.size(),
            span: t.span(),
        };
        let mut names: Vec<&str> = Vec::new();
        c.emit(t, alg, &mut names)?;
        Ok(c)
    }

    fn emit<'t, I: Interpretation + ?Sized>(
        &mut self,
        t: &'t Term,
        alg: &'a I,
        names: &mut Vec<&'t str>,
    ) -> Result<(), TermError> {
        match t {
            Term::Var(0) => return Err(TermError::ZeroVariable),
            Term::Var(i) => self.code.push(Instr::Var(i - 1)),
            Term::App(s, children) => {
                let (arity, table) = alg
                    .table(s)
                    .ok_or_else(|| TermError::MissingOperation(s.clone()))?;
                if arity != children.len() {
                    return Err(TermError::Arity {
                        symbol: s.clone(),
                        expected: arity,
                        found: children.len(),
                    });
                }
                for ch in children {
                    self.emit(ch, alg, names)?;
                }
                let slot = match names.iter().position(|n| *n == s.as_str()) {
                    Some(p) => p,
                    None => {
                        names.push(s.as_str());
                        self.tables.push(table);
                        self.tables.len() - 1
                    }
                };
                self.code.push(Instr::Op { table: slot, arity });
            }
        }
        Ok(())
    }

    /// Number of variables the term reads.
    pub fn span(&self) -> usize {
        self.span
    }

    /// Evaluates with a caller-provided scratch stack. The assignment must cover the span.
    pub fn eval_with(&self, assignment: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for ins in &self.code {
            match *ins {
                Instr::Var(i) => stack.push(assignment[i]),
                Instr::Op { table, arity } => {
                    let base = stack.len() - arity;
                    let idx = table_index(self.n, &stack[base..]);
                    stack.truncate(base);
                    stack.push(self.tables[table][idx]);
                }
            }
        }
        stack[0]
    }

    pub fn eval(&self, assignment: &[usize]) -> usize {
        let mut stack = Vec::with_capacity(8);
        self.eval_with(assignment, &mut stack)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_term, Signature};
    use std::collections::HashMap;

    struct Chain {
        n: usize,
        ops: HashMap<String, (usize, Vec<usize>)>,
    }

    impl Interpretation for Chain {
        fn size(&self) -> usize {
            self.n
        }
        fn table(&self, symbol: &str) -> Option<(usize, &[usize])> {
            self.ops.get(symbol).map(|(a, t)| (*a, t.as_slice()))
        }
    }

    fn chain(n: usize) -> Chain {
        let mut ops = HashMap::new();
        let mut join = Vec::new();
        let mut meet = Vec::new();
        for a in 0..n {
            for b in 0..n {
                join.push(a.max(b));
                meet.push(a.min(b));
            }
        }
        ops.insert("join".into(), (2, join));
        ops.insert("meet".into(), (2, meet));
        ops.insert("one".into(), (0, vec![n - 1]));
        Chain { n, ops }
    }

    fn sig() -> Signature {
        Signature::new([("join", 2), ("meet", 2), ("one", 0)]).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        let t = parse_term("(join x1 x3)", &sig()).unwrap();
        assert_eq!(eval_term(&t, &chain(2), &[0, 1, 1, 0]).unwrap(), 1);
        let t = parse_term("(meet x1 x3)", &sig()).unwrap();
        assert_eq!(eval_term(&t, &chain(3), &[1, 0, 2, 0]).unwrap(), 1);
        let t = parse_term("one", &sig()).unwrap();
        assert_eq!(eval_term(&t, &chain(2), &[]).unwrap(), 1);
    }

    #[test]
    fn evaluation_errors() {
        let t = parse_term("(join x1 x3)", &sig()).unwrap();
        assert!(matches!(
            eval_term(&t, &chain(2), &[0, 1]),
            Err(TermError::ShortAssignment { given: 2, needed: 3 })
        ));
        let t = Term::app("frob", vec![]);
        assert!(matches!(
            eval_term(&t, &chain(2), &[]),
            Err(TermError::MissingOperation(_))
        ));
        let t = parse_term("x1", &sig()).unwrap();
        assert!(eval_term(&t, &chain(2), &[5]).is_err());
    }

    #[test]
    fn compiled_matches_recursive() {
        let c = chain(3);
        let t = parse_term("(join (meet x1 x2) (meet one (join x2 x1)))", &sig()).unwrap();
        let ct = CompiledTerm::compile(&t, &c).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(ct.eval(&[a, b]), eval_term(&t, &c, &[a, b]).unwrap());
            }
        }
    }

    #[test]
    fn row_major_index() {
        assert_eq!(table_index(3, &[1, 2]), 5);
        assert_eq!(table_index(2, &[1, 0, 1]), 5);
        assert_eq!(table_index(4, &[]), 0);
    }
}
