use crate::{AlgebraError, FiniteAlgebra};

/// A partial order on `0..n` as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    n: usize,
    rel: Vec<bool>,
}

impl Order {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Order, AlgebraError> {
        let mut rel = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                rel.push(leq(a, b));
            }
        }
        let o = Order { n, rel };
        o.validate()?;
        Ok(o)
    }

    /// The discrete order (equality).
    pub fn discrete(n: usize) -> Order {
        Order::from_fn(n, |a, b| a == b).expect("equality is an order")
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.n;
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(AlgebraError::NotAnOrder(format!("{a} ≤ {a} fails")));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(AlgebraError::NotAnOrder(format!(
                        "{a} and {b} are mutually below each other"
                    )));
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(AlgebraError::NotAnOrder(format!(
                            "{a} ≤ {b} ≤ {c} but not {a} ≤ {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.n + b]
    }

    pub fn dual(&self) -> Order {
        let n = self.n;
        Order { n, rel: (0..n * n).map(|i| self.rel[(i % n) * n + i / n]).collect() }
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The least upper bound of `set`, if it exists.
    pub fn supremum(&self, set: &[usize]) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n).filter(|&u| set.iter().all(|&s| self.leq(s, u))).collect();
        ub.iter().copied().find(|&c| ub.iter().all(|&d| self.leq(c, d)))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.leq(a, b)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.leq(b, a)))
    }
}

/// The order `a ≤ b ⟺ meet(a,b) = a`.
pub fn induced_order(alg: &FiniteAlgebra, meet: &str) -> Result<Order, AlgebraError> {
    let op = alg.op_index(meet)?;
    if alg.arity_at(op) != 2 {
        return Err(AlgebraError::NotAnOrder(format!("`{meet}` is not binary")));
    }
    Order::from_fn(alg.size(), |a, b| alg.apply(op, &[a, b]) == a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonotonicityOutcome {
    Pass,
    /// Raising argument `position` from `args[position]` to `raised` breaks the law.
    Counterexample {
        position: usize,
        args: Vec<usize>,
        raised: usize,
    },
}

impl MonotonicityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, MonotonicityOutcome::Pass)
    }
}

fn check_direction(
    alg: &FiniteAlgebra,
    op: &str,
    order: &Order,
    antitone: bool,
) -> Result<MonotonicityOutcome, AlgebraError> {
    let idx = alg.op_index(op)?;
    if order.size() != alg.size() {
        return Err(AlgebraError::Invalid("order size differs from universe".into()));
    }
    let k = alg.arity_at(idx);
    let covers = order.covers();
    let mut found = None;
    let mut raised = Vec::new();
    for p in 0..k {
        crate::for_each_tuple(alg.size(), k, |args| {
            if found.is_some() {
                return;
            }
            let base = alg.apply(idx, args);
            for &(lo, hi) in &covers {
                if args[p] != lo {
                    continue;
                }
                raised.clear();
                raised.extend_from_slice(args);
                raised[p] = hi;
                let up = alg.apply(idx, &raised);
                let ok = if antitone { order.leq(up, base) } else { order.leq(base, up) };
                if !ok {
                    found = Some(MonotonicityOutcome::Counterexample {
                        position: p,
                        args: args.to_vec(),
                        raised: hi,
                    });
                    return;
                }
            }
        });
        if let Some(f) = found {
            return Ok(f);
        }
    }
    Ok(MonotonicityOutcome::Pass)
}

/// Checks that `op` is order-preserving in every argument.
pub fn check_monotonicity(
    alg: &FiniteAlgebra,
    op: &str,
    order: &Order,
) -> Result<MonotonicityOutcome, AlgebraError> {
    check_direction(alg, op, order, false)
}

/// Checks that `op` is order-reversing in every argument.
pub fn check_antitonicity(
    alg: &FiniteAlgebra,
    op: &str,
    order: &Order,
) -> Result<MonotonicityOutcome, AlgebraError> {
    check_direction(alg, op, order, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResiduumOutcome {
    /// Flattened binary table of `a → c`.
    Table(Vec<usize>),
    /// No greatest `b` with `a ∧ b ≤ c`.
    NoAdjoint { a: usize, c: usize },
}

/// The residuum of `meet`: `a → c` is the greatest `b` with `a ∧ b ≤ c`.
pub fn residuum(alg: &FiniteAlgebra, meet: &str) -> Result<ResiduumOutcome, AlgebraError> {
    let order = induced_order(alg, meet)?;
    let op = alg.op_index(meet)?;
    let n = alg.size();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for c in 0..n {
            let below: Vec<usize> = (0..n)
                .filter(|&b| order.leq(alg.apply(op, &[a, b]), c))
                .collect();
            let sup = order.supremum(&below);
            match sup {
                Some(s) if order.leq(alg.apply(op, &[a, s]), c) => table.push(s),
                _ => return Ok(ResiduumOutcome::NoAdjoint { a, c }),
            }
        }
    }
    // Adjointness: a ∧ b ≤ c iff b ≤ a → c.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = order.leq(alg.apply(op, &[a, b]), c);
                if lhs != order.leq(b, table[a * n + c]) {
                    return Ok(ResiduumOutcome::NoAdjoint { a, c });
                }
            }
        }
    }
    Ok(ResiduumOutcome::Table(table))
}
