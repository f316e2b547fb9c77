use term_core::{CompiledTerm, Term};

use crate::{AlgebraError, FiniteAlgebra, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Pass,
    /// An assignment (position `i-1` for `x_i`) on which the sides differ.
    Counterexample(Vec<usize>),
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityOutcome::Pass)
    }
}

/// Exhaustively checks `lhs = rhs` under the default evaluation cap.
pub fn check_identity(
    alg: &FiniteAlgebra,
    lhs: &Term,
    rhs: &Term,
) -> Result<IdentityOutcome, AlgebraError> {
    check_identity_with(alg, lhs, rhs, &Limits::default())
}

pub fn check_identity_with(
    alg: &FiniteAlgebra,
    lhs: &Term,
    rhs: &Term,
    limits: &Limits,
) -> Result<IdentityOutcome, AlgebraError> {
    let l = CompiledTerm::compile(lhs, alg)?;
    let r = CompiledTerm::compile(rhs, alg)?;
    let span = lhs.span().max(rhs.span());
    let n = alg.size();
    let total = (0..span).try_fold(1usize, |acc, _| acc.checked_mul(n));
    if total.is_none_or(|t| t > limits.eval_cap) {
        return Err(AlgebraError::Resource {
            what: format!("identity evaluation over {n}^{span} assignments"),
            limit: limits.eval_cap,
        });
    }
    let mut stack = Vec::with_capacity(16);
    let mut found = None;
    crate::for_each_tuple_in(&vec![(0, n); span], &mut |asg: &[usize]| {
        if found.is_none() && l.eval_with(asg, &mut stack) != r.eval_with(asg, &mut stack) {
            found = Some(asg.to_vec());
        }
    });
    Ok(match found {
        None => IdentityOutcome::Pass,
        Some(a) => IdentityOutcome::Counterexample(a),
    })
}
