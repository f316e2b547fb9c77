//! Small constructors for lattices given by an order relation.

use term_core::Signature;

use crate::{AlgebraError, FiniteAlgebra};

pub fn lattice_signature() -> Signature {
    Signature::new([("join", 2), ("meet", 2)]).unwrap()
}

/// The lattice whose order is `leq`, with `join` and `meet` computed as suprema and infima.
pub fn lattice_from_order(
    name: &str,
    labels: &[&str],
    leq: impl Fn(usize, usize) -> bool,
) -> Result<FiniteAlgebra, AlgebraError> {
    let n = labels.len();
    let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&x| {
                if upper {
                    leq(a, x) && leq(b, x)
                } else {
                    leq(x, a) && leq(x, b)
                }
            })
            .collect();
        cands.iter().copied().find(|&c| {
            cands
                .iter()
                .all(|&d| if upper { leq(c, d) } else { leq(d, c) })
        })
    };
    let mut join = Vec::with_capacity(n * n);
    let mut meet = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            join.push(bound(a, b, true).ok_or_else(|| {
                AlgebraError::NotAnOrder(format!("{} and {} have no least upper bound", labels[a], labels[b]))
            })?);
            meet.push(bound(a, b, false).ok_or_else(|| {
                AlgebraError::NotAnOrder(format!("{} and {} have no greatest lower bound", labels[a], labels[b]))
            })?);
        }
    }
    FiniteAlgebra::new(
        name,
        lattice_signature(),
        n,
        vec![join, meet],
        Some(labels.iter().map(|s| s.to_string()).collect()),
    )
}

/// The `n`-element chain `0 < 1 < … < n-1` as a lattice.
pub fn chain(n: usize) -> FiniteAlgebra {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    lattice_from_order(&format!("{n}-chain"), &refs, |a, b| a <= b).expect("chains are lattices")
}

/// Adds `zero` and `one` for the least and greatest elements of a lattice.
pub fn with_bounds(lattice: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    let meet = lattice.op_index("meet")?;
    let n = lattice.size();
    let bottom = (0..n)
        .find(|&a| (0..n).all(|b| lattice.apply(meet, &[a, b]) == a))
        .ok_or_else(|| AlgebraError::NotAnOrder("no least element".into()))?;
    let top = (0..n)
        .find(|&a| (0..n).all(|b| lattice.apply(meet, &[a, b]) == b))
        .ok_or_else(|| AlgebraError::NotAnOrder("no greatest element".into()))?;
    lattice
        .with_op("zero", 0, vec![bottom])?
        .with_op("one", 0, vec![top])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_tables() {
        let c = chain(3);
        assert_eq!(c.op_table("join").unwrap(), &[0, 1, 2, 1, 1, 2, 2, 2, 2]);
        assert_eq!(c.op_table("meet").unwrap(), &[0, 0, 0, 0, 1, 1, 0, 1, 2]);
    }

    #[test]
    fn non_lattice_rejected() {
        // two incomparable maximal elements
        let r = lattice_from_order("v", &["0", "a", "b"], |x, y| x == y || x == 0);
        assert!(r.is_err());
    }

    #[test]
    fn bounds_found() {
        let b = with_bounds(&chain(3)).unwrap();
        assert_eq!(b.op_table("zero").unwrap(), &[0]);
        assert_eq!(b.op_table("one").unwrap(), &[2]);
    }
}
