use std::collections::BTreeSet;

use crate::tuples::for_each_new_tuple;
use crate::{AlgebraError, FiniteAlgebra};

/// How an element entered a closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Seed,
    Op { op: usize, args: Vec<usize> },
}

/// The closure of a seed set, in discovery order, with one derivation per element.
#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<usize>,
    pub derivations: Vec<Derivation>,
}

impl Closure {
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }
}

/// Closes `seed` under all operations (constants included), recording derivations.
pub fn closure(alg: &FiniteAlgebra, seed: &[usize]) -> Closure {
    extend_closure(alg, &Closure { elements: Vec::new(), derivations: Vec::new() }, seed)
}

/// Extends an existing closure by further seeds.
pub fn extend_closure(alg: &FiniteAlgebra, base: &Closure, seed: &[usize]) -> Closure {
    let mut member = vec![false; alg.size()];
    let mut elements = base.elements.clone();
    let mut derivations = base.derivations.clone();
    for &e in &elements {
        member[e] = true;
    }
    let base_len = elements.len();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            elements.push(s);
            derivations.push(Derivation::Seed);
        }
    }
    for op in 0..alg.sig().len() {
        if alg.arity_at(op) == 0 {
            let v = alg.apply(op, &[]);
            if !member[v] {
                member[v] = true;
                elements.push(v);
                derivations.push(Derivation::Op { op, args: Vec::new() });
            }
        }
    }
    // Tuples drawn entirely from the base closure stay inside it.
    let mut start = base_len;
    if base_len > 0 && elements.len() == base_len {
        return Closure { elements, derivations };
    }
    let mut args = Vec::new();
    let mut pending: Vec<(usize, Derivation)> = Vec::new();
    loop {
        let end = elements.len();
        if start >= end {
            break;
        }
        for op in 0..alg.sig().len() {
            let k = alg.arity_at(op);
            if k == 0 {
                continue;
            }
            for_each_new_tuple(end, start, k, &mut |idx| {
                args.clear();
                args.extend(idx.iter().map(|&i| elements[i]));
                let v = alg.apply(op, &args);
                if !member[v] {
                    member[v] = true;
                    pending.push((v, Derivation::Op { op, args: args.clone() }));
                }
            });
        }
        start = end;
        for (v, d) in pending.drain(..) {
            elements.push(v);
            derivations.push(d);
        }
    }
    Closure { elements, derivations }
}

/// The universe of the subalgebra generated by `seed`, sorted.
pub fn subalgebra_generated(
    alg: &FiniteAlgebra,
    seed: &[usize],
) -> Result<Vec<usize>, AlgebraError> {
    if let Some(&bad) = seed.iter().find(|&&s| s >= alg.size()) {
        return Err(AlgebraError::ElementOutOfRange(bad, alg.size()));
    }
    Ok(closure(alg, seed).sorted())
}

/// A small generating set, grown greedily by the element that enlarges the closure most.
///
/// For large universes only the first few uncovered elements are tried at each step.
pub fn generating_set(alg: &FiniteAlgebra) -> Vec<usize> {
    let n = alg.size();
    let mut gens = Vec::new();
    let mut current = closure(alg, &[]);
    while current.elements.len() < n {
        let mut member = vec![false; n];
        for &e in &current.elements {
            member[e] = true;
        }
        let candidates: Vec<usize> = (0..n).filter(|&e| !member[e]).collect();
        let budget = if n <= 64 { candidates.len() } else { 8 };
        let mut best: Option<(usize, Closure)> = None;
        for &c in candidates.iter().take(budget) {
            let cl = extend_closure(alg, &current, &[c]);
            if best
                .as_ref()
                .is_none_or(|(_, b)| cl.elements.len() > b.elements.len())
            {
                let full = cl.elements.len() == n;
                best = Some((c, cl));
                if full {
                    break;
                }
            }
        }
        let (g, cl) = best.expect("an uncovered element exists");
        gens.push(g);
        current = cl;
    }
    gens
}

/// All subuniverses, found by closing known ones under single additions.
/// The empty set is included when the algebra has no constants.
pub fn all_subuniverses(
    alg: &FiniteAlgebra,
    limit: usize,
) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![closure(alg, &[]).sorted()];
    seen.insert(queue[0].clone());
    while let Some(s) = queue.pop() {
        let mut member = vec![false; alg.size()];
        for &e in &s {
            member[e] = true;
        }
        for x in 0..alg.size() {
            if member[x] {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let t = closure(alg, &seed).sorted();
            if seen.insert(t.clone()) {
                if seen.len() > limit {
                    return Err(AlgebraError::Resource {
                        what: "subuniverses".into(),
                        limit,
                    });
                }
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, with_bounds};

    #[test]
    fn closure_of_lattice_seeds() {
        let c = chain(3);
        assert_eq!(subalgebra_generated(&c, &[0, 2]).unwrap(), vec![0, 2]);
        assert_eq!(subalgebra_generated(&c, &[]).unwrap(), Vec::<usize>::new());
        let b = with_bounds(&c).unwrap();
        assert_eq!(subalgebra_generated(&b, &[]).unwrap(), vec![0, 2]);
        assert_eq!(subalgebra_generated(&b, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert!(subalgebra_generated(&b, &[7]).is_err());
    }

    #[test]
    fn generating_sets_generate() {
        for n in 1..6 {
            let c = chain(n);
            let g = generating_set(&c);
            assert_eq!(g.len(), n);
            assert_eq!(closure(&c, &g).elements.len(), n);
        }
    }

    #[test]
    fn subuniverses_of_chain() {
        // every subset of a chain is a sublattice
        let subs = all_subuniverses(&chain(3), 100).unwrap();
        assert_eq!(subs.len(), 8);
        assert!(all_subuniverses(&chain(4), 3).is_err());
    }

    #[test]
    fn derivations_replay() {
        let c = chain(4);
        let cl = closure(&c, &[1, 2]);
        for (e, d) in cl.elements.iter().zip(&cl.derivations) {
            if let Derivation::Op { op, args } = d {
                assert_eq!(c.apply(*op, args), *e);
            }
        }
    }
}
