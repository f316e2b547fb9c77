use std::collections::HashMap;

use term_core::Term;

use crate::tuples::{for_each_new_tuple, for_each_tuple};
use crate::{AlgebraError, FiniteAlgebra};

/// A free algebra realised inside a product of class members.
#[derive(Clone, Debug)]
pub struct FreeAlgebraResult {
    pub algebra: FiniteAlgebra,
    /// Elements corresponding to the free generators `x1, …, xk`.
    pub generators: Vec<usize>,
    /// Coordinate vector of each element over all assignments into the class.
    pub embedding: Vec<Vec<usize>>,
    /// A term naming each element.
    pub terms: Vec<Term>,
}

/// The `k`-generated free algebra of the variety generated by `class`,
/// materialising at most `cap` elements.
pub fn free_algebra(
    class: &[FiniteAlgebra],
    k: usize,
    cap: usize,
) -> Result<FreeAlgebraResult, AlgebraError> {
    let first = class
        .first()
        .ok_or_else(|| AlgebraError::Invalid("the generating class is empty".into()))?;
    let class = class
        .iter()
        .map(|m| {
            first.require_same_signature(m)?;
            m.aligned_with(first)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sig = first.sig().clone();
    // Coordinates: (member, assignment) pairs in member order.
    let mut coords: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, m) in class.iter().enumerate() {
        for_each_tuple(m.size(), k, |asg| coords.push((i, asg.to_vec())));
    }
    let mut vectors: Vec<Vec<usize>> = Vec::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut generators = Vec::with_capacity(k);
    for j in 0..k {
        let v: Vec<usize> = coords.iter().map(|(_, a)| a[j]).collect();
        let i = insert(&mut index, v, Term::var(j + 1), &mut vectors, &mut terms);
        generators.push(i);
    }
    let apply = |op: usize, args: &[&Vec<usize>]| -> Vec<usize> {
        let mut tmp = Vec::with_capacity(args.len());
        coords
            .iter()
            .enumerate()
            .map(|(c, (m, _))| {
                tmp.clear();
                tmp.extend(args.iter().map(|v| v[c]));
                class[*m].apply(op, &tmp)
            })
            .collect()
    };
    for (op, s) in sig.symbols().iter().enumerate() {
        if s.arity == 0 {
            let v = apply(op, &[]);
            insert(&mut index, v, Term::constant(s.name.clone()), &mut vectors, &mut terms);
        }
    }
    let over_cap = |size: usize| AlgebraError::Resource {
        what: format!("free algebra size (reached {size} elements)"),
        limit: cap,
    };
    if vectors.len() > cap {
        return Err(over_cap(vectors.len()));
    }
    if vectors.is_empty() {
        return Err(AlgebraError::Invalid(
            "no generators and no constants: the free algebra is empty".into(),
        ));
    }
    let mut start = 0;
    loop {
        let end = vectors.len();
        if start >= end {
            break;
        }
        let mut fresh: Vec<(Vec<usize>, Term)> = Vec::new();
        let mut seen_fresh: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for (op, s) in sig.symbols().iter().enumerate() {
            if s.arity == 0 {
                continue;
            }
            let mut overflow = false;
            for_each_new_tuple(end, start, s.arity, &mut |idx| {
                if overflow {
                    return;
                }
                let args: Vec<&Vec<usize>> = idx.iter().map(|&i| &vectors[i]).collect();
                let v = apply(op, &args);
                if index.contains_key(&v) || seen_fresh.contains(&v) {
                    return;
                }
                let t = Term::app(s.name.clone(), idx.iter().map(|&i| terms[i].clone()).collect());
                seen_fresh.insert(v.clone());
                fresh.push((v, t));
                if end + fresh.len() > cap {
                    overflow = true;
                }
            });
            if overflow {
                return Err(over_cap(end + fresh.len()));
            }
        }
        start = end;
        for (v, t) in fresh {
            insert(&mut index, v, t, &mut vectors, &mut terms);
        }
    }
    let size = vectors.len();
    let alg = FiniteAlgebra::from_fn(
        format!("F({k})"),
        sig.clone(),
        size,
        |op, args| {
            let a: Vec<&Vec<usize>> = args.iter().map(|&i| &vectors[i]).collect();
            index[&apply(op, &a)]
        },
    )?;
    let labels: Vec<String> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let s = t.to_string();
            if s.len() <= 48 {
                s
            } else {
                format!("e{i}")
            }
        })
        .collect();
    let alg = alg.with_labels(Some(labels))?;
    Ok(FreeAlgebraResult { algebra: alg, generators, embedding: vectors, terms })
}

fn insert(
    index: &mut HashMap<Vec<usize>, usize>,
    v: Vec<usize>,
    t: Term,
    vectors: &mut Vec<Vec<usize>>,
    terms: &mut Vec<Term>,
) -> usize {
    if let Some(&i) = index.get(&v) {
        return i;
    }
    let i = vectors.len();
    index.insert(v.clone(), i);
    vectors.push(v);
    terms.push(t);
    i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, with_bounds};
    use crate::{enumerate_homomorphisms, extend_from_generators};

    fn universal_property(res: &FreeAlgebraResult, n: &FiniteAlgebra, k: usize) {
        let homs = enumerate_homomorphisms(&res.algebra, n, None).unwrap().homs;
        let mut count = 0;
        for_each_tuple(n.size(), k, |imgs| {
            let matching = homs
                .iter()
                .filter(|h| res.generators.iter().zip(imgs).all(|(&g, &i)| h.map[g] == i))
                .count();
            assert_eq!(matching, 1);
            count += 1;
        });
        assert_eq!(homs.len(), count);
        for_each_tuple(n.size(), k, |imgs| {
            let e = extend_from_generators(&res.algebra, n, &res.generators, imgs).unwrap();
            assert!(e.is_some());
        });
    }

    #[test]
    fn free_distributive_lattice_on_two() {
        let r = free_algebra(&[chain(2)], 2, 100).unwrap();
        assert_eq!(r.algebra.size(), 4);
        universal_property(&r, &chain(2), 2);
    }

    #[test]
    fn free_bounded_on_one() {
        let b = with_bounds(&chain(2)).unwrap();
        let r = free_algebra(std::slice::from_ref(&b), 1, 100).unwrap();
        assert_eq!(r.algebra.size(), 3);
        universal_property(&r, &b, 1);
    }

    #[test]
    fn free_on_three_generators() {
        // the free distributive lattice on three generators has 18 elements
        let r = free_algebra(&[chain(2)], 3, 100).unwrap();
        assert_eq!(r.algebra.size(), 18);
    }

    #[test]
    fn cap_reports_partial_size() {
        match free_algebra(&[chain(2)], 3, 5) {
            Err(AlgebraError::Resource { limit, .. }) => assert_eq!(limit, 5),
            other => panic!("{other:?}"),
        }
    }
}
