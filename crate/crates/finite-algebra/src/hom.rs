use std::collections::HashMap;

use crate::sub::{extend_closure, generating_set, Closure, Derivation};
use crate::tuples::for_each_new_tuple;
use crate::{AlgebraError, FiniteAlgebra};

/// A map between universes, `map[a]` being the image of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { map: (0..n).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism { map: self.map.iter().map(|&a| other.map[a]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|a| seen.insert(*a))
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        let mut hit = vec![false; target_size];
        for &a in &self.map {
            if a < target_size {
                hit[a] = true;
            }
        }
        hit.iter().all(|&h| h)
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Exhaustively checks the homomorphism equations for every symbol and tuple.
pub fn is_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    if !a.same_signature(b) || map.len() != a.size() || map.iter().any(|&x| x >= b.size()) {
        return false;
    }
    let Ok(b) = b.aligned_with(a) else { return false };
    let mut ok = true;
    let mut img = Vec::new();
    for op in 0..a.sig().len() {
        let k = a.arity_at(op);
        crate::for_each_tuple(a.size(), k, |args| {
            if !ok {
                return;
            }
            img.clear();
            img.extend(args.iter().map(|&x| map[x]));
            if map[a.apply(op, args)] != b.apply(op, &img) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// The unique candidate extension of generator images along a closure's derivations,
/// returned only when it is a homomorphism.
pub fn extend_from_generators(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    generators: &[usize],
    images: &[usize],
) -> Result<Option<Homomorphism>, AlgebraError> {
    a.require_same_signature(b)?;
    let b = b.aligned_with(a)?;
    let b = b.as_ref();
    if generators.len() != images.len() {
        return Err(AlgebraError::Invalid("one image per generator is required".into()));
    }
    for (&g, &i) in generators.iter().zip(images) {
        if g >= a.size() {
            return Err(AlgebraError::ElementOutOfRange(g, a.size()));
        }
        if i >= b.size() {
            return Err(AlgebraError::ElementOutOfRange(i, b.size()));
        }
    }
    let cl = crate::closure(a, generators);
    if cl.elements.len() != a.size() {
        return Err(AlgebraError::Invalid(format!(
            "the listed elements do not generate `{}`",
            a.name()
        )));
    }
    let mut map = vec![usize::MAX; a.size()];
    for (&g, &i) in generators.iter().zip(images) {
        if map[g] != usize::MAX && map[g] != i {
            return Ok(None);
        }
        map[g] = i;
    }
    let mut img = Vec::new();
    for (e, d) in cl.elements.iter().zip(&cl.derivations) {
        if let Derivation::Op { op, args } = d {
            img.clear();
            img.extend(args.iter().map(|&x| map[x]));
            map[*e] = b.apply(*op, &img);
        }
    }
    Ok(is_homomorphism(a, b, &map).then(|| Homomorphism::new(map)))
}

/// Result of a possibly truncated enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomEnumeration {
    pub homs: Vec<Homomorphism>,
    pub truncated: bool,
}

/// One closure segment per generator: the elements it adds and how.
struct Level {
    start: usize,
    end: usize,
    generator: Option<usize>,
}

struct Plan {
    elements: Vec<usize>,
    derivations: Vec<Derivation>,
    levels: Vec<Level>,
}

fn plan(a: &FiniteAlgebra) -> Plan {
    let gens = generating_set(a);
    let empty = Closure { elements: Vec::new(), derivations: Vec::new() };
    let mut cl = extend_closure(a, &empty, &[]);
    let mut levels = vec![Level { start: 0, end: cl.elements.len(), generator: None }];
    for &g in &gens {
        let start = cl.elements.len();
        cl = extend_closure(a, &cl, &[g]);
        levels.push(Level { start, end: cl.elements.len(), generator: Some(g) });
    }
    Plan { elements: cl.elements, derivations: cl.derivations, levels }
}

/// Element invariants preserved by isomorphisms.
fn invariants(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    let mut inv = vec![Vec::new(); n];
    for op in 0..alg.sig().len() {
        match alg.arity_at(op) {
            0 => {
                let c = alg.apply(op, &[]);
                for (x, v) in inv.iter_mut().enumerate() {
                    v.push(usize::from(x == c));
                }
            }
            1 => {
                for (x, v) in inv.iter_mut().enumerate() {
                    let fx = alg.apply(op, &[x]);
                    v.push(usize::from(fx == x));
                    v.push((0..n).filter(|&y| alg.apply(op, &[y]) == x).count());
                }
            }
            2 => {
                for (x, v) in inv.iter_mut().enumerate() {
                    v.push(usize::from(alg.apply(op, &[x, x]) == x));
                    v.push((0..n).filter(|&y| alg.apply(op, &[x, y]) == x).count());
                    v.push((0..n).filter(|&y| alg.apply(op, &[y, x]) == x).count());
                }
            }
            _ => {}
        }
    }
    inv
}

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    plan: Plan,
    map: Vec<usize>,
    used: Vec<bool>,
    injective: bool,
    candidates: Option<Vec<Vec<usize>>>,
    limit: usize,
    found: Vec<Homomorphism>,
    truncated: bool,
    scratch: Vec<usize>,
}

impl Search<'_> {
    /// Maps the derived elements of `level` and checks every tuple touching them.
    fn fill(&mut self, level: usize) -> bool {
        let Level { start, end, .. } = self.plan.levels[level];
        let mut assigned = Vec::new();
        let mut ok = true;
        for idx in start..end {
            let e = self.plan.elements[idx];
            let image = match &self.plan.derivations[idx] {
                Derivation::Seed => self.map[e],
                Derivation::Op { op, args } => {
                    self.scratch.clear();
                    self.scratch.extend(args.iter().map(|&x| self.map[x]));
                    self.b.apply(*op, &self.scratch)
                }
            };
            if let Derivation::Op { .. } = self.plan.derivations[idx] {
                if self.injective && self.used[image] {
                    ok = false;
                    break;
                }
                if let Some(c) = &self.candidates {
                    if !c[e].contains(&image) {
                        ok = false;
                        break;
                    }
                }
                self.map[e] = image;
                if self.injective {
                    self.used[image] = true;
                }
                assigned.push(e);
            }
        }
        if ok {
            ok = self.consistent(start, end);
        }
        if !ok {
            for e in assigned {
                if self.injective {
                    self.used[self.map[e]] = false;
                }
                self.map[e] = usize::MAX;
            }
        }
        ok
    }

    fn consistent(&mut self, start: usize, end: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let elements = &self.plan.elements;
        let map = &self.map;
        let mut args = Vec::new();
        let mut img = Vec::new();
        for op in 0..a.sig().len() {
            let k = a.arity_at(op);
            let mut ok = true;
            if k == 0 {
                if start == 0 {
                    ok = map[a.apply(op, &[])] == b.apply(op, &[]);
                }
            } else {
                for_each_new_tuple(end, start, k, &mut |idx| {
                    if !ok {
                        return;
                    }
                    args.clear();
                    args.extend(idx.iter().map(|&i| elements[i]));
                    img.clear();
                    img.extend(args.iter().map(|&x| map[x]));
                    if map[a.apply(op, &args)] != b.apply(op, &img) {
                        ok = false;
                    }
                });
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn unfill(&mut self, level: usize) {
        let Level { start, end, .. } = self.plan.levels[level];
        for idx in start..end {
            let e = self.plan.elements[idx];
            if self.map[e] != usize::MAX {
                if self.injective {
                    self.used[self.map[e]] = false;
                }
                self.map[e] = usize::MAX;
            }
        }
    }

    fn run(&mut self, level: usize) {
        if self.truncated {
            return;
        }
        if level == self.plan.levels.len() {
            if self.found.len() == self.limit {
                self.truncated = true;
                return;
            }
            self.found.push(Homomorphism::new(self.map.clone()));
            return;
        }
        match self.plan.levels[level].generator {
            None => {
                if self.fill(level) {
                    self.run(level + 1);
                    self.unfill(level);
                }
            }
            Some(g) => {
                let options: Vec<usize> = match &self.candidates {
                    Some(c) => c[g].clone(),
                    None => (0..self.b.size()).collect(),
                };
                for t in options {
                    if self.injective && self.used[t] {
                        continue;
                    }
                    self.map[g] = t;
                    if self.injective {
                        self.used[t] = true;
                    }
                    if self.fill(level) {
                        self.run(level + 1);
                        self.unfill(level);
                    } else {
                        if self.injective {
                            self.used[t] = false;
                        }
                        self.map[g] = usize::MAX;
                    }
                    if self.truncated || (self.injective && !self.found.is_empty()) {
                        if self.map[g] != usize::MAX {
                            self.unfill(level);
                        }
                        return;
                    }
                }
            }
        }
    }
}

/// All homomorphisms from `a` to `b`, sorted by their maps, at most `limit` of them.
pub fn enumerate_homomorphisms(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    limit: Option<usize>,
) -> Result<HomEnumeration, AlgebraError> {
    a.require_same_signature(b)?;
    let b = b.aligned_with(a)?;
    let b = b.as_ref();
    let mut s = Search {
        a,
        b,
        plan: plan(a),
        map: vec![usize::MAX; a.size()],
        used: vec![false; b.size()],
        injective: false,
        candidates: None,
        limit: limit.unwrap_or(usize::MAX),
        found: Vec::new(),
        truncated: false,
        scratch: Vec::new(),
    };
    s.run(0);
    let mut homs = s.found;
    homs.sort();
    Ok(HomEnumeration { homs, truncated: s.truncated })
}

/// An isomorphism from `a` onto `b`, if one exists.
pub fn find_isomorphism(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<Option<Homomorphism>, AlgebraError> {
    a.require_same_signature(b)?;
    let b = b.aligned_with(a)?;
    let b = b.as_ref();
    if a.size() != b.size() {
        return Ok(None);
    }
    let ia = invariants(a);
    let ib = invariants(b);
    let mut ca: Vec<&Vec<usize>> = ia.iter().collect();
    let mut cb: Vec<&Vec<usize>> = ib.iter().collect();
    ca.sort();
    cb.sort();
    if ca != cb {
        return Ok(None);
    }
    let mut by_inv: HashMap<&Vec<usize>, Vec<usize>> = HashMap::new();
    for (y, v) in ib.iter().enumerate() {
        by_inv.entry(v).or_default().push(y);
    }
    let candidates: Vec<Vec<usize>> = ia.iter().map(|v| by_inv[v].clone()).collect();
    let mut s = Search {
        a,
        b,
        plan: plan(a),
        map: vec![usize::MAX; a.size()],
        used: vec![false; b.size()],
        injective: true,
        candidates: Some(candidates),
        limit: 1,
        found: Vec::new(),
        truncated: false,
        scratch: Vec::new(),
    };
    s.run(0);
    // A bijective homomorphism between finite algebras has a homomorphic inverse.
    Ok(s.found.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, lattice_from_order, with_bounds};
    use crate::tuples::for_each_tuple;
    use term_core::Signature;

    #[test]
    fn symbol_order_does_not_matter() {
        let a = chain(3);
        let b = a.reduct(&["meet", "join"]).unwrap();
        assert!(find_isomorphism(&a, &b).unwrap().is_some());
        assert_eq!(enumerate_homomorphisms(&a, &b, None).unwrap().homs.len(), 10);
        assert!(is_homomorphism(&a, &b, &[0, 1, 2]));
        assert!(!is_homomorphism(&a, &b, &[2, 1, 0]));
    }

    /// Brute force over all n^m maps.
    fn oracle(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_tuple(b.size(), a.size(), |m| {
            if is_homomorphism(a, b, m) {
                out.push(m.to_vec());
            }
        });
        out
    }

    fn samples() -> Vec<FiniteAlgebra> {
        let n5 = lattice_from_order("N5", &["0", "a", "b", "c", "1"], |x, y| {
            x == y || x == 0 || y == 4 || (x == 1 && y == 3)
        })
        .unwrap();
        let m3 = lattice_from_order("M3", &["0", "a", "b", "c", "1"], |x, y| {
            x == y || x == 0 || y == 4
        })
        .unwrap();
        vec![chain(1), chain(2), chain(3), chain(4), n5, m3]
    }

    #[test]
    fn matches_brute_force() {
        let s = samples();
        for a in &s {
            for b in &s {
                let got: Vec<Vec<usize>> = enumerate_homomorphisms(a, b, None)
                    .unwrap()
                    .homs
                    .into_iter()
                    .map(|h| h.map)
                    .collect();
                assert_eq!(got, oracle(a, b), "{} -> {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn chain_counts() {
        let r = enumerate_homomorphisms(&chain(2), &chain(2), None).unwrap();
        assert_eq!(r.homs.len(), 3);
        let r = enumerate_homomorphisms(&chain(2), &chain(3), None).unwrap();
        assert_eq!(r.homs.len(), 6);
        let b = with_bounds(&chain(2)).unwrap();
        assert_eq!(enumerate_homomorphisms(&b, &b, None).unwrap().homs.len(), 1);
    }

    #[test]
    fn limit_truncates() {
        let r = enumerate_homomorphisms(&chain(3), &chain(3), Some(2)).unwrap();
        assert!(r.truncated);
        assert_eq!(r.homs.len(), 2);
        let r = enumerate_homomorphisms(&chain(2), &chain(2), Some(3)).unwrap();
        assert!(!r.truncated);
    }

    #[test]
    fn isomorphism_agrees_with_enumeration() {
        let s = samples();
        for a in &s {
            for b in &s {
                let iso = find_isomorphism(a, b).unwrap();
                let brute = oracle(a, b)
                    .into_iter()
                    .any(|m| a.size() == b.size() && Homomorphism::new(m).is_injective());
                assert_eq!(iso.is_some(), brute, "{} vs {}", a.name(), b.name());
                if let Some(h) = iso {
                    assert!(is_homomorphism(a, b, &h.map));
                }
            }
        }
    }

    #[test]
    fn isomorphism_of_relabelled_copy() {
        let c = chain(4);
        let perm = [2, 0, 3, 1];
        let mut inv = [0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let copy = FiniteAlgebra::from_fn("copy", c.sig().clone(), 4, |op, args| {
            let orig: Vec<usize> = args.iter().map(|&x| inv[x]).collect();
            perm[c.apply(op, &orig)]
        })
        .unwrap();
        let h = find_isomorphism(&c, &copy).unwrap().unwrap();
        assert_eq!(h.map, perm.to_vec());
    }

    #[test]
    fn unary_algebras() {
        let sig = Signature::new([("f", 1)]).unwrap();
        let cyc = FiniteAlgebra::new("c3", sig.clone(), 3, vec![vec![1, 2, 0]], None).unwrap();
        let id = FiniteAlgebra::new("id", sig, 3, vec![vec![0, 1, 2]], None).unwrap();
        assert_eq!(oracle(&cyc, &cyc).len(), enumerate_homomorphisms(&cyc, &cyc, None).unwrap().homs.len());
        assert!(find_isomorphism(&cyc, &id).unwrap().is_none());
        assert_eq!(enumerate_homomorphisms(&id, &cyc, None).unwrap().homs.len(), 0);
    }

    #[test]
    fn extension_from_generators() {
        let c = chain(3);
        let h = extend_from_generators(&c, &c, &[0, 1, 2], &[0, 0, 2]).unwrap();
        assert_eq!(h.unwrap().map, vec![0, 0, 2]);
        let h = extend_from_generators(&c, &c, &[0, 1, 2], &[2, 0, 1]).unwrap();
        assert!(h.is_none());
    }
}
