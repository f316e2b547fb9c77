use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::tuples::for_each_tuple;
use crate::{AlgebraError, FiniteAlgebra, Homomorphism, Limits};

/// An equivalence relation stored as least-representative array:
/// `rep[a]` is the least element of the block of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    rep: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Merges the blocks of `a` and `b`; true if they were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let roots: Vec<usize> = (0..n).map(|a| self.find(a)).collect();
        for a in 0..n {
            let r = roots[a];
            if least[r] == usize::MAX {
                least[r] = a;
            }
        }
        Congruence { rep: roots.iter().map(|&r| least[r]).collect() }
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence { rep: (0..n).collect() }
    }

    pub fn total(n: usize) -> Self {
        Congruence { rep: vec![0; n] }
    }

    /// Canonicalises an arbitrary block labelling (equal labels mean same block).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(*l).or_insert(i))
            .collect();
        Congruence { rep }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.into_congruence()
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.rep.len()];
        for (a, &r) in self.rep.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(a);
        }
        out
    }

    pub fn num_blocks(&self) -> usize {
        self.rep.iter().enumerate().filter(|(a, r)| a == *r).count()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(a, &r)| a == r)
    }

    pub fn is_total(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// True when `self ⊆ other`.
    pub fn leq(&self, other: &Congruence) -> bool {
        (0..self.rep.len()).all(|a| other.related(a, self.rep[a]))
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.rep.len());
        for a in 0..self.rep.len() {
            uf.union(a, self.rep[a]);
            uf.union(a, other.rep[a]);
        }
        uf.into_congruence()
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = (0..self.rep.len())
            .map(|a| self.rep[a] * self.rep.len() + other.rep[a])
            .collect();
        Congruence::from_labels(&labels)
    }

    /// The kernel of a map.
    pub fn kernel(map: &[usize]) -> Congruence {
        Congruence::from_labels(map)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Merges along all unary translations of the queued pairs until stable.
fn close(alg: &FiniteAlgebra, uf: &mut UnionFind, mut queue: VecDeque<(usize, usize)>) {
    let n = alg.size();
    let mut args = Vec::new();
    while let Some((x, y)) = queue.pop_front() {
        for op in 0..alg.sig().len() {
            let k = alg.arity_at(op);
            for p in 0..k {
                for_each_tuple(n, k - 1, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..p]);
                    args.push(x);
                    args.extend_from_slice(&rest[p..]);
                    let u = alg.apply(op, &args);
                    args[p] = y;
                    let v = alg.apply(op, &args);
                    if uf.union(u, v) {
                        queue.push_back((u, v));
                    }
                });
            }
        }
    }
}

/// The least congruence identifying `a` and `b`.
pub fn principal_congruence(
    alg: &FiniteAlgebra,
    a: usize,
    b: usize,
) -> Result<Congruence, AlgebraError> {
    congruence_generated(alg, &[(a, b)])
}

/// The least congruence containing all listed pairs.
pub fn congruence_generated(
    alg: &FiniteAlgebra,
    pairs: &[(usize, usize)],
) -> Result<Congruence, AlgebraError> {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut queue = VecDeque::new();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(AlgebraError::ElementOutOfRange(a.max(b), n));
        }
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    close(alg, &mut uf, queue);
    Ok(uf.into_congruence())
}

/// Checks that a partition is compatible with every operation.
/// Returns the first violating (symbol, element, representative) on failure.
pub fn compatibility_violation(
    alg: &FiniteAlgebra,
    theta: &Congruence,
) -> Option<(String, usize, usize)> {
    let n = alg.size();
    let mut args = Vec::new();
    for x in 0..n {
        let y = theta.rep[x];
        if x == y {
            continue;
        }
        for op in 0..alg.sig().len() {
            let k = alg.arity_at(op);
            for p in 0..k {
                let mut bad = false;
                for_each_tuple(n, k - 1, |rest| {
                    if bad {
                        return;
                    }
                    args.clear();
                    args.extend_from_slice(&rest[..p]);
                    args.push(x);
                    args.extend_from_slice(&rest[p..]);
                    let u = alg.apply(op, &args);
                    args[p] = y;
                    let v = alg.apply(op, &args);
                    if !theta.related(u, v) {
                        bad = true;
                    }
                });
                if bad {
                    return Some((alg.sig().symbols()[op].name.clone(), x, y));
                }
            }
        }
    }
    None
}

pub fn is_congruence(alg: &FiniteAlgebra, theta: &Congruence) -> bool {
    theta.size() == alg.size() && compatibility_violation(alg, theta).is_none()
}

/// The quotient algebra, blocks ordered by least representative, and the projection.
pub fn quotient_by(
    alg: &FiniteAlgebra,
    theta: &Congruence,
) -> Result<(FiniteAlgebra, Homomorphism), AlgebraError> {
    if theta.size() != alg.size() {
        return Err(AlgebraError::Invalid("partition size differs from universe".into()));
    }
    if let Some((sym, x, y)) = compatibility_violation(alg, theta) {
        return Err(AlgebraError::Incompatible(format!(
            "`{sym}` separates {} from {}",
            alg.label(x),
            alg.label(y)
        )));
    }
    let blocks = theta.blocks();
    let mut block_of = vec![0; alg.size()];
    for (i, b) in blocks.iter().enumerate() {
        for &e in b {
            block_of[e] = i;
        }
    }
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let mut args = Vec::new();
    let q = FiniteAlgebra::from_fn(
        format!("{}/theta", alg.name()),
        alg.sig().clone(),
        blocks.len(),
        |op, bargs| {
            args.clear();
            args.extend(bargs.iter().map(|&b| reps[b]));
            block_of[alg.apply(op, &args)]
        },
    )?;
    let labels = alg.labels().map(|_| {
        blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|&e| alg.label(e)).collect();
                format!("[{}]", inner.join(","))
            })
            .collect()
    });
    let q = q.with_labels(labels)?;
    Ok((q, Homomorphism::new(block_of)))
}

/// All congruences with their inclusion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    /// `leq[i][j]` iff congruence `i` is contained in congruence `j`.
    pub leq: Vec<Vec<bool>>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// The lattice as a finite algebra with `join` and `meet` on congruence indices.
    pub fn as_lattice(&self) -> FiniteAlgebra {
        let idx = |c: &Congruence| self.congruences.iter().position(|d| d == c).unwrap();
        let n = self.len();
        FiniteAlgebra::from_fn("Con", crate::builders::lattice_signature(), n, |op, args| {
            let a = &self.congruences[args[0]];
            let b = &self.congruences[args[1]];
            if op == 0 {
                idx(&a.join(b))
            } else {
                idx(&a.meet(b))
            }
        })
        .expect("congruences form a lattice")
    }
}

/// Enumerates all congruences as joins of principal ones.
pub fn congruence_lattice(
    alg: &FiniteAlgebra,
    limits: &Limits,
) -> Result<CongruenceLattice, AlgebraError> {
    let n = alg.size();
    if n > limits.con_universe_cap {
        return Err(AlgebraError::Resource {
            what: "universe size for congruence lattice".into(),
            limit: limits.con_universe_cap,
        });
    }
    let mut principals: BTreeSet<Congruence> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principals.insert(principal_congruence(alg, a, b)?);
        }
    }
    let principals: Vec<Congruence> = principals.into_iter().collect();
    let mut all: BTreeSet<Congruence> = BTreeSet::new();
    let id = Congruence::identity(n);
    all.insert(id.clone());
    let mut queue = vec![id];
    while let Some(c) = queue.pop() {
        for p in &principals {
            let j = c.join(p);
            if all.insert(j.clone()) {
                if all.len() > limits.con_count_cap {
                    return Err(AlgebraError::Resource {
                        what: "number of congruences".into(),
                        limit: limits.con_count_cap,
                    });
                }
                queue.push(j);
            }
        }
    }
    let mut congruences: Vec<Congruence> = all.into_iter().collect();
    congruences.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    for i in 0..congruences.len() {
        for j in i + 1..congruences.len() {
            let m = congruences[i].meet(&congruences[j]);
            if !congruences.contains(&m) {
                return Err(AlgebraError::Invalid(format!(
                    "congruences not closed under intersection: {m}"
                )));
            }
        }
    }
    let leq = congruences
        .iter()
        .map(|a| congruences.iter().map(|b| a.leq(b)).collect())
        .collect();
    Ok(CongruenceLattice { congruences, leq })
}

/// Subdirect irreducibility, with the monolith when irreducible.
pub fn is_subdirectly_irreducible(
    alg: &FiniteAlgebra,
) -> Result<(bool, Option<Congruence>), AlgebraError> {
    let n = alg.size();
    if n < 2 {
        return Err(AlgebraError::TooSmall(alg.name().to_string()));
    }
    // Every non-identity congruence contains a non-identity principal one.
    let mut monolith = Congruence::total(n);
    for a in 0..n {
        for b in a + 1..n {
            if monolith.related(a, b) || !monolith.is_identity() {
                let p = principal_congruence(alg, a, b)?;
                monolith = monolith.meet(&p);
                if monolith.is_identity() {
                    return Ok((false, None));
                }
            }
        }
    }
    Ok((true, Some(monolith)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, lattice_from_order};

    fn m3() -> FiniteAlgebra {
        lattice_from_order("M3", &["0", "a", "b", "c", "1"], |x, y| {
            x == y || x == 0 || y == 4
        })
        .unwrap()
    }

    #[test]
    fn principal_examples() {
        let c = chain(3);
        let t = principal_congruence(&c, 0, 1).unwrap();
        assert_eq!(t.blocks(), vec![vec![0, 1], vec![2]]);
        assert!(principal_congruence(&c, 1, 1).unwrap().is_identity());
        let m = m3();
        for a in 0..5 {
            for b in a + 1..5 {
                assert!(principal_congruence(&m, a, b).unwrap().is_total());
            }
        }
    }

    #[test]
    fn lattice_counts() {
        let l = Limits::default();
        assert_eq!(congruence_lattice(&chain(2), &l).unwrap().len(), 2);
        let c3 = congruence_lattice(&chain(3), &l).unwrap();
        assert_eq!(c3.len(), 4);
        assert!(c3.congruences[0].is_identity());
        assert!(c3.congruences[3].is_total());
        assert_eq!(congruence_lattice(&m3(), &l).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let l = Limits { con_universe_cap: 2, ..Limits::default() };
        assert!(matches!(
            congruence_lattice(&chain(3), &l),
            Err(AlgebraError::Resource { .. })
        ));
    }

    #[test]
    fn quotients() {
        let c = chain(3);
        let theta = Congruence::from_blocks(3, &[vec![0, 1], vec![2]]);
        let (q, h) = quotient_by(&c, &theta).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(h.map, vec![0, 0, 1]);
        assert!(crate::find_isomorphism(&q, &chain(2)).unwrap().is_some());
        let (q, _) = quotient_by(&c, &Congruence::identity(3)).unwrap();
        assert!(crate::find_isomorphism(&q, &c).unwrap().is_some());
        let (q, _) = quotient_by(&c, &Congruence::total(3)).unwrap();
        assert_eq!(q.size(), 1);
        let bad = Congruence::from_blocks(3, &[vec![0, 2]]);
        assert!(matches!(quotient_by(&c, &bad), Err(AlgebraError::Incompatible(_))));
    }

    #[test]
    fn subdirect_irreducibility() {
        let (si, mono) = is_subdirectly_irreducible(&chain(2)).unwrap();
        assert!(si);
        assert!(mono.unwrap().is_total());
        assert!(!is_subdirectly_irreducible(&chain(3)).unwrap().0);
        assert!(is_subdirectly_irreducible(&m3()).unwrap().0);
        assert!(is_subdirectly_irreducible(&chain(1)).is_err());
    }

    #[test]
    fn join_meet_order() {
        let a = Congruence::from_blocks(4, &[vec![0, 1]]);
        let b = Congruence::from_blocks(4, &[vec![1, 2]]);
        let j = a.join(&b);
        assert_eq!(j.blocks(), vec![vec![0, 1, 2], vec![3]]);
        assert!(a.leq(&j) && b.leq(&j));
        assert!(a.meet(&b).is_identity());
        assert_eq!(a.to_string(), "{{0,1},{2},{3}}");
    }
}
