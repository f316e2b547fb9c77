use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use finite_algebra::{for_each_new_tuple, FiniteAlgebra};
use serde::{Deserialize, Serialize};
use term_core::{table_index, Term};

use crate::{duplicate, Duplicator, EngineError};

/// Memory guard for the function arena, in stored values.
const CELL_CAP: usize = 32_000_000;
/// Largest number of points a function space may have.
const POINT_CAP: usize = 4_000_000;

/// Limits for closure search. Zero in any field caps immediately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_functions: usize,
    pub max_depth: usize,
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_functions: 100_000, max_depth: 32, max_millis: 60_000 }
    }
}

impl Budget {
    pub fn zero() -> Self {
        Budget { max_functions: 0, max_depth: 0, max_millis: 0 }
    }
}

/// Which inputs a searched term function is observed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Restriction {
    /// Only diagonal elements `δ(a)` as arguments.
    Diagonal,
    /// All elements of the duplicated algebra as arguments.
    Full,
}

/// Size of an explored closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub explored: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { term: Term, depth: usize, explored: usize },
    /// The closure was computed completely and contains no match.
    Exhausted { explored: usize, depth: usize },
    Capped { explored: usize, depth: usize, reason: String },
}

/// What a search looks for: an exact value vector or any vector passing a test.
pub enum Target<'a> {
    Exact(Vec<u32>),
    Predicate(Box<dyn Fn(&[u32]) -> bool + 'a>),
}

impl Target<'_> {
    fn matches(&self, v: &[u32]) -> bool {
        match self {
            Target::Exact(e) => e.as_slice() == v,
            Target::Predicate(p) => p(v),
        }
    }
}

struct Member {
    base: FiniteAlgebra,
    power: FiniteAlgebra,
    offset: usize,
    points: usize,
}

/// The `k`-ary term functions of `P_Γ(N)` for every `N` in a class, observed
/// on diagonal or full inputs and concatenated member by member.
pub struct FunctionSpace {
    m: usize,
    k: usize,
    restriction: Restriction,
    members: Vec<Member>,
    len: usize,
    /// Per entry: arity and symbol name, in entry order.
    ops: Vec<(usize, String)>,
}

impl FunctionSpace {
    pub fn new(
        g: &Duplicator,
        class: &[FiniteAlgebra],
        k: usize,
        restriction: Restriction,
    ) -> Result<Self, EngineError> {
        let mut members = Vec::with_capacity(class.len());
        let mut offset = 0;
        for n in class {
            let base = n.conform_to(&g.base_sig)?;
            let power = duplicate(g, &base)?;
            let per = match restriction {
                Restriction::Diagonal => base.size(),
                Restriction::Full => power.size(),
            };
            let points = (0..k)
                .try_fold(1usize, |a, _| a.checked_mul(per))
                .filter(|&p| offset + p <= POINT_CAP)
                .ok_or_else(|| EngineError::Resource {
                    what: format!("function space over `{}` with arity {k}", n.name()),
                    limit: POINT_CAP,
                })?;
            members.push(Member { base, power, offset, points });
            offset += points;
        }
        Ok(FunctionSpace {
            m: g.m,
            k,
            restriction,
            members,
            len: offset,
            ops: g.entries.iter().map(|e| (e.arity, e.name.clone())).collect(),
        })
    }

    /// Total number of observation points.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn base(&self, r: usize) -> &FiniteAlgebra {
        &self.members[r].base
    }

    pub fn power(&self, r: usize) -> &FiniteAlgebra {
        &self.members[r].power
    }

    /// The range of global point indices belonging to member `r`.
    pub fn points(&self, r: usize) -> std::ops::Range<usize> {
        let mb = &self.members[r];
        mb.offset..mb.offset + mb.points
    }

    /// The input tuple at local point `p` of member `r`: base elements for
    /// diagonal restriction, duplicated elements for full restriction.
    pub fn inputs(&self, r: usize, p: usize) -> Vec<usize> {
        let per = match self.restriction {
            Restriction::Diagonal => self.members[r].base.size(),
            Restriction::Full => self.members[r].power.size(),
        };
        let mut out = vec![0; self.k];
        let mut rest = p;
        for slot in out.iter_mut().rev() {
            *slot = rest % per;
            rest /= per;
        }
        out
    }

    /// Coordinate `i` (1-based) of element `v` of member `r`'s duplicated algebra.
    pub fn coordinate(&self, r: usize, v: usize, i: usize) -> usize {
        let n = self.members[r].base.size();
        let shift = (self.m - i) as u32;
        (v / n.pow(shift)) % n
    }

    /// The diagonal element `δ(a)` in member `r`.
    pub fn diagonal(&self, r: usize, a: usize) -> usize {
        let n = self.members[r].base.size();
        (0..self.m).fold(0, |acc, _| acc * n + a)
    }

    /// The value vector of the projection `x_j` (1-based).
    pub fn generator(&self, j: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len);
        for r in 0..self.members.len() {
            for p in 0..self.members[r].points {
                let a = self.inputs(r, p)[j - 1];
                let v = match self.restriction {
                    Restriction::Diagonal => self.diagonal(r, a),
                    Restriction::Full => a,
                };
                out.push(v as u32);
            }
        }
        out
    }

    /// Evaluates a term of the duplicated language at every point.
    pub fn evaluate(&self, t: &Term) -> Result<Vec<u32>, EngineError> {
        if t.span() > self.k {
            return Err(EngineError::Invalid(format!(
                "term reads x{} in an arity-{} space",
                t.span(),
                self.k
            )));
        }
        let mut out = Vec::with_capacity(self.len);
        for r in 0..self.members.len() {
            let compiled = term_core::CompiledTerm::compile(t, &self.members[r].power)?;
            let mut stack = Vec::new();
            for p in 0..self.members[r].points {
                let mut args = self.inputs(r, p);
                if self.restriction == Restriction::Diagonal {
                    for a in args.iter_mut() {
                        *a = self.diagonal(r, *a);
                    }
                }
                out.push(compiled.eval_with(&args, &mut stack) as u32);
            }
        }
        Ok(out)
    }

    /// Searches for a single target.
    pub fn search(&self, target: &Target<'_>, budget: &Budget) -> SearchOutcome {
        let multi = self.search_all(std::slice::from_ref(target), budget);
        match multi.found.into_iter().next().flatten() {
            Some((term, depth)) => SearchOutcome::Found { term, depth, explored: multi.explored },
            None => match multi.capped {
                Some(reason) => SearchOutcome::Capped {
                    explored: multi.explored,
                    depth: multi.depth,
                    reason,
                },
                None => SearchOutcome::Exhausted { explored: multi.explored, depth: multi.depth },
            },
        }
    }

    /// Breadth-first closure from the projections, stopping once every target is
    /// matched. Each target gets the first (minimal depth, then earliest) hit.
    pub fn search_all(&self, targets: &[Target<'_>], budget: &Budget) -> MultiOutcome {
        Explorer::new(self).run(targets, budget)
    }
}

/// Result of a search for several targets over one closure.
#[derive(Clone, Debug)]
pub struct MultiOutcome {
    pub found: Vec<Option<(Term, usize)>>,
    pub explored: usize,
    /// Rounds completed.
    pub depth: usize,
    /// Set when the budget stopped the closure before it was complete.
    pub capped: Option<String>,
}

struct Explorer<'s> {
    space: &'s FunctionSpace,
    arena: Vec<u32>,
    derivations: Vec<(usize, Vec<u32>)>,
    depths: Vec<usize>,
    index: HashMap<u64, Vec<u32>>,
}

const GENERATOR: usize = usize::MAX;

fn hash_of(v: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

impl<'s> Explorer<'s> {
    fn new(space: &'s FunctionSpace) -> Self {
        Explorer {
            space,
            arena: Vec::new(),
            derivations: Vec::new(),
            depths: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn count(&self) -> usize {
        self.depths.len()
    }

    fn values(&self, i: usize) -> &[u32] {
        let l = self.space.len;
        &self.arena[i * l..(i + 1) * l]
    }

    /// Inserts `v` unless present; returns the new index.
    fn insert(&mut self, v: &[u32], op: usize, args: Vec<u32>, depth: usize) -> Option<usize> {
        let h = hash_of(v);
        if let Some(bucket) = self.index.get(&h) {
            if bucket.iter().any(|&i| self.values(i as usize) == v) {
                return None;
            }
        }
        let i = self.count();
        self.arena.extend_from_slice(v);
        self.derivations.push((op, args));
        self.depths.push(depth);
        self.index.entry(h).or_default().push(i as u32);
        Some(i)
    }

    fn term(&self, i: usize) -> Term {
        let (op, args) = &self.derivations[i];
        if *op == GENERATOR {
            return Term::var(args[0] as usize);
        }
        Term::app(
            self.space.ops[*op].1.clone(),
            args.iter().map(|&a| self.term(a as usize)).collect(),
        )
    }

    fn run(mut self, targets: &[Target<'_>], budget: &Budget) -> MultiOutcome {
        let started = Instant::now();
        let mut found: Vec<Option<(Term, usize)>> = vec![None; targets.len()];
        let mut remaining = targets.len();
        let cap_functions = budget.max_functions.min(CELL_CAP / self.space.len.max(1));
        let mut capped: Option<String> = None;
        let mut rounds = 0;

        let record = |this: &Self, i: usize, found: &mut Vec<Option<(Term, usize)>>| {
            let v = this.values(i);
            let mut hits = 0;
            for (t, slot) in targets.iter().zip(found.iter_mut()) {
                if slot.is_none() && t.matches(v) {
                    *slot = Some((this.term(i), this.depths[i]));
                    hits += 1;
                }
            }
            hits
        };

        let finish = |this: &Self, found, capped, rounds| MultiOutcome {
            found,
            explored: this.count(),
            depth: rounds,
            capped,
        };

        if targets.is_empty() {
            return finish(&self, found, None, 0);
        }
        if budget.max_functions == 0 || budget.max_millis == 0 {
            return finish(&self, found, Some("budget is zero".into()), 0);
        }

        // Projections, then constants.
        let mut seeds: Vec<(Vec<u32>, usize, Vec<u32>, usize)> = Vec::new();
        for j in 1..=self.space.k {
            seeds.push((self.space.generator(j), GENERATOR, vec![j as u32], 0));
        }
        let mut scratch = vec![0u32; self.space.len];
        for (op, (arity, _)) in self.space.ops.iter().enumerate() {
            if *arity == 0 {
                self.apply(op, &[], &mut scratch);
                seeds.push((scratch.clone(), op, Vec::new(), 1));
            }
        }
        for (v, op, args, d) in seeds {
            if self.count() >= cap_functions {
                capped = Some(format!("function limit {cap_functions} reached"));
                break;
            }
            if let Some(i) = self.insert(&v, op, args, d) {
                remaining -= record(&self, i, &mut found);
                if remaining == 0 {
                    return finish(&self, found, None, 0);
                }
            }
        }
        if capped.is_some() {
            return finish(&self, found, capped, 0);
        }

        let mut start = 0;
        let mut tick = 0usize;
        loop {
            let end = self.count();
            if start >= end {
                break;
            }
            if rounds >= budget.max_depth {
                capped = Some(format!("depth limit {} reached", budget.max_depth));
                break;
            }
            rounds += 1;
            let mut halt: Option<Option<String>> = None;
            for (op, (arity, _)) in self.space.ops.clone().iter().enumerate() {
                if *arity == 0 {
                    continue;
                }
                let mut tuples: Vec<Vec<u32>> = Vec::new();
                for_each_new_tuple(end, start, *arity, &mut |idx| {
                    tuples.push(idx.iter().map(|&i| i as u32).collect())
                });
                for idx in tuples {
                    tick += 1;
                    if tick.is_multiple_of(256) && started.elapsed().as_millis() as u64 > budget.max_millis
                    {
                        halt = Some(Some(format!("time limit {} ms reached", budget.max_millis)));
                        break;
                    }
                    let iargs: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
                    self.apply(op, &iargs, &mut scratch);
                    let h = hash_of(&scratch);
                    let known = self
                        .index
                        .get(&h)
                        .is_some_and(|b| b.iter().any(|&i| self.values(i as usize) == scratch));
                    if known {
                        continue;
                    }
                    if self.count() >= cap_functions {
                        halt = Some(Some(format!("function limit {cap_functions} reached")));
                        break;
                    }
                    let depth = 1 + iargs.iter().map(|&i| self.depths[i]).max().unwrap_or(0);
                    let v = scratch.clone();
                    let i = self.insert(&v, op, idx, depth).expect("checked as new");
                    remaining -= record(&self, i, &mut found);
                    if remaining == 0 {
                        halt = Some(None);
                        break;
                    }
                }
                if halt.is_some() {
                    break;
                }
            }
            if let Some(reason) = halt {
                capped = reason;
                return finish(&self, found, capped, rounds);
            }
            start = end;
        }
        finish(&self, found, capped, rounds)
    }

    /// Pointwise application of entry `op` to the functions `args`.
    fn apply(&self, op: usize, args: &[usize], out: &mut [u32]) {
        let mut tuple = vec![0usize; args.len()];
        for mb in &self.space.members {
            let table = mb.power.table_at(op);
            let s = mb.power.size();
            for p in mb.offset..mb.offset + mb.points {
                for (slot, &a) in tuple.iter_mut().zip(args) {
                    *slot = self.arena[a * self.space.len + p] as usize;
                }
                out[p] = table[table_index(s, &tuple)] as u32;
            }
        }
    }
}

/// Finds a term of the duplicated language realising `target` on every class
/// member, by exact breadth-first closure.
pub fn clone_search(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    k: usize,
    restriction: Restriction,
    target: &Target<'_>,
    budget: &Budget,
) -> Result<SearchOutcome, EngineError> {
    let space = FunctionSpace::new(g, class, k, restriction)?;
    if let Target::Exact(v) = target {
        if v.len() != space.len() {
            return Err(EngineError::Invalid(format!(
                "target has {} values, the space has {} points",
                v.len(),
                space.len()
            )));
        }
    }
    Ok(space.search(target, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplicator::tests::{bl_sig, gamma_blu};
    use crate::Mode;
    use finite_algebra::builders::chain;

    fn merge_target(space: &FunctionSpace) -> Vec<u32> {
        let mut out = Vec::new();
        for r in 0..space.member_count() {
            let n = space.base(r).size();
            for p in 0..space.points(r).len() {
                let args = space.inputs(r, p);
                let a = space.coordinate(r, args[0], 1);
                let d = space.coordinate(r, args[1], 2);
                out.push((a * n + d) as u32);
            }
        }
        out
    }

    #[test]
    fn finds_merge_for_blu() {
        let g = gamma_blu();
        let class = [chain(2), chain(3)];
        let space = FunctionSpace::new(&g, &class, 2, Restriction::Full).unwrap();
        let target = Target::Exact(merge_target(&space));
        match space.search(&target, &Budget::default()) {
            SearchOutcome::Found { term, .. } => {
                assert_eq!(space.evaluate(&term).unwrap(), merge_target(&space));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projection_is_immediate() {
        let g = gamma_blu();
        let space = FunctionSpace::new(&g, &[chain(2)], 2, Restriction::Full).unwrap();
        let t = Target::Exact(space.generator(1));
        match space.search(&t, &Budget::default()) {
            SearchOutcome::Found { term, depth, explored } => {
                assert_eq!(term, Term::var(1));
                assert_eq!((depth, explored), (0, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coordinatewise_lattice_has_no_merge() {
        let g = Duplicator::new("lat", bl_sig(), 2, Mode::Linked)
            .with_entry("j", 2, &["(join x1 x3)", "(join x2 x4)"])
            .unwrap()
            .with_entry("mt", 2, &["(meet x1 x3)", "(meet x2 x4)"])
            .unwrap();
        let space = FunctionSpace::new(&g, &[chain(2)], 2, Restriction::Full).unwrap();
        let target = Target::Exact(merge_target(&space));
        match space.search(&target, &Budget::default()) {
            // the free distributive lattice on two generators
            SearchOutcome::Exhausted { explored, .. } => assert_eq!(explored, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_budget_caps() {
        let g = gamma_blu();
        let space = FunctionSpace::new(&g, &[chain(2)], 1, Restriction::Full).unwrap();
        let t = Target::Predicate(Box::new(|_| false));
        assert!(matches!(space.search(&t, &Budget::zero()), SearchOutcome::Capped { .. }));
    }

    #[test]
    fn exact_target_length_is_checked() {
        let g = gamma_blu();
        let r = clone_search(
            &g,
            &[chain(2)],
            1,
            Restriction::Full,
            &Target::Exact(vec![0]),
            &Budget::default(),
        );
        assert!(matches!(r, Err(EngineError::Invalid(_))));
    }
}
