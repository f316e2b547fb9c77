use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use finite_algebra::{for_each_tuple_in, FiniteAlgebra};
use serde::{Deserialize, Serialize};
use term_core::{CompiledTerm, Term};

use crate::search::{Certificate, FunctionSpace, MultiOutcome, Restriction, Target};
use crate::{duplicate, Budget, Duplicator, EngineError};

/// Assignment cap for verifying a single witness by evaluation.
const EVAL_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    L,
    #[serde(rename = "L'")]
    LPrime,
    M,
    P,
    D,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::L => "L",
            Condition::LPrime => "L'",
            Condition::M => "M",
            Condition::P => "P",
            Condition::D => "D",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        })
    }
}

/// `Witness` verifies supplied terms and searches only for missing ones;
/// `Search` ignores supplied terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Witness,
    Search,
}

/// One thing a condition requires, e.g. `join@1` for (L) or `merge` for (M).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// `supplied`, `search`, `composed` or `trivial`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Obligation {
    fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        Obligation {
            id: id.into(),
            verdict,
            witness: None,
            source: None,
            counterexample: None,
            certificate: None,
            note: None,
        }
    }

    fn passed(id: impl Into<String>, witness: &Term, source: &str) -> Self {
        Obligation {
            witness: Some(witness.to_string()),
            source: Some(source.into()),
            ..Obligation::new(id, Verdict::Pass)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub m: usize,
    pub duplicator: String,
    pub class: Vec<String>,
    /// `witness`, `search` or `syntactic`.
    pub mode: String,
    pub verdict: Verdict,
    pub obligations: Vec<Obligation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
}

impl ConditionReport {
    fn assemble(
        condition: Condition,
        g: &Duplicator,
        class: &[FiniteAlgebra],
        mode: &str,
        obligations: Vec<Obligation>,
        budget: Option<Budget>,
    ) -> Self {
        let verdict = if obligations.iter().any(|o| o.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if obligations.iter().any(|o| o.verdict == Verdict::Unknown) {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
        ConditionReport {
            condition,
            m: g.m,
            duplicator: g.name.clone(),
            class: class.iter().map(|a| a.name().to_string()).collect(),
            mode: mode.into(),
            verdict,
            obligations,
            budget,
        }
    }

    /// Name with the factor count, e.g. `M_4`; plain for `m = 2`.
    pub fn label(&self) -> String {
        if self.m == 2 || self.condition == Condition::D {
            format!("({})", self.condition)
        } else {
            format!("({}_{})", self.condition, self.m)
        }
    }
}

fn mode_name(mode: CheckMode) -> &'static str {
    match mode {
        CheckMode::Witness => "witness",
        CheckMode::Search => "search",
    }
}

fn conform(g: &Duplicator, class: &[FiniteAlgebra]) -> Result<Vec<FiniteAlgebra>, EngineError> {
    Ok(class
        .iter()
        .map(|a| a.conform_to(&g.base_sig))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Applies a multi-target search result to pending obligations.
fn settle(
    result: Result<MultiOutcome, EngineError>,
    pending: Vec<(usize, String)>,
    obligations: &mut [Obligation],
    what: impl Fn(&str) -> String,
) {
    match result {
        Err(e) => {
            for (slot, _) in pending {
                obligations[slot].verdict = Verdict::Unknown;
                obligations[slot].note = Some(format!("search not run: {e}"));
            }
        }
        Ok(out) => {
            let cert = Certificate { explored: out.explored, depth: out.depth };
            for ((slot, label), hit) in pending.into_iter().zip(out.found) {
                let o = &mut obligations[slot];
                match hit {
                    Some((t, depth)) => {
                        o.verdict = Verdict::Pass;
                        o.witness = Some(t.to_string());
                        o.source = Some("search".into());
                        o.certificate = Some(Certificate { explored: out.explored, depth });
                    }
                    None => match &out.capped {
                        Some(reason) => {
                            o.verdict = Verdict::Unknown;
                            o.certificate = Some(cert);
                            o.note = Some(format!("search capped: {reason}"));
                        }
                        None => {
                            o.verdict = Verdict::Fail;
                            o.certificate = Some(cert);
                            o.counterexample = Some(format!(
                                "exhausted closure of {} functions contains no {}",
                                out.explored,
                                what(&label)
                            ));
                        }
                    },
                }
            }
        }
    }
}

/// Per-point data for (L) targets: the base operation's value and how to
/// read coordinates of duplicated elements.
struct DiagonalTargets {
    expected: Vec<u32>,
    base_n: Vec<u32>,
    divisor: Vec<u32>,
}

impl DiagonalTargets {
    fn new(space: &FunctionSpace, m: usize, symbol: &str) -> Self {
        let mut expected = Vec::with_capacity(space.len());
        let mut base_n = Vec::with_capacity(space.len());
        let mut divisor = Vec::with_capacity(space.len());
        for r in 0..space.member_count() {
            let base = space.base(r);
            let n = base.size();
            for p in 0..space.points(r).len() {
                expected.push(base.apply_named(symbol, &space.inputs(r, p)) as u32);
                base_n.push(n as u32);
                divisor.push(n.pow((m - 1) as u32) as u32);
            }
        }
        DiagonalTargets { expected, base_n, divisor }
    }

    /// Whether coordinate `i` of `v` equals the operation everywhere.
    fn matches(&self, v: &[u32], i: usize) -> bool {
        v.iter().enumerate().all(|(p, &x)| {
            let n = self.base_n[p];
            let div = self.divisor[p] / n.pow((i - 1) as u32);
            (x / div) % n == self.expected[p]
        })
    }

    fn mismatch(
        &self,
        space: &FunctionSpace,
        v: &[u32],
        i: usize,
        symbol: &str,
    ) -> Option<String> {
        for r in 0..space.member_count() {
            for (local, p) in space.points(r).enumerate() {
                let n = self.base_n[p];
                let div = self.divisor[p] / n.pow((i - 1) as u32);
                let got = (v[p] / div) % n;
                if got != self.expected[p] {
                    let base = space.base(r);
                    let args: Vec<String> =
                        space.inputs(r, local).iter().map(|&a| base.label(a)).collect();
                    return Some(format!(
                        "in {}: coordinate {i} at diagonal ({}) is {}, but {symbol} gives {}",
                        base.name(),
                        args.join(","),
                        base.label(got as usize),
                        base.label(self.expected[p] as usize)
                    ));
                }
            }
        }
        None
    }
}

fn space_for<'a>(
    spaces: &'a mut BTreeMap<usize, Result<FunctionSpace, EngineError>>,
    g: &Duplicator,
    class: &[FiniteAlgebra],
    k: usize,
) -> &'a Result<FunctionSpace, EngineError> {
    spaces
        .entry(k)
        .or_insert_with(|| FunctionSpace::new(g, class, k, Restriction::Diagonal))
}

fn check_l_like(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
    prime: bool,
) -> Result<ConditionReport, EngineError> {
    let class = conform(g, class)?;
    let m = g.m;
    let mut obligations = Vec::new();
    // (obligation slot, symbol, coordinate or None for any)
    let mut keys: Vec<(String, Option<usize>)> = Vec::new();
    for s in g.base_sig.symbols() {
        if prime {
            obligations.push(Obligation::new(s.name.clone(), Verdict::Unknown));
            keys.push((s.name.clone(), None));
        } else {
            for i in 1..=m {
                obligations.push(Obligation::new(format!("{}@{i}", s.name), Verdict::Unknown));
                keys.push((s.name.clone(), Some(i)));
            }
        }
    }
    let mut spaces: BTreeMap<usize, Result<FunctionSpace, EngineError>> = BTreeMap::new();
    let mut pending: Vec<usize> = Vec::new();
    for (slot, (sym, coord)) in keys.iter().enumerate() {
        let k = g.base_sig.arity(sym).expect("symbol from the signature");
        let candidates: Vec<_> = if mode == CheckMode::Witness {
            g.witnesses
                .l
                .iter()
                .filter(|w| &w.symbol == sym && coord.is_none_or(|c| c == w.coordinate))
                .collect()
        } else {
            Vec::new()
        };
        if candidates.is_empty() {
            pending.push(slot);
            continue;
        }
        let space = match space_for(&mut spaces, g, &class, k) {
            Ok(s) => s,
            Err(e) => {
                obligations[slot].note = Some(format!("cannot evaluate witnesses: {e}"));
                continue;
            }
        };
        let targets = DiagonalTargets::new(space, m, sym);
        let mut failure = None;
        for w in candidates {
            if w.coordinate == 0 || w.coordinate > m {
                failure = Some(format!("coordinate {} out of range", w.coordinate));
                continue;
            }
            let v = space.evaluate(&w.term)?;
            match targets.mismatch(space, &v, w.coordinate, sym) {
                None => {
                    let mut o = Obligation::passed(obligations[slot].id.clone(), &w.term, "supplied");
                    if prime {
                        o.note = Some(format!("coordinate {}", w.coordinate));
                    }
                    obligations[slot] = o;
                    failure = None;
                    break;
                }
                Some(msg) => failure = Some(format!("witness {}: {msg}", w.term)),
            }
        }
        if let Some(msg) = failure {
            obligations[slot].verdict = Verdict::Fail;
            obligations[slot].counterexample = Some(msg);
        }
    }
    // Group what is left by arity and search each diagonal closure once.
    let mut by_arity: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for slot in pending {
        let k = g.base_sig.arity(&keys[slot].0).expect("symbol from the signature");
        by_arity.entry(k).or_default().push(slot);
    }
    for (k, slots) in by_arity {
        let result = match space_for(&mut spaces, g, &class, k) {
            Err(e) => Err(e.clone()),
            Ok(space) => {
                let data: Vec<(DiagonalTargets, Option<usize>)> = slots
                    .iter()
                    .map(|&s| (DiagonalTargets::new(space, m, &keys[s].0), keys[s].1))
                    .collect();
                let targets: Vec<Target<'_>> = data
                    .iter()
                    .map(|(d, coord)| {
                        let coord = *coord;
                        Target::Predicate(Box::new(move |v: &[u32]| match coord {
                            Some(i) => d.matches(v, i),
                            None => (1..=m).any(|i| d.matches(v, i)),
                        }))
                    })
                    .collect();
                Ok(space.search_all(&targets, budget))
            }
        };
        let pending = slots.iter().map(|&s| (s, obligations[s].id.clone())).collect();
        settle(result, pending, &mut obligations, |id| {
            format!("function matching `{id}` on the diagonal")
        });
    }
    if prime {
        // Record which coordinate a searched witness realises.
        let mut spaces_again: HashMap<usize, FunctionSpace> = HashMap::new();
        for (slot, (sym, _)) in keys.iter().enumerate() {
            let o = &obligations[slot];
            if o.verdict != Verdict::Pass || o.note.is_some() {
                continue;
            }
            let k = g.base_sig.arity(sym).expect("symbol from the signature");
            if let std::collections::hash_map::Entry::Vacant(e) = spaces_again.entry(k) {
                e.insert(FunctionSpace::new(g, &class, k, Restriction::Diagonal)?);
            }
            let space = &spaces_again[&k];
            let gsig = g.gamma_signature()?;
            let t = term_core::parse_term(o.witness.as_deref().unwrap_or("x1"), &gsig)?;
            let v = space.evaluate(&t)?;
            let d = DiagonalTargets::new(space, m, sym);
            if let Some(i) = (1..=m).find(|&i| d.matches(&v, i)) {
                obligations[slot].note = Some(format!("coordinate {i}"));
            }
        }
    }
    let cond = if prime { Condition::LPrime } else { Condition::L };
    Ok(ConditionReport::assemble(cond, g, &class, mode_name(mode), obligations, Some(*budget)))
}

/// Condition (L) (or (L_m)): every base operation is recovered at every
/// coordinate by some term of the duplicated language on diagonal inputs.
pub fn check_condition_l(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
) -> Result<ConditionReport, EngineError> {
    check_l_like(g, class, mode, budget, false)
}

/// Condition (L′): every base operation is recovered at some coordinate.
pub fn check_condition_l_prime(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
) -> Result<ConditionReport, EngineError> {
    check_l_like(g, class, mode, budget, true)
}

/// The `(argument, coordinate)` positions (0-based argument, 1-based
/// coordinate) that coordinate `j` of `t` can read.
fn dependencies(
    g: &Duplicator,
    t: &Term,
    j: usize,
    memo: &mut HashMap<(usize, usize), BTreeSet<(usize, usize)>>,
) -> BTreeSet<(usize, usize)> {
    let key = (t as *const Term as usize, j);
    if let Some(d) = memo.get(&key) {
        return d.clone();
    }
    let out = match t {
        Term::Var(q) => BTreeSet::from([(q - 1, j)]),
        Term::App(name, children) => {
            let entry = g.entry(name).expect("term checked against the duplicated language");
            let mut out = BTreeSet::new();
            for v in entry.terms[j - 1].variables() {
                let arg = (v - 1) / g.m;
                let coord = (v - 1) % g.m + 1;
                out.extend(dependencies(g, &children[arg], coord, memo));
            }
            out
        }
    };
    memo.insert(key, out.clone());
    out
}

enum Check {
    Ok,
    Mismatch(String),
    TooLarge(usize),
}

/// Verifies that coordinate `j` of `t(a₁,…,a_k)` equals `flat[pick(j)]` for all
/// inputs of `power`, where `flat` lists the coordinates of the arguments
/// argument by argument. Only coordinates that can influence the output are
/// enumerated, so the check is exhaustive.
fn verify_selection(
    g: &Duplicator,
    base: &FiniteAlgebra,
    power: &FiniteAlgebra,
    t: &Term,
    k: usize,
    pick: impl Fn(usize) -> usize,
) -> Result<Check, EngineError> {
    let m = g.m;
    let n = base.size();
    let compiled = CompiledTerm::compile(t, power)?;
    let mut memo = HashMap::new();
    let mut stack = Vec::new();
    for j in 1..=m {
        let mut positions: BTreeSet<usize> = dependencies(g, t, j, &mut memo)
            .into_iter()
            .map(|(arg, coord)| arg * m + coord - 1)
            .collect();
        positions.insert(pick(j));
        let positions: Vec<usize> = positions.into_iter().collect();
        let total = (0..positions.len()).try_fold(1usize, |a, _| a.checked_mul(n));
        match total {
            Some(c) if c <= EVAL_CAP => {}
            _ => return Ok(Check::TooLarge(positions.len())),
        }
        let mut flat = vec![0usize; m * k];
        let mut args = vec![0usize; k];
        let mut bad = None;
        let ranges = vec![(0, n); positions.len()];
        for_each_tuple_in(&ranges, &mut |vals: &[usize]| {
            if bad.is_some() {
                return;
            }
            for (&pos, &v) in positions.iter().zip(vals) {
                flat[pos] = v;
            }
            for (a, slot) in args.iter_mut().enumerate() {
                *slot = flat[a * m..(a + 1) * m].iter().fold(0, |acc, &c| acc * n + c);
            }
            let out = compiled.eval_with(&args, &mut stack);
            let got = (out / n.pow((m - j) as u32)) % n;
            if got != flat[pick(j)] {
                bad = Some((args.clone(), got, flat[pick(j)]));
            }
        });
        if let Some((args, got, want)) = bad {
            let shown: Vec<String> = args.iter().map(|&a| power.label(a)).collect();
            return Ok(Check::Mismatch(format!(
                "in {}: coordinate {j} at ({}) is {}, expected {}",
                base.name(),
                shown.join(", "),
                base.label(got),
                base.label(want)
            )));
        }
    }
    Ok(Check::Ok)
}

/// Checks a selection witness on every class member.
fn verify_on_class(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    powers: &[FiniteAlgebra],
    t: &Term,
    k: usize,
    pick: &impl Fn(usize) -> usize,
) -> Result<Check, EngineError> {
    for (base, power) in class.iter().zip(powers) {
        match verify_selection(g, base, power, t, k, pick)? {
            Check::Ok => {}
            other => return Ok(other),
        }
    }
    Ok(Check::Ok)
}

fn apply_check(o: &mut Obligation, check: Check, t: &Term, source: &str) {
    match check {
        Check::Ok => *o = Obligation { note: o.note.take(), ..Obligation::passed(o.id.clone(), t, source) },
        Check::Mismatch(msg) => {
            o.verdict = Verdict::Fail;
            o.witness = Some(t.to_string());
            o.source = Some(source.into());
            o.counterexample = Some(msg);
        }
        Check::TooLarge(p) => {
            o.verdict = Verdict::Unknown;
            o.witness = Some(t.to_string());
            o.note = Some(format!("witness reads {p} coordinates; exhaustive check over the cap"));
        }
    }
}

/// Value vector of a selection target over a full-restriction space.
fn selection_target(space: &FunctionSpace, m: usize, pick: &impl Fn(usize) -> usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(space.len());
    for r in 0..space.member_count() {
        let n = space.base(r).size();
        for p in 0..space.points(r).len() {
            let args = space.inputs(r, p);
            let flat: Vec<usize> = args
                .iter()
                .flat_map(|&a| (1..=m).map(move |i| (a / n.pow((m - i) as u32)) % n))
                .collect();
            let v = (1..=m).fold(0, |acc, j| acc * n + flat[pick(j)]);
            out.push(v as u32);
        }
    }
    out
}

fn search_selection(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    k: usize,
    pick: &impl Fn(usize) -> usize,
    budget: &Budget,
    o: &mut Obligation,
    what: &str,
) {
    let result = FunctionSpace::new(g, class, k, Restriction::Full).map(|space| {
        let target = Target::Exact(selection_target(&space, g.m, pick));
        space.search_all(std::slice::from_ref(&target), budget)
    });
    let mut one = [o.clone()];
    settle(result, vec![(0, o.id.clone())], &mut one, |_| what.to_string());
    *o = one[0].clone();
}

/// Condition (M) (or (M_m)): a term `v` with `v(a¹,…,a^m) = (a¹₁,…,a^m_m)`.
pub fn check_condition_m(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
) -> Result<ConditionReport, EngineError> {
    let class = conform(g, class)?;
    let m = g.m;
    let mut o = Obligation::new("merge", Verdict::Unknown);
    if m == 1 {
        o = Obligation::passed("merge", &Term::var(1), "trivial");
        return Ok(ConditionReport::assemble(Condition::M, g, &class, mode_name(mode), vec![o], None));
    }
    let pick = |j: usize| (j - 1) * m + (j - 1);
    let supplied = if mode == CheckMode::Witness { g.witnesses.m.as_ref() } else { None };
    match supplied {
        Some(v) => {
            let powers = class.iter().map(|a| duplicate(g, a)).collect::<Result<Vec<_>, _>>()?;
            let check = verify_on_class(g, &class, &powers, v, m, &pick)?;
            apply_check(&mut o, check, v, "supplied");
        }
        None => search_selection(g, &class, m, &pick, budget, &mut o, "diagonal selection"),
    }
    Ok(ConditionReport::assemble(Condition::M, g, &class, mode_name(mode), vec![o], Some(*budget)))
}

fn perm_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `π ∘ g`: apply `g` first. Matches substituting `s_π` into `s_g`.
fn compose(pi: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&i| pi[i - 1]).collect()
}

/// All permutations generated by `gens` in breadth-first order, each with the
/// generator indices composing to it (applied first to last).
fn generated(m: usize, gens: &[Vec<usize>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let id: Vec<usize> = (1..=m).collect();
    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), Vec::new());
    queue.push_back(id);
    while let Some(pi) = queue.pop_front() {
        order.push(pi.clone());
        for (k, gp) in gens.iter().enumerate() {
            let next = compose(&pi, gp);
            if !seen.contains_key(&next) {
                let mut path = seen[&pi].clone();
                path.push(k);
                seen.insert(next.clone(), path);
                queue.push_back(next);
            }
        }
    }
    order
        .into_iter()
        .map(|p| {
            let path = seen.remove(&p).expect("recorded");
            (p, path)
        })
        .collect()
}

/// Largest composed permutation term that is written out in full.
const COMPOSED_TERM_CAP: usize = 200_000;

/// The composite witness for `path`, unless it would exceed [`COMPOSED_TERM_CAP`] nodes.
fn path_term(gens: &[(Vec<usize>, Term)], path: &[usize]) -> Option<Term> {
    let mut size = 1usize;
    for &k in path {
        size = size.checked_mul(gens[k].1.size())?;
    }
    if size > COMPOSED_TERM_CAP {
        return None;
    }
    Some(path.iter().fold(Term::var(1), |acc, &k| gens[k].1.substitute(&[acc])))
}

/// Condition (P) (or (P_m)): terms `s_σ` with `s_σ(a)_i = a_{σ(i)}`, checked on
/// the generators `[2,1,3,…]` and `[2,3,…,m,1]` and composed into all of `S_m`.
pub fn check_condition_p(
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
) -> Result<ConditionReport, EngineError> {
    let class = conform(g, class)?;
    let m = g.m;
    if m == 1 {
        let o = Obligation::passed("identity", &Term::var(1), "trivial");
        return Ok(ConditionReport::assemble(Condition::P, g, &class, mode_name(mode), vec![o], None));
    }
    let powers = class.iter().map(|a| duplicate(g, a)).collect::<Result<Vec<_>, _>>()?;
    let mut transposition: Vec<usize> = (1..=m).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (1..=m).map(|i| i % m + 1).collect();
    let mut required = vec![transposition];
    if m > 2 {
        required.push(cycle);
    }

    let mut obligations = Vec::new();
    let mut verified: Vec<(Vec<usize>, Term)> = Vec::new();
    if mode == CheckMode::Witness {
        for w in &g.witnesses.p {
            let sigma = w.permutation.clone();
            let mut o = Obligation::new(format!("supplied {}", perm_label(&sigma)), Verdict::Unknown);
            let mut sorted = sigma.clone();
            sorted.sort_unstable();
            if sorted != (1..=m).collect::<Vec<_>>() {
                o.verdict = Verdict::Fail;
                o.counterexample = Some("not a permutation".into());
                obligations.push(o);
                continue;
            }
            let pick = |i: usize| sigma[i - 1] - 1;
            let check = verify_on_class(g, &class, &powers, &w.term, 1, &pick)?;
            let ok = matches!(check, Check::Ok);
            apply_check(&mut o, check, &w.term, "supplied");
            if ok {
                verified.push((sigma.clone(), w.term.clone()));
            }
            obligations.push(o);
        }
    }
    let mut gens: Vec<Vec<usize>> = verified.iter().map(|(p, _)| p.clone()).collect();
    for sigma in &required {
        let id = format!("generator {}", perm_label(sigma));
        let mut o = Obligation::new(id, Verdict::Unknown);
        let verified_perms: Vec<Vec<usize>> = verified.iter().map(|(p, _)| p.clone()).collect();
        let reachable = generated(m, &verified_perms).into_iter().find(|(p, _)| p == sigma);
        let pick = |i: usize| sigma[i - 1] - 1;
        match reachable {
            Some((_, path)) => match path_term(&verified, &path) {
                Some(t) => {
                    let source = if path.len() == 1 { "supplied" } else { "composed" };
                    let check = verify_on_class(g, &class, &powers, &t, 1, &pick)?;
                    apply_check(&mut o, check, &t, source);
                }
                None => {
                    // each factor is verified, so the composite is correct as a function
                    o.verdict = Verdict::Pass;
                    o.source = Some("composed".into());
                    let factors: Vec<String> =
                        path.iter().map(|&k| perm_label(&verified[k].0)).collect();
                    o.note = Some(format!("composite of {} (term too large to print)", factors.join(" then ")));
                }
            },
            None => {
                search_selection(g, &class, 1, &pick, budget, &mut o, "permutation term");
                if o.verdict == Verdict::Pass {
                    gens.push(sigma.clone());
                }
            }
        }
        if o.verdict == Verdict::Pass && o.source.as_deref() != Some("search") {
            gens.push(sigma.clone());
        }
        obligations.push(o);
    }
    let generators_ok = obligations
        .iter()
        .filter(|o| o.id.starts_with("generator"))
        .all(|o| o.verdict == Verdict::Pass);
    if generators_ok && m > 2 {
        let reached = generated(m, &gens).len();
        let total: usize = (1..=m).product();
        let mut o = Obligation::new(
            format!("S_{m}"),
            if reached == total { Verdict::Pass } else { Verdict::Fail },
        );
        o.source = Some("composed".into());
        o.note = Some(format!("{reached} of {total} permutations reached by composing generator terms"));
        obligations.push(o);
    }
    Ok(ConditionReport::assemble(Condition::P, g, &class, mode_name(mode), obligations, Some(*budget)))
}

/// Dispatches to the checker for `condition`; (D) ignores the class and mode.
pub fn check_condition(
    condition: Condition,
    g: &Duplicator,
    class: &[FiniteAlgebra],
    mode: CheckMode,
    budget: &Budget,
) -> Result<ConditionReport, EngineError> {
    match condition {
        Condition::L => check_condition_l(g, class, mode, budget),
        Condition::LPrime => check_condition_l_prime(g, class, mode, budget),
        Condition::M => check_condition_m(g, class, mode, budget),
        Condition::P => check_condition_p(g, class, mode, budget),
        Condition::D => Ok(check_condition_d(g)),
    }
}

/// Condition (D): coordinate `j` of every entry reads only coordinate `j` of
/// its arguments. Purely syntactic.
pub fn check_condition_d(g: &Duplicator) -> ConditionReport {
    let mut obligations = Vec::new();
    for e in &g.entries {
        let mut o = Obligation::new(e.name.clone(), Verdict::Pass);
        for (j, t) in e.terms.iter().enumerate() {
            if let Some(v) = crate::duplicator::disjointness_breach(t, g.m, j + 1) {
                o.verdict = Verdict::Fail;
                o.counterexample = Some(format!(
                    "coordinate {} reads x{v}, which is coordinate {} of argument {}",
                    j + 1,
                    (v - 1) % g.m + 1,
                    (v - 1) / g.m + 1
                ));
                break;
            }
        }
        obligations.push(o);
    }
    ConditionReport::assemble(Condition::D, g, &[], "syntactic", obligations, None)
}
