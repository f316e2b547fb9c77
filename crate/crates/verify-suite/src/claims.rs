//! Claim kinds and their evaluation.

use std::collections::BTreeSet;

use catalog::{
    catalog_algebra, catalog_axiom_suite, catalog_duplicator, catalog_list, check_suite_with,
    AxiomOutcome, Kind,
};
use duplicator_engine::{
    check_condition, duplicate, duplicate_mixed, element_index, equivalence_smoke_test,
    validate_duplicator, CheckMode, Condition, ConditionReport, Duplicator, FunctionSpace,
    Restriction, SearchOutcome, Target, Verdict,
};
use finite_algebra::{
    closure, congruence_lattice, direct_product, extend_from_generators, find_isomorphism,
    for_each_tuple, free_algebra, is_homomorphism, is_subdirectly_irreducible, residuum,
    separates_into, check_identity_with, FiniteAlgebra, IdentityOutcome, Limits,
    ResiduumOutcome,
};
use serde_json::{json, Value};
use term_core::parse_term;

use crate::{ClaimResult, Config, RowSpec, VerifyError};

/// Longest witness term kept verbatim in a condition artifact.
const WITNESS_CHARS: usize = 400;
const HOM_LIMIT: usize = 100_000;
const FREE_CAP: usize = 100_000;

/// An algebra named by how it is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Catalog(&'static str),
    Power { duplicator: &'static str, base: &'static str },
    Mixed { duplicator: &'static str, factors: &'static [&'static str] },
    Reduct { of: Box<Construction>, symbols: &'static [&'static str] },
}

impl Construction {
    pub fn power(duplicator: &'static str, base: &'static str) -> Self {
        Construction::Power { duplicator, base }
    }

    pub fn mixed(duplicator: &'static str, factors: &'static [&'static str]) -> Self {
        Construction::Mixed { duplicator, factors }
    }

    pub fn reduct(self, symbols: &'static [&'static str]) -> Self {
        Construction::Reduct { of: Box::new(self), symbols }
    }

    pub fn label(&self) -> String {
        match self {
            Construction::Catalog(k) => (*k).to_string(),
            Construction::Power { duplicator, base } => format!("P[{duplicator}]({base})"),
            Construction::Mixed { duplicator, factors } => {
                format!("{duplicator}({})", factors.join(" . "))
            }
            Construction::Reduct { of, symbols } => format!("{}|{}", of.label(), symbols.join(",")),
        }
    }

    fn keys(&self, algebras: &mut Vec<&'static str>, duplicators: &mut Vec<&'static str>) {
        match self {
            Construction::Catalog(k) => algebras.push(k),
            Construction::Power { duplicator, base } => {
                duplicators.push(duplicator);
                algebras.push(base);
            }
            Construction::Mixed { duplicator, factors } => {
                duplicators.push(duplicator);
                algebras.extend(factors.iter().copied());
            }
            Construction::Reduct { of, .. } => of.keys(algebras, duplicators),
        }
    }
}

/// A coordinate formula for a binary-coordinate operation: receives the base
/// algebra and the arguments as coordinate pairs.
pub type Formula = fn(&FiniteAlgebra, &[(usize, usize)]) -> (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResiduumExpectation {
    /// The residuum exists and equals the named operation.
    Matches(&'static str),
    NoAdjoint,
}

#[derive(Clone, Debug)]
pub enum Claim {
    Validate {
        duplicator: &'static str,
    },
    /// Conditions expected to hold and to fail; `mode` overrides the run mode.
    Conditions {
        duplicator: &'static str,
        class: Vec<&'static str>,
        holds: Vec<Condition>,
        fails: Vec<Condition>,
        mode: Option<CheckMode>,
    },
    Suite {
        algebra: Construction,
        suite: &'static str,
        expect: bool,
    },
    /// Compared on `on`, or on all symbols of `right` when `None`.
    Isomorphic {
        left: Construction,
        right: Construction,
        on: Option<&'static [&'static str]>,
        expect: bool,
    },
    CongruenceTransfer {
        duplicator: &'static str,
        base: &'static str,
    },
    SiTransfer {
        duplicator: &'static str,
        base: &'static str,
    },
    /// `F(target, k)` is `P_Γ(F(base, k·m))`, the generator `x_i` going to the
    /// tuple of base generators `m(i-1)+1, …, mi`.
    FreeTransfer {
        duplicator: &'static str,
        target_class: &'static [&'static str],
        base_class: &'static [&'static str],
        k: usize,
    },
    Smoke {
        duplicator: &'static str,
        pairs: &'static [(&'static str, &'static str)],
    },
    /// `op` of `algebra` (universe `base²` in lexicographic order) agrees with
    /// `formula` on all `expected` inputs.
    Formula {
        algebra: Construction,
        base: &'static str,
        op: &'static str,
        formula: Formula,
        expected: usize,
    },
    Residuum {
        algebra: &'static str,
        meet: &'static str,
        expect: ResiduumExpectation,
    },
    /// The residuum of `meet` exists and equals the binary term `term`.
    ResiduumFormula {
        algebra: Construction,
        meet: &'static str,
        term: &'static str,
    },
    /// Operation `op` of `to` is the term `term` of `from` on every
    /// `P_Γ(N)`, `N` in `class`. Search mode looks for a term instead.
    TermDefinable {
        from: &'static str,
        to: &'static str,
        class: &'static [&'static str],
        op: &'static str,
        term: &'static str,
    },
    /// Every subject is separated by homomorphisms into `class`, all taken as
    /// reducts to `symbols`.
    Separation {
        subjects: Subjects,
        class: &'static [&'static str],
        symbols: &'static [&'static str],
    },
}

#[derive(Clone, Debug)]
pub enum Subjects {
    Algebra(Construction),
    /// All binary products of the factors and every 2-generated subalgebra
    /// of their full product.
    SampledSubalgebras(&'static [&'static str]),
}

#[derive(Clone, Debug)]
pub struct ClaimSpec {
    pub id: String,
    pub claim: Claim,
}

impl ClaimSpec {
    pub fn new(id: impl Into<String>, claim: Claim) -> Self {
        ClaimSpec { id: id.into(), claim }
    }

    fn keys(&self) -> (Vec<&'static str>, Vec<&'static str>, Vec<&'static str>) {
        let mut alg = Vec::new();
        let mut dup = Vec::new();
        let mut suites = Vec::new();
        match &self.claim {
            Claim::Validate { duplicator } => dup.push(*duplicator),
            Claim::Conditions { duplicator, class, .. } => {
                dup.push(*duplicator);
                alg.extend(class.iter().copied());
            }
            Claim::Suite { algebra, suite, .. } => {
                algebra.keys(&mut alg, &mut dup);
                suites.push(*suite);
            }
            Claim::Isomorphic { left, right, .. } => {
                left.keys(&mut alg, &mut dup);
                right.keys(&mut alg, &mut dup);
            }
            Claim::CongruenceTransfer { duplicator, base }
            | Claim::SiTransfer { duplicator, base } => {
                dup.push(*duplicator);
                alg.push(*base);
            }
            Claim::FreeTransfer { duplicator, target_class, base_class, .. } => {
                dup.push(*duplicator);
                alg.extend(target_class.iter().chain(base_class.iter()).copied());
            }
            Claim::Smoke { duplicator, pairs } => {
                dup.push(*duplicator);
                alg.extend(pairs.iter().flat_map(|(a, b)| [*a, *b]));
            }
            Claim::Formula { algebra, base, .. } => {
                algebra.keys(&mut alg, &mut dup);
                alg.push(*base);
            }
            Claim::Residuum { algebra, .. } => alg.push(*algebra),
            Claim::ResiduumFormula { algebra, .. } => algebra.keys(&mut alg, &mut dup),
            Claim::TermDefinable { from, to, class, .. } => {
                dup.extend([*from, *to]);
                alg.extend(class.iter().copied());
            }
            Claim::Separation { subjects, class, .. } => {
                match subjects {
                    Subjects::Algebra(c) => c.keys(&mut alg, &mut dup),
                    Subjects::SampledSubalgebras(f) => alg.extend(f.iter().copied()),
                }
                alg.extend(class.iter().copied());
            }
        }
        (alg, dup, suites)
    }
}

fn normalize(key: &str) -> String {
    key.chars().filter(|&c| c != '_').collect()
}

fn require(kind: Kind, key: &str) -> Result<(), VerifyError> {
    let k = normalize(key);
    if catalog_list(Some(kind)).iter().any(|l| normalize(l.key) == k) {
        Ok(())
    } else {
        Err(catalog::CatalogError::UnknownKey(key.into()).into())
    }
}

pub(crate) struct Context<'a> {
    row_duplicator: &'static str,
    config: &'a Config,
    replacement: Option<Duplicator>,
}

impl<'a> Context<'a> {
    /// Resolves every key the row mentions before anything runs.
    pub(crate) fn new(
        spec: &RowSpec,
        config: &'a Config,
        replacement: Option<Duplicator>,
    ) -> Result<Self, VerifyError> {
        require(Kind::Duplicator, spec.duplicator)?;
        require(Kind::AxiomSuite, spec.suite)?;
        for k in &spec.base_class {
            require(Kind::Algebra, k)?;
        }
        let mut alg = Vec::new();
        let mut dup = Vec::new();
        for p in &spec.products {
            p.keys(&mut alg, &mut dup);
        }
        let mut suites = Vec::new();
        for c in &spec.extra {
            let (a, d, s) = c.keys();
            alg.extend(a);
            dup.extend(d);
            suites.extend(s);
        }
        for k in alg {
            require(Kind::Algebra, k)?;
        }
        for k in dup {
            require(Kind::Duplicator, k)?;
        }
        for k in suites {
            require(Kind::AxiomSuite, k)?;
        }
        Ok(Context { row_duplicator: spec.duplicator, config, replacement })
    }

    fn duplicator(&self, key: &str) -> Result<Duplicator, VerifyError> {
        match &self.replacement {
            Some(g) if normalize(key) == normalize(self.row_duplicator) => Ok(g.clone()),
            _ => Ok(catalog_duplicator(key)?),
        }
    }

    /// A catalog algebra cut down to the base signature of `g`.
    fn base_for(&self, key: &str, g: &Duplicator) -> Result<FiniteAlgebra, VerifyError> {
        let a = catalog_algebra(key)?;
        let names: Vec<&str> = g.base_sig.names().collect();
        Ok(a.reduct(&names)?)
    }

    fn build(&self, c: &Construction) -> Result<FiniteAlgebra, VerifyError> {
        Ok(match c {
            Construction::Catalog(k) => catalog_algebra(k)?,
            Construction::Power { duplicator, base } => {
                let g = self.duplicator(duplicator)?;
                duplicate(&g, &self.base_for(base, &g)?)?
            }
            Construction::Mixed { duplicator, factors } => {
                let g = self.duplicator(duplicator)?;
                let fs = factors
                    .iter()
                    .map(|f| self.base_for(f, &g))
                    .collect::<Result<Vec<_>, _>>()?;
                duplicate_mixed(&g, &fs)?
            }
            Construction::Reduct { of, symbols } => self.build(of)?.reduct(symbols)?,
        })
    }

    pub(crate) fn run(&self, spec: &ClaimSpec) -> Vec<ClaimResult> {
        match self.evaluate(spec) {
            Ok(results) => results,
            Err(e) => {
                let verdict = if e.is_resource() { Verdict::Unknown } else { Verdict::Fail };
                vec![result(&spec.id, verdict, json!({ "summary": format!("error: {e}") }))]
            }
        }
    }

    fn evaluate(&self, spec: &ClaimSpec) -> Result<Vec<ClaimResult>, VerifyError> {
        let id = spec.id.as_str();
        let one = |(v, a): (Verdict, Value)| Ok(vec![result(id, v, a)]);
        match &spec.claim {
            Claim::Validate { duplicator } => one(self.validate(duplicator)?),
            Claim::Conditions { duplicator, class, holds, fails, mode } => {
                self.conditions(id, duplicator, class, holds, fails, *mode)
            }
            Claim::Suite { algebra, suite, expect } => one(self.suite(algebra, suite, *expect)?),
            Claim::Isomorphic { left, right, on, expect } => {
                one(self.isomorphic(left, right, *on, *expect)?)
            }
            Claim::CongruenceTransfer { duplicator, base } => {
                one(self.congruence_transfer(duplicator, base)?)
            }
            Claim::SiTransfer { duplicator, base } => one(self.si_transfer(duplicator, base)?),
            Claim::FreeTransfer { duplicator, target_class, base_class, k } => {
                one(self.free_transfer(duplicator, target_class, base_class, *k)?)
            }
            Claim::Smoke { duplicator, pairs } => self.smoke(id, duplicator, pairs),
            Claim::Formula { algebra, base, op, formula, expected } => {
                one(self.formula(algebra, base, op, *formula, *expected)?)
            }
            Claim::Residuum { algebra, meet, expect } => {
                one(self.residuum(algebra, meet, *expect)?)
            }
            Claim::ResiduumFormula { algebra, meet, term } => {
                one(self.residuum_formula(algebra, meet, term)?)
            }
            Claim::TermDefinable { from, to, class, op, term } => {
                one(self.term_definable(from, to, class, op, term)?)
            }
            Claim::Separation { subjects, class, symbols } => {
                one(self.separation(subjects, class, symbols)?)
            }
        }
    }

    fn validate(&self, key: &str) -> Result<(Verdict, Value), VerifyError> {
        let g = self.duplicator(key)?;
        let violations = validate_duplicator(&g);
        let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        let summary = match violations.first() {
            None => format!("{} entries, m = {}, well formed", g.entries.len(), g.m),
            Some(v) => format!("{} violations, first: {v}", violations.len()),
        };
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Ok((verdict, json!({ "summary": summary, "violations": list })))
    }

    fn conditions(
        &self,
        id: &str,
        key: &str,
        class: &[&str],
        holds: &[Condition],
        fails: &[Condition],
        mode: Option<CheckMode>,
    ) -> Result<Vec<ClaimResult>, VerifyError> {
        let g = self.duplicator(key)?;
        let algebras =
            class.iter().map(|k| self.base_for(k, &g)).collect::<Result<Vec<_>, _>>()?;
        let mode = mode.unwrap_or(self.config.mode);
        let mut out = Vec::new();
        for (conds, expect_pass) in [(holds, true), (fails, false)] {
            for &c in conds {
                let r = check_condition(c, &g, &algebras, mode, &self.config.budget)?;
                let verdict = match (r.verdict, expect_pass) {
                    (Verdict::Unknown, _) => Verdict::Unknown,
                    (v, true) => v,
                    (Verdict::Pass, false) => Verdict::Fail,
                    (_, false) => Verdict::Pass,
                };
                let label = r.label();
                let claim_id =
                    if expect_pass { format!("{id}/{label}") } else { format!("{id}/not {label}") };
                out.push(result(&claim_id, verdict, condition_artifact(&r)?));
            }
        }
        Ok(out)
    }

    fn suite(
        &self,
        algebra: &Construction,
        suite_key: &str,
        expect: bool,
    ) -> Result<(Verdict, Value), VerifyError> {
        let alg = self.build(algebra)?;
        let suite = catalog_axiom_suite(suite_key)?;
        let r = check_suite_with(&alg, &suite, self.config.eval_cap)?;
        let failures: Vec<Value> = r
            .results
            .iter()
            .filter_map(|x| match &x.outcome {
                AxiomOutcome::Fail(c) => Some(json!({ "id": x.id, "counterexample": c })),
                _ => None,
            })
            .collect();
        let unknown: Vec<&str> = r
            .results
            .iter()
            .filter(|x| matches!(x.outcome, AxiomOutcome::Unknown(_)))
            .map(|x| x.id.as_str())
            .collect();
        let verdict = match (failures.is_empty(), unknown.is_empty(), expect) {
            (false, _, true) => Verdict::Fail,
            (false, _, false) => Verdict::Pass,
            (true, false, _) => Verdict::Unknown,
            (true, true, e) => {
                if e {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        };
        let total = r.results.len();
        let summary = match failures.first() {
            None if unknown.is_empty() => {
                format!("{} elements, {suite_key}: {total}/{total} axioms hold", alg.size())
            }
            None => format!("{} elements, {suite_key}: {} axioms undecided", alg.size(), unknown.len()),
            Some(f) => format!(
                "{} elements, {suite_key}: {} of {total} axioms fail, first {} at {}",
                alg.size(),
                failures.len(),
                f["id"].as_str().unwrap_or_default(),
                f["counterexample"].as_str().unwrap_or_default()
            ),
        };
        Ok((
            verdict,
            json!({
                "summary": summary,
                "algebra": alg.name(),
                "size": alg.size(),
                "suite": suite_key,
                "axioms": total,
                "failures": failures,
                "unknown": unknown,
            }),
        ))
    }

    fn isomorphic(
        &self,
        left: &Construction,
        right: &Construction,
        on: Option<&[&str]>,
        expect: bool,
    ) -> Result<(Verdict, Value), VerifyError> {
        let l = self.build(left)?;
        let r = self.build(right)?;
        let names: Vec<&str> = match on {
            Some(s) => s.to_vec(),
            None => r.sig().names().collect(),
        };
        let l = l.reduct(&names)?;
        let r = r.reduct(&names)?;
        let iso = find_isomorphism(&l, &r)?;
        let (verdict, summary, map) = match iso {
            Some(h) => {
                let ok = is_homomorphism(&l, &r, &h.map) && h.is_injective() && l.size() == r.size();
                let verdict = if ok == expect { Verdict::Pass } else { Verdict::Fail };
                let summary = format!(
                    "{} ~ {} on {} symbols, {} elements",
                    left.label(),
                    right.label(),
                    names.len(),
                    l.size()
                );
                (verdict, summary, json!(h.map))
            }
            None => {
                let verdict = if expect { Verdict::Fail } else { Verdict::Pass };
                let summary = format!(
                    "no isomorphism {} -> {} on {} symbols (sizes {} and {})",
                    left.label(),
                    right.label(),
                    names.len(),
                    l.size(),
                    r.size()
                );
                (verdict, summary, Value::Null)
            }
        };
        Ok((verdict, json!({ "summary": summary, "symbols": names, "map": map })))
    }

    fn congruence_transfer(&self, key: &str, base: &str) -> Result<(Verdict, Value), VerifyError> {
        let g = self.duplicator(key)?;
        let a = self.base_for(base, &g)?;
        let p = duplicate(&g, &a)?;
        let limits = Limits::default();
        let ca = congruence_lattice(&a, &limits)?;
        let cp = congruence_lattice(&p, &limits)?;
        let iso = find_isomorphism(&ca.as_lattice(), &cp.as_lattice())?;
        let verdict = if iso.is_some() { Verdict::Pass } else { Verdict::Fail };
        let summary = format!(
            "|Con({base})| = {}, |Con({})| = {}, {}",
            ca.len(),
            p.name(),
            cp.len(),
            if iso.is_some() { "lattice isomorphic" } else { "not isomorphic" }
        );
        Ok((
            verdict,
            json!({
                "summary": summary,
                "base_congruences": ca.len(),
                "power_congruences": cp.len(),
                "map": iso.map(|h| h.map),
            }),
        ))
    }

    fn si_transfer(&self, key: &str, base: &str) -> Result<(Verdict, Value), VerifyError> {
        let g = self.duplicator(key)?;
        let a = self.base_for(base, &g)?;
        let p = duplicate(&g, &a)?;
        let limits = Limits::default();
        let (sa, _) = is_subdirectly_irreducible(&a)?;
        let (sp, _) = is_subdirectly_irreducible(&p)?;
        let na = congruence_lattice(&a, &limits)?.len();
        let np = congruence_lattice(&p, &limits)?.len();
        let verdict = if sa == sp { Verdict::Pass } else { Verdict::Fail };
        let word = |si: bool, n: usize| match (si, n) {
            (true, 2) => "simple",
            (true, _) => "subdirectly irreducible",
            (false, _) => "not subdirectly irreducible",
        };
        let summary =
            format!("{base} {}, {} {}", word(sa, na), p.name(), word(sp, np));
        Ok((
            verdict,
            json!({
                "summary": summary,
                "base_si": sa,
                "power_si": sp,
                "base_congruences": na,
                "power_congruences": np,
            }),
        ))
    }

    fn free_transfer(
        &self,
        key: &str,
        target_class: &[&str],
        base_class: &[&str],
        k: usize,
    ) -> Result<(Verdict, Value), VerifyError> {
        let g = self.duplicator(key)?;
        let targets =
            target_class.iter().map(|t| catalog_algebra(t)).collect::<Result<Vec<_>, _>>()?;
        let bases =
            base_class.iter().map(|b| self.base_for(b, &g)).collect::<Result<Vec<_>, _>>()?;
        let ft = free_algebra(&targets, k, FREE_CAP)?;
        let fb = free_algebra(&bases, k * g.m, FREE_CAP)?;
        let p = duplicate(&g, &fb.algebra)?;
        let sizes = vec![fb.algebra.size(); g.m];
        let images: Vec<usize> = (0..k)
            .map(|i| {
                let coords: Vec<usize> = (0..g.m).map(|j| fb.generators[i * g.m + j]).collect();
                element_index(&sizes, &coords)
            })
            .collect();
        let h = extend_from_generators(&ft.algebra, &p, &ft.generators, &images)?;
        let iso = h.filter(|h| h.is_injective() && ft.algebra.size() == p.size());
        let verdict = if iso.is_some() { Verdict::Pass } else { Verdict::Fail };
        let summary = format!(
            "free({{{}}}, {k}) has {} elements; free({{{}}}, {}) has {}; {}",
            target_class.join(","),
            ft.algebra.size(),
            base_class.join(","),
            k * g.m,
            fb.algebra.size(),
            if iso.is_some() {
                "generators extend to an isomorphism onto the power"
            } else {
                "generator assignment does not extend to an isomorphism"
            }
        );
        Ok((
            verdict,
            json!({
                "summary": summary,
                "free_size": ft.algebra.size(),
                "base_free_size": fb.algebra.size(),
                "generator_images": images,
                "map": iso.map(|h| h.map),
            }),
        ))
    }

    fn smoke(
        &self,
        id: &str,
        key: &str,
        pairs: &[(&str, &str)],
    ) -> Result<Vec<ClaimResult>, VerifyError> {
        let g = self.duplicator(key)?;
        let mut out = Vec::new();
        for (a, b) in pairs {
            let aa = self.base_for(a, &g)?;
            let bb = self.base_for(b, &g)?;
            let r = equivalence_smoke_test(&g, &aa, &bb)?;
            let verdict = if r.holds() { Verdict::Pass } else { Verdict::Fail };
            let summary = r
                .clauses
                .iter()
                .find(|c| !c.holds)
                .or_else(|| r.clauses.first())
                .map(|c| c.detail.clone())
                .unwrap_or_default();
            out.push(result(
                &format!("{id}/{a}->{b}"),
                verdict,
                json!({ "summary": summary, "clauses": r.clauses }),
            ));
        }
        Ok(out)
    }

    fn formula(
        &self,
        algebra: &Construction,
        base: &str,
        op: &str,
        formula: Formula,
        expected: usize,
    ) -> Result<(Verdict, Value), VerifyError> {
        let alg = self.build(algebra)?;
        let b = catalog_algebra(base)?;
        let n = b.size();
        if alg.size() != n * n {
            return Err(VerifyError::Algebra(finite_algebra::AlgebraError::Invalid(format!(
                "`{}` has {} elements, not {}^2",
                alg.name(),
                alg.size(),
                n
            ))));
        }
        let idx = alg.op_index(op)?;
        let split = |e: usize| (e / n, e % n);
        let mut checked = 0;
        let mut mismatch: Option<String> = None;
        for_each_tuple(alg.size(), alg.arity_at(idx), |args| {
            checked += 1;
            let pairs: Vec<(usize, usize)> = args.iter().map(|&e| split(e)).collect();
            let got = split(alg.apply(idx, args));
            let want = formula(&b, &pairs);
            if got != want && mismatch.is_none() {
                let show = |(x, y): (usize, usize)| format!("({},{})", b.label(x), b.label(y));
                let shown: Vec<String> = pairs.iter().map(|&p| show(p)).collect();
                mismatch = Some(format!(
                    "{op}({}) = {} but the formula gives {}",
                    shown.join(", "),
                    show(got),
                    show(want)
                ));
            }
        });
        let verdict = if mismatch.is_none() && checked == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let summary = match &mismatch {
            None => format!("{op} on {}: formula agrees on {checked}/{expected} inputs", alg.name()),
            Some(m) => m.clone(),
        };
        Ok((verdict, json!({ "summary": summary, "checked": checked, "mismatch": mismatch })))
    }

    fn residuum(
        &self,
        key: &str,
        meet: &str,
        expect: ResiduumExpectation,
    ) -> Result<(Verdict, Value), VerifyError> {
        let alg = catalog_algebra(key)?;
        let out = residuum(&alg, meet)?;
        Ok(match (out, expect) {
            (ResiduumOutcome::Table(t), ResiduumExpectation::Matches(sym)) => {
                let same = alg.op_table(sym) == Some(t.as_slice());
                let verdict = if same { Verdict::Pass } else { Verdict::Fail };
                let summary = format!(
                    "residuum of {meet} on {key} {} {sym}",
                    if same { "equals" } else { "differs from" }
                );
                (verdict, json!({ "summary": summary, "table": t }))
            }
            (ResiduumOutcome::Table(t), ResiduumExpectation::NoAdjoint) => (
                Verdict::Fail,
                json!({ "summary": format!("{key} has a residuum of {meet}"), "table": t }),
            ),
            (ResiduumOutcome::NoAdjoint { a, c }, expect) => {
                let verdict = if expect == ResiduumExpectation::NoAdjoint {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                let summary = format!(
                    "no greatest b with {meet}(a, b) <= c for a = {}, c = {} in {key}",
                    alg.label(a),
                    alg.label(c)
                );
                (verdict, json!({ "summary": summary, "a": a, "c": c }))
            }
        })
    }

    fn residuum_formula(
        &self,
        algebra: &Construction,
        meet: &str,
        term: &str,
    ) -> Result<(Verdict, Value), VerifyError> {
        let alg = self.build(algebra)?;
        let table = match residuum(&alg, meet)? {
            ResiduumOutcome::Table(t) => t,
            ResiduumOutcome::NoAdjoint { a, c } => {
                let summary = format!(
                    "{meet} has no residuum at a = {}, c = {}",
                    alg.label(a),
                    alg.label(c)
                );
                return Ok((Verdict::Fail, json!({ "summary": summary })));
            }
        };
        let name = "res";
        let extended = alg.with_op(name, 2, table)?;
        let lhs = parse_term(&format!("({name} x1 x2)"), extended.sig())?;
        let rhs = parse_term(term, extended.sig())?;
        let limits = Limits { eval_cap: self.config.eval_cap, ..Limits::default() };
        let outcome = check_identity_with(&extended, &lhs, &rhs, &limits)?;
        Ok(match outcome {
            IdentityOutcome::Pass => (
                Verdict::Pass,
                json!({
                    "summary": format!(
                        "residuum of {meet} on {} equals {term} on all {} pairs",
                        alg.name(),
                        alg.size() * alg.size()
                    ),
                }),
            ),
            IdentityOutcome::Counterexample(asg) => {
                let shown: Vec<String> = asg.iter().map(|&e| alg.label(e)).collect();
                (
                    Verdict::Fail,
                    json!({
                        "summary": format!("formula differs at x1, x2 = {}", shown.join(", ")),
                        "counterexample": asg,
                    }),
                )
            }
        })
    }

    fn term_definable(
        &self,
        from_key: &str,
        to_key: &str,
        class: &[&str],
        op: &str,
        term: &str,
    ) -> Result<(Verdict, Value), VerifyError> {
        let from = self.duplicator(from_key)?;
        let to = self.duplicator(to_key)?;
        let arity = to
            .entry(op)
            .ok_or_else(|| {
                VerifyError::Engine(duplicator_engine::EngineError::Invalid(format!(
                    "`{to_key}` has no entry `{op}`"
                )))
            })?
            .arity;
        let algebras =
            class.iter().map(|k| self.base_for(k, &from)).collect::<Result<Vec<_>, _>>()?;
        let space = FunctionSpace::new(&from, &algebras, arity, Restriction::Full)?;
        let mut target = Vec::with_capacity(space.len());
        for r in 0..space.member_count() {
            let tp = duplicate(&to, space.base(r))?;
            for p in 0..space.points(r).len() {
                target.push(tp.apply_named(op, &space.inputs(r, p)) as u32);
            }
        }
        let points = target.len();
        match self.config.mode {
            CheckMode::Witness => {
                let t = parse_term(term, &from.gamma_signature()?)?;
                let ok = space.evaluate(&t)? == target;
                let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                let summary = format!(
                    "{op} of {to_key} {} {t} over {from_key} on {points} points",
                    if ok { "is" } else { "is not" }
                );
                Ok((verdict, json!({ "summary": summary, "term": t.to_string(), "source": "supplied" })))
            }
            CheckMode::Search => match space.search(&Target::Exact(target.clone()), &self.config.budget) {
                SearchOutcome::Found { term, depth, explored } => {
                    let ok = space.evaluate(&term)? == target;
                    let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                    Ok((
                        verdict,
                        json!({
                            "summary": format!("{op} of {to_key} is {term} over {from_key} (depth {depth})"),
                            "term": term.to_string(),
                            "source": "search",
                            "explored": explored,
                        }),
                    ))
                }
                SearchOutcome::Exhausted { explored, depth } => Ok((
                    Verdict::Fail,
                    json!({
                        "summary": format!("closure of {explored} functions (depth {depth}) has no {op}"),
                        "explored": explored,
                    }),
                )),
                SearchOutcome::Capped { explored, depth, reason } => Ok((
                    Verdict::Unknown,
                    json!({
                        "summary": format!("search capped after {explored} functions at depth {depth}: {reason}"),
                        "explored": explored,
                    }),
                )),
            },
        }
    }

    fn separation(
        &self,
        subjects: &Subjects,
        class: &[&str],
        symbols: &[&str],
    ) -> Result<(Verdict, Value), VerifyError> {
        let members = class
            .iter()
            .map(|k| Ok(catalog_algebra(k)?.reduct(symbols)?))
            .collect::<Result<Vec<_>, VerifyError>>()?;
        let algebras = match subjects {
            Subjects::Algebra(c) => vec![self.build(c)?.reduct(symbols)?],
            Subjects::SampledSubalgebras(factors) => sampled_subalgebras(factors, symbols)?,
        };
        let mut checked = Vec::new();
        for a in &algebras {
            let s = separates_into(a, &members, HOM_LIMIT)?;
            if !s.separated {
                let (x, y) = s.failing_pair.expect("unseparated pairs are reported");
                let summary = format!(
                    "{} ({} elements): no homomorphism into {{{}}} separates {} and {}",
                    a.name(),
                    a.size(),
                    class.join(", "),
                    a.label(x),
                    a.label(y)
                );
                return Ok((Verdict::Fail, json!({ "summary": summary, "algebra": a.name() })));
            }
            checked.push(json!({ "algebra": a.name(), "size": a.size(), "pairs": s.witnesses.len() }));
        }
        let largest = algebras.iter().map(|a| a.size()).max().unwrap_or(0);
        let summary = format!(
            "{} algebras (up to {largest} elements) separated by homomorphisms into {{{}}}",
            algebras.len(),
            class.join(", ")
        );
        Ok((Verdict::Pass, json!({ "summary": summary, "checked": checked })))
    }
}

fn sampled_subalgebras(
    factors: &[&str],
    symbols: &[&str],
) -> Result<Vec<FiniteAlgebra>, VerifyError> {
    let fs = factors
        .iter()
        .map(|k| Ok(catalog_algebra(k)?.reduct(symbols)?))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let sig = fs[0].sig().clone();
    let mut out = Vec::new();
    for i in 0..fs.len() {
        for j in i..fs.len() {
            let p = direct_product(&sig, &[fs[i].clone(), fs[j].clone()])?;
            out.push(p.with_name(format!("{} x {}", factors[i], factors[j])));
        }
    }
    let full = direct_product(&sig, &fs)?;
    let mut seen = BTreeSet::new();
    for a in 0..full.size() {
        for b in a + 1..full.size() {
            let sub = closure(&full, &[a, b]).sorted();
            if seen.insert(sub.clone()) {
                out.push(full.induced(&sub, format!("<{},{}> in {}", a, b, factors.join(" x ")))?);
            }
        }
    }
    Ok(out)
}

fn result(id: &str, verdict: Verdict, artifact: Value) -> ClaimResult {
    ClaimResult { id: id.into(), verdict, artifact, millis: 0 }
}

/// The serialized report with oversized composed witnesses dropped.
fn condition_artifact(r: &ConditionReport) -> Result<Value, VerifyError> {
    let mut v = serde_json::to_value(r).expect("condition reports serialize");
    if let Some(obs) = v.get_mut("obligations").and_then(Value::as_array_mut) {
        for o in obs {
            let long = o
                .get("witness")
                .and_then(Value::as_str)
                .map_or(0, |w| w.chars().count());
            if long > WITNESS_CHARS {
                let map = o.as_object_mut().expect("obligations are objects");
                map.remove("witness");
                map.insert(
                    "note".into(),
                    Value::String(format!("witness of {long} characters omitted")),
                );
            }
        }
    }
    let sources: Vec<&str> = r.obligations.iter().filter_map(|o| o.source.as_deref()).collect();
    let count = |s: &str| sources.iter().filter(|&&x| x == s).count();
    let summary = match r.obligations.iter().find(|o| o.verdict != Verdict::Pass) {
        None => {
            let mut parts = vec![format!(
                "{} obligation{} over {{{}}}",
                r.obligations.len(),
                if r.obligations.len() == 1 { "" } else { "s" },
                r.class.join(",")
            )];
            for s in ["supplied", "search", "composed", "trivial"] {
                if count(s) > 0 {
                    parts.push(format!("{} {s}", count(s)));
                }
            }
            parts.join(", ")
        }
        Some(o) => {
            let why = o
                .counterexample
                .clone()
                .or_else(|| o.certificate.map(|c| format!("exhausted {} functions, depth {}", c.explored, c.depth)))
                .or_else(|| o.note.clone())
                .unwrap_or_default();
            format!("{} {} at {}: {why}", r.label(), o.verdict, o.id)
        }
    };
    v.as_object_mut()
        .expect("reports are objects")
        .insert("summary".into(), Value::String(summary));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_labels() {
        assert_eq!(Construction::power("Gamma_BLu", "2_Du").label(), "P[Gamma_BLu](2_Du)");
        assert_eq!(
            Construction::mixed("Gamma_pBL", &["2_Du", "3_Du"]).label(),
            "Gamma_pBL(2_Du . 3_Du)"
        );
        assert_eq!(Construction::Catalog("256").reduct(&["tjoin"]).label(), "256|tjoin");
    }

    #[test]
    fn sampled_subalgebras_are_deduplicated() {
        let subs = sampled_subalgebras(&["2^++", "2^--"], &["tjoin", "tmeet"]).unwrap();
        // three binary products, then the distinct 2-generated subuniverses of 2 x 2
        assert_eq!(subs[..3].iter().map(|a| a.size()).collect::<Vec<_>>(), vec![4, 4, 4]);
        let names: BTreeSet<&str> = subs.iter().map(|a| a.name()).collect();
        assert_eq!(names.len(), subs.len());
        assert!(subs[3..].iter().all(|a| (1..=4).contains(&a.size())));
    }
}
