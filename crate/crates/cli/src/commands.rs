//! One function per subcommand, each producing an [`Outcome`].

use anyhow::{anyhow, bail, Result};
use catalog::{Kind, Payload};
use duplicator_engine::{
    check_condition, duplicate, duplicate_mixed, equivalence_smoke_test, lift_morphism,
    validate_duplicator, Budget, CheckMode, Condition, Verdict,
};
use finite_algebra::{
    congruence_lattice, enumerate_homomorphisms, find_isomorphism, free_algebra, is_homomorphism,
    is_subdirectly_irreducible, residuum, separates_into, FiniteAlgebra, Homomorphism, Limits,
    ResiduumOutcome,
};
use serde_json::{json, Value};
use verify_suite::{overall, render_report, run_rows, Config, Format, RowReport, Table};

use crate::refs;

/// What a subcommand found: a verdict, a one-line summary, detail lines for
/// text output and a JSON result.
pub struct Outcome {
    pub command: &'static str,
    pub verdict: Verdict,
    pub summary: String,
    pub lines: Vec<String>,
    pub result: Value,
    /// A file written by `-o` instead of the document (algebras, duplicators).
    pub artifact: Option<String>,
    /// A complete document that replaces the default rendering.
    pub report: Option<Vec<RowReport>>,
}

impl Outcome {
    fn new(command: &'static str, verdict: Verdict, summary: impl Into<String>, result: Value) -> Self {
        Outcome {
            command,
            verdict,
            summary: summary.into(),
            lines: Vec::new(),
            result,
            artifact: None,
            report: None,
        }
    }

    fn lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }

    pub fn render(&self, json_out: bool) -> String {
        if let Some(reports) = &self.report {
            return render_report(reports, if json_out { Format::Json } else { Format::Text });
        }
        if json_out {
            let doc = json!({
                "command": self.command,
                "verdict": self.verdict,
                "summary": self.summary,
                "result": self.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
            s.push('\n');
            s
        } else {
            let mut s = format!("{}: {}\n", self.verdict, self.summary);
            for l in &self.lines {
                s.push_str(l.trim_end());
                s.push('\n');
            }
            s
        }
    }
}

/// Search and resource settings shared by the subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub mode: CheckMode,
    pub depth: Option<usize>,
    pub cap: Option<usize>,
    pub budget_ms: Option<u64>,
}

impl Settings {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_functions: self.cap.unwrap_or(d.max_functions),
            max_depth: self.depth.unwrap_or(d.max_depth),
            max_millis: self.budget_ms.unwrap_or(d.max_millis),
        }
    }
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn labels(alg: &FiniteAlgebra, elems: impl IntoIterator<Item = usize>) -> String {
    elems.into_iter().map(|e| alg.label(e)).collect::<Vec<_>>().join(" ")
}

fn map_line(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &Homomorphism) -> String {
    (0..a.size())
        .map(|x| format!("{}->{}", a.label(x), b.label(h.apply(x))))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_condition(s: &str) -> Result<Condition> {
    Ok(match s.trim_matches(|c| c == '(' || c == ')') {
        "L" => Condition::L,
        "L'" | "Lprime" | "L′" => Condition::LPrime,
        "M" => Condition::M,
        "P" => Condition::P,
        "D" => Condition::D,
        other => bail!("unknown condition `{other}` (expected L, L', M, P or D)"),
    })
}

pub fn check_duplicator(
    dup: &str,
    bases: &[String],
    conditions: &[String],
    settings: &Settings,
) -> Result<Outcome> {
    let g = refs::duplicator(dup)?;
    let class = if bases.is_empty() {
        let key = refs::catalog_key(dup)
            .ok_or_else(|| anyhow!("--base is required for a duplicator read from a file"))?;
        catalog::duplicator_profile(key)?
            .base_class
            .iter()
            .map(|k| catalog::catalog_algebra(k))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        refs::algebras(bases)?
    };
    let conditions = if conditions.is_empty() {
        vec![Condition::L, Condition::M, Condition::P]
    } else {
        conditions.iter().map(|c| parse_condition(c)).collect::<Result<Vec<_>>>()?
    };
    let violations = validate_duplicator(&g);
    let mut lines = Vec::new();
    let mut verdicts = vec![verdict_of(violations.is_empty())];
    for v in &violations {
        lines.push(format!("invalid: {v}"));
    }
    let budget = settings.budget();
    let mut reports = Vec::new();
    for c in conditions {
        let r = check_condition(c, &g, &class, settings.mode, &budget)?;
        lines.push(format!("{} {}", r.label(), r.verdict));
        for o in &r.obligations {
            let detail = o
                .witness
                .clone()
                .or_else(|| o.counterexample.clone())
                .or_else(|| o.note.clone())
                .unwrap_or_default();
            let source = o.source.as_deref().map(|s| format!(" [{s}]")).unwrap_or_default();
            lines.push(format!("  {:<7} {}{source}  {detail}", o.verdict.to_string(), o.id));
        }
        verdicts.push(r.verdict);
        reports.push(r);
    }
    let verdict = overall(verdicts);
    let names: Vec<&str> = class.iter().map(|a| a.name()).collect();
    let summary = format!(
        "{} over {{{}}}: {}",
        g.name,
        names.join(","),
        reports.iter().map(|r| format!("{} {}", r.label(), r.verdict)).collect::<Vec<_>>().join(", ")
    );
    let result = json!({
        "duplicator": g.name,
        "class": names,
        "violations": violations,
        "conditions": reports,
    });
    Ok(Outcome::new("check-duplicator", verdict, summary, result).lines(lines))
}

fn algebra_outcome(command: &'static str, alg: FiniteAlgebra, summary: String) -> Outcome {
    let file: Value = serde_json::from_str(&alg.to_json_pretty()).expect("algebra files are JSON");
    let mut o = Outcome::new(command, Verdict::Pass, summary, json!({ "algebra": file }));
    o.artifact = Some(alg.to_json_pretty());
    o
}

pub fn duplicate_cmd(dup: &str, base: &str) -> Result<Outcome> {
    let g = refs::duplicator(dup)?;
    let n = refs::algebra(base)?;
    let p = duplicate(&g, &n)?;
    let summary = format!("{} has {} elements and {} operations", p.name(), p.size(), p.sig().len());
    Ok(algebra_outcome("duplicate", p, summary))
}

pub fn duplicate_mixed_cmd(dup: &str, factors: &[String]) -> Result<Outcome> {
    let g = refs::duplicator(dup)?;
    let fs = refs::algebras(factors)?;
    let p = duplicate_mixed(&g, &fs)?;
    let summary = format!("{} has {} elements and {} operations", p.name(), p.size(), p.sig().len());
    Ok(algebra_outcome("duplicate-mixed", p, summary))
}

pub fn parse_map(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad map entry `{t}` in --map")))
        .collect()
}

pub fn lift(dup: &str, a: &str, b: &str, map: &[usize]) -> Result<Outcome> {
    let g = refs::duplicator(dup)?;
    let a = refs::algebra(a)?.conform_to(&g.base_sig)?;
    let b = refs::algebra(b)?.conform_to(&g.base_sig)?;
    if map.len() != a.size() || map.iter().any(|&x| x >= b.size()) {
        bail!("--map needs {} entries below {}", a.size(), b.size());
    }
    if !is_homomorphism(&a, &b, map) {
        let summary = format!("the map is not a homomorphism {} -> {}", a.name(), b.name());
        return Ok(Outcome::new("lift", Verdict::Fail, summary, json!({ "map": map })));
    }
    let h = Homomorphism::new(map.to_vec());
    let lifted = lift_morphism(&g, &a, &b, &h)?;
    let summary = format!(
        "lifted to a homomorphism P[{}]({}) -> P[{}]({}) on {} elements",
        g.name,
        a.name(),
        g.name,
        b.name(),
        lifted.map.len()
    );
    Ok(Outcome::new("lift", Verdict::Pass, summary, json!({ "map": map, "lifted": lifted.map }))
        .lines(vec![format!("{:?}", lifted.map)]))
}

pub fn verify_axioms(alg: &str, suite: Option<&str>, settings: &Settings) -> Result<Outcome> {
    let a = refs::algebra(alg)?;
    let key = match suite {
        Some(s) => s.strip_prefix("catalog:").unwrap_or(s).to_string(),
        None => {
            let k = refs::catalog_key(alg)
                .ok_or_else(|| anyhow!("--suite is required for an algebra read from a file"))?;
            catalog::intended_suite(k)?.to_string()
        }
    };
    let suite = catalog::catalog_axiom_suite(&key)?;
    let cap = settings.cap.unwrap_or(catalog::DEFAULT_EVAL_CAP);
    let report = catalog::check_suite_with(&a, &suite, cap)?;
    let mut lines = Vec::new();
    let mut results = Vec::new();
    for r in &report.results {
        let (v, detail) = match &r.outcome {
            catalog::AxiomOutcome::Pass => (Verdict::Pass, String::new()),
            catalog::AxiomOutcome::Fail(c) => (Verdict::Fail, c.clone()),
            catalog::AxiomOutcome::Unknown(c) => (Verdict::Unknown, c.clone()),
        };
        lines.push(format!("  {:<7} {}  {detail}", v.to_string(), r.id));
        results.push(json!({ "id": r.id, "verdict": v, "detail": detail }));
    }
    let verdict = if report.failures().next().is_some() {
        Verdict::Fail
    } else if report.has_unknown() {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let failed = report.failures().count();
    let summary = format!(
        "{} ({} elements) against {}: {}/{} axioms hold",
        a.name(),
        a.size(),
        key,
        report.results.len() - failed,
        report.results.len()
    );
    let result = json!({ "algebra": a.name(), "suite": key, "axioms": results });
    Ok(Outcome::new("verify-axioms", verdict, summary, result).lines(lines))
}

pub fn congruences(alg: &str, transfer: Option<&str>) -> Result<Outcome> {
    let a = refs::algebra(alg)?;
    let con = congruence_lattice(&a, &Limits::default())?;
    let listed: Vec<String> = con.congruences.iter().map(|c| c.to_string()).collect();
    let mut lines: Vec<String> = listed.iter().map(|c| format!("  {c}")).collect();
    let mut result = json!({ "algebra": a.name(), "count": con.len(), "congruences": listed });
    let mut summary = format!("|Con({})| = {}", a.name(), con.len());
    let mut verdict = Verdict::Pass;
    if let Some(dup) = transfer {
        let g = refs::duplicator(dup)?;
        let p = duplicate(&g, &a)?;
        let pcon = congruence_lattice(&p, &Limits::default())?;
        let iso = find_isomorphism(&con.as_lattice(), &pcon.as_lattice())?;
        verdict = verdict_of(iso.is_some());
        summary = format!(
            "{summary}, |Con({})| = {}, lattices {}",
            p.name(),
            pcon.len(),
            if iso.is_some() { "isomorphic" } else { "not isomorphic" }
        );
        lines.push(format!("{}: {} congruences", p.name(), pcon.len()));
        result["transfer"] = json!({
            "algebra": p.name(),
            "count": pcon.len(),
            "isomorphism": iso.map(|h| h.map),
        });
    }
    Ok(Outcome::new("congruences", verdict, summary, result).lines(lines))
}

pub fn si(alg: &str) -> Result<Outcome> {
    let a = refs::algebra(alg)?;
    let (irreducible, monolith) = is_subdirectly_irreducible(&a)?;
    let summary = match &monolith {
        Some(m) => format!("{} is subdirectly irreducible with monolith {m}", a.name()),
        None => format!("{} is not subdirectly irreducible", a.name()),
    };
    let result = json!({
        "algebra": a.name(),
        "irreducible": irreducible,
        "monolith": monolith.map(|m| m.to_string()),
    });
    Ok(Outcome::new("si", verdict_of(irreducible), summary, result))
}

pub fn homs(a: &str, b: &str, settings: &Settings) -> Result<Outcome> {
    let a = refs::algebra(a)?;
    let b = refs::algebra(b)?;
    let e = enumerate_homomorphisms(&a, &b, settings.cap)?;
    let verdict = if e.truncated { Verdict::Unknown } else { Verdict::Pass };
    let summary = if e.truncated {
        format!("at least {} homomorphisms {} -> {} (cap reached)", e.homs.len(), a.name(), b.name())
    } else {
        format!("{} homomorphisms {} -> {}", e.homs.len(), a.name(), b.name())
    };
    let lines = e.homs.iter().map(|h| format!("  {}", map_line(&a, &b, h))).collect();
    let maps: Vec<&Vec<usize>> = e.homs.iter().map(|h| &h.map).collect();
    let result = json!({ "count": e.homs.len(), "truncated": e.truncated, "homomorphisms": maps });
    Ok(Outcome::new("homs", verdict, summary, result).lines(lines))
}

pub fn iso(a: &str, b: &str, on: Option<&str>) -> Result<Outcome> {
    let mut a = refs::algebra(a)?;
    let mut b = refs::algebra(b)?;
    if let Some(on) = on {
        let syms: Vec<&str> = on.split(',').map(str::trim).collect();
        a = a.reduct(&syms)?;
        b = b.reduct(&syms)?;
    }
    let h = find_isomorphism(&a, &b)?;
    let (summary, lines) = match &h {
        Some(h) => (format!("{} is isomorphic to {}", a.name(), b.name()), vec![format!("  {}", map_line(&a, &b, h))]),
        None => (format!("{} is not isomorphic to {}", a.name(), b.name()), Vec::new()),
    };
    let verdict = verdict_of(h.is_some());
    let result = json!({ "left": a.name(), "right": b.name(), "isomorphism": h.map(|h| h.map) });
    Ok(Outcome::new("iso", verdict, summary, result).lines(lines))
}

pub fn free(class: &[String], gens: usize, settings: &Settings) -> Result<Outcome> {
    let algs = refs::algebras(class)?;
    let cap = settings.cap.unwrap_or(Limits::default().free_cap);
    let f = free_algebra(&algs, gens, cap)?;
    let names: Vec<&str> = algs.iter().map(|a| a.name()).collect();
    let summary = format!(
        "the free algebra on {gens} generators over {{{}}} has {} elements",
        names.join(","),
        f.algebra.size()
    );
    let terms: Vec<String> = f.terms.iter().map(|t| t.to_string()).collect();
    let lines = terms.iter().enumerate().map(|(i, t)| format!("  {i}: {t}")).collect();
    let file: Value = serde_json::from_str(&f.algebra.to_json_pretty()).expect("algebra files are JSON");
    let result = json!({
        "size": f.algebra.size(),
        "generators": f.generators,
        "terms": terms,
        "algebra": file,
    });
    let mut o = Outcome::new("free", Verdict::Pass, summary, result).lines(lines);
    o.artifact = Some(f.algebra.to_json_pretty());
    Ok(o)
}

pub fn residuum_cmd(alg: &str, meet: &str) -> Result<Outcome> {
    let a = refs::algebra(alg)?;
    let n = a.size();
    Ok(match residuum(&a, meet)? {
        ResiduumOutcome::Table(t) => {
            let w = (0..n).map(|x| a.label(x).len()).max().unwrap_or(0).max(3);
            let mut lines = vec![format!("  {:<w$} | {}", "a\\c", labels(&a, 0..n))];
            lines.extend((0..n).map(|x| {
                format!("  {:<w$} | {}", a.label(x), labels(&a, t[x * n..(x + 1) * n].iter().copied()))
            }));
            let summary = format!("{} has a residuum of `{meet}`", a.name());
            Outcome::new("residuum", Verdict::Pass, summary, json!({ "table": t })).lines(lines)
        }
        ResiduumOutcome::NoAdjoint { a: x, c } => {
            let summary = format!(
                "{} has no residuum of `{meet}`: no greatest b with {} ∧ b <= {}",
                a.name(),
                a.label(x),
                a.label(c)
            );
            Outcome::new("residuum", Verdict::Fail, summary, json!({ "a": x, "c": c }))
        }
    })
}

pub fn separate(alg: &str, into: &[String], settings: &Settings) -> Result<Outcome> {
    let a = refs::algebra(alg)?;
    let class = refs::algebras(into)?;
    let s = separates_into(&a, &class, settings.cap.unwrap_or(100_000))?;
    let names: Vec<&str> = class.iter().map(|c| c.name()).collect();
    let summary = match s.failing_pair {
        None => format!("homomorphisms into {{{}}} separate the points of {}", names.join(","), a.name()),
        Some((x, y)) => format!(
            "no homomorphism into {{{}}} separates {} and {} in {}",
            names.join(","),
            a.label(x),
            a.label(y),
            a.name()
        ),
    };
    let witnesses: Vec<Value> = s
        .witnesses
        .iter()
        .map(|((x, y), i, h)| json!({ "pair": [x, y], "into": names[*i], "map": h.map }))
        .collect();
    let result = json!({ "separated": s.separated, "failing_pair": s.failing_pair, "witnesses": witnesses });
    Ok(Outcome::new("separate", verdict_of(s.separated), summary, result))
}

pub fn smoke(dup: &str, a: &str, b: &str) -> Result<Outcome> {
    let g = refs::duplicator(dup)?;
    let a = refs::algebra(a)?;
    let b = refs::algebra(b)?;
    let r = equivalence_smoke_test(&g, &a, &b)?;
    let lines = r
        .clauses
        .iter()
        .map(|c| format!("  {:<7} {}  {}", verdict_of(c.holds).to_string(), c.id, c.detail))
        .collect();
    let summary = format!(
        "{} of {} clauses hold for {} on {}, {}",
        r.clauses.iter().filter(|c| c.holds).count(),
        r.clauses.len(),
        r.duplicator,
        r.a,
        r.b
    );
    let verdict = verdict_of(r.holds());
    Ok(Outcome::new("smoke", verdict, summary, serde_json::to_value(&r)?).lines(lines))
}

pub fn reproduce(
    table: &str,
    only: &[String],
    settings: &Settings,
    timings: bool,
    jobs: usize,
) -> Result<Outcome> {
    let table = Table::parse(table).ok_or_else(|| anyhow!("unknown table `{table}` (expected table1 or table2)"))?;
    let mut specs = verify_suite::rows(table);
    if !only.is_empty() {
        for id in only {
            if !specs.iter().any(|s| s.id == id) {
                bail!("unknown row `{id}`");
            }
        }
        specs.retain(|s| only.iter().any(|id| id == s.id));
    }
    let config = Config { mode: settings.mode, budget: settings.budget(), timings, ..Config::default() };
    let reports = run_rows(&specs, &config, jobs)?;
    let verdict = overall(reports.iter().map(|r| r.verdict()));
    let mut o = Outcome::new("reproduce", verdict, format!("{} rows", reports.len()), Value::Null);
    o.report = Some(reports);
    Ok(o)
}

pub fn parse_kind(s: &str) -> Result<Kind> {
    Ok(match s {
        "algebra" | "algebras" => Kind::Algebra,
        "duplicator" | "duplicators" => Kind::Duplicator,
        "axiom-suite" | "suite" | "suites" => Kind::AxiomSuite,
        other => bail!("unknown kind `{other}` (expected algebra, duplicator or axiom-suite)"),
    })
}

pub fn catalog_list(kind: Option<Kind>) -> Outcome {
    let list = catalog::catalog_list(kind);
    let width = list.iter().map(|l| l.key.len()).max().unwrap_or(0);
    let lines = list
        .iter()
        .map(|l| format!("{:<width$}  {:<11} {}", l.key, l.kind.as_str(), l.provenance))
        .collect();
    let entries: Vec<Value> = list
        .iter()
        .map(|l| json!({ "key": l.key, "kind": l.kind.as_str(), "description": l.provenance }))
        .collect();
    Outcome::new("catalog list", Verdict::Pass, format!("{} entries", list.len()), json!({ "entries": entries }))
        .lines(lines)
}

pub fn catalog_show(key: &str) -> Result<Outcome> {
    let key = key.strip_prefix("catalog:").unwrap_or(key);
    let e = catalog::catalog_entry(key)?;
    let (payload, text): (Value, String) = match &e.payload {
        Payload::Algebra(a) => {
            let t = a.to_json_pretty();
            (serde_json::from_str(&t)?, t)
        }
        Payload::Duplicator(g) => {
            let t = g.to_json_pretty();
            (serde_json::from_str(&t)?, t)
        }
        Payload::AxiomSuite(s) => {
            let axioms: Vec<Value> =
                s.axioms.iter().map(|a| json!({ "id": a.id, "axiom": a.kind.to_string() })).collect();
            let text = s.axioms.iter().map(|a| format!("{}: {}", a.id, a.kind)).collect::<Vec<_>>().join("\n");
            (json!({ "key": s.key, "description": s.description, "axioms": axioms }), text)
        }
    };
    let summary = format!("{} ({}): {}", e.key, e.kind.as_str(), e.provenance);
    let result = json!({ "key": e.key, "kind": e.kind.as_str(), "description": e.provenance, "payload": payload });
    Ok(Outcome::new("catalog show", Verdict::Pass, summary, result).lines(text.lines().map(String::from).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions_parse() {
        assert_eq!(parse_condition("L'").unwrap(), Condition::LPrime);
        assert_eq!(parse_condition("(M)").unwrap(), Condition::M);
        assert!(parse_condition("Q").is_err());
    }

    #[test]
    fn maps_parse() {
        assert_eq!(parse_map("0, 1,2").unwrap(), vec![0, 1, 2]);
        assert!(parse_map("0,x").is_err());
    }

    #[test]
    fn settings_override_the_default_budget() {
        let s = Settings { mode: CheckMode::Witness, depth: Some(3), cap: None, budget_ms: Some(5) };
        let b = s.budget();
        assert_eq!((b.max_depth, b.max_millis), (3, 5));
        assert_eq!(b.max_functions, Budget::default().max_functions);
    }

    #[test]
    fn text_rendering_leads_with_the_verdict() {
        let o = Outcome::new("x", Verdict::Fail, "broken", Value::Null).lines(vec!["  a".into()]);
        assert_eq!(o.render(false), "fail: broken\n  a\n");
        let doc: Value = serde_json::from_str(&o.render(true)).unwrap();
        assert_eq!(doc["verdict"], "fail");
    }
}
