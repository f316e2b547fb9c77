//! The eleven acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p dupcalc --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use catalog::{catalog_algebra, catalog_axiom_suite, catalog_duplicator, check_suite};
use duplicator_engine::{
    check_condition, duplicate, element_coordinates, element_index, Budget, CheckMode, Condition,
    ConditionReport, Verdict,
};
use finite_algebra::{
    congruence_lattice, extend_from_generators, find_isomorphism, free_algebra,
    is_subdirectly_irreducible, residuum, FiniteAlgebra, Limits, ResiduumOutcome,
};
use verify_suite::{find_row, run_row, Config, RowReport};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn alg(key: &str) -> FiniteAlgebra {
    catalog_algebra(key).unwrap_or_else(|e| panic!("{key}: {e}"))
}

fn row(id: &str) -> Result<RowReport, String> {
    let spec = find_row(id).map_err(|e| e.to_string())?;
    run_row(&spec, &Config::default()).map_err(|e| e.to_string())
}

fn claim_passes(r: &RowReport, id: &str) -> Check {
    let c = r.claim(id).ok_or_else(|| format!("{} has no claim `{id}`", r.row))?;
    ensure!(c.verdict == Verdict::Pass, "{} {id}: {} {}", r.row, c.verdict, c.artifact["summary"]);
    Ok(())
}

fn condition(c: Condition, dup: &str, class: &[&str], mode: CheckMode) -> Result<ConditionReport, String> {
    let g = catalog_duplicator(dup).map_err(|e| e.to_string())?;
    let class: Vec<FiniteAlgebra> = class.iter().map(|k| alg(k)).collect();
    check_condition(c, &g, &class, mode, &Budget::default()).map_err(|e| e.to_string())
}

/// Number of maps `a -> b` preserving every operation. Elements are assigned
/// in order and each operation tuple is checked once its arguments and value
/// are all assigned.
fn brute_force_hom_count(a: &FiniteAlgebra, b: &FiniteAlgebra) -> usize {
    fn extend(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &mut Vec<usize>) -> usize {
        let i = map.len();
        if i == a.size() {
            return 1;
        }
        let mut total = 0;
        for y in 0..b.size() {
            map.push(y);
            if consistent(a, b, map) {
                total += extend(a, b, map);
            }
            map.pop();
        }
        total
    }
    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
        let top = map.len() - 1;
        a.sig().symbols().iter().all(|s| {
            let mut ok = true;
            finite_algebra::for_each_tuple(top + 1, s.arity, |args| {
                let r = a.apply_named(&s.name, args);
                if r > top || (!args.contains(&top) && r != top) {
                    return;
                }
                let img: Vec<usize> = args.iter().map(|&x| map[x]).collect();
                ok &= map[r] == b.apply_named(&s.name, &img);
            });
            ok
        })
    }
    let b = b.aligned_with(a).unwrap();
    extend(a, &b, &mut Vec::new())
}

fn criterion_1() -> Check {
    let class = ["2_Du", "3_Du", "2x2_Du", "M3", "N5"];
    for c in [Condition::L, Condition::M, Condition::P] {
        let r = condition(c, "Gamma_BLu", &class, CheckMode::Witness)?;
        ensure!(r.verdict == Verdict::Pass, "{} {}", r.label(), r.verdict);
        for o in &r.obligations {
            ensure!(
                matches!(o.source.as_deref(), Some("supplied") | Some("composed")),
                "{} {} settled by {:?}",
                r.label(),
                o.id,
                o.source
            );
        }
    }
    // v((a,b),(c,d)) = (a,d), evaluated over every pair.
    let g = catalog_duplicator("Gamma_BLu").unwrap();
    let v = g.witnesses.m.clone().ok_or("no merge witness")?;
    for key in class {
        let n = alg(key);
        let p = duplicate(&g, &n).map_err(|e| e.to_string())?;
        let sizes = [n.size(), n.size()];
        for x in 0..p.size() {
            for y in 0..p.size() {
                let got = term_value(&v, &p, &[x, y]);
                let (xa, yb) = (element_coordinates(&sizes, x), element_coordinates(&sizes, y));
                ensure!(
                    got == element_index(&sizes, &[xa[0], yb[1]]),
                    "merge wrong in {key} at {x},{y}"
                );
            }
        }
    }
    Ok(())
}

fn term_value(t: &term_core::Term, a: &FiniteAlgebra, args: &[usize]) -> usize {
    term_core::eval_term(t, a, args).expect("witness evaluates")
}

fn criterion_2() -> Check {
    let g = catalog_duplicator("Gamma_BLu").unwrap();
    let p = duplicate(&g, &alg("2Du")).map_err(|e| e.to_string())?;
    ensure!(find_isomorphism(&p, &alg("4_DBu")).unwrap().is_some(), "not isomorphic to 4_DBu");
    let suite = catalog_axiom_suite("distributive-bilattice").unwrap();
    let distributive = suite.axioms.iter().filter(|a| a.id.contains("distrib")).count();
    ensure!(distributive == 12, "{distributive} distributive laws in the suite");
    let report = check_suite(&p, &suite).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "suite fails: {:?}", report.failures().next());
    Ok(())
}

fn criterion_3() -> Check {
    let r = condition(Condition::P, "Gamma_1", &["2_B"], CheckMode::Search)?;
    ensure!(r.verdict == Verdict::Fail, "Gamma_1 (P) {}", r.verdict);
    let cert = r.obligations[0].certificate.ok_or("no certificate for Gamma_1")?;
    ensure!(cert.explored <= 36, "Gamma_1 closure has {} functions", cert.explored);

    let r = condition(Condition::LPrime, "Gamma_2", &["2_B"], CheckMode::Search)?;
    ensure!(r.verdict == Verdict::Fail, "Gamma_2 (L') {}", r.verdict);
    let failed: Vec<_> = r.obligations.iter().filter(|o| o.verdict == Verdict::Fail).collect();
    ensure!(failed.len() == 1 && failed[0].id == "compl", "Gamma_2 fails at {:?}", failed.iter().map(|o| &o.id).collect::<Vec<_>>());
    let cert = failed[0].certificate.ok_or("no certificate for Gamma_2")?;
    ensure!(cert.explored == 3, "Gamma_2 closure has {} behaviours", cert.explored);
    Ok(())
}

fn criterion_4() -> Check {
    let g = catalog_duplicator("Gamma_BLu").unwrap();
    let three = alg("3_Du");
    let con = congruence_lattice(&three, &Limits::default()).unwrap();
    ensure!(con.len() == 4, "|Con(3)| = {}", con.len());
    let p = duplicate(&g, &three).unwrap();
    let pcon = congruence_lattice(&p, &Limits::default()).unwrap();
    ensure!(
        find_isomorphism(&con.as_lattice(), &pcon.as_lattice()).unwrap().is_some(),
        "congruence lattices differ"
    );
    let (si2, _) = is_subdirectly_irreducible(&alg("2_Du")).unwrap();
    let (si4, _) = is_subdirectly_irreducible(&alg("4_DBu")).unwrap();
    ensure!(si2 && si4, "2_Du irreducible: {si2}, 4_DBu irreducible: {si4}");
    for key in ["2_Du", "4_DBu"] {
        let n = congruence_lattice(&alg(key), &Limits::default()).unwrap().len();
        ensure!(n == 2, "{key} has {n} congruences");
    }
    Ok(())
}

fn criterion_5() -> Check {
    let f1 = free_algebra(&[alg("4_DBu")], 1, 100_000).map_err(|e| e.to_string())?;
    ensure!(f1.algebra.size() == 16, "F(1) has {} elements", f1.algebra.size());
    let f2 = free_algebra(&[alg("2_Du")], 2, 100_000).map_err(|e| e.to_string())?;
    ensure!(f2.algebra.size() == 4, "free lattice on 2 generators has {} elements", f2.algebra.size());
    let g = catalog_duplicator("Gamma_BLu").unwrap();
    let p = duplicate(&g, &f2.algebra).unwrap();
    let n = f2.algebra.size();
    let image = element_index(&[n, n], &[f2.generators[0], f2.generators[1]]);
    let h = extend_from_generators(&f1.algebra, &p, &f1.generators, &[image])
        .map_err(|e| e.to_string())?
        .ok_or("the generator assignment does not extend")?;
    ensure!(h.is_injective() && h.is_surjective(p.size()), "extension is not bijective");
    Ok(())
}

fn criterion_6() -> Check {
    let g = catalog_duplicator("Gamma_BLu").unwrap();
    let expected = [("2_Du", "2_Du", 3), ("2_Du", "3_Du", 6), ("3_Du", "2_Du", 4), ("3_Du", "3_Du", 10)];
    for (a, b, n) in expected {
        let (a, b) = (alg(a), alg(b));
        let base = brute_force_hom_count(&a, &b);
        let (pa, pb) = (duplicate(&g, &a).unwrap(), duplicate(&g, &b).unwrap());
        let lifted = brute_force_hom_count(&pa, &pb);
        ensure!(base == n && lifted == n, "{} -> {}: {base} and {lifted}, expected {n}", a.name(), b.name());
        let r = duplicator_engine::equivalence_smoke_test(&g, &a, &b).map_err(|e| e.to_string())?;
        ensure!(r.holds(), "smoke test fails: {:?}", r.clauses.iter().find(|c| !c.holds));
    }
    Ok(())
}

fn criterion_7() -> Check {
    let r = condition(Condition::L, "Gamma_TLtf", &["4_DBu"], CheckMode::Witness)?;
    ensure!(r.verdict == Verdict::Pass, "Gamma_TLtf (L) {}", r.verdict);
    let tl = row("TLtf/DBu")?;
    ensure!(tl.passed(), "TLtf/DBu does not pass");
    for id in ["conditions/(L)", "conditions/(M)", "conditions/(P)", "suite/P[Gamma_TLtf](4_DBu)", "separation/sampled"] {
        claim_passes(&tl, id)?;
    }
    let tli = row("TLtfi/DBCu")?;
    for id in ["iso/binary-256", "iso/4ary-256", "iso/binary-4ary"] {
        claim_passes(&tli, id)?;
    }
    Ok(())
}

/// `a → c` as the largest `b` with `a ∧ b ≤ c`, found by scanning all `b`.
fn brute_force_residuum(a: &FiniteAlgebra) -> Option<Vec<usize>> {
    let n = a.size();
    let meet = |x, y| a.apply_named("meet", &[x, y]);
    let leq = |x, y| meet(x, y) == x;
    let mut table = Vec::new();
    for x in 0..n {
        for c in 0..n {
            let ok: Vec<usize> = (0..n).filter(|&b| leq(meet(x, b), c)).collect();
            let top = ok.iter().copied().find(|&t| ok.iter().all(|&b| leq(b, t)))?;
            table.push(top);
        }
    }
    Some(table)
}

fn criterion_8() -> Check {
    for key in ["2_D", "3_Du", "2x2_Du"] {
        let a = alg(key);
        let got = residuum(&a, "meet").map_err(|e| e.to_string())?;
        let want = brute_force_residuum(&a).ok_or(format!("{key} has no residuum"))?;
        ensure!(got == ResiduumOutcome::Table(want), "residuum of {key} disagrees with the oracle");
    }
    ensure!(
        matches!(residuum(&alg("N5"), "meet").unwrap(), ResiduumOutcome::NoAdjoint { .. }),
        "N5 has a residuum"
    );
    ensure!(brute_force_residuum(&alg("N5")).is_none(), "oracle finds a residuum on N5");
    let h = row("BLk/H")?;
    claim_passes(&h, "formula/kimpl")?;
    claim_passes(&h, "residuum/N5")?;
    let bh = row("BLt/bH")?;
    claim_passes(&bh, "formula/kimpl-from-timpl")?;
    Ok(())
}

fn criterion_9() -> Check {
    for (id, formula, count) in [
        ("guard/D", "formula/guard", 16),
        ("implicative/B", "formula/imp", 16),
        ("Moore/B", "formula/know", 4),
        ("slash/KL", "formula/slash", 9),
    ] {
        let r = row(id)?;
        ensure!(r.passed(), "{id} does not pass");
        claim_passes(&r, "conditions/(L)")?;
        claim_passes(&r, formula)?;
        let checked = r.claim(formula).unwrap().artifact["checked"].as_u64().unwrap_or(0);
        ensure!(checked == count, "{formula} checked {checked} inputs, expected {count}");
    }
    let modal = row("MBL/BM")?;
    ensure!(modal.passed(), "MBL/BM does not pass");
    let suite = catalog_axiom_suite("modal-bilattice").unwrap();
    let boxes = suite.axioms.iter().filter(|a| a.id.starts_with("box/")).count();
    ensure!(boxes == 3, "{boxes} box equations in the modal suite");
    claim_passes(&modal, "suite/P[Gamma_MBL](4_BM)")?;
    Ok(())
}

fn criterion_10() -> Check {
    let d = condition(Condition::D, "Gamma_IT", &[], CheckMode::Witness)?;
    ensure!(d.verdict == Verdict::Pass, "Gamma_IT (D) {}", d.verdict);
    let d = condition(Condition::D, "Gamma_BLu", &[], CheckMode::Witness)?;
    ensure!(d.verdict == Verdict::Fail, "Gamma_BLu (D) {}", d.verdict);
    let pbl = row("pBL/LxL")?;
    let mixed = "suite/Gamma_pBL(2_Du . 3_Du)";
    claim_passes(&pbl, mixed)?;
    let size = pbl.claim(mixed).unwrap().artifact["size"].as_u64();
    ensure!(size == Some(6), "2 (.) 3 has size {size:?}");
    for c in [Condition::L, Condition::M, Condition::P] {
        let r = condition(c, "Gamma_TLtfi_4ary", &["4_DMu"], CheckMode::Witness)?;
        ensure!(r.verdict == Verdict::Pass && r.m == 4, "{} {}", r.label(), r.verdict);
    }
    Ok(())
}

fn reproduce(table: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dupcalc"))
        .args(["reproduce", table])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(0), "reproduce {table} exited {:?}", out.status.code());
    Ok(out.stdout)
}

fn criterion_11() -> Check {
    for table in ["table1", "table2"] {
        let first = reproduce(table)?;
        let second = reproduce(table)?;
        ensure!(first == second, "reproduce {table} is not byte-deterministic");
        ensure!(!first.is_empty(), "reproduce {table} printed nothing");
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Check, u64); 11] = [
        ("Gamma_BLu witness check over five lattices", criterion_1, 1),
        ("duplicate of the 2-chain is 4_DBu and distributive", criterion_2, 1),
        ("negative certificates for Gamma_1 and Gamma_2", criterion_3, 2),
        ("congruence and irreducibility transfer", criterion_4, 5),
        ("free algebra transfer", criterion_5, 5),
        ("equivalence smoke tests", criterion_6, 10),
        ("trilattice pipeline", criterion_7, 60),
        ("residuation", criterion_8, 5),
        ("formula and case definitions agree", criterion_9, 5),
        ("mixed products", criterion_10, 10),
        ("reproduce both tables deterministically", criterion_11, 300),
    ];
    let mut failures = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match &result {
            Ok(()) if took <= Duration::from_secs(*limit) => Ok(()),
            Ok(()) => Err(format!("took {took:?}, limit {limit} s")),
            Err(e) => Err(e.clone()),
        };
        match &verdict {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({} ms)", i + 1, took.as_millis()),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {name} ({} ms): {e}", i + 1, took.as_millis());
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
