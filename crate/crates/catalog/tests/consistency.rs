//! Operations given by cases agree with their coordinate formulas on every input.

use catalog::catalog_algebra;
use finite_algebra::FiniteAlgebra;

fn pair(label: &str) -> (usize, usize) {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner.split_once(',').unwrap();
    (a.parse().unwrap(), b.parse().unwrap())
}

/// Checks `op` of `alg` against `formula` on all argument tuples; returns the count.
fn agree(alg: &FiniteAlgebra, op: &str, formula: impl Fn(&[(usize, usize)]) -> (usize, usize)) -> usize {
    let idx = alg.op_index(op).unwrap();
    let k = alg.arity_at(idx);
    let mut checked = 0;
    finite_algebra::for_each_tuple(alg.size(), k, |args| {
        let pairs: Vec<_> = args.iter().map(|&e| pair(&alg.label(e))).collect();
        let got = pair(&alg.label(alg.apply(idx, args)));
        assert_eq!(got, formula(&pairs), "{op}{:?}", pairs);
        checked += 1;
    });
    checked
}

#[test]
fn guard_formula() {
    let a = catalog_algebra("4_guard").unwrap();
    assert_eq!(agree(&a, "guard", |x| (x[0].0 & x[1].0, x[0].0 & x[1].1)), 16);
}

#[test]
fn implication_formula() {
    let a = catalog_algebra("4_implic").unwrap();
    assert_eq!(agree(&a, "imp", |x| ((1 - x[0].0) | x[1].0, x[0].0 & x[1].1)), 16);
}

#[test]
fn moore_formula() {
    let a = catalog_algebra("4_L").unwrap();
    assert_eq!(agree(&a, "know", |x| (x[0].0, 1 - x[0].0)), 4);
}

#[test]
fn slash_formula_on_nine_elements() {
    // 9_DB is built over the chain 0 < 1 < 2, whose De Morgan negation is 2 - a
    let a = catalog_algebra("9_slash").unwrap();
    assert_eq!(agree(&a, "slash", |x| (2 - x[0].0, x[0].1)), 9);
}
