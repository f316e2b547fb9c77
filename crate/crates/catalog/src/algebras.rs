//! Builders for the named finite algebras.

use duplicator_engine::{duplicate, duplicate_mixed};
use finite_algebra::builders::{chain, lattice_from_order, lattice_signature, with_bounds};
use finite_algebra::{direct_product, residuum, FiniteAlgebra, ResiduumOutcome};
use term_core::Signature;

use crate::duplicators;
use crate::CatalogError;

pub(crate) struct AlgebraSpec {
    pub key: &'static str,
    pub provenance: &'static str,
    /// The axiom suite the algebra is expected to satisfy.
    pub suite: &'static str,
    pub build: fn() -> Result<FiniteAlgebra, CatalogError>,
}

macro_rules! spec {
    ($key:expr, $suite:expr, $prov:expr, $build:expr) => {
        AlgebraSpec { key: $key, provenance: $prov, suite: $suite, build: $build }
    };
}

pub(crate) const ALGEBRAS: &[AlgebraSpec] = &[
    spec!("2_Du", "distributive-lattice", "two-element lattice", || named(chain(2), "2_Du")),
    spec!("3_Du", "distributive-lattice", "three-element chain", || named(chain(3), "3_Du")),
    spec!("2x2_Du", "distributive-lattice", "square of the two-element lattice", square_lattice),
    spec!("M3", "lattice", "diamond lattice, non-distributive", m3),
    spec!("N5", "lattice", "pentagon lattice, non-modular", n5),
    spec!("2_D", "bounded-distributive-lattice", "two-element bounded lattice", || {
        named(with_bounds(&chain(2))?, "2_D")
    }),
    spec!("3_D", "bounded-distributive-lattice", "three-element bounded chain", || {
        named(with_bounds(&chain(3))?, "3_D")
    }),
    spec!("M3_b", "bounded-lattice", "bounded diamond lattice", || named(with_bounds(&m3()?)?, "M3_b")),
    spec!("3_DM", "de-morgan", "three-element Kleene algebra on 0 < u < 1", three_dm),
    spec!("2_DM", "de-morgan", "two-element subalgebra of 3_DM", two_dm),
    spec!("4_DM", "de-morgan", "four-element De Morgan algebra on {0,1}^2", four_dm),
    spec!("4_DMu", "de-morgan-lattice", "bound-free reduct of 4_DM", four_dmu),
    spec!("2_B", "boolean", "two-element Boolean algebra", two_b),
    spec!("2_GB", "generalised-boolean", "two-element generalised Boolean algebra with implication", two_gb),
    spec!("2_H", "heyting", "finite Heyting stand-in: 2_D with its residuum", || heyting(chain(2), "2_H")),
    spec!("3_H", "heyting", "finite Heyting stand-in: 3-chain with its residuum", || heyting(chain(3), "3_H")),
    spec!("2x2_H", "heyting", "finite Heyting stand-in: 2x2 with its residuum", || {
        heyting(square_lattice()?, "2x2_H")
    }),
    spec!("3_BR", "brouwerian", "finite Brouwerian stand-in: 3-chain with relative pseudocomplement", three_br),
    spec!("3_bH", "bi-heyting", "finite bi-Heyting stand-in: 3-chain", || bi_heyting(chain(3), "3_bH")),
    spec!("2x2_bH", "bi-heyting", "finite bi-Heyting stand-in: 2x2", || {
        bi_heyting(square_lattice()?, "2x2_bH")
    }),
    spec!("3_MV", "residuated-lattice", "finite residuated stand-in: three-element Lukasiewicz chain", three_mv),
    spec!("4_BM", "bimodal", "finite bimodal stand-in: powerset of a two-point frame", four_bm),
    spec!("4_DBu", "distributive-bilattice", "four-element distributive bilattice, built from its two orders", four_dbu),
    spec!("4_DB", "bounded-distributive-bilattice", "4_DBu with the four bounds", four_db),
    spec!("9_DB", "bounded-distributive-bilattice", "nine-element bilattice over 3_D", nine_db),
    spec!("4_pDBu", "interlaced-pre-bilattice", "negation-free reduct of 4_DBu", || {
        Ok(four_dbu()?.reduct(&["tjoin", "tmeet", "kjoin", "kmeet"])?.with_name("4_pDBu"))
    }),
    spec!("6_pBL", "interlaced-pre-bilattice", "mixed pre-bilattice 2-chain (.) 3-chain", six_pbl),
    spec!("16_DBCu", "conflation", "bilattice with conflation over 4_DMu", sixteen_dbcu),
    spec!("4_guard", "guard-bilattice", "4_DB with the guard operation, by cases", four_guard),
    spec!("4_slash", "slash-bilattice", "4_DB with negation by failure, by cases", four_slash),
    spec!("9_slash", "slash-bilattice", "9_DB with negation by failure, by cases", nine_slash),
    spec!("4_implic", "implicative-bilattice", "4_DB with the implicative bilattice arrow, by cases", four_implic),
    spec!("4_implic_u", "implicative-bilattice-u", "bound-free reduct of 4_implic", || {
        Ok(four_implic()?
            .reduct(&["tjoin", "tmeet", "kjoin", "kmeet", "neg", "imp"])?
            .with_name("4_implic_u"))
    }),
    spec!("4_L", "bounded-distributive-bilattice", "4_DB with the epistemic operator L", four_l),
    spec!("2^++", "distributive-trilattice", "two-element trilattice, t and f as in i", || two_tri(true, true)),
    spec!("2^+-", "distributive-trilattice", "two-element trilattice, f reversed", || two_tri(true, false)),
    spec!("2^-+", "distributive-trilattice", "two-element trilattice, t reversed", || two_tri(false, true)),
    spec!("2^--", "distributive-trilattice", "two-element trilattice, t and f reversed", || two_tri(false, false)),
    spec!("4^+", "distributive-trilattice-t", "four-element trilattice with t-involution, f as in i", || four_tri(true)),
    spec!("4^-", "distributive-trilattice-t", "four-element trilattice with t-involution, f dual to i", || four_tri(false)),
    spec!("16_TLtf", "trilattice-tf", "sixteen-element trilattice with t- and f-involutions over 4_DBu", sixteen_tltf),
    spec!("256", "trilattice-tfi", "trilattice with three involutions over 16_DBCu", || two_five_six(false)),
    spec!("256_literal", "trilattice-t", "256 with the f-involution taken as (-a,-b)", || two_five_six(true)),
];

fn named(a: FiniteAlgebra, name: &str) -> Result<FiniteAlgebra, CatalogError> {
    Ok(a.with_name(name))
}

fn sig(symbols: &[(&str, usize)]) -> Signature {
    Signature::new(symbols.iter().copied()).expect("catalog signatures are well formed")
}

pub(crate) fn bounded_lattice_sig() -> Signature {
    sig(&[("join", 2), ("meet", 2), ("zero", 0), ("one", 0)])
}

pub(crate) fn dm_sig() -> Signature {
    sig(&[("join", 2), ("meet", 2), ("inv", 1), ("zero", 0), ("one", 0)])
}

pub(crate) fn dmu_sig() -> Signature {
    sig(&[("join", 2), ("meet", 2), ("inv", 1)])
}

pub(crate) fn boolean_sig() -> Signature {
    sig(&[("join", 2), ("meet", 2), ("compl", 1), ("zero", 0), ("one", 0)])
}

pub(crate) fn dbu_sig() -> Signature {
    sig(&[("tjoin", 2), ("tmeet", 2), ("kjoin", 2), ("kmeet", 2), ("neg", 1)])
}

fn tri_sig(involutions: &[&str]) -> Signature {
    let mut s = sig(&[
        ("tjoin", 2),
        ("tmeet", 2),
        ("fjoin", 2),
        ("fmeet", 2),
        ("ijoin", 2),
        ("imeet", 2),
    ]);
    for inv in involutions {
        s = s.with_symbol(inv, 1).expect("distinct names");
    }
    s
}

fn pair_labels(n: usize, label: impl Fn(usize) -> String) -> Vec<String> {
    (0..n * n).map(|e| format!("({},{})", label(e / n), label(e % n))).collect()
}

/// An algebra on `{0,1}²` (element `2a+b` is `(a,b)`) given by a rule on coordinate pairs.
fn on_bit_pairs(
    name: &str,
    sig: Signature,
    rule: impl Fn(&str, &[(usize, usize)]) -> (usize, usize),
) -> Result<FiniteAlgebra, CatalogError> {
    on_pairs(name, sig, 2, |e| e.to_string(), rule)
}

/// An algebra on pairs over `0..n` (element `n·a+b` is `(a,b)`).
fn on_pairs(
    name: &str,
    sig: Signature,
    n: usize,
    label: impl Fn(usize) -> String,
    rule: impl Fn(&str, &[(usize, usize)]) -> (usize, usize),
) -> Result<FiniteAlgebra, CatalogError> {
    let names: Vec<String> = sig.names().map(str::to_string).collect();
    let mut pairs = Vec::new();
    let alg = FiniteAlgebra::from_fn(name, sig, n * n, |op, args| {
        pairs.clear();
        pairs.extend(args.iter().map(|&e| (e / n, e % n)));
        let (a, b) = rule(&names[op], &pairs);
        n * a + b
    })?;
    Ok(alg.with_labels(Some(pair_labels(n, label)))?)
}

fn square_lattice() -> Result<FiniteAlgebra, CatalogError> {
    let p = direct_product(&lattice_signature(), &[chain(2), chain(2)])?;
    Ok(p.with_name("2x2_Du"))
}

fn m3() -> Result<FiniteAlgebra, CatalogError> {
    Ok(lattice_from_order("M3", &["0", "a", "b", "c", "1"], |x, y| {
        x == y || x == 0 || y == 4
    })?)
}

fn n5() -> Result<FiniteAlgebra, CatalogError> {
    // 0 < a < c < 1 and 0 < b < 1
    Ok(lattice_from_order("N5", &["0", "a", "b", "c", "1"], |x, y| {
        x == y || x == 0 || y == 4 || (x == 1 && y == 3)
    })?)
}

fn three_dm() -> Result<FiniteAlgebra, CatalogError> {
    let a = FiniteAlgebra::from_fn("3_DM", dm_sig(), 3, |op, args| match op {
        0 => args[0].max(args[1]),
        1 => args[0].min(args[1]),
        2 => 2 - args[0],
        3 => 0,
        _ => 2,
    })?;
    Ok(a.with_labels(Some(vec!["0".into(), "u".into(), "1".into()]))?)
}

fn two_dm() -> Result<FiniteAlgebra, CatalogError> {
    Ok(three_dm()?.induced(&[0, 2], "2_DM")?)
}

fn four_dm() -> Result<FiniteAlgebra, CatalogError> {
    on_bit_pairs("4_DM", dm_sig(), |s, x| match s {
        "join" => (x[0].0 | x[1].0, x[0].1 | x[1].1),
        "meet" => (x[0].0 & x[1].0, x[0].1 & x[1].1),
        "inv" => (1 - x[0].1, 1 - x[0].0),
        "zero" => (0, 0),
        _ => (1, 1),
    })
}

fn four_dmu() -> Result<FiniteAlgebra, CatalogError> {
    Ok(four_dm()?.reduct(&["join", "meet", "inv"])?.with_name("4_DMu"))
}

fn two_b() -> Result<FiniteAlgebra, CatalogError> {
    Ok(FiniteAlgebra::new(
        "2_B",
        boolean_sig(),
        2,
        vec![vec![0, 1, 1, 1], vec![0, 0, 0, 1], vec![1, 0], vec![0], vec![1]],
        Some(vec!["0".into(), "1".into()]),
    )?)
}

fn two_gb() -> Result<FiniteAlgebra, CatalogError> {
    Ok(FiniteAlgebra::new(
        "2_GB",
        sig(&[("join", 2), ("meet", 2), ("impl", 2)]),
        2,
        vec![vec![0, 1, 1, 1], vec![0, 0, 0, 1], vec![1, 1, 0, 1]],
        Some(vec!["0".into(), "1".into()]),
    )?)
}

fn residuum_table(lattice: &FiniteAlgebra) -> Result<Vec<usize>, CatalogError> {
    match residuum(lattice, "meet")? {
        ResiduumOutcome::Table(t) => Ok(t),
        ResiduumOutcome::NoAdjoint { a, c } => Err(CatalogError::Invalid(format!(
            "`{}` has no residuum at ({}, {})",
            lattice.name(),
            lattice.label(a),
            lattice.label(c)
        ))),
    }
}

fn heyting(lattice: FiniteAlgebra, name: &str) -> Result<FiniteAlgebra, CatalogError> {
    let imp = residuum_table(&lattice)?;
    Ok(with_bounds(&lattice)?.with_op("impl", 2, imp)?.with_name(name))
}

fn three_br() -> Result<FiniteAlgebra, CatalogError> {
    let c = chain(3);
    let imp = residuum_table(&c)?;
    Ok(c.with_op("impl", 2, imp)?.with_name("3_BR"))
}

/// Adds the residuum of `meet` and the dual residuum of `join`: `a ↦ c` is the
/// least `b` with `c ≤ a ∨ b`.
fn bi_heyting(lattice: FiniteAlgebra, name: &str) -> Result<FiniteAlgebra, CatalogError> {
    let imp = residuum_table(&lattice)?;
    let dual = finite_algebra::dual_of(&lattice, &[("join", "meet")])?;
    // the residuum of meet in the dual lattice is the dual residuum of join
    let co = residuum_table(&dual)?;
    let h = with_bounds(&lattice)?.with_op("impl", 2, imp)?.with_op("coimpl", 2, co)?;
    Ok(h.with_name(name))
}

fn three_mv() -> Result<FiniteAlgebra, CatalogError> {
    let s = sig(&[("join", 2), ("meet", 2), ("mul", 2), ("ldiv", 2), ("rdiv", 2)]);
    let a = FiniteAlgebra::from_fn("3_MV", s, 3, |op, x| match op {
        0 => x[0].max(x[1]),
        1 => x[0].min(x[1]),
        2 => (x[0] + x[1]).saturating_sub(2),
        // a \ c = min(1, 1 - a + c); c / b = b \ c
        3 => (2 + x[1]).saturating_sub(x[0]).min(2),
        _ => (2 + x[0]).saturating_sub(x[1]).min(2),
    })?;
    Ok(a.with_labels(Some(vec!["0".into(), "1/2".into(), "1".into()]))?)
}

fn four_bm() -> Result<FiniteAlgebra, CatalogError> {
    // worlds p = bit 0, q = bit 1; R+ : p->p, p->q ; R- : p->p, q->p, q->q
    let rplus = [0b11usize, 0b00];
    let rminus = [0b01usize, 0b11];
    let boxed = |r: &[usize; 2], x: usize| -> usize {
        (0..2).filter(|&w| r[w] & !x == 0).map(|w| 1 << w).sum()
    };
    let s = sig(&[
        ("join", 2),
        ("meet", 2),
        ("compl", 1),
        ("boxp", 1),
        ("boxm", 1),
        ("zero", 0),
        ("one", 0),
    ]);
    let a = FiniteAlgebra::from_fn("4_BM", s, 4, |op, x| match op {
        0 => x[0] | x[1],
        1 => x[0] & x[1],
        2 => 3 & !x[0],
        3 => boxed(&rplus, x[0]),
        4 => boxed(&rminus, x[0]),
        5 => 0,
        _ => 3,
    })?;
    let labels = ["{}", "{p}", "{q}", "{p,q}"].iter().map(|s| s.to_string()).collect();
    Ok(a.with_labels(Some(labels))?)
}

fn four_dbu() -> Result<FiniteAlgebra, CatalogError> {
    let labels = ["(0,0)", "(0,1)", "(1,0)", "(1,1)"];
    let coords = |e: usize| (e >> 1, e & 1);
    let t = lattice_from_order("t", &labels, |x, y| {
        let ((a, b), (c, d)) = (coords(x), coords(y));
        a <= c && b >= d
    })?;
    let k = lattice_from_order("k", &labels, |x, y| {
        let ((a, b), (c, d)) = (coords(x), coords(y));
        a <= c && b <= d
    })?;
    let neg: Vec<usize> = (0..4).map(|e| 2 * (e & 1) + (e >> 1)).collect();
    let tables = vec![
        t.op_table("join").unwrap().to_vec(),
        t.op_table("meet").unwrap().to_vec(),
        k.op_table("join").unwrap().to_vec(),
        k.op_table("meet").unwrap().to_vec(),
        neg,
    ];
    let labels = labels.iter().map(|s| s.to_string()).collect();
    Ok(FiniteAlgebra::new("4_DBu", dbu_sig(), 4, tables, Some(labels))?)
}

fn four_db() -> Result<FiniteAlgebra, CatalogError> {
    let u = four_dbu()?;
    Ok(u.with_op("t0", 0, vec![1])?
        .with_op("t1", 0, vec![2])?
        .with_op("k0", 0, vec![0])?
        .with_op("k1", 0, vec![3])?
        .with_name("4_DB"))
}

fn nine_db() -> Result<FiniteAlgebra, CatalogError> {
    let g = duplicators::build("Gamma_BL")?;
    let base = (crate::find_algebra("3_D")?.build)()?;
    Ok(duplicate(&g, &base)?.with_name("9_DB"))
}

fn six_pbl() -> Result<FiniteAlgebra, CatalogError> {
    let g = duplicators::build("Gamma_pBL")?;
    Ok(duplicate_mixed(&g, &[chain(2), chain(3)])?.with_name("6_pBL"))
}

fn sixteen_dbcu() -> Result<FiniteAlgebra, CatalogError> {
    let g = duplicators::build("Gamma_DBCu")?;
    Ok(duplicate(&g, &four_dmu()?)?.with_name("16_DBCu"))
}

/// `4_DB` expanded by one operation given on coordinate pairs.
fn expand_db(
    name: &str,
    symbol: &str,
    arity: usize,
    base: FiniteAlgebra,
    n: usize,
    rule: impl Fn(&[(usize, usize)]) -> (usize, usize),
) -> Result<FiniteAlgebra, CatalogError> {
    let mut table = Vec::new();
    finite_algebra::for_each_tuple(n * n, arity, |args| {
        let pairs: Vec<(usize, usize)> = args.iter().map(|&e| (e / n, e % n)).collect();
        let (a, b) = rule(&pairs);
        table.push(n * a + b);
    });
    Ok(base.with_op(symbol, arity, table)?.with_name(name))
}

fn four_guard() -> Result<FiniteAlgebra, CatalogError> {
    expand_db("4_guard", "guard", 2, four_db()?, 2, |x| {
        if x[0].0 == 1 {
            x[1]
        } else {
            (0, 0)
        }
    })
}

fn four_slash() -> Result<FiniteAlgebra, CatalogError> {
    expand_db("4_slash", "slash", 1, four_db()?, 2, |x| (1 - x[0].0, x[0].1))
}

fn nine_slash() -> Result<FiniteAlgebra, CatalogError> {
    // 0, u, 1 are 0, 1, 2
    expand_db("9_slash", "slash", 1, nine_db()?, 3, |x| {
        let (a1, a2) = x[0];
        if a1 == 0 || a1 == 2 {
            (2 - a1, a2)
        } else {
            (a1, a2)
        }
    })
}

fn four_implic() -> Result<FiniteAlgebra, CatalogError> {
    expand_db("4_implic", "imp", 2, four_db()?, 2, |x| {
        if x[0].0 == 1 {
            x[1]
        } else {
            (1, 0)
        }
    })
}

fn four_l() -> Result<FiniteAlgebra, CatalogError> {
    expand_db("4_L", "know", 1, four_db()?, 2, |x| (x[0].0, 1 - x[0].0))
}

fn two_tri(t_up: bool, f_up: bool) -> Result<FiniteAlgebra, CatalogError> {
    let name = format!("2^{}{}", if t_up { '+' } else { '-' }, if f_up { '+' } else { '-' });
    let a = FiniteAlgebra::from_fn(name, tri_sig(&[]), 2, |op, x| {
        let join = match op / 2 {
            0 => t_up,
            1 => f_up,
            _ => true,
        } == (op % 2 == 0);
        if join {
            x[0].max(x[1])
        } else {
            x[0].min(x[1])
        }
    })?;
    Ok(a.with_labels(Some(vec!["0".into(), "1".into()]))?)
}

fn four_tri(plus: bool) -> Result<FiniteAlgebra, CatalogError> {
    let name = if plus { "4^+" } else { "4^-" };
    let up = |a: usize, b: usize, join: bool| if join { a | b } else { a & b };
    on_bit_pairs(name, tri_sig(&["tinv"]), |s, x| {
        let (a, b) = (x[0], x.get(1).copied().unwrap_or((0, 0)));
        match s {
            "tjoin" => (up(a.0, b.0, true), up(a.1, b.1, false)),
            "tmeet" => (up(a.0, b.0, false), up(a.1, b.1, true)),
            "ijoin" => (up(a.0, b.0, true), up(a.1, b.1, true)),
            "imeet" => (up(a.0, b.0, false), up(a.1, b.1, false)),
            "fjoin" => (up(a.0, b.0, plus), up(a.1, b.1, plus)),
            "fmeet" => (up(a.0, b.0, !plus), up(a.1, b.1, !plus)),
            _ => (a.1, a.0),
        }
    })
}

fn sixteen_tltf() -> Result<FiniteAlgebra, CatalogError> {
    let d = four_dbu()?;
    let op = |s: &str, x: usize, y: usize| d.apply_named(s, &[x, y]);
    let neg = |x: usize| d.apply_named("neg", &[x]);
    on_pairs("16_TLtf", tri_sig(&["tinv", "finv"]), 4, |e| d.label(e), |s, x| {
        let (a, b) = (x[0], x.get(1).copied().unwrap_or((0, 0)));
        match s {
            "tjoin" => (op("tjoin", a.0, b.0), op("tjoin", a.1, b.1)),
            "tmeet" => (op("tmeet", a.0, b.0), op("tmeet", a.1, b.1)),
            "fjoin" => (op("kjoin", a.0, b.0), op("kmeet", a.1, b.1)),
            "fmeet" => (op("kmeet", a.0, b.0), op("kjoin", a.1, b.1)),
            "ijoin" => (op("kjoin", a.0, b.0), op("kjoin", a.1, b.1)),
            "imeet" => (op("kmeet", a.0, b.0), op("kmeet", a.1, b.1)),
            "tinv" => (neg(a.0), neg(a.1)),
            _ => (a.1, a.0),
        }
    })
}

fn two_five_six(literal: bool) -> Result<FiniteAlgebra, CatalogError> {
    let d = sixteen_dbcu()?;
    let name = if literal { "256_literal" } else { "256" };
    let ops: Vec<&[usize]> =
        ["tjoin", "tmeet", "kjoin", "kmeet"].iter().map(|s| d.op_table(s).unwrap()).collect();
    let neg = d.op_table("neg").unwrap();
    let conf = d.op_table("conf").unwrap();
    let bin = |i: usize, x: usize, y: usize| ops[i][16 * x + y];
    on_pairs(name, tri_sig(&["tinv", "finv", "iinv"]), 16, |e| d.label(e), |s, x| {
        let (a, b) = (x[0], x.get(1).copied().unwrap_or((0, 0)));
        match s {
            "tjoin" => (bin(0, a.0, b.0), bin(0, a.1, b.1)),
            "tmeet" => (bin(1, a.0, b.0), bin(1, a.1, b.1)),
            "fjoin" => (bin(2, a.0, b.0), bin(2, a.1, b.1)),
            "fmeet" => (bin(3, a.0, b.0), bin(3, a.1, b.1)),
            "ijoin" => (bin(2, a.0, b.0), bin(3, a.1, b.1)),
            "imeet" => (bin(3, a.0, b.0), bin(2, a.1, b.1)),
            "tinv" => (neg[a.0], neg[a.1]),
            "finv" if literal => (conf[a.0], conf[a.1]),
            "finv" => (conf[a.1], conf[a.0]),
            _ => (a.1, a.0),
        }
    })
}
