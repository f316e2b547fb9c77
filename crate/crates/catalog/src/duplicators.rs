//! Builders for the named duplicators, each with hand-derived witnesses.

use duplicator_engine::{Condition, Duplicator, Mode};
use finite_algebra::builders::lattice_signature;
use term_core::{parse_term, Signature, Term};

use crate::algebras::{bounded_lattice_sig, boolean_sig, dbu_sig, dm_sig, dmu_sig};
use crate::CatalogError;

use Condition::{LPrime, D, L, M, P};

pub(crate) struct DuplicatorSpec {
    pub key: &'static str,
    pub provenance: &'static str,
    /// Algebras the witnesses are verified over.
    pub base_class: &'static [&'static str],
    /// Conditions expected to hold over the base class.
    pub holds: &'static [Condition],
    /// Conditions expected to fail over the base class.
    pub fails: &'static [Condition],
    pub build: fn() -> Result<Duplicator, CatalogError>,
}

pub(crate) const DUPLICATORS: &[DuplicatorSpec] = &[
    DuplicatorSpec {
        key: "Gamma_BLu",
        provenance: "lattices duplicated into unbounded bilattices, L (.) L",
        base_class: &["2_Du", "3_Du", "2x2_Du", "M3", "N5"],
        holds: &[L, M, P],
        fails: &[D],
        build: gamma_blu,
    },
    DuplicatorSpec {
        key: "Gamma_b",
        provenance: "the four bilattice constants on their own",
        base_class: &["2_D"],
        holds: &[],
        fails: &[L, M, P],
        build: gamma_b,
    },
    DuplicatorSpec {
        key: "Gamma_BL",
        provenance: "bounded lattices duplicated into bounded bilattices",
        base_class: &["2_D", "3_D", "M3_b"],
        holds: &[L, M, P],
        fails: &[D],
        build: gamma_bl,
    },
    DuplicatorSpec {
        key: "Gamma_1",
        provenance: "De Morgan algebra 4_DM from coordinatewise operations; recovers every symbol somewhere but cannot swap",
        base_class: &["2_B"],
        holds: &[LPrime],
        fails: &[P],
        build: gamma_1,
    },
    DuplicatorSpec {
        key: "Gamma_2",
        provenance: "De Morgan algebra 4_DM from twisted operations; swaps but loses complement",
        base_class: &["2_B"],
        holds: &[P],
        fails: &[LPrime],
        build: gamma_2,
    },
    DuplicatorSpec {
        key: "Gamma_DBCu",
        provenance: "De Morgan lattices duplicated into bilattices with conflation",
        base_class: &["4_DMu"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_dbcu,
    },
    DuplicatorSpec {
        key: "Gamma_DBC",
        provenance: "De Morgan algebras duplicated into bounded bilattices with conflation",
        base_class: &["4_DM", "3_DM", "2_DM"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_dbc,
    },
    DuplicatorSpec {
        key: "Gamma_TLtf",
        provenance: "distributive bilattices duplicated into trilattices with t- and f-involutions",
        base_class: &["4_DBu"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_tltf,
    },
    DuplicatorSpec {
        key: "Gamma_TLtf_4ary",
        provenance: "four-factor presentation of 16_TLtf over distributive lattices",
        base_class: &["2_Du", "3_Du"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_tltf_4ary,
    },
    DuplicatorSpec {
        key: "Gamma_TLtfi_binary",
        provenance: "binary duplicator producing 256 from 16_DBCu, derived from the definition of 256",
        base_class: &["16_DBCu"],
        holds: &[L, M, P],
        fails: &[],
        build: || gamma_tltfi_binary(false),
    },
    DuplicatorSpec {
        key: "Gamma_TLtfi_binary_literal",
        provenance: "Gamma_TLtfi_binary with the f-involution read as (-a,-b)",
        base_class: &["16_DBCu"],
        holds: &[L, M, P],
        fails: &[],
        build: || gamma_tltfi_binary(true),
    },
    DuplicatorSpec {
        key: "Gamma_TLtfi_4ary",
        provenance: "four-factor duplicator producing 256 from 4_DMu, f-involution reversing the factor order",
        base_class: &["4_DMu"],
        holds: &[L, M, P],
        fails: &[],
        build: || gamma_tltfi_4ary(false),
    },
    DuplicatorSpec {
        key: "Gamma_TLtfi_4ary_literal",
        provenance: "four-factor duplicator over 4_DMu with the displayed f-involution (~x2,~x1,~x4,~x3)",
        base_class: &["4_DMu"],
        holds: &[L, M, P],
        fails: &[],
        build: || gamma_tltfi_4ary(true),
    },
    DuplicatorSpec {
        key: "Gamma_H",
        provenance: "Heyting algebras duplicated into bilattices with knowledge implication",
        base_class: &["2_H", "3_H", "2x2_H"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_h,
    },
    DuplicatorSpec {
        key: "Gamma_H_prime",
        provenance: "Heyting algebras duplicated into bounded Brouwerian bilattices",
        base_class: &["2_H", "3_H", "2x2_H"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_h_prime,
    },
    DuplicatorSpec {
        key: "Gamma_BR",
        provenance: "Brouwerian lattices duplicated into Brouwerian bilattices",
        base_class: &["3_BR"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_br,
    },
    DuplicatorSpec {
        key: "Gamma_bH",
        provenance: "bi-Heyting algebras duplicated into bilattices with truth implication",
        base_class: &["3_bH", "2x2_bH"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_bh,
    },
    DuplicatorSpec {
        key: "Gamma_guard",
        provenance: "bounded distributive lattices duplicated into bilattices with the guard operation",
        base_class: &["2_D"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_guard,
    },
    DuplicatorSpec {
        key: "Gamma_slash",
        provenance: "Kleene algebras duplicated into bilattices with negation by failure",
        base_class: &["3_DM", "2_DM"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_slash,
    },
    DuplicatorSpec {
        key: "Gamma_implic",
        provenance: "Boolean algebras duplicated into implicative bilattices",
        base_class: &["2_B"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_implic,
    },
    DuplicatorSpec {
        key: "Gamma_implic_u",
        provenance: "generalised Boolean algebras duplicated into unbounded implicative bilattices",
        base_class: &["2_GB"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_implic_u,
    },
    DuplicatorSpec {
        key: "Gamma_L",
        provenance: "Boolean algebras duplicated into bilattices with the epistemic operator L",
        base_class: &["2_B"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_l,
    },
    DuplicatorSpec {
        key: "Gamma_RBL",
        provenance: "residuated lattices duplicated into residuated bilattices",
        base_class: &["3_MV"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_rbl,
    },
    DuplicatorSpec {
        key: "Gamma_MBL",
        provenance: "bimodal algebras duplicated into modal bilattices",
        base_class: &["4_BM"],
        holds: &[L, M, P],
        fails: &[],
        build: gamma_mbl,
    },
    DuplicatorSpec {
        key: "Gamma_pBL",
        provenance: "pairs of lattices combined into interlaced pre-bilattices",
        base_class: &["2_Du", "3_Du", "M3"],
        holds: &[L, M, D],
        fails: &[P],
        build: gamma_pbl,
    },
    DuplicatorSpec {
        key: "Gamma_IT",
        provenance: "pairs of pre-bilattices combined into interlaced trilattices",
        base_class: &["4_pDBu", "6_pBL"],
        holds: &[L, M, D],
        fails: &[],
        build: gamma_it,
    },
    DuplicatorSpec {
        key: "Gamma_IT_t",
        provenance: "pairs of bilattices combined into interlaced trilattices with t-involution",
        base_class: &["4_DBu"],
        holds: &[L, M, D],
        fails: &[],
        build: gamma_it_t,
    },
    DuplicatorSpec {
        key: "Gamma_TL4",
        provenance: "four lattices combined into an interlaced trilattice",
        base_class: &["2_Du", "3_Du", "M3"],
        holds: &[L, M, D],
        fails: &[],
        build: gamma_tl4,
    },
];

pub(crate) fn build(key: &str) -> Result<Duplicator, CatalogError> {
    (crate::find_duplicator(key)?.build)()
}

fn sig(symbols: &[(&str, usize)]) -> Signature {
    Signature::new(symbols.iter().copied()).expect("catalog signatures are well formed")
}

/// `v(x, y)` with `v((a,b),(c,d)) = (a,d)`, written with the given join/meet
/// pair acting uniformly and the pair that mixes coordinates.
fn merge(uniform: (&str, &str), mixed: (&str, &str), x: &str, y: &str) -> String {
    let (uj, um) = uniform;
    let (mj, mm) = mixed;
    format!("({uj} ({um} {x} ({mj} {x} {y})) ({um} {y} ({mm} {x} {y})))")
}

fn bl_merge(x: &str, y: &str) -> String {
    merge(("kjoin", "kmeet"), ("tjoin", "tmeet"), x, y)
}

fn with_bl_entries(g: Duplicator, bounded: bool) -> Result<Duplicator, CatalogError> {
    let mut g = g
        .with_entry("tjoin", 2, &["(join x1 x3)", "(meet x2 x4)"])?
        .with_entry("tmeet", 2, &["(meet x1 x3)", "(join x2 x4)"])?
        .with_entry("kjoin", 2, &["(join x1 x3)", "(join x2 x4)"])?
        .with_entry("kmeet", 2, &["(meet x1 x3)", "(meet x2 x4)"])?
        .with_entry("neg", 1, &["x2", "x1"])?;
    if bounded {
        g = with_constants(g)?;
    }
    Ok(g)
}

fn with_constants(g: Duplicator) -> Result<Duplicator, CatalogError> {
    Ok(g.with_entry("t0", 0, &["zero", "one"])?
        .with_entry("t1", 0, &["one", "zero"])?
        .with_entry("k0", 0, &["zero", "zero"])?
        .with_entry("k1", 0, &["one", "one"])?)
}

/// Witnesses shared by every extension of the bilattice duplicator: lattice
/// symbols through the knowledge operations, the merge and the swap.
fn with_bl_witnesses(g: Duplicator, bounded: bool) -> Result<Duplicator, CatalogError> {
    let mut g = g;
    for i in 1..=2 {
        g = g.with_l_witness("join", i, "(kjoin x1 x2)")?.with_l_witness("meet", i, "(kmeet x1 x2)")?;
        if bounded {
            g = g.with_l_witness("zero", i, "k0")?.with_l_witness("one", i, "k1")?;
        }
    }
    Ok(g.with_m_witness(&bl_merge("x1", "x2"))?.with_p_witness(&[2, 1], "(neg x1)")?)
}

fn bl_based(name: &str, base: Signature, bounded: bool) -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new(name, base, 2, Mode::Linked), bounded)?;
    with_bl_witnesses(g, bounded)
}

/// A unary operation read at coordinate 1 by `t` and at coordinate 2 by `neg t`.
fn both_coordinates(
    g: Duplicator,
    symbol: &str,
    first: &str,
) -> Result<Duplicator, CatalogError> {
    Ok(g.with_l_witness(symbol, 1, first)?
        .with_l_witness(symbol, 2, &format!("(neg {first})"))?)
}

fn gamma_blu() -> Result<Duplicator, CatalogError> {
    Ok(bl_based("Gamma_BLu", lattice_signature(), false)?
        .with_targets(&["2_Du", "3_Du", "2x2_Du", "M3", "N5"]))
}

fn gamma_b() -> Result<Duplicator, CatalogError> {
    with_constants(Duplicator::new("Gamma_b", bounded_lattice_sig(), 2, Mode::Linked))
}

fn gamma_bl() -> Result<Duplicator, CatalogError> {
    Ok(bl_based("Gamma_BL", bounded_lattice_sig(), true)?.with_targets(&["2_D", "3_D", "M3_b"]))
}

fn gamma_1() -> Result<Duplicator, CatalogError> {
    Ok(Duplicator::new("Gamma_1", boolean_sig(), 2, Mode::Linked)
        .with_entry("m", 2, &["(meet x1 x3)", "(meet x2 x4)"])?
        .with_entry("j", 2, &["(join x1 x3)", "(join x2 x4)"])?
        .with_entry("n", 1, &["(compl x2)", "(compl x1)"])?
        .with_entry("c0", 0, &["zero", "zero"])?
        .with_entry("c1", 0, &["one", "one"])?
        .with_targets(&["2_B"]))
}

fn gamma_2() -> Result<Duplicator, CatalogError> {
    Ok(Duplicator::new("Gamma_2", boolean_sig(), 2, Mode::Linked)
        .with_entry("m", 2, &["(meet x1 x3)", "(join x2 x4)"])?
        .with_entry("j", 2, &["(join x1 x3)", "(meet x2 x4)"])?
        .with_entry("s", 1, &["x2", "x1"])?
        .with_entry("c0", 0, &["zero", "one"])?
        .with_entry("c1", 0, &["one", "zero"])?
        .with_p_witness(&[2, 1], "(s x1)")?
        .with_targets(&["2_B"]))
}

fn gamma_dbcu() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_DBCu", dmu_sig(), 2, Mode::Linked), false)?
        .with_entry("conf", 1, &["(inv x2)", "(inv x1)"])?;
    let g = with_bl_witnesses(g, false)?
        .with_l_witness("inv", 1, "(conf x1)")?
        .with_l_witness("inv", 2, "(conf x1)")?;
    Ok(g.with_targets(&["4_DMu"]))
}

fn gamma_dbc() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_DBC", dm_sig(), 2, Mode::Linked), true)?
        .with_entry("conf", 1, &["(inv x2)", "(inv x1)"])?;
    let g = with_bl_witnesses(g, true)?
        .with_l_witness("inv", 1, "(conf x1)")?
        .with_l_witness("inv", 2, "(conf x1)")?;
    Ok(g.with_targets(&["4_DM", "3_DM", "2_DM"]))
}

fn gamma_tltf() -> Result<Duplicator, CatalogError> {
    let mut g = Duplicator::new("Gamma_TLtf", dbu_sig(), 2, Mode::Linked)
        .with_entry("tjoin", 2, &["(tjoin x1 x3)", "(tjoin x2 x4)"])?
        .with_entry("tmeet", 2, &["(tmeet x1 x3)", "(tmeet x2 x4)"])?
        .with_entry("ijoin", 2, &["(kjoin x1 x3)", "(kjoin x2 x4)"])?
        .with_entry("imeet", 2, &["(kmeet x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("fmeet", 2, &["(kmeet x1 x3)", "(kjoin x2 x4)"])?
        .with_entry("fjoin", 2, &["(kjoin x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("tinv", 1, &["(neg x1)", "(neg x2)"])?
        .with_entry("finv", 1, &["x2", "x1"])?;
    for i in 1..=2 {
        g = g
            .with_l_witness("tjoin", i, "(tjoin x1 x2)")?
            .with_l_witness("tmeet", i, "(tmeet x1 x2)")?
            .with_l_witness("kjoin", i, "(ijoin x1 x2)")?
            .with_l_witness("kmeet", i, "(imeet x1 x2)")?
            .with_l_witness("neg", i, "(tinv x1)")?;
    }
    let v = merge(("ijoin", "imeet"), ("fjoin", "fmeet"), "x1", "x2");
    Ok(g.with_m_witness(&v)?.with_p_witness(&[2, 1], "(finv x1)")?.with_targets(&["4_DBu"]))
}

/// Four-coordinate merge for entries named `tjoin…imeet`, where `uniform` acts
/// the same on every coordinate, `t` joins on coordinates 1 and 3 and `s`
/// joins on coordinates 1 and 2.
fn merge4(uniform: (&str, &str), t: (&str, &str), s: (&str, &str)) -> String {
    let st = |x: &str, y: &str| merge(uniform, t, x, y);
    let ss = |x: &str, y: &str| merge(uniform, s, x, y);
    // singleton selectors from the sets {1,3} and {1,2}
    let u1 = |x: &str, y: &str| st(&ss(x, y), y);
    let u2 = |x: &str, y: &str| ss(&st(y, x), y);
    let u3 = |x: &str, y: &str| st(&ss(y, x), y);
    u1("x1", &u2("x2", &u3("x3", "x4")))
}

/// Permutation witnesses from the merge: `swap13` exchanges coordinates 1,3 and 2,4
/// and `swap12` exchanges 1,2 and 3,4.
fn with_permutations4(
    g: Duplicator,
    v: &str,
    swap12: &str,
    swap13: &str,
) -> Result<Duplicator, CatalogError> {
    let gsig = g.gamma_signature()?;
    let v = parse_term(v, &gsig)?;
    let x = Term::var(1);
    let a = Term::app(swap12, vec![x.clone()]);
    let b = Term::app(swap12, vec![Term::app(swap13, vec![x.clone()])]);
    let transposition = v.substitute(&[a.clone(), a.clone(), x.clone(), x]);
    let cycle = v.substitute(&[a.clone(), b.clone(), a, b]);
    Ok(g.with_m_witness(&v.to_string())?
        .with_p_witness(&[2, 1, 3, 4], &transposition.to_string())?
        .with_p_witness(&[2, 3, 4, 1], &cycle.to_string())?)
}

fn lattice_entries4(g: Duplicator, names: [&str; 6]) -> Result<Duplicator, CatalogError> {
    // tjoin, tmeet, sjoin, smeet, ujoin, umeet
    Ok(g.with_entry(names[0], 2, &["(join x1 x5)", "(meet x2 x6)", "(join x3 x7)", "(meet x4 x8)"])?
        .with_entry(names[1], 2, &["(meet x1 x5)", "(join x2 x6)", "(meet x3 x7)", "(join x4 x8)"])?
        .with_entry(names[2], 2, &["(join x1 x5)", "(join x2 x6)", "(meet x3 x7)", "(meet x4 x8)"])?
        .with_entry(names[3], 2, &["(meet x1 x5)", "(meet x2 x6)", "(join x3 x7)", "(join x4 x8)"])?
        .with_entry(names[4], 2, &["(join x1 x5)", "(join x2 x6)", "(join x3 x7)", "(join x4 x8)"])?
        .with_entry(names[5], 2, &["(meet x1 x5)", "(meet x2 x6)", "(meet x3 x7)", "(meet x4 x8)"])?)
}

fn with_uniform_witnesses4(
    mut g: Duplicator,
    join: &str,
    meet: &str,
) -> Result<Duplicator, CatalogError> {
    for i in 1..=4 {
        g = g
            .with_l_witness("join", i, &format!("({join} x1 x2)"))?
            .with_l_witness("meet", i, &format!("({meet} x1 x2)"))?;
    }
    Ok(g)
}

fn gamma_tltf_4ary() -> Result<Duplicator, CatalogError> {
    let g = Duplicator::new("Gamma_TLtf_4ary", lattice_signature(), 4, Mode::Linked);
    let g = lattice_entries4(g, ["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet"])?
        .with_entry("tinv", 1, &["x2", "x1", "x4", "x3"])?
        .with_entry("finv", 1, &["x3", "x4", "x1", "x2"])?;
    let g = with_uniform_witnesses4(g, "ijoin", "imeet")?;
    let v = merge4(("ijoin", "imeet"), ("tjoin", "tmeet"), ("fjoin", "fmeet"));
    Ok(with_permutations4(g, &v, "tinv", "finv")?.with_targets(&["2_Du", "3_Du"]))
}

fn gamma_tltfi_binary(literal: bool) -> Result<Duplicator, CatalogError> {
    let name = if literal { "Gamma_TLtfi_binary_literal" } else { "Gamma_TLtfi_binary" };
    let base = dbu_sig().with_symbol("conf", 1)?;
    let finv: [&str; 2] =
        if literal { ["(conf x1)", "(conf x2)"] } else { ["(conf x2)", "(conf x1)"] };
    let mut g = Duplicator::new(name, base, 2, Mode::Linked)
        .with_entry("tjoin", 2, &["(tjoin x1 x3)", "(tjoin x2 x4)"])?
        .with_entry("tmeet", 2, &["(tmeet x1 x3)", "(tmeet x2 x4)"])?
        .with_entry("fjoin", 2, &["(kjoin x1 x3)", "(kjoin x2 x4)"])?
        .with_entry("fmeet", 2, &["(kmeet x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("ijoin", 2, &["(kjoin x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("imeet", 2, &["(kmeet x1 x3)", "(kjoin x2 x4)"])?
        .with_entry("tinv", 1, &["(neg x1)", "(neg x2)"])?
        .with_entry("finv", 1, &finv)?
        .with_entry("iinv", 1, &["x2", "x1"])?;
    for i in 1..=2 {
        g = g
            .with_l_witness("tjoin", i, "(tjoin x1 x2)")?
            .with_l_witness("tmeet", i, "(tmeet x1 x2)")?
            .with_l_witness("kjoin", i, "(fjoin x1 x2)")?
            .with_l_witness("kmeet", i, "(fmeet x1 x2)")?
            .with_l_witness("neg", i, "(tinv x1)")?
            .with_l_witness("conf", i, "(finv x1)")?;
    }
    let v = merge(("fjoin", "fmeet"), ("ijoin", "imeet"), "x1", "x2");
    Ok(g.with_m_witness(&v)?.with_p_witness(&[2, 1], "(iinv x1)")?.with_targets(&["16_DBCu"]))
}

fn gamma_tltfi_4ary(literal: bool) -> Result<Duplicator, CatalogError> {
    let name = if literal { "Gamma_TLtfi_4ary_literal" } else { "Gamma_TLtfi_4ary" };
    let finv: [&str; 4] = if literal {
        ["(inv x2)", "(inv x1)", "(inv x4)", "(inv x3)"]
    } else {
        ["(inv x4)", "(inv x3)", "(inv x2)", "(inv x1)"]
    };
    let g = Duplicator::new(name, dmu_sig(), 4, Mode::Linked);
    let mut g = lattice_entries4(g, ["tjoin", "tmeet", "ijoin", "imeet", "fjoin", "fmeet"])?
        .with_entry("tinv", 1, &["x2", "x1", "x4", "x3"])?
        .with_entry("finv", 1, &finv)?
        .with_entry("iinv", 1, &["x3", "x4", "x1", "x2"])?;
    g = with_uniform_witnesses4(g, "fjoin", "fmeet")?;
    for i in 1..=4 {
        g = g.with_l_witness("inv", i, "(finv x1)")?;
    }
    let v = merge4(("fjoin", "fmeet"), ("tjoin", "tmeet"), ("ijoin", "imeet"));
    Ok(with_permutations4(g, &v, "tinv", "iinv")?.with_targets(&["4_DMu"]))
}

fn heyting_sig() -> Signature {
    sig(&[("join", 2), ("meet", 2), ("zero", 0), ("one", 0), ("impl", 2)])
}

fn gamma_h() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_H", heyting_sig(), 2, Mode::Linked), true)?
        .with_entry("kimpl", 2, &["(impl x1 x3)", "(impl x2 x4)"])?;
    Ok(with_bl_witnesses(g, true)?
        .with_l_witness("impl", 1, "(kimpl x1 x2)")?
        .with_l_witness("impl", 2, "(kimpl x1 x2)")?
        .with_targets(&["2_H", "3_H", "2x2_H"]))
}

fn gamma_h_prime() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_H_prime", heyting_sig(), 2, Mode::Linked), true)?
        .with_entry("kimpl", 2, &["(impl x1 x3)", "(meet x1 x4)"])?;
    let g = with_bl_witnesses(g, true)?;
    Ok(both_coordinates(g, "impl", "(kimpl x1 x2)")?.with_targets(&["2_H", "3_H", "2x2_H"]))
}

fn gamma_br() -> Result<Duplicator, CatalogError> {
    let base = sig(&[("join", 2), ("meet", 2), ("impl", 2)]);
    let g = with_bl_entries(Duplicator::new("Gamma_BR", base, 2, Mode::Linked), false)?
        .with_entry("kimpl", 2, &["(impl x1 x3)", "(meet x1 x4)"])?;
    let g = with_bl_witnesses(g, false)?;
    Ok(both_coordinates(g, "impl", "(kimpl x1 x2)")?.with_targets(&["3_BR"]))
}

fn gamma_bh() -> Result<Duplicator, CatalogError> {
    let base = heyting_sig().with_symbol("coimpl", 2)?;
    let g = with_bl_entries(Duplicator::new("Gamma_bH", base, 2, Mode::Linked), true)?
        .with_entry("timpl", 2, &["(impl x1 x3)", "(coimpl x2 x4)"])?;
    Ok(with_bl_witnesses(g, true)?
        .with_l_witness("impl", 1, "(timpl x1 x2)")?
        .with_l_witness("impl", 2, "(neg (timpl x1 x2))")?
        .with_l_witness("coimpl", 1, "(neg (timpl x1 x2))")?
        .with_l_witness("coimpl", 2, "(timpl x1 x2)")?
        .with_targets(&["3_bH", "2x2_bH"]))
}

fn gamma_guard() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(
        Duplicator::new("Gamma_guard", bounded_lattice_sig(), 2, Mode::Linked),
        true,
    )?
    .with_entry("guard", 2, &["(meet x1 x3)", "(meet x1 x4)"])?;
    Ok(with_bl_witnesses(g, true)?.with_targets(&["2_D"]))
}

fn gamma_slash() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_slash", dm_sig(), 2, Mode::Linked), true)?
        .with_entry("slash", 1, &["(inv x1)", "x2"])?;
    let g = with_bl_witnesses(g, true)?;
    Ok(both_coordinates(g, "inv", "(slash x1)")?.with_targets(&["3_DM", "2_DM"]))
}

fn implicative(name: &str) -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new(name, boolean_sig(), 2, Mode::Linked), true)?
        .with_entry("imp", 2, &["(join (compl x1) x3)", "(meet x1 x4)"])?;
    let g = with_bl_witnesses(g, true)?;
    // x ⊃ 0_k = (a', 0)
    both_coordinates(g, "compl", "(imp x1 k0)")
}

fn gamma_implic() -> Result<Duplicator, CatalogError> {
    Ok(implicative("Gamma_implic")?.with_targets(&["2_B"]))
}

fn gamma_implic_u() -> Result<Duplicator, CatalogError> {
    let base = sig(&[("join", 2), ("meet", 2), ("impl", 2)]);
    let g = with_bl_entries(Duplicator::new("Gamma_implic_u", base, 2, Mode::Linked), false)?
        .with_entry("imp", 2, &["(impl x1 x3)", "(meet x1 x4)"])?;
    let g = with_bl_witnesses(g, false)?;
    Ok(both_coordinates(g, "impl", "(imp x1 x2)")?.with_targets(&["2_GB"]))
}

fn gamma_l() -> Result<Duplicator, CatalogError> {
    let g = with_bl_entries(Duplicator::new("Gamma_L", boolean_sig(), 2, Mode::Linked), true)?
        .with_entry("know", 1, &["x1", "(compl x1)"])?;
    Ok(with_bl_witnesses(g, true)?
        .with_l_witness("compl", 1, "(neg (know x1))")?
        .with_l_witness("compl", 2, "(know x1)")?
        .with_targets(&["2_B"]))
}

fn gamma_rbl() -> Result<Duplicator, CatalogError> {
    let base = sig(&[("join", 2), ("meet", 2), ("mul", 2), ("ldiv", 2), ("rdiv", 2)]);
    let g = with_bl_entries(Duplicator::new("Gamma_RBL", base, 2, Mode::Linked), false)?
        .with_entry("ldiv", 2, &["(ldiv x1 x3)", "(mul x4 x1)"])?
        .with_entry("rdiv", 2, &["(rdiv x1 x3)", "(mul x3 x2)"])?;
    let g = with_bl_witnesses(g, false)?;
    let g = both_coordinates(g, "ldiv", "(ldiv x1 x2)")?;
    let g = both_coordinates(g, "rdiv", "(rdiv x1 x2)")?;
    // the second coordinate of ldiv(δb, δa) is a·b
    Ok(g.with_l_witness("mul", 1, "(neg (ldiv x2 x1))")?
        .with_l_witness("mul", 2, "(ldiv x2 x1)")?
        .with_targets(&["3_MV"]))
}

fn gamma_mbl() -> Result<Duplicator, CatalogError> {
    let base = sig(&[
        ("join", 2),
        ("meet", 2),
        ("compl", 1),
        ("boxp", 1),
        ("boxm", 1),
        ("zero", 0),
        ("one", 0),
    ]);
    let g = with_bl_entries(Duplicator::new("Gamma_MBL", base, 2, Mode::Linked), true)?
        .with_entry("imp", 2, &["(join (compl x1) x3)", "(meet x1 x4)"])?
        .with_entry("box", 1, &["(meet (boxp x1) (boxm (compl x2)))", "(compl (boxp (compl x2)))"])?;
    let g = with_bl_witnesses(g, true)?;
    let g = both_coordinates(g, "compl", "(imp x1 k0)")?;
    // box(a, 0) = (□+a, 0) and box(1, a') = (□-a, …)
    let g = both_coordinates(g, "boxp", &format!("(box {})", bl_merge("x1", "k0")))?;
    let one_compl = bl_merge("k1", "(neg (imp x1 k0))");
    let g = both_coordinates(g, "boxm", &format!("(box {one_compl})"))?;
    Ok(g.with_targets(&["4_BM"]))
}

fn gamma_pbl() -> Result<Duplicator, CatalogError> {
    let mut g = Duplicator::new("Gamma_pBL", lattice_signature(), 2, Mode::Disjoint)
        .with_entry("tjoin", 2, &["(join x1 x3)", "(meet x2 x4)"])?
        .with_entry("tmeet", 2, &["(meet x1 x3)", "(join x2 x4)"])?
        .with_entry("kjoin", 2, &["(join x1 x3)", "(join x2 x4)"])?
        .with_entry("kmeet", 2, &["(meet x1 x3)", "(meet x2 x4)"])?;
    for i in 1..=2 {
        g = g.with_l_witness("join", i, "(kjoin x1 x2)")?.with_l_witness("meet", i, "(kmeet x1 x2)")?;
    }
    Ok(g.with_m_witness(&bl_merge("x1", "x2"))?.with_targets(&["2_Du", "3_Du", "M3"]))
}

fn it_entries(name: &str, base: Signature) -> Result<Duplicator, CatalogError> {
    let mut g = Duplicator::new(name, base, 2, Mode::Disjoint)
        .with_entry("tmeet", 2, &["(tmeet x1 x3)", "(tmeet x2 x4)"])?
        .with_entry("tjoin", 2, &["(tjoin x1 x3)", "(tjoin x2 x4)"])?
        .with_entry("fjoin", 2, &["(kjoin x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("fmeet", 2, &["(kmeet x1 x3)", "(kjoin x2 x4)"])?
        .with_entry("imeet", 2, &["(kmeet x1 x3)", "(kmeet x2 x4)"])?
        .with_entry("ijoin", 2, &["(kjoin x1 x3)", "(kjoin x2 x4)"])?;
    for i in 1..=2 {
        g = g
            .with_l_witness("tjoin", i, "(tjoin x1 x2)")?
            .with_l_witness("tmeet", i, "(tmeet x1 x2)")?
            .with_l_witness("kjoin", i, "(ijoin x1 x2)")?
            .with_l_witness("kmeet", i, "(imeet x1 x2)")?;
    }
    let v = merge(("ijoin", "imeet"), ("fjoin", "fmeet"), "x1", "x2");
    Ok(g.with_m_witness(&v)?)
}

fn gamma_it() -> Result<Duplicator, CatalogError> {
    let base = sig(&[("tjoin", 2), ("tmeet", 2), ("kjoin", 2), ("kmeet", 2)]);
    Ok(it_entries("Gamma_IT", base)?.with_targets(&["4_pDBu", "6_pBL"]))
}

fn gamma_it_t() -> Result<Duplicator, CatalogError> {
    let mut g = it_entries("Gamma_IT_t", dbu_sig())?
        .with_entry("tinv", 1, &["(neg x1)", "(neg x2)"])?;
    for i in 1..=2 {
        g = g.with_l_witness("neg", i, "(tinv x1)")?;
    }
    Ok(g.with_targets(&["4_DBu"]))
}

fn gamma_tl4() -> Result<Duplicator, CatalogError> {
    let g = Duplicator::new("Gamma_TL4", lattice_signature(), 4, Mode::Disjoint);
    let g = lattice_entries4(g, ["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet"])?;
    let g = with_uniform_witnesses4(g, "ijoin", "imeet")?;
    let v = merge4(("ijoin", "imeet"), ("tjoin", "tmeet"), ("fjoin", "fmeet"));
    Ok(g.with_m_witness(&v)?.with_targets(&["2_Du", "3_Du", "M3"]))
}
