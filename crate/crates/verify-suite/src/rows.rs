//! The rows of both tables.

use catalog::duplicator_profile;
use duplicator_engine::{CheckMode, Condition, Duplicator};
use finite_algebra::FiniteAlgebra;

use crate::claims::{Claim, ClaimSpec, Construction, ResiduumExpectation, Subjects};
use crate::{RowSpec, Scope, VerifyError};

use Condition::{LPrime, D, P};
use Construction::Catalog;

const TRI_LATTICE: &[&str] = &["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet"];
const TRI_LATTICE_T: &[&str] = &["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet", "tinv"];
const TWO_TRI: &[&str] = &["2^++", "2^+-", "2^-+", "2^--"];
const FOUR_TRI: &[&str] = &["4^+", "4^-"];

/// `kimpl` of `Gamma_H_prime` in the language of `Gamma_H`: the merge of
/// `x →k y` with `¬x ∧k y`.
const H_TO_H_PRIME: &str = "(kjoin (kmeet (kimpl x1 x2) (tjoin (kimpl x1 x2) (kmeet (neg x1) x2))) \
     (kmeet (kmeet (neg x1) x2) (tmeet (kimpl x1 x2) (kmeet (neg x1) x2))))";
/// `kimpl` of `Gamma_H` in the language of `Gamma_H_prime`: the merge of
/// `x ⊃ y` with `¬(¬x ⊃ ¬y)`.
const H_PRIME_TO_H: &str = "(kjoin (kmeet (kimpl x1 x2) (tjoin (kimpl x1 x2) (neg (kimpl (neg x1) (neg x2))))) \
     (kmeet (neg (kimpl (neg x1) (neg x2))) (tmeet (kimpl x1 x2) (neg (kimpl (neg x1) (neg x2))))))";
const K_IMPLICATION_FROM_T: &str =
    "(kjoin (kmeet (timpl x1 x2) t1) (kmeet (neg (timpl (neg x1) (neg x2))) t0))";

fn row(
    id: &'static str,
    scope: Scope,
    duplicator: &'static str,
    suite: &'static str,
    products: Vec<Construction>,
    extra: Vec<ClaimSpec>,
) -> RowSpec {
    let base_class = duplicator_profile(duplicator)
        .expect("row duplicators are catalog keys")
        .base_class;
    RowSpec { id, scope, duplicator, base_class, products, suite, extra }
}

fn powers(duplicator: &'static str, bases: &[&'static str]) -> Vec<Construction> {
    bases.iter().map(|b| Construction::power(duplicator, b)).collect()
}

fn claim(id: &str, claim: Claim) -> ClaimSpec {
    ClaimSpec::new(id, claim)
}

fn iso(id: &str, left: Construction, right: Construction) -> ClaimSpec {
    claim(id, Claim::Isomorphic { left, right, on: None, expect: true })
}

fn iso_on(id: &str, left: Construction, right: Construction, on: &'static [&'static str]) -> ClaimSpec {
    claim(id, Claim::Isomorphic { left, right, on: Some(on), expect: true })
}

fn suite(id: &str, algebra: Construction, suite: &'static str) -> ClaimSpec {
    claim(id, Claim::Suite { algebra, suite, expect: true })
}

/// The profile of a catalog duplicator other than the row's own.
fn profile_claim(id: &str, duplicator: &'static str, mode: Option<CheckMode>) -> ClaimSpec {
    let p = duplicator_profile(duplicator).expect("catalog duplicator");
    claim(
        id,
        Claim::Conditions {
            duplicator,
            class: p.base_class,
            holds: p.holds,
            fails: p.fails,
            mode,
        },
    )
}

fn conditions(
    id: &str,
    duplicator: &'static str,
    class: &[&'static str],
    holds: &[Condition],
    fails: &[Condition],
    mode: Option<CheckMode>,
) -> ClaimSpec {
    claim(
        id,
        Claim::Conditions {
            duplicator,
            class: class.to_vec(),
            holds: holds.to_vec(),
            fails: fails.to_vec(),
            mode,
        },
    )
}

fn op(b: &FiniteAlgebra, symbol: &str, args: &[usize]) -> usize {
    b.apply_named(symbol, args)
}

pub fn table1() -> Vec<RowSpec> {
    vec![
        row(
            "BL/L",
            Scope::FiniteWitness,
            "Gamma_BL",
            "bounded-bilattice",
            powers("Gamma_BL", &["2_D", "3_D", "M3_b"]),
            vec![
                iso("iso/4_DB", Construction::power("Gamma_BL", "2_D"), Catalog("4_DB")),
                suite("unbounded/M3", Construction::power("Gamma_BLu", "M3"), "bilattice"),
                suite("unbounded/N5", Construction::power("Gamma_BLu", "N5"), "bilattice"),
                profile_claim("Gamma_b", "Gamma_b", None),
            ],
        ),
        row(
            "DB/D",
            Scope::Exact,
            "Gamma_BLu",
            "distributive-bilattice",
            powers("Gamma_BLu", &["2_Du", "3_Du", "2x2_Du"]),
            vec![
                iso("iso/4_DBu", Construction::power("Gamma_BLu", "2_Du"), Catalog("4_DBu")),
                claim("congruences/2_Du", Claim::CongruenceTransfer { duplicator: "Gamma_BLu", base: "2_Du" }),
                claim("congruences/3_Du", Claim::CongruenceTransfer { duplicator: "Gamma_BLu", base: "3_Du" }),
                claim("si/2_Du", Claim::SiTransfer { duplicator: "Gamma_BLu", base: "2_Du" }),
                claim("si/3_Du", Claim::SiTransfer { duplicator: "Gamma_BLu", base: "3_Du" }),
                claim(
                    "free",
                    Claim::FreeTransfer {
                        duplicator: "Gamma_BLu",
                        target_class: &["4_DBu"],
                        base_class: &["2_Du"],
                        k: 1,
                    },
                ),
                claim(
                    "smoke",
                    Claim::Smoke {
                        duplicator: "Gamma_BLu",
                        pairs: &[("2_Du", "2_Du"), ("2_Du", "3_Du"), ("3_Du", "2_Du"), ("3_Du", "3_Du")],
                    },
                ),
            ],
        ),
        row(
            "DBC/DM",
            Scope::Exact,
            "Gamma_DBC",
            "bounded-conflation",
            powers("Gamma_DBC", &["4_DM", "3_DM", "2_DM"]),
            vec![
                iso("iso/16_DBCu", Construction::power("Gamma_DBC", "4_DM"), Catalog("16_DBCu")),
                profile_claim("Gamma_DBCu", "Gamma_DBCu", None),
                suite("unbounded/4_DMu", Construction::power("Gamma_DBCu", "4_DMu"), "conflation"),
                iso("unbounded/iso", Construction::power("Gamma_DBCu", "4_DMu"), Catalog("16_DBCu")),
                conditions("Gamma_1", "Gamma_1", &["2_B"], &[LPrime], &[P], Some(CheckMode::Search)),
                conditions("Gamma_2", "Gamma_2", &["2_B"], &[P], &[LPrime], Some(CheckMode::Search)),
            ],
        ),
        row(
            "TLtf/DBu",
            Scope::Exact,
            "Gamma_TLtf",
            "trilattice-tf",
            powers("Gamma_TLtf", &["4_DBu"]),
            vec![
                iso("iso/16_TLtf", Construction::power("Gamma_TLtf", "4_DBu"), Catalog("16_TLtf")),
                claim(
                    "separation/sampled",
                    Claim::Separation {
                        subjects: Subjects::SampledSubalgebras(TWO_TRI),
                        class: TWO_TRI,
                        symbols: TRI_LATTICE,
                    },
                ),
                claim(
                    "separation/16_TLtf",
                    Claim::Separation {
                        subjects: Subjects::Algebra(Catalog("16_TLtf")),
                        class: TWO_TRI,
                        symbols: TRI_LATTICE,
                    },
                ),
            ],
        ),
        row(
            "TLtfi/DBCu",
            Scope::Exact,
            "Gamma_TLtfi_binary",
            "trilattice-tfi",
            powers("Gamma_TLtfi_binary", &["16_DBCu"]),
            vec![
                iso("iso/binary-256", Construction::power("Gamma_TLtfi_binary", "16_DBCu"), Catalog("256")),
                iso("iso/4ary-256", Construction::power("Gamma_TLtfi_4ary", "4_DMu"), Catalog("256")),
                iso(
                    "iso/binary-4ary",
                    Construction::power("Gamma_TLtfi_binary", "16_DBCu"),
                    Construction::power("Gamma_TLtfi_4ary", "4_DMu"),
                ),
                claim(
                    "literal/suite",
                    Claim::Suite {
                        algebra: Construction::power("Gamma_TLtfi_binary_literal", "16_DBCu"),
                        suite: "trilattice-tfi",
                        expect: false,
                    },
                ),
                claim(
                    "literal/not-iso",
                    Claim::Isomorphic {
                        left: Catalog("256_literal"),
                        right: Catalog("256"),
                        on: None,
                        expect: false,
                    },
                ),
            ],
        ),
        row(
            "BLk/H",
            Scope::FiniteWitness,
            "Gamma_H",
            "bilattice-k-implication",
            powers("Gamma_H", &["2_H", "3_H", "2x2_H"]),
            vec![
                claim(
                    "formula/kimpl",
                    Claim::Formula {
                        algebra: Construction::power("Gamma_H", "3_H"),
                        base: "3_H",
                        op: "kimpl",
                        formula: |b, x| {
                            (op(b, "impl", &[x[0].0, x[1].0]), op(b, "impl", &[x[0].1, x[1].1]))
                        },
                        expected: 81,
                    },
                ),
                claim("residuum/2_H", Claim::Residuum { algebra: "2_H", meet: "meet", expect: ResiduumExpectation::Matches("impl") }),
                claim("residuum/3_H", Claim::Residuum { algebra: "3_H", meet: "meet", expect: ResiduumExpectation::Matches("impl") }),
                claim("residuum/2x2_H", Claim::Residuum { algebra: "2x2_H", meet: "meet", expect: ResiduumExpectation::Matches("impl") }),
                claim("residuum/N5", Claim::Residuum { algebra: "N5", meet: "meet", expect: ResiduumExpectation::NoAdjoint }),
                profile_claim("Gamma_H_prime", "Gamma_H_prime", None),
                suite(
                    "Gamma_H_prime/3_H",
                    Construction::power("Gamma_H_prime", "3_H"),
                    "bounded-brouwerian-bilattice",
                ),
                claim(
                    "term-equivalence/H-to-H'",
                    Claim::TermDefinable {
                        from: "Gamma_H",
                        to: "Gamma_H_prime",
                        class: &["2_H", "3_H", "2x2_H"],
                        op: "kimpl",
                        term: H_TO_H_PRIME,
                    },
                ),
                claim(
                    "term-equivalence/H'-to-H",
                    Claim::TermDefinable {
                        from: "Gamma_H_prime",
                        to: "Gamma_H",
                        class: &["2_H", "3_H", "2x2_H"],
                        op: "kimpl",
                        term: H_PRIME_TO_H,
                    },
                ),
                profile_claim("Gamma_BR", "Gamma_BR", None),
                suite("Gamma_BR/3_BR", Construction::power("Gamma_BR", "3_BR"), "brouwerian-bilattice"),
            ],
        ),
        row(
            "BLt/bH",
            Scope::FiniteWitness,
            "Gamma_bH",
            "bilattice-t-implication",
            powers("Gamma_bH", &["3_bH", "2x2_bH"]),
            vec![claim(
                "formula/kimpl-from-timpl",
                Claim::ResiduumFormula {
                    algebra: Construction::power("Gamma_bH", "2x2_bH"),
                    meet: "kmeet",
                    term: K_IMPLICATION_FROM_T,
                },
            )],
        ),
        row(
            "guard/D",
            Scope::Exact,
            "Gamma_guard",
            "guard-bilattice",
            powers("Gamma_guard", &["2_D"]),
            vec![
                iso("iso/4_guard", Construction::power("Gamma_guard", "2_D"), Catalog("4_guard")),
                claim(
                    "formula/guard",
                    Claim::Formula {
                        algebra: Catalog("4_guard"),
                        base: "2_D",
                        op: "guard",
                        formula: |b, x| {
                            (op(b, "meet", &[x[0].0, x[1].0]), op(b, "meet", &[x[0].0, x[1].1]))
                        },
                        expected: 16,
                    },
                ),
            ],
        ),
        row(
            "slash/KL",
            Scope::Exact,
            "Gamma_slash",
            "slash-bilattice",
            powers("Gamma_slash", &["3_DM", "2_DM"]),
            vec![
                iso("iso/9_slash", Construction::power("Gamma_slash", "3_DM"), Catalog("9_slash")),
                iso("iso/4_slash", Construction::power("Gamma_slash", "2_DM"), Catalog("4_slash")),
                claim(
                    "formula/slash",
                    Claim::Formula {
                        algebra: Catalog("9_slash"),
                        base: "3_DM",
                        op: "slash",
                        formula: |b, x| (op(b, "inv", &[x[0].0]), x[0].1),
                        expected: 9,
                    },
                ),
            ],
        ),
        row(
            "implicative/B",
            Scope::Exact,
            "Gamma_implic",
            "implicative-bilattice",
            powers("Gamma_implic", &["2_B"]),
            vec![
                iso("iso/4_implic", Construction::power("Gamma_implic", "2_B"), Catalog("4_implic")),
                claim(
                    "formula/imp",
                    Claim::Formula {
                        algebra: Catalog("4_implic"),
                        base: "2_B",
                        op: "imp",
                        formula: |b, x| {
                            let c = op(b, "compl", &[x[0].0]);
                            (op(b, "join", &[c, x[1].0]), op(b, "meet", &[x[0].0, x[1].1]))
                        },
                        expected: 16,
                    },
                ),
                profile_claim("Gamma_implic_u", "Gamma_implic_u", None),
                suite(
                    "Gamma_implic_u/2_GB",
                    Construction::power("Gamma_implic_u", "2_GB"),
                    "implicative-bilattice-u",
                ),
                iso(
                    "Gamma_implic_u/iso",
                    Construction::power("Gamma_implic_u", "2_GB"),
                    Catalog("4_implic_u"),
                ),
            ],
        ),
        row(
            "Moore/B",
            Scope::Exact,
            "Gamma_L",
            "moore-bilattice",
            powers("Gamma_L", &["2_B"]),
            vec![
                iso("iso/4_L", Construction::power("Gamma_L", "2_B"), Catalog("4_L")),
                claim(
                    "formula/know",
                    Claim::Formula {
                        algebra: Catalog("4_L"),
                        base: "2_B",
                        op: "know",
                        formula: |b, x| (x[0].0, op(b, "compl", &[x[0].0])),
                        expected: 4,
                    },
                ),
            ],
        ),
        row(
            "RBL/RL",
            Scope::FiniteWitness,
            "Gamma_RBL",
            "residuated-bilattice",
            powers("Gamma_RBL", &["3_MV"]),
            vec![],
        ),
        row(
            "MBL/BM",
            Scope::FiniteWitness,
            "Gamma_MBL",
            "modal-bilattice",
            powers("Gamma_MBL", &["4_BM"]),
            vec![],
        ),
    ]
}

pub fn table2() -> Vec<RowSpec> {
    vec![
        row(
            "TLtf/Du^4",
            Scope::Exact,
            "Gamma_TLtf_4ary",
            "trilattice-tf",
            powers("Gamma_TLtf_4ary", &["2_Du", "3_Du"]),
            vec![iso("iso/16_TLtf", Construction::power("Gamma_TLtf_4ary", "2_Du"), Catalog("16_TLtf"))],
        ),
        row(
            "TLtfi/DMu^4",
            Scope::Exact,
            "Gamma_TLtfi_4ary",
            "trilattice-tfi",
            powers("Gamma_TLtfi_4ary", &["4_DMu"]),
            vec![
                iso("iso/256", Construction::power("Gamma_TLtfi_4ary", "4_DMu"), Catalog("256")),
                claim(
                    "literal/suite",
                    Claim::Suite {
                        algebra: Construction::power("Gamma_TLtfi_4ary_literal", "4_DMu"),
                        suite: "trilattice-tfi",
                        expect: false,
                    },
                ),
                iso(
                    "literal/iso",
                    Construction::power("Gamma_TLtfi_4ary_literal", "4_DMu"),
                    Catalog("256_literal"),
                ),
            ],
        ),
        row(
            "pBL/LxL",
            Scope::FiniteWitness,
            "Gamma_pBL",
            "interlaced-pre-bilattice",
            vec![
                Construction::mixed("Gamma_pBL", &["2_Du", "3_Du"]),
                Construction::mixed("Gamma_pBL", &["3_Du", "M3"]),
                Construction::mixed("Gamma_pBL", &["N5", "M3"]),
            ],
            vec![conditions("Gamma_BLu", "Gamma_BLu", &[], &[], &[D], None)],
        ),
        row(
            "IT/pBLxpBL",
            Scope::FiniteWitness,
            "Gamma_IT",
            "interlaced-trilattice",
            vec![
                Construction::mixed("Gamma_IT", &["4_pDBu", "6_pBL"]),
                Construction::mixed("Gamma_IT", &["6_pBL", "4_pDBu"]),
            ],
            vec![],
        ),
        row(
            "TL/D^4",
            Scope::Exact,
            "Gamma_TL4",
            "distributive-trilattice",
            vec![
                Construction::mixed("Gamma_TL4", &["2_Du", "2_Du", "2_Du", "2_Du"]),
                Construction::mixed("Gamma_TL4", &["2_Du", "3_Du", "2_Du", "3_Du"]),
            ],
            vec![
                iso_on(
                    "iso/16_TLtf",
                    Construction::mixed("Gamma_TL4", &["2_Du", "2_Du", "2_Du", "2_Du"]),
                    Catalog("16_TLtf"),
                    TRI_LATTICE,
                ),
                suite(
                    "interlaced/M3",
                    Construction::mixed("Gamma_TL4", &["M3", "2_Du", "3_Du", "2_Du"]),
                    "interlaced-trilattice",
                ),
            ],
        ),
        row(
            "ITt/BLuxBLu",
            Scope::FiniteWitness,
            "Gamma_IT_t",
            "interlaced-trilattice-t",
            vec![
                Construction::mixed("Gamma_IT_t", &["4_DBu", "9_DB"]),
                Construction::mixed("Gamma_IT_t", &["9_DB", "4_DBu"]),
            ],
            vec![],
        ),
        row(
            "TLt/DBuxDBu",
            Scope::Exact,
            "Gamma_IT_t",
            "distributive-trilattice-t",
            vec![Construction::mixed("Gamma_IT_t", &["4_DBu", "4_DBu"])],
            vec![
                iso_on(
                    "iso/16_TLtf",
                    Construction::mixed("Gamma_IT_t", &["4_DBu", "4_DBu"]),
                    Catalog("16_TLtf"),
                    TRI_LATTICE_T,
                ),
                claim(
                    "separation/sampled",
                    Claim::Separation {
                        subjects: Subjects::SampledSubalgebras(FOUR_TRI),
                        class: FOUR_TRI,
                        symbols: TRI_LATTICE_T,
                    },
                ),
                claim(
                    "separation/16_TLtf",
                    Claim::Separation {
                        subjects: Subjects::Algebra(Catalog("16_TLtf")),
                        class: FOUR_TRI,
                        symbols: TRI_LATTICE_T,
                    },
                ),
            ],
        ),
    ]
}

/// `g` with the two coordinate terms of `entry` exchanged.
pub fn corrupt_entry(g: &Duplicator, entry: &str) -> Result<Duplicator, VerifyError> {
    let mut out = g.clone();
    let e = out
        .entries
        .iter_mut()
        .find(|e| e.name == entry)
        .ok_or_else(|| {
            VerifyError::Engine(duplicator_engine::EngineError::Invalid(format!(
                "`{}` has no entry `{entry}`",
                g.name
            )))
        })?;
    if e.terms.len() < 2 {
        return Err(VerifyError::Engine(duplicator_engine::EngineError::Invalid(
            "nothing to swap in a one-coordinate entry".into(),
        )));
    }
    e.terms.swap(0, 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes_and_unique_ids() {
        assert_eq!(table1().len(), 13);
        assert_eq!(table2().len(), 7);
        let mut ids: Vec<&str> = table1().iter().chain(table2().iter()).map(|r| r.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn claim_ids_are_unique_within_rows() {
        for r in table1().into_iter().chain(table2()) {
            let mut ids: Vec<String> = r.extra.iter().map(|c| c.id.clone()).collect();
            let n = ids.len();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), n, "{}", r.id);
        }
    }

    #[test]
    fn corrupting_swaps_coordinates() {
        let g = catalog::catalog_duplicator("Gamma_BLu").unwrap();
        let bad = corrupt_entry(&g, "tjoin").unwrap();
        let (a, b) = (&g.entry("tjoin").unwrap().terms, &bad.entry("tjoin").unwrap().terms);
        assert_eq!((a[0].clone(), a[1].clone()), (b[1].clone(), b[0].clone()));
        assert!(corrupt_entry(&g, "neg").is_ok());
        assert!(corrupt_entry(&g, "nosuch").is_err());
    }
}
