use duplicator_engine::{
    check_condition_l, check_condition_l_prime, check_condition_m, check_condition_p,
    clone_search, duplicate, duplicate_mixed, lift_map, lift_morphism, Budget, CheckMode,
    Duplicator, FunctionSpace, Mode, Restriction, SearchOutcome, Target, Verdict,
};
use finite_algebra::builders::{chain, lattice_signature};
use finite_algebra::{
    all_subuniverses, direct_product, enumerate_homomorphisms, is_homomorphism,
    product_coordinates, FiniteAlgebra,
};
use proptest::prelude::*;
use std::collections::BTreeSet;
use term_core::{parse_term, Signature};

fn gamma_blu() -> Duplicator {
    Duplicator::new("Gamma_BLu", lattice_signature(), 2, Mode::Linked)
        .with_entry("tjoin", 2, &["(join x1 x3)", "(meet x2 x4)"])
        .unwrap()
        .with_entry("tmeet", 2, &["(meet x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("kjoin", 2, &["(join x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("kmeet", 2, &["(meet x1 x3)", "(meet x2 x4)"])
        .unwrap()
        .with_entry("neg", 1, &["x2", "x1"])
        .unwrap()
        .with_m_witness("(kjoin (kmeet x1 (tjoin x1 x2)) (kmeet x2 (tmeet x1 x2)))")
        .unwrap()
        .with_p_witness(&[2, 1], "(neg x1)")
        .unwrap()
}

fn gamma_pbl() -> Duplicator {
    Duplicator::new("Gamma_pBL", lattice_signature(), 2, Mode::Disjoint)
        .with_entry("tjoin", 2, &["(join x1 x3)", "(meet x2 x4)"])
        .unwrap()
        .with_entry("tmeet", 2, &["(meet x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("kjoin", 2, &["(join x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("kmeet", 2, &["(meet x1 x3)", "(meet x2 x4)"])
        .unwrap()
}

fn boolean_sig() -> Signature {
    Signature::new([("join", 2), ("meet", 2), ("compl", 1), ("zero", 0), ("one", 0)]).unwrap()
}

fn two_boolean() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "2_B",
        boolean_sig(),
        2,
        vec![vec![0, 1, 1, 1], vec![0, 0, 0, 1], vec![1, 0], vec![0], vec![1]],
        None,
    )
    .unwrap()
}

/// The duplicator that twists the order on the second coordinate.
fn gamma_twist() -> Duplicator {
    Duplicator::new("Gamma_2", boolean_sig(), 2, Mode::Linked)
        .with_entry("a", 2, &["(meet x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("b", 2, &["(join x1 x3)", "(meet x2 x4)"])
        .unwrap()
        .with_entry("s", 1, &["x2", "x1"])
        .unwrap()
        .with_entry("c0", 0, &["zero", "one"])
        .unwrap()
        .with_entry("c1", 0, &["one", "zero"])
        .unwrap()
}

/// Coordinatewise meet, join and complement-with-swap over the Boolean base.
fn gamma_straight() -> Duplicator {
    Duplicator::new("Gamma_1", boolean_sig(), 2, Mode::Linked)
        .with_entry("a", 2, &["(meet x1 x3)", "(meet x2 x4)"])
        .unwrap()
        .with_entry("b", 2, &["(join x1 x3)", "(join x2 x4)"])
        .unwrap()
        .with_entry("n", 1, &["(compl x2)", "(compl x1)"])
        .unwrap()
        .with_entry("c0", 0, &["zero", "zero"])
        .unwrap()
        .with_entry("c1", 0, &["one", "one"])
        .unwrap()
}

fn small_lattices() -> Vec<FiniteAlgebra> {
    let sq = direct_product(&lattice_signature(), &[chain(2), chain(2)]).unwrap();
    vec![chain(1), chain(2), chain(3), sq]
}

#[test]
fn functoriality_on_small_lattices() {
    let g = gamma_blu();
    let algs = small_lattices();
    for a in &algs {
        let pa = duplicate(&g, a).unwrap();
        assert_eq!(pa.size(), a.size() * a.size());
        for b in &algs {
            let pb = duplicate(&g, b).unwrap();
            for h in enumerate_homomorphisms(a, b, None).unwrap().homs {
                let l = lift_morphism(&g, a, b, &h).unwrap();
                assert!(is_homomorphism(&pa, &pb, &l.map));
                for c in &algs {
                    for k in enumerate_homomorphisms(b, c, None).unwrap().homs {
                        let both = lift_map(2, a.size(), c.size(), &h.then(&k));
                        let l2 = lift_map(2, b.size(), c.size(), &k);
                        assert_eq!(both, l.then(&l2));
                    }
                }
            }
        }
    }
}

/// Closed under the merge term, both projections agree; closed under the swap
/// as well, the set is the square of its projection.
#[test]
fn merge_and_swap_consequences() {
    let g = gamma_blu();
    let gsig = g.gamma_signature().unwrap();
    let v = parse_term("(kjoin (kmeet x1 (tjoin x1 x2)) (kmeet x2 (tmeet x1 x2)))", &gsig).unwrap();
    let s = parse_term("(neg x1)", &gsig).unwrap();
    for base in [chain(2), chain(3)] {
        let p = duplicate(&g, &base).unwrap();
        let n = base.size();
        let sizes = [n, n];
        let subsets: Vec<Vec<usize>> = (0u32..(1 << p.size()))
            .map(|mask| (0..p.size()).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        for set in subsets {
            let member: BTreeSet<usize> = set.iter().copied().collect();
            let closed_v = set.iter().all(|&x| {
                set.iter().all(|&y| member.contains(&term_core::eval_term(&v, &p, &[x, y]).unwrap()))
            });
            if !closed_v {
                continue;
            }
            let proj = |i: usize| -> BTreeSet<usize> {
                set.iter().map(|&e| product_coordinates(&sizes, e)[i]).collect()
            };
            let closed_s =
                set.iter().all(|&x| member.contains(&term_core::eval_term(&s, &p, &[x]).unwrap()));
            if closed_s {
                assert_eq!(proj(0), proj(1));
                let square = proj(0).len() * proj(1).len();
                assert_eq!(square, set.len(), "{set:?}");
            }
        }
        // Every subuniverse is closed under both terms.
        for sub in all_subuniverses(&p, 10_000).unwrap() {
            let t: BTreeSet<usize> = sub.iter().map(|&e| e / n).collect();
            assert_eq!(sub.len(), t.len() * t.len());
        }
    }
}

#[test]
fn mixed_product_of_chains() {
    let g = gamma_pbl();
    let mixed = duplicate_mixed(&g, &[chain(2), chain(3)]).unwrap();
    assert_eq!(mixed.size(), 6);
    let a = mixed.element("(1,0)").unwrap();
    let b = mixed.element("(0,2)").unwrap();
    assert_eq!(mixed.label(mixed.apply_named("tjoin", &[a, b])), "(1,0)");
    assert_eq!(mixed.label(mixed.apply_named("kjoin", &[a, b])), "(1,2)");
}

#[test]
fn twist_satisfies_p_but_not_l_prime() {
    let g = gamma_twist();
    let class = [two_boolean()];
    let b = Budget::default();
    let p = check_condition_p(&g, &class, CheckMode::Search, &b).unwrap();
    assert_eq!(p.verdict, Verdict::Pass);
    let l = check_condition_l_prime(&g, &class, CheckMode::Search, &b).unwrap();
    assert_eq!(l.verdict, Verdict::Fail);
    let compl = l.obligations.iter().find(|o| o.id == "compl").unwrap();
    assert_eq!(compl.verdict, Verdict::Fail);
    assert_eq!(compl.certificate.unwrap().explored, 3);
    for o in l.obligations.iter().filter(|o| o.id != "compl") {
        assert_eq!(o.verdict, Verdict::Pass, "{o:?}");
    }
}

#[test]
fn straight_satisfies_l_prime_but_not_p() {
    let g = gamma_straight();
    let class = [two_boolean()];
    let b = Budget::default();
    let l = check_condition_l_prime(&g, &class, CheckMode::Search, &b).unwrap();
    assert_eq!(l.verdict, Verdict::Pass, "{l:?}");
    let p = check_condition_p(&g, &class, CheckMode::Search, &b).unwrap();
    assert_eq!(p.verdict, Verdict::Fail);
    let explored = p.obligations[0].certificate.unwrap().explored;
    assert!(explored <= 36, "{explored}");
}

#[test]
fn larger_budgets_never_flip_a_failure() {
    let g = gamma_straight();
    let class = [two_boolean()];
    let swap = |space: &FunctionSpace| -> Vec<u32> {
        (0..space.len()).map(|p| {
            let v = space.inputs(0, p)[0];
            ((v % 2) * 2 + v / 2) as u32
        }).collect()
    };
    let space = FunctionSpace::new(&g, &class, 1, Restriction::Full).unwrap();
    let target = Target::Exact(swap(&space));
    let mut seen_exhausted = false;
    for max in [1, 4, 16, 64, 1000, 100_000] {
        let budget = Budget { max_functions: max, ..Budget::default() };
        match clone_search(&g, &class, 1, Restriction::Full, &target, &budget).unwrap() {
            SearchOutcome::Found { .. } => panic!("the swap is not a term function"),
            SearchOutcome::Exhausted { .. } => seen_exhausted = true,
            SearchOutcome::Capped { .. } => assert!(!seen_exhausted),
        }
    }
    assert!(seen_exhausted);
}

/// Four coordinates, lattice operations joining on different coordinate sets.
fn gamma_four() -> Duplicator {
    Duplicator::new("Gamma_L4", lattice_signature(), 4, Mode::Disjoint)
        .with_entry("tjoin", 2, &["(join x1 x5)", "(meet x2 x6)", "(join x3 x7)", "(meet x4 x8)"])
        .unwrap()
        .with_entry("tmeet", 2, &["(meet x1 x5)", "(join x2 x6)", "(meet x3 x7)", "(join x4 x8)"])
        .unwrap()
        .with_entry("fjoin", 2, &["(join x1 x5)", "(join x2 x6)", "(meet x3 x7)", "(meet x4 x8)"])
        .unwrap()
        .with_entry("fmeet", 2, &["(meet x1 x5)", "(meet x2 x6)", "(join x3 x7)", "(join x4 x8)"])
        .unwrap()
        .with_entry("ijoin", 2, &["(join x1 x5)", "(join x2 x6)", "(join x3 x7)", "(join x4 x8)"])
        .unwrap()
        .with_entry("imeet", 2, &["(meet x1 x5)", "(meet x2 x6)", "(meet x3 x7)", "(meet x4 x8)"])
        .unwrap()
}

/// `u_S(x,y)` picks `x` on the join coordinates of `join`/`meet` and `y` elsewhere.
fn select(join: &str, meet: &str, x: &str, y: &str) -> String {
    format!("(ijoin (imeet {x} ({join} {x} {y})) (imeet {y} ({meet} {x} {y})))")
}

#[test]
fn four_coordinate_merge() {
    let t = |x: &str, y: &str| select("tjoin", "tmeet", x, y);
    let f = |x: &str, y: &str| select("fjoin", "fmeet", x, y);
    // singletons from intersections and complements of {1,3} and {1,2}
    let u1 = |x: &str, y: &str| t(&f(x, y), y);
    let u2 = |x: &str, y: &str| f(&t(y, x), y);
    let u3 = |x: &str, y: &str| t(&f(y, x), y);
    let v = u1("x1", &u2("x2", &u3("x3", "x4")));
    let g = gamma_four().with_m_witness(&v).unwrap();
    let r = check_condition_m(&g, &[chain(2), chain(3)], CheckMode::Witness, &Budget::default())
        .unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    let l = check_condition_l(&g, &[chain(3)], CheckMode::Witness, &Budget::default()).unwrap();
    assert_eq!(l.verdict, Verdict::Pass);
    assert_eq!(l.obligations.len(), 8);
}

fn arb_lattice_like() -> impl Strategy<Value = FiniteAlgebra> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, n * n),
            proptest::collection::vec(0..n, n * n),
        )
            .prop_map(move |(j, m)| {
                FiniteAlgebra::new("random", lattice_signature(), n, vec![j, m], None).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mixed_square_equals_power(a in arb_lattice_like()) {
        let g = gamma_pbl();
        let p = duplicate(&g, &a).unwrap();
        let q = duplicate_mixed(&g, &[a.clone(), a.clone()]).unwrap();
        prop_assert_eq!(p.tables(), q.tables());
        prop_assert_eq!(p.labels(), q.labels());
    }

    #[test]
    fn power_size(a in arb_lattice_like()) {
        let p = duplicate(&gamma_blu(), &a).unwrap();
        prop_assert_eq!(p.size(), a.size() * a.size());
    }

    #[test]
    fn searched_witnesses_reverify(a in arb_lattice_like()) {
        let g = gamma_blu();
        let b = Budget { max_functions: 5_000, ..Budget::default() };
        let r = check_condition_l(&g, std::slice::from_ref(&a), CheckMode::Search, &b).unwrap();
        let gsig = g.gamma_signature().unwrap();
        let space = FunctionSpace::new(&g, std::slice::from_ref(&a), 2, Restriction::Diagonal).unwrap();
        for o in r.obligations.iter().filter(|o| o.verdict == Verdict::Pass) {
            let (sym, coord) = o.id.split_once('@').unwrap();
            let coord: usize = coord.parse().unwrap();
            let t = parse_term(o.witness.as_ref().unwrap(), &gsig).unwrap();
            let vals = space.evaluate(&t).unwrap();
            for (pt, v) in vals.iter().enumerate() {
                let ins = space.inputs(0, pt);
                prop_assert_eq!(space.coordinate(0, *v as usize, coord), a.apply_named(sym, &ins));
            }
        }
    }
}
