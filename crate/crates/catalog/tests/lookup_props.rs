use catalog::*;
use proptest::prelude::*;

fn keys() -> Vec<&'static str> {
    catalog_list(Some(Kind::Algebra)).into_iter().map(|l| l.key).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn underscores_never_change_the_algebra(i in 0usize..1000, mask in any::<u32>()) {
        let ks = keys();
        let key = ks[i % ks.len()];
        let stripped: String = key.chars().filter(|&c| c != '_').collect();
        let mut noisy = String::new();
        for (j, c) in stripped.chars().enumerate() {
            if mask >> (j % 32) & 1 == 1 {
                noisy.push('_');
            }
            noisy.push(c);
        }
        let a = catalog_algebra(key).unwrap();
        let b = catalog_algebra(&noisy).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn suites_only_mention_symbols_of_intended_algebras(i in 0usize..1000) {
        let ks = keys();
        let key = ks[i % ks.len()];
        let a = catalog_algebra(key).unwrap();
        let suite = catalog_axiom_suite(intended_suite(key).unwrap()).unwrap();
        // checking with a zero budget still resolves every symbol
        prop_assert!(check_suite_with(&a, &suite, 0).is_ok());
    }
}
