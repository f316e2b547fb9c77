//! The JSON copies under `data/` must match the builders.
//! Run with `CATALOG_REGENERATE=1` to rewrite them.

use std::fs;

use catalog::*;
use duplicator_engine::Duplicator;
use finite_algebra::FiniteAlgebra;

fn regenerate() -> bool {
    std::env::var_os("CATALOG_REGENERATE").is_some()
}

#[test]
fn algebra_files_match_builders() {
    let dir = data_dir().join("algebras");
    if regenerate() {
        fs::create_dir_all(&dir).unwrap();
    }
    for l in catalog_list(Some(Kind::Algebra)) {
        let a = catalog_algebra(l.key).unwrap();
        let path = dir.join(data_file_name(l.key));
        if regenerate() {
            let text = a.to_json() + "\n";
            fs::write(&path, text).unwrap();
        }
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let loaded = FiniteAlgebra::from_json(&text).unwrap();
        assert_eq!(loaded, a, "{}", l.key);
    }
}

#[test]
fn duplicator_files_match_builders() {
    let dir = data_dir().join("duplicators");
    if regenerate() {
        fs::create_dir_all(&dir).unwrap();
    }
    for l in catalog_list(Some(Kind::Duplicator)) {
        let g = catalog_duplicator(l.key).unwrap();
        let path = dir.join(data_file_name(l.key));
        if regenerate() {
            fs::write(&path, g.to_json_pretty() + "\n").unwrap();
        }
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let loaded = Duplicator::from_json(&text).unwrap();
        assert_eq!(loaded, g, "{}", l.key);
    }
}
