use term_core::Signature;

use crate::{AlgebraError, FiniteAlgebra};

/// Decodes a product element into factor coordinates (lexicographic, first factor most significant).
pub fn product_coordinates(sizes: &[usize], mut e: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &n) in out.iter_mut().zip(sizes).rev() {
        *slot = e % n;
        e /= n;
    }
    out
}

pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(sizes).fold(0, |acc, (&c, &n)| acc * n + c)
}

/// The direct product of `factors` over `sig`, with componentwise operations.
///
/// Elements are ordered lexicographically in factor order. The empty product is
/// the one-element algebra.
pub fn direct_product(
    sig: &Signature,
    factors: &[FiniteAlgebra],
) -> Result<FiniteAlgebra, AlgebraError> {
    let mut conformed = Vec::with_capacity(factors.len());
    for f in factors {
        conformed.push(f.conform_to(sig)?);
    }
    let sizes: Vec<usize> = conformed.iter().map(FiniteAlgebra::size).collect();
    let size = sizes.iter().product::<usize>();
    let coords: Vec<Vec<usize>> = (0..size).map(|e| product_coordinates(&sizes, e)).collect();
    let mut fargs: Vec<usize> = Vec::new();
    let mut out_coords = vec![0; sizes.len()];
    let alg = FiniteAlgebra::from_fn("product", sig.clone(), size, |op, args| {
        for (j, f) in conformed.iter().enumerate() {
            fargs.clear();
            fargs.extend(args.iter().map(|&a| coords[a][j]));
            out_coords[j] = f.apply(op, &fargs);
        }
        product_index(&sizes, &out_coords)
    })?;
    let name = if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(FiniteAlgebra::name)
            .collect::<Vec<_>>()
            .join(" x ")
    };
    let labels = if conformed.iter().all(|f| f.labels().is_some()) && !conformed.is_empty() {
        Some(
            coords
                .iter()
                .map(|c| {
                    let parts: Vec<String> =
                        c.iter().zip(&conformed).map(|(&x, f)| f.label(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect(),
        )
    } else {
        None
    };
    alg.with_name(name).with_labels(labels)
}

/// Exchanges the tables of each listed symbol pair, e.g. `(meet, join)` and `(zero, one)`.
pub fn dual_of(
    alg: &FiniteAlgebra,
    swaps: &[(&str, &str)],
) -> Result<FiniteAlgebra, AlgebraError> {
    let mut tables = alg.tables().to_vec();
    for (a, b) in swaps {
        let ia = alg.op_index(a)?;
        let ib = alg.op_index(b)?;
        if alg.arity_at(ia) != alg.arity_at(ib) {
            return Err(AlgebraError::ArityMismatch(a.to_string(), b.to_string()));
        }
        tables.swap(ia, ib);
    }
    FiniteAlgebra::new(
        format!("{}^d", alg.name()),
        alg.sig().clone(),
        alg.size(),
        tables,
        alg.labels().map(<[String]>::to_vec),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, lattice_signature, with_bounds};

    #[test]
    fn product_sizes() {
        let p = direct_product(&lattice_signature(), &[chain(2), chain(3)]).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.label(5), "(1,2)");
        // (1,0) join (0,2) = (1,2)
        assert_eq!(p.apply_named("join", &[3, 2]), 5);
        let e = direct_product(&lattice_signature(), &[]).unwrap();
        assert_eq!(e.size(), 1);
    }

    #[test]
    fn product_rejects_mismatch() {
        let b = with_bounds(&chain(2)).unwrap();
        assert!(direct_product(&lattice_signature(), &[b]).is_err());
    }

    #[test]
    fn dual_is_involutive() {
        let c = chain(3);
        let d = dual_of(&c, &[("meet", "join")]).unwrap();
        assert_ne!(d.tables(), c.tables());
        let dd = dual_of(&d, &[("meet", "join")]).unwrap();
        assert_eq!(dd.tables(), c.tables());
    }

    #[test]
    fn bounded_dual() {
        let b = with_bounds(&chain(2)).unwrap();
        let d = dual_of(&b, &[("meet", "join"), ("zero", "one")]).unwrap();
        assert_eq!(d.op_table("zero").unwrap(), &[1]);
        assert_eq!(d.apply_named("join", &[0, 1]), 0);
    }

    #[test]
    fn coordinates_round_trip() {
        let sizes = [2, 3, 4];
        for e in 0..24 {
            assert_eq!(product_index(&sizes, &product_coordinates(&sizes, e)), e);
        }
    }
}
