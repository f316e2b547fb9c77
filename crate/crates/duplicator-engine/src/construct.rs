use finite_algebra::{
    for_each_tuple, is_homomorphism, product_coordinates, product_index, FiniteAlgebra,
    Homomorphism,
};
use term_core::CompiledTerm;

use crate::{Duplicator, EngineError, Mode};

/// Largest table (in cells) a construction may materialise.
const TABLE_CAP: usize = 64_000_000;

/// Coordinates of element `e` in a product with the given factor sizes.
pub fn element_coordinates(sizes: &[usize], e: usize) -> Vec<usize> {
    product_coordinates(sizes, e)
}

/// Index of the tuple `coords` in a product with the given factor sizes.
pub fn element_index(sizes: &[usize], coords: &[usize]) -> usize {
    product_index(sizes, coords)
}

/// `P^m_Γ(N)`: universe `N^m` in lexicographic order, one operation per entry.
pub fn duplicate(g: &Duplicator, n: &FiniteAlgebra) -> Result<FiniteAlgebra, EngineError> {
    let base = n.conform_to(&g.base_sig)?;
    let factors = vec![base; g.m];
    let name = if g.m == 2 {
        format!("P[{}]({})", g.name, n.name())
    } else {
        format!("P{}[{}]({})", g.m, g.name, n.name())
    };
    build(g, &factors, name)
}

/// The mixed product `A₁ ⊙_Γ ⋯ ⊙_Γ A_m` of a disjoint-mode duplicator.
pub fn duplicate_mixed(
    g: &Duplicator,
    factors: &[FiniteAlgebra],
) -> Result<FiniteAlgebra, EngineError> {
    if g.mode != Mode::Disjoint {
        return Err(EngineError::Mode(format!(
            "`{}` is in linked mode; mixed products need a disjoint duplicator",
            g.name
        )));
    }
    for e in &g.entries {
        for (j, t) in e.terms.iter().enumerate() {
            if let Some(v) = crate::duplicator::disjointness_breach(t, g.m, j + 1) {
                return Err(EngineError::Mode(format!(
                    "entry `{}` coordinate {} reads x{v}, breaking (D)",
                    e.name,
                    j + 1
                )));
            }
        }
    }
    if factors.len() != g.m {
        return Err(EngineError::Invalid(format!(
            "{} factors given for m = {}",
            factors.len(),
            g.m
        )));
    }
    let conformed = factors
        .iter()
        .map(|f| f.conform_to(&g.base_sig))
        .collect::<Result<Vec<_>, _>>()?;
    let name = factors
        .iter()
        .map(FiniteAlgebra::name)
        .collect::<Vec<_>>()
        .join(&format!(" (.)[{}] ", g.name));
    build(g, &conformed, name)
}

/// Shared table construction. Coordinate `j` of every entry is evaluated in
/// `factors[j]`; for linked duplicators all factors coincide.
fn build(
    g: &Duplicator,
    factors: &[FiniteAlgebra],
    name: String,
) -> Result<FiniteAlgebra, EngineError> {
    let m = g.m;
    let sig = g.gamma_signature()?;
    let sizes: Vec<usize> = factors.iter().map(FiniteAlgebra::size).collect();
    let size = sizes
        .iter()
        .try_fold(1usize, |a, &s| a.checked_mul(s))
        .ok_or_else(|| EngineError::Resource { what: "universe size".into(), limit: TABLE_CAP })?;
    for e in &g.entries {
        let cells = (0..e.arity).try_fold(1usize, |a, _| a.checked_mul(size));
        if cells.is_none_or(|c| c > TABLE_CAP) {
            return Err(EngineError::Resource {
                what: format!("table of `{}` over {size} elements", e.name),
                limit: TABLE_CAP,
            });
        }
    }
    let coords: Vec<Vec<usize>> = (0..size).map(|e| product_coordinates(&sizes, e)).collect();
    let mut tables = Vec::with_capacity(g.entries.len());
    for e in &g.entries {
        let compiled = e
            .terms
            .iter()
            .zip(factors)
            .map(|(t, f)| CompiledTerm::compile(t, f))
            .collect::<Result<Vec<_>, _>>()?;
        let mut table = Vec::with_capacity((0..e.arity).fold(1, |a, _| a * size));
        let mut asg = vec![0; m * e.arity];
        let mut out = vec![0; m];
        let mut stack = Vec::with_capacity(16);
        for_each_tuple(size, e.arity, |args| {
            for (i, &a) in args.iter().enumerate() {
                asg[m * i..m * (i + 1)].copy_from_slice(&coords[a]);
            }
            for (j, c) in compiled.iter().enumerate() {
                out[j] = c.eval_with(&asg, &mut stack);
            }
            table.push(product_index(&sizes, &out));
        });
        tables.push(table);
    }
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(FiniteAlgebra::new(name, sig, size, tables, Some(labels))?)
}

/// The map `h^m` on `m`-tuples, without verification.
pub fn lift_map(m: usize, a_size: usize, b_size: usize, h: &Homomorphism) -> Homomorphism {
    let a_sizes = vec![a_size; m];
    let b_sizes = vec![b_size; m];
    let total = a_sizes.iter().product::<usize>();
    Homomorphism::new(
        (0..total)
            .map(|e| {
                let c: Vec<usize> =
                    product_coordinates(&a_sizes, e).into_iter().map(|x| h.apply(x)).collect();
                product_index(&b_sizes, &c)
            })
            .collect(),
    )
}

/// Lifts `h: A → B` to `P_Γ(A) → P_Γ(B)` and verifies the result.
pub fn lift_morphism(
    g: &Duplicator,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    h: &Homomorphism,
) -> Result<Homomorphism, EngineError> {
    if !is_homomorphism(a, b, &h.map) {
        return Err(EngineError::Invalid("the given map is not a homomorphism".into()));
    }
    let pa = duplicate(g, a)?;
    let pb = duplicate(g, b)?;
    let lifted = lift_map(g.m, a.size(), b.size(), h);
    if !is_homomorphism(&pa, &pb, &lifted.map) {
        return Err(EngineError::Lift(format!("{:?}", h.map)));
    }
    Ok(lifted)
}
