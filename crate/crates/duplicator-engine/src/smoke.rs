use std::collections::BTreeSet;

use finite_algebra::{
    all_subuniverses, closure, congruence_lattice, enumerate_homomorphisms, find_isomorphism,
    product_coordinates, Congruence, FiniteAlgebra, Homomorphism, Limits,
};
use serde::{Deserialize, Serialize};

use crate::{duplicate, lift_map, Duplicator, EngineError};

const HOM_LIMIT: usize = 100_000;
const SUB_LIMIT: usize = 100_000;

/// One checked clause of the smoke test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmokeClause {
    pub id: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmokeReport {
    pub duplicator: String,
    pub a: String,
    pub b: String,
    pub clauses: Vec<SmokeClause>,
}

impl SmokeReport {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }
}

/// Checks consequences of `P_Γ` being an equivalence on the pair `A`, `B`:
/// homomorphisms between powers are powers of homomorphisms, subuniverses of
/// `P_Γ(A)` are powers of subuniverses, and congruences correspond.
pub fn equivalence_smoke_test(
    g: &Duplicator,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<SmokeReport, EngineError> {
    let a = a.conform_to(&g.base_sig)?;
    let b = b.conform_to(&g.base_sig)?;
    let pa = duplicate(g, &a)?;
    let pb = duplicate(g, &b)?;
    let m = g.m;
    let mut clauses = Vec::new();

    let base = enumerate_homomorphisms(&a, &b, Some(HOM_LIMIT))?;
    let lifted = enumerate_homomorphisms(&pa, &pb, Some(HOM_LIMIT))?;
    if base.truncated || lifted.truncated {
        return Err(EngineError::Resource { what: "homomorphisms".into(), limit: HOM_LIMIT });
    }
    let powers: BTreeSet<Vec<usize>> =
        base.homs.iter().map(|h| lift_map(m, a.size(), b.size(), h).map).collect();
    let stray: Option<&Homomorphism> = lifted.homs.iter().find(|h| !powers.contains(&h.map));
    clauses.push(SmokeClause {
        id: "homomorphisms".into(),
        holds: stray.is_none() && powers.len() == lifted.homs.len(),
        detail: match stray {
            None => format!(
                "{} homomorphisms {} -> {}, {} between the powers, all of the form h^{m}",
                base.homs.len(),
                a.name(),
                b.name(),
                lifted.homs.len()
            ),
            Some(h) => format!("{:?} is not a power of a homomorphism", h.map),
        },
    });

    let subs = all_subuniverses(&pa, SUB_LIMIT)?;
    let sizes = vec![a.size(); m];
    let mut bad_sub = None;
    for s in &subs {
        let t: BTreeSet<usize> = s.iter().map(|&e| product_coordinates(&sizes, e)[0]).collect();
        let t: Vec<usize> = t.into_iter().collect();
        let power_size = (0..m).fold(1, |acc, _| acc * t.len());
        let is_power = s.len() == power_size
            && s.iter().all(|&e| product_coordinates(&sizes, e).iter().all(|c| t.contains(c)));
        let closed = closure(&a, &t).sorted() == t;
        if !(is_power && closed) {
            bad_sub = Some(s.clone());
            break;
        }
    }
    clauses.push(SmokeClause {
        id: "subuniverses".into(),
        holds: bad_sub.is_none(),
        detail: match &bad_sub {
            None => format!("all {} subuniverses of {} are powers S^{m}", subs.len(), pa.name()),
            Some(s) => {
                let labels: Vec<String> = s.iter().map(|&e| pa.label(e)).collect();
                format!("{{{}}} is not a power of a subuniverse", labels.join(", "))
            }
        },
    });

    let limits = Limits::default();
    let con_a = congruence_lattice(&a, &limits)?;
    let con_p = congruence_lattice(&pa, &limits)?;
    let diag = |x: usize| (0..m).fold(0, |acc, _| acc * a.size() + x);
    let mut bad_con = None;
    for phi in &con_p.congruences {
        let labels: Vec<usize> = (0..a.size()).map(|x| phi.reps()[diag(x)]).collect();
        let theta = Congruence::from_labels(&labels);
        let matches = (0..pa.size()).all(|e| {
            let ce = product_coordinates(&sizes, e);
            (0..pa.size()).all(|f| {
                let cf = product_coordinates(&sizes, f);
                let coordwise = ce.iter().zip(&cf).all(|(&x, &y)| theta.related(x, y));
                phi.related(e, f) == coordwise
            })
        });
        if !matches {
            bad_con = Some(phi.clone());
            break;
        }
    }
    let iso = find_isomorphism(&con_a.as_lattice(), &con_p.as_lattice())?.is_some();
    clauses.push(SmokeClause {
        id: "congruences".into(),
        holds: bad_con.is_none() && iso && con_a.len() == con_p.len(),
        detail: match &bad_con {
            None => format!(
                "|Con({})| = {}, |Con({})| = {}, lattices {}isomorphic",
                a.name(),
                con_a.len(),
                pa.name(),
                con_p.len(),
                if iso { "" } else { "not " }
            ),
            Some(phi) => format!("{phi} is not a power of a congruence"),
        },
    });

    Ok(SmokeReport {
        duplicator: g.name.clone(),
        a: a.name().to_string(),
        b: b.name().to_string(),
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplicator::tests::gamma_blu;
    use finite_algebra::builders::chain;

    #[test]
    fn two_chain() {
        let r = equivalence_smoke_test(&gamma_blu(), &chain(2), &chain(2)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.clauses[0].detail.starts_with("3 homomorphisms"));
    }

    #[test]
    fn three_chain_congruences() {
        let r = equivalence_smoke_test(&gamma_blu(), &chain(3), &chain(2)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.clauses[2].detail.contains("= 4"));
    }
}
