use crate::{enumerate_homomorphisms, AlgebraError, FiniteAlgebra, Homomorphism};

/// Outcome of a separation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub separated: bool,
    /// The first pair no homomorphism into the class distinguishes.
    pub failing_pair: Option<(usize, usize)>,
    /// For each separated pair `(a, b)`, a class member index and a homomorphism into it.
    pub witnesses: Vec<((usize, usize), usize, Homomorphism)>,
}

/// Decides whether the homomorphisms from `a` into members of `class` separate points.
pub fn separates_into(
    a: &FiniteAlgebra,
    class: &[FiniteAlgebra],
    hom_limit: usize,
) -> Result<Separation, AlgebraError> {
    let mut all: Vec<(usize, Homomorphism)> = Vec::new();
    for (i, m) in class.iter().enumerate() {
        let e = enumerate_homomorphisms(a, m, Some(hom_limit))?;
        if e.truncated {
            return Err(AlgebraError::Resource {
                what: format!("homomorphisms into `{}`", m.name()),
                limit: hom_limit,
            });
        }
        all.extend(e.homs.into_iter().map(|h| (i, h)));
    }
    let n = a.size();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            match all.iter().find(|(_, h)| h.map[x] != h.map[y]) {
                Some((i, h)) => witnesses.push(((x, y), *i, h.clone())),
                None => {
                    return Ok(Separation {
                        separated: false,
                        failing_pair: Some((x, y)),
                        witnesses,
                    })
                }
            }
        }
    }
    Ok(Separation { separated: true, failing_pair: None, witnesses })
}
