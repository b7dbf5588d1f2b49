//! The isomorphism `ĀI → B̄I` for bipartite ribbon graphs.
//!
//! With a σ-stable `ε'` from a two-colouring, every cycle power at an
//! `ε'`-negative node changes sign between the two quotients. Rescaling one
//! arrow of that cycle by a root `λ` of `λ^m = −1` absorbs the sign.

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::quiver::{ArrowId, GentleQuiver};
use crate::ribbon::{graph_of_quiver, BipartiteCertificate, OddWalk};
use crate::sign::Sign;

use super::{BrauerQuotient, QuotientKind, SparseVec};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PsiInapplicable {
    #[error("ribbon graph is not bipartite (odd closed walk of length {})", .0.edges.len())]
    NotBipartite(OddWalk),
    #[error("no λ with λ^{degree} = −1 for node {node}, on either colour class")]
    NoRoot { node: String, degree: u32 },
    #[error("expected a twisted and an untwisted quotient over the same basis")]
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiIsomorphism<E> {
    /// Image of each basis path of `ĀI` in `B̄I`.
    pub images: Vec<SparseVec<E>>,
    /// `(arrow name, λ)` for every rescaled arrow.
    pub scalings: Vec<(String, E)>,
    /// Colour of each node after any per-component flip; `−` nodes are the
    /// rescaled ones.
    pub coloring: Vec<Sign>,
    pub identity: bool,
    pub algebra_map: bool,
    pub bijective: bool,
}

impl<E> PsiIsomorphism<E> {
    pub fn verified(&self) -> bool {
        self.algebra_map && self.bijective
    }
}

/// Builds `ψ` and checks it against both multiplication tables.
pub fn construct_psi_isomorphism<F: Field>(
    twisted: &BrauerQuotient<F>,
    untwisted: &BrauerQuotient<F>,
) -> Result<PsiIsomorphism<F::Elem>, PsiInapplicable> {
    if twisted.kind() != QuotientKind::Twisted
        || untwisted.kind() != QuotientKind::Untwisted
        || twisted.paths() != untwisted.paths()
    {
        return Err(PsiInapplicable::Mismatch);
    }
    let q = twisted.quiver();
    let field = twisted.algebra().field();
    let m = twisted.multiplicity();
    let mut weights: Vec<F::Elem> = vec![field.one(); q.arrow_count()];
    let mut scalings = Vec::new();
    let g = graph_of_quiver(q);
    let coloring = if field.characteristic() == 2 {
        vec![Sign::Plus; g.node_count()]
    } else {
        let mut colors = match g.is_bipartite() {
            BipartiteCertificate::Coloring(c) => c,
            BipartiteCertificate::OddWalk(w) => return Err(PsiInapplicable::NotBipartite(w)),
        };
        for component in g.connected_components() {
            let roots = |negative: Sign| -> Result<Vec<(usize, F::Elem)>, (usize, u32)> {
                component
                    .iter()
                    .filter(|&&v| colors[v] == negative)
                    .map(|&v| {
                        let degree = m.of_orbit(v);
                        field.root_of_minus_one(degree).map(|l| (v, l)).ok_or((v, degree))
                    })
                    .collect()
            };
            let chosen = match roots(Sign::Minus) {
                Ok(r) => r,
                Err(first_failure) => match roots(Sign::Plus) {
                    Ok(r) => {
                        for &v in &component {
                            colors[v] = -colors[v];
                        }
                        r
                    }
                    Err(_) => {
                        return Err(PsiInapplicable::NoRoot {
                            node: g.node_name(first_failure.0).to_string(),
                            degree: first_failure.1,
                        })
                    }
                },
            };
            for (v, lambda) in chosen {
                let rep = q.orbits().representative(v);
                scalings.push((q.arrow_name(rep).to_string(), lambda.clone()));
                weights[rep.0] = lambda;
            }
        }
        colors
    };

    let weight_of = |arrows: &[ArrowId]| arrows.iter().fold(field.one(), |acc, a| acc * weights[a.0].clone());
    let images: Vec<SparseVec<F::Elem>> = twisted
        .paths()
        .iter()
        .map(|&p| {
            let w = weight_of(&q.path_arrows(p));
            untwisted.residue(p).into_iter().map(|(k, c)| (k, w.clone() * c)).collect()
        })
        .collect();
    let identity = images.iter().enumerate().all(|(i, img)| img.len() == 1 && img[0].0 == i && img[0].1 == field.one());
    let a = twisted.algebra();
    Ok(PsiIsomorphism {
        algebra_map: a.algebra_map_violation(untwisted.algebra(), &images).is_none(),
        bijective: a.image_rank(&images, untwisted.dim()) == untwisted.dim() && a.dim() == untwisted.dim(),
        images,
        scalings,
        coloring,
        identity,
    })
}

/// Arrow names with their `ψ` image written out, for reports.
pub fn describe_psi<F: Field>(q: &GentleQuiver, twisted: &BrauerQuotient<F>, psi: &PsiIsomorphism<F::Elem>) -> Vec<(String, String)>
where
    F::Elem: std::fmt::Display,
{
    q.arrow_ids()
        .filter_map(|a| {
            let i = twisted.index_of(&crate::quiver::Path::arrow(a))?;
            let terms: Vec<String> = psi.images[i]
                .iter()
                .map(|(k, c)| format!("{c}·{}", twisted.algebra().label(*k)))
                .collect();
            Some((q.arrow_name(a).to_string(), terms.join(" + ")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::polarization::Polarization;
    use crate::quiver::{MultiplicityMap, RawQuiver, SuccessorData};

    fn circular2() -> GentleQuiver {
        let s = |x: &str| x.to_string();
        GentleQuiver::validate(&RawQuiver {
            name: s("circular_2"),
            vertices: vec![s("1"), s("2")],
            arrows: vec![(s("a1"), s("1"), s("2")), (s("b1"), s("2"), s("1")), (s("a2"), s("2"), s("1")), (s("b2"), s("1"), s("2"))],
            successor: SuccessorData::Sigma(vec![vec![s("a1"), s("b1")], vec![s("a2"), s("b2")]]),
        })
        .unwrap()
    }

    #[test]
    fn psi_on_even_cycle() {
        let q = circular2();
        let m = MultiplicityMap::ones(&q);
        let eps = Polarization::standard(&q);
        let f = PrimeField::new(5).unwrap();
        let psi = construct_psi_isomorphism(
            &BrauerQuotient::twisted(f, &q, &m, &eps),
            &BrauerQuotient::untwisted(f, &q, &m, &eps),
        )
        .unwrap();
        assert!(psi.verified());
        assert_eq!(psi.scalings.len(), 1);
        let psi = construct_psi_isomorphism(
            &BrauerQuotient::twisted(Rationals, &q, &m, &eps),
            &BrauerQuotient::untwisted(Rationals, &q, &m, &eps),
        )
        .unwrap();
        assert!(psi.verified());
    }

    #[test]
    fn psi_needs_roots() {
        let q = circular2();
        let m = MultiplicityMap::uniform(&q, 2);
        let eps = Polarization::standard(&q);
        let err = construct_psi_isomorphism(
            &BrauerQuotient::twisted(Rationals, &q, &m, &eps),
            &BrauerQuotient::untwisted(Rationals, &q, &m, &eps),
        )
        .unwrap_err();
        assert!(matches!(err, PsiInapplicable::NoRoot { degree: 2, .. }));
    }
}
