//! The dual space of a local contact algebra: bounded clusters with the
//! closed base `λ^g(a) = {σ | a ∈ σ}`.

use serde::Serialize;

use crate::clusters::{bounded_clusters, Cluster};
use crate::contact::Contact;
use crate::error::{Error, Result};
use crate::finba::Element;
use crate::fintop::{rc_algebra, FiniteSpace, PointSet};
use crate::lca::{check_lca_axioms, LocalContactAlgebra};
use crate::report::{Report, Violation};

/// Largest dual space whose λ^g isomorphism is verified with all element pairs.
const PAIR_CHECK_ELEMENTS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualCase {
    /// `1 ∈ 𝔹`: points are all clusters.
    Compact,
    /// `1 ∉ 𝔹`: points are the bounded clusters.
    Local,
}

#[derive(Clone, Debug)]
pub struct DualSpaceResult {
    /// Point `i` of `space` is `clusters[i]`.
    pub clusters: Vec<Cluster>,
    pub space: FiniteSpace,
    pub case: DualCase,
}

impl DualSpaceResult {
    /// `λ^g(a)`: the points whose cluster contains `a`.
    pub fn lambda_g(&self, a: Element) -> PointSet {
        self.clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(a))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn point_of(&self, cluster: &Cluster) -> Option<usize> {
        self.clusters.binary_search(cluster).ok()
    }
}

fn point_name(l: &LocalContactAlgebra, c: &Cluster) -> String {
    l.algebra().names_of(c.support).join("+")
}

/// Builds the dual space; refuses algebras that fail C1–C4 or BC1–BC3.
pub fn dual_space(l: &LocalContactAlgebra) -> Result<DualSpaceResult> {
    let report = check_lca_axioms(l);
    if !report.is_empty() {
        return Err(Error::AxiomsFailed {
            what: "local contact algebra",
            report,
        });
    }
    let clusters = bounded_clusters(l)?;
    if clusters.len() > crate::fintop::MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "dual space point count",
            got: clusters.len(),
            limit: crate::fintop::MAX_POINTS,
        });
    }
    let case = if l.is_compact() { DualCase::Compact } else { DualCase::Local };
    let names: Vec<String> = clusters.iter().map(|c| point_name(l, c)).collect();
    let mut result = DualSpaceResult {
        clusters,
        space: FiniteSpace::discrete(1)?,
        case,
    };
    // Closed sets are intersections of base sets, and the base sets missing
    // σ are the λ^g(a) with a ≤ supp(σ)*; λ^g preserves joins, so their union
    // is λ^g(supp(σ)*) and U_σ is its complement.
    let all = if names.len() == 64 { u64::MAX } else { (1u64 << names.len()) - 1 };
    let nbhd = result
        .clusters
        .iter()
        .map(|c| all & !result.lambda_g(l.algebra().complement(c.support)))
        .collect();
    result.space = FiniteSpace::new(names, nbhd)?;
    Ok(result)
}

/// Checks that `λ^g` is an LCA-isomorphism onto `(RC(X), ρ_X, CR(X))`.
///
/// Finite spaces are compact, so `CR(X) = RC(X)` and the ideal clause asks
/// that every element be bounded.
pub fn verify_lambda_g(l: &LocalContactAlgebra, d: &DualSpaceResult) -> Result<Report> {
    let alg = l.algebra();
    let x = &d.space;
    let rc = rc_algebra(x)?;
    let mut report = Report::new();

    let images: Vec<PointSet> = alg.elements().map(|a| d.lambda_g(a)).collect();
    let lam = |a: Element| images[a.mask() as usize];

    if let Some(a) = alg.elements().find(|&a| !x.is_regular_closed(lam(a))) {
        report.push(Violation::new("λ^g into RC", alg, &[a]));
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != images.len() {
        let a = alg
            .elements()
            .find(|&a| alg.elements().any(|b| b < a && lam(b) == lam(a)))
            .unwrap_or(Element::ZERO);
        report.push(Violation::new("λ^g injective", alg, &[a]));
    }
    if sorted.len() != rc.members.len() {
        report.push(Violation::new("λ^g surjective", alg, &[]));
    }

    let pair_firsts: Vec<Element> = if alg.element_count() <= PAIR_CHECK_ELEMENTS {
        alg.elements().collect()
    } else {
        alg.atoms().collect()
    };
    let pairs = || pair_firsts.iter().flat_map(|&a| alg.elements().map(move |b| (a, b)));
    let laws: [(&'static str, &dyn Fn(Element, Element) -> bool); 3] = [
        ("λ^g preserves ∨", &|a, b| lam(a | b) == lam(a) | lam(b)),
        ("λ^g preserves ∧", &|a, b| lam(a & b) == x.closure(x.interior(lam(a) & lam(b)))),
        ("λ^g preserves contact", &|a, b| l.contact.contact(a, b) == (lam(a) & lam(b) != 0)),
    ];
    for (law, ok) in laws {
        if let Some((a, b)) = pairs().find(|&(a, b)| !ok(a, b)) {
            report.push(Violation::new(law, alg, &[a, b]));
        }
    }
    if let Some(a) = alg
        .elements()
        .find(|&a| lam(alg.complement(a)) != x.closure(x.all() & !lam(a)))
    {
        report.push(Violation::new("λ^g preserves *", alg, &[a]));
    }
    if let Some(a) = alg.elements().find(|&a| !l.is_bounded(a)) {
        report.push(Violation::new("λ^g bounded ideal", alg, &[a]));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::ContactRelation;
    use crate::finba::FiniteBooleanAlgebra;

    fn compact(rel: ContactRelation) -> LocalContactAlgebra {
        LocalContactAlgebra::compact(rel)
    }

    #[test]
    fn overlap_on_two_atoms_dualizes_to_two_discrete_points() {
        let alg = FiniteBooleanAlgebra::new(["p", "q"]).unwrap();
        let l = compact(ContactRelation::overlap(alg));
        let d = dual_space(&l).unwrap();
        assert_eq!(d.case, DualCase::Compact);
        assert_eq!(d.space.point_names(), &["p", "q"]);
        assert!(d.space.is_discrete());
        assert!(verify_lambda_g(&l, &d).unwrap().is_empty());
    }

    #[test]
    fn one_atom_dualizes_to_a_point() {
        let l = compact(ContactRelation::overlap(FiniteBooleanAlgebra::anonymous(1).unwrap()));
        let d = dual_space(&l).unwrap();
        assert_eq!(d.space.point_count(), 1);
        assert_eq!(d.lambda_g(Element::ZERO), 0);
        assert_eq!(d.lambda_g(l.algebra().top()), 1);
    }

    #[test]
    fn refuses_invalid_algebras() {
        let alg = FiniteBooleanAlgebra::new(["p", "q"]).unwrap();
        let path = ContactRelation::from_pairs(alg.clone(), [(0, 1)]).unwrap();
        assert!(matches!(dual_space(&compact(path)), Err(Error::AxiomsFailed { .. })));
        let proper = LocalContactAlgebra::new(ContactRelation::overlap(alg.clone()), alg.element(&["p"]).unwrap()).unwrap();
        assert!(dual_space(&proper).is_err());
    }

    #[test]
    fn lambda_is_join_preserving_and_total() {
        let l = compact(ContactRelation::overlap(FiniteBooleanAlgebra::anonymous(3).unwrap()));
        let d = dual_space(&l).unwrap();
        let alg = l.algebra();
        assert_eq!(d.lambda_g(alg.top()), d.space.all());
        for a in alg.elements() {
            for b in alg.elements() {
                assert_eq!(d.lambda_g(a | b), d.lambda_g(a) | d.lambda_g(b));
            }
        }
    }
}
