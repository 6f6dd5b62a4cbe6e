//! The functors on maps and morphisms, `t_X`, the closed-embedding criterion
//! and the naturality checks.

use std::collections::HashSet;

use crate::clusters::{is_cluster, Cluster, ClusterVerdict, ElementSet};
use crate::contact::Contact;
use crate::error::{Error, Result};
use crate::finba::Element;
use crate::fintop::{map_predicates, rc_algebra, FiniteSpace, PointSet, RegularClosedAlgebra, SpaceMap};
use crate::report::{Report, Violation};

use super::dual_space::{dual_space, verify_lambda_g, DualSpaceResult};
use super::morphism::{check_morphism, AlgebraMorphism, MorphismKind};

/// `t_X(x) = σ_x`, the regular closed sets containing `x`.
#[derive(Clone, Debug)]
pub struct TMap {
    pub rc: RegularClosedAlgebra,
    /// `clusters[x]` is `σ_x`, identified by its RC-atom support.
    pub clusters: Vec<Cluster>,
    /// The dual space of `RC(X)` and, for Hausdorff `X`, the certified homeomorphism
    /// `X → dual` as a point map. `None` when `X` is not Hausdorff.
    pub homeomorphism: Option<(DualSpaceResult, SpaceMap, Report)>,
}

pub fn t_map(x: &FiniteSpace) -> Result<TMap> {
    let rc = rc_algebra(x)?;
    let clusters: Vec<Cluster> = (0..x.point_count())
        .map(|p| Cluster {
            support: rc
                .atom_sets
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s >> p & 1 == 1)
                .fold(Element::ZERO, |acc, (i, _)| acc | Element::atom(i)),
        })
        .collect();
    let homeomorphism = if x.is_discrete() {
        let dual = dual_space(&rc.lca())?;
        let mut report = Report::new();
        let alg = rc.algebra();
        let mut assign = Vec::with_capacity(clusters.len());
        for c in &clusters {
            match dual.point_of(c) {
                Some(i) => assign.push(i),
                None => {
                    report.push(Violation::new("t_X(x) is a cluster", alg, &[c.support]));
                    assign.push(0);
                }
            }
        }
        let map = SpaceMap::new(x.clone(), dual.space.clone(), assign)?;
        let p = map_predicates(&map);
        if !(p.injective && p.surjective) {
            report.push(Violation::new("t_X bijective", alg, &[]));
        }
        // a continuous bijection with f(U_x) = U_{f(x)} is a homeomorphism
        if let Some(pt) = (0..x.point_count()).find(|&pt| map.image(x.min_nbhd(pt)) != dual.space.min_nbhd(map.assign[pt])) {
            report.push(Violation::new("t_X bicontinuous", alg, &[clusters[pt].support]));
        }
        Some((dual, map, report))
    } else {
        None
    };
    Ok(TMap {
        rc,
        clusters,
        homeomorphism,
    })
}

/// `φ_f(F) = cl_X(f⁻¹(int_Y(F)))`, from `RC(Y)` to `RC(X)` for `f: X → Y`.
pub fn xi_t_map(f: &SpaceMap) -> Result<AlgebraMorphism> {
    let p = map_predicates(f);
    if !p.continuous {
        return Err(Error::NotPerfect("continuity"));
    }
    if !p.closed {
        return Err(Error::NotPerfect("closedness"));
    }
    let rc_x = rc_algebra(&f.source)?;
    let rc_y = rc_algebra(&f.target)?;
    xi_t_between(f, &rc_x, &rc_y)
}

pub(crate) fn xi_t_between(f: &SpaceMap, rc_x: &RegularClosedAlgebra, rc_y: &RegularClosedAlgebra) -> Result<AlgebraMorphism> {
    let (x, y) = (&f.source, &f.target);
    let table = rc_y
        .algebra()
        .elements()
        .map(|g| {
            let pts = x.closure(f.preimage(y.interior(rc_y.to_points(g))));
            rc_x.from_points(pts)
                .ok_or_else(|| Error::Integrity("closure of an open set is not regular closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::new(rc_y.lca(), rc_x.lca(), table)
}

/// `f_φ(σ′) = {a | b ≪_{C_ρ} a* ⇒ φ(b)* ∈ σ′}`, from the dual of the target
/// to the dual of the source, with the dual spaces it runs between.
pub fn xi_a_map(phi: &AlgebraMorphism) -> Result<SpaceMap> {
    Ok(xi_a_with_duals(phi)?.0)
}

pub(crate) fn xi_a_with_duals(phi: &AlgebraMorphism) -> Result<(SpaceMap, DualSpaceResult, DualSpaceResult)> {
    let report = check_morphism(phi, MorphismKind::Pal);
    if !report.is_empty() {
        return Err(Error::AxiomsFailed {
            what: "PAL-morphism",
            report,
        });
    }
    let dual_src = dual_space(&phi.source)?;
    let dual_tgt = dual_space(&phi.target)?;
    let (sa, ta) = (phi.source_algebra(), phi.target_algebra());
    let c = phi.source.alexandroff();

    // lower[a] lists the b with b ≪_{C_ρ} a*
    let lower: Vec<Vec<Element>> = sa
        .elements()
        .map(|a| {
            let ac = sa.complement(a);
            ac.subsets().filter(|&b| c.way_below(b, ac)).collect()
        })
        .collect();

    let mut assign = Vec::with_capacity(dual_tgt.clusters.len());
    for sigma in &dual_tgt.clusters {
        let set = ElementSet::from_predicate(sa, |a| {
            lower[a.mask() as usize]
                .iter()
                .all(|&b| sigma.contains(ta.complement(phi.apply(b))))
        });
        let verdict = is_cluster(&c, &set);
        if verdict != ClusterVerdict::Cluster {
            return Err(Error::Integrity(format!(
                "image of cluster {} fails {}",
                ta.render(sigma.support),
                verdict.condition().unwrap_or("?")
            )));
        }
        let support = sa.atoms().fold(Element::ZERO, |acc, a| if set.contains(a) { acc | a } else { acc });
        let image = Cluster { support };
        if image.element_set(sa) != set || !support.meets(phi.source.ideal.generator) {
            return Err(Error::Integrity(format!(
                "image of cluster {} is not a bounded cluster",
                ta.render(sigma.support)
            )));
        }
        let point = dual_src
            .point_of(&image)
            .ok_or_else(|| Error::Integrity("image cluster missing from the dual space".into()))?;
        assign.push(point);
    }
    let map = SpaceMap::new(dual_tgt.space.clone(), dual_src.space.clone(), assign)?;
    if !map_predicates(&map).perfect {
        return Err(Error::Integrity("induced map is not perfect".into()));
    }
    Ok((map, dual_src, dual_tgt))
}

/// Outcome of [`closed_embedding_test`]: holds iff both conditions hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedEmbeddingVerdict {
    pub holds: bool,
    /// `CE1` witnesses `(a, b)` in the target, `CE2` witnesses `(a, b)` in the source.
    pub report: Report,
}

/// For `φ: (B, η) → (A, ρ)`:
/// (1) every `a ≪_{C_ρ} b` in `A` is interpolated by some `φ(c)`;
/// (2) `φ(a) ≪_{C_ρ} φ(b)` iff some `a₁ ≪_{C_η} b₁` has the same images.
pub fn closed_embedding_test(phi: &AlgebraMorphism) -> ClosedEmbeddingVerdict {
    let (src, tgt) = (&phi.source, &phi.target);
    let (sa, ta) = (src.algebra(), tgt.algebra());
    let c_src = src.alexandroff();
    let c_tgt = tgt.alexandroff();
    let mut report = Report::new();

    let mut image: Vec<Element> = phi.table().to_vec();
    image.sort_unstable();
    image.dedup();
    let ce1 = ta
        .elements()
        .flat_map(|a| ta.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            c_tgt.way_below(a, b) && !image.iter().any(|&v| c_tgt.way_below(a, v) && c_tgt.way_below(v, b))
        });
    if let Some((a, b)) = ce1 {
        report.push(Violation::new("CE1", ta, &[a, b]));
    }

    let realized: HashSet<(Element, Element)> = sa
        .elements()
        .flat_map(|a| sa.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| c_src.way_below(a, b))
        .map(|(a, b)| (phi.apply(a), phi.apply(b)))
        .collect();
    let ce2 = sa
        .elements()
        .flat_map(|a| sa.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            let (u, v) = (phi.apply(a), phi.apply(b));
            c_tgt.way_below(u, v) != realized.contains(&(u, v))
        });
    if let Some((a, b)) = ce2 {
        report.push(Violation::new("CE2", sa, &[a, b]));
    }
    ClosedEmbeddingVerdict {
        holds: report.is_empty(),
        report,
    }
}

/// Inputs accepted by [`roundtrip_verify`].
#[derive(Clone, Debug)]
pub enum RoundtripItem {
    /// A perfect map `f: X → Y`; checks `t_Y ∘ f = Ξᵃ(Ξᵗ(f)) ∘ t_X`.
    Space(SpaceMap),
    /// A PAL-morphism `φ: A → B`; checks `λ^g_B ∘ φ = Ξᵗ(Ξᵃ(φ)) ∘ λ^g_A`.
    Algebra(AlgebraMorphism),
}

pub fn roundtrip_verify(item: &RoundtripItem) -> Result<Report> {
    match item {
        RoundtripItem::Space(f) => roundtrip_space(f),
        RoundtripItem::Algebra(phi) => roundtrip_algebra(phi),
    }
}

fn roundtrip_space(f: &SpaceMap) -> Result<Report> {
    let tx = t_map(&f.source)?;
    let ty = t_map(&f.target)?;
    let mut report = Report::new();
    for (t, label) in [(&tx, "t_X homeomorphism"), (&ty, "t_Y homeomorphism")] {
        match &t.homeomorphism {
            Some((_, _, cert)) if cert.is_empty() => {}
            _ => report.push(Violation::new(label, t.rc.algebra(), &[])),
        }
    }
    if !report.is_empty() {
        return Ok(report);
    }
    let phi = xi_t_between(f, &tx.rc, &ty.rc)?;
    let (f2, dual_y, dual_x) = xi_a_with_duals(&phi)?;
    // f2 runs from the dual of RC(X) to the dual of RC(Y)
    let tx_map = &tx.homeomorphism.as_ref().expect("checked above").1;
    let ty_map = &ty.homeomorphism.as_ref().expect("checked above").1;
    debug_assert_eq!(f2.source, dual_x.space);
    debug_assert_eq!(f2.target, dual_y.space);
    if let Some(x) = (0..f.source.point_count()).find(|&x| ty_map.assign[f.assign[x]] != f2.assign[tx_map.assign[x]]) {
        report.push(Violation::new("naturality of t", tx.rc.algebra(), &[tx.clusters[x].support]));
    }
    Ok(report)
}

fn roundtrip_algebra(phi: &AlgebraMorphism) -> Result<Report> {
    let (f, dual_a, dual_b) = xi_a_with_duals(phi)?;
    let mut report = verify_lambda_g(&phi.source, &dual_a)?;
    report.extend(verify_lambda_g(&phi.target, &dual_b)?);
    let rc_a = rc_algebra(&dual_a.space)?;
    let rc_b = rc_algebra(&dual_b.space)?;
    let phi2 = xi_t_between(&f, &rc_b, &rc_a)?;
    let sa = phi.source_algebra();
    let to_elem = |rc: &RegularClosedAlgebra, pts: PointSet| rc.from_points(pts);
    let bad = sa.elements().find(|&a| {
        let lhs = dual_b.lambda_g(phi.apply(a));
        match to_elem(&rc_a, dual_a.lambda_g(a)) {
            Some(e) => rc_b.to_points(phi2.apply(e)) != lhs,
            None => true,
        }
    });
    if let Some(a) = bad {
        report.push(Violation::new("naturality of λ^g", sa, &[a]));
    }
    Ok(report)
}
