//! Local contact algebras `(B, ρ, 𝔹)` with a principal ideal of bounded
//! elements, their Alexandroff extension `C_ρ` and the point at infinity.

use crate::clusters::{is_cluster, Cluster, ClusterVerdict, ElementSet};
use crate::contact::{check_axioms, AxiomSystem, Contact, ContactRelation};
use crate::duality::AlgebraMorphism;
use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::report::{Report, Violation};

/// The ideal `↓generator`. Every ideal of a finite Boolean algebra is principal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundedIdeal {
    pub generator: Element,
}

impl BoundedIdeal {
    pub fn contains(&self, a: Element) -> bool {
        a.is_below(self.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        self.generator.subsets()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalContactAlgebra {
    pub contact: ContactRelation,
    pub ideal: BoundedIdeal,
}

impl LocalContactAlgebra {
    pub fn new(contact: ContactRelation, generator: Element) -> Result<Self> {
        contact.algebra().check(generator)?;
        Ok(LocalContactAlgebra {
            contact,
            ideal: BoundedIdeal { generator },
        })
    }

    /// `(B, C, B)`: every element bounded.
    pub fn compact(contact: ContactRelation) -> Self {
        let generator = contact.algebra().top();
        LocalContactAlgebra {
            contact,
            ideal: BoundedIdeal { generator },
        }
    }

    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        self.contact.algebra()
    }

    pub fn is_bounded(&self, a: Element) -> bool {
        self.ideal.contains(a)
    }

    /// `1 ∈ 𝔹`.
    pub fn is_compact(&self) -> bool {
        self.ideal.generator == self.algebra().top()
    }

    pub fn alexandroff(&self) -> AlexandroffExtension<'_> {
        AlexandroffExtension { lca: self }
    }
}

/// Checks C1–C4 for `ρ` and BC1–BC3 exhaustively.
pub fn check_lca_axioms(l: &LocalContactAlgebra) -> Report {
    let mut report = check_axioms(&l.contact, AxiomSystem::Ca);
    let alg = l.algebra();
    let rho = &l.contact;
    let bounded = || l.ideal.elements();

    // BC1: a ∈ 𝔹, a ≪ c ⇒ a ≪ b ≪ c for some bounded b.
    let bc1 = bounded()
        .flat_map(|a| alg.elements().map(move |c| (a, c)))
        .find(|&(a, c)| {
            rho.way_below(a, c) && !bounded().any(|b| rho.way_below(a, b) && rho.way_below(b, c))
        });
    if let Some((a, c)) = bc1 {
        report.push(Violation::new("BC1", alg, &[a, c]));
    }

    // BC2: a ρ b ⇒ a ρ (c ∧ b) for some bounded c.
    let bc2 = alg
        .elements()
        .flat_map(|a| alg.elements().map(move |b| (a, b)))
        .find(|&(a, b)| rho.contact(a, b) && !bounded().any(|c| rho.contact(a, c & b)));
    if let Some((a, b)) = bc2 {
        report.push(Violation::new("BC2", alg, &[a, b]));
    }

    // BC3: a ≠ 0 ⇒ b ≪ a for some nonzero bounded b.
    let bc3 = alg
        .elements()
        .find(|&a| !a.is_zero() && !bounded().any(|b| !b.is_zero() && rho.way_below(b, a)));
    if let Some(a) = bc3 {
        report.push(Violation::new("BC3", alg, &[a]));
    }
    report
}

/// `a C_ρ b` iff `a ρ b` or both `a` and `b` are unbounded.
///
/// Not atom-determined unless `1 ∈ 𝔹`, so contact is evaluated element-wise.
#[derive(Clone, Copy, Debug)]
pub struct AlexandroffExtension<'a> {
    lca: &'a LocalContactAlgebra,
}

impl AlexandroffExtension<'_> {
    pub fn lca(&self) -> &LocalContactAlgebra {
        self.lca
    }

    /// The normal-contact-algebra axioms C1–C6 evaluated on this relation.
    pub fn certificate(&self) -> Report {
        check_axioms(self, AxiomSystem::Nca)
    }
}

impl Contact for AlexandroffExtension<'_> {
    fn algebra(&self) -> &FiniteBooleanAlgebra {
        self.lca.algebra()
    }

    fn contact(&self, a: Element, b: Element) -> bool {
        self.lca.contact.contact(a, b) || (!self.lca.is_bounded(a) && !self.lca.is_bounded(b))
    }

    fn atom_graph(&self) -> Option<&[u64]> {
        if self.lca.is_compact() {
            self.lca.contact.atom_graph()
        } else {
            None
        }
    }
}

pub fn alexandroff_extension(l: &LocalContactAlgebra) -> AlexandroffExtension<'_> {
    l.alexandroff()
}

/// `σ_∞` together with the outcome of checking K1–K3 for it under `C_ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaInfinity {
    pub cluster: Cluster,
    pub verdict: ClusterVerdict,
}

/// The set of unbounded elements, absent when `1 ∈ 𝔹`.
pub fn sigma_infinity(l: &LocalContactAlgebra) -> Option<SigmaInfinity> {
    if l.is_compact() {
        return None;
    }
    let alg = l.algebra();
    // b ∉ 𝔹 iff b meets the complement of the generator
    let cluster = Cluster {
        support: alg.complement(l.ideal.generator),
    };
    let set = ElementSet::from_predicate(alg, |b| !l.is_bounded(b));
    let verdict = is_cluster(&l.alexandroff(), &set);
    Some(SigmaInfinity { cluster, verdict })
}

/// The companion `(A, ρ_s, 𝔹)` and the identity-carried map into it.
pub fn to_rho_s(l: &LocalContactAlgebra) -> Result<(LocalContactAlgebra, AlgebraMorphism)> {
    let report = check_lca_axioms(l);
    if !report.is_empty() {
        return Err(Error::AxiomsFailed {
            what: "local contact algebra",
            report,
        });
    }
    let companion = LocalContactAlgebra {
        contact: ContactRelation::overlap(l.algebra().clone()),
        ideal: l.ideal,
    };
    let map = AlgebraMorphism::identity_carried(l.clone(), companion.clone())?;
    Ok((companion, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::extremal_contacts;
    use crate::duality::{check_morphism, MorphismKind};

    fn pq() -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(["p", "q"]).unwrap()
    }

    #[test]
    fn normal_algebra_with_improper_ideal_is_local() {
        for n in 1..=3 {
            let alg = FiniteBooleanAlgebra::anonymous(n).unwrap();
            let (s, _) = extremal_contacts(&alg);
            assert!(check_axioms(&s, AxiomSystem::Nca).is_empty());
            assert!(check_lca_axioms(&LocalContactAlgebra::compact(s)).is_empty());
        }
    }

    #[test]
    fn overlap_with_proper_generator_fails_bc3_at_outside_atom() {
        let alg = pq();
        let s = ContactRelation::overlap(alg.clone());
        let l = LocalContactAlgebra::new(s, alg.element(&["p"]).unwrap()).unwrap();
        let r = check_lca_axioms(&l);
        assert!(r.violates("BC3"));
        assert_eq!(r.witness("BC3").unwrap(), &[alg.element(&["q"]).unwrap()]);
    }

    #[test]
    fn compact_extension_equals_rho() {
        let alg = FiniteBooleanAlgebra::anonymous(3).unwrap();
        let rho = ContactRelation::from_pairs(alg.clone(), [(0, 1)]).unwrap();
        let l = LocalContactAlgebra::compact(rho.clone());
        let c = l.alexandroff();
        for a in alg.elements() {
            for b in alg.elements() {
                assert_eq!(c.contact(a, b), rho.contact(a, b));
            }
        }
        assert!(c.atom_graph().is_some());
    }

    #[test]
    fn unbounded_pair_touches_under_extension() {
        let alg = pq();
        let l = LocalContactAlgebra::new(
            ContactRelation::overlap(alg.clone()),
            alg.element(&["p"]).unwrap(),
        )
        .unwrap();
        let c = l.alexandroff();
        let q = alg.element(&["q"]).unwrap();
        assert!(c.contact(q, alg.top()));
        assert!(c.atom_graph().is_none());
        // bounded a with a(-ρ)b, b bounded
        let p = alg.element(&["p"]).unwrap();
        assert!(!c.contact(p, Element::ZERO));
        assert!(!c.contact(p, q));
    }

    #[test]
    fn sigma_infinity_examples() {
        let alg = pq();
        let s = ContactRelation::overlap(alg.clone());
        assert!(sigma_infinity(&LocalContactAlgebra::compact(s.clone())).is_none());

        let l = LocalContactAlgebra::new(s, alg.element(&["p"]).unwrap()).unwrap();
        let si = sigma_infinity(&l).unwrap();
        assert_eq!(si.verdict, ClusterVerdict::Cluster);
        let members: Vec<Element> = si.cluster.elements(&alg).collect();
        assert_eq!(
            members,
            vec![alg.element(&["q"]).unwrap(), alg.top()]
        );
        assert!(!si.cluster.contains(Element::ZERO));
    }

    #[test]
    fn to_rho_s_is_idempotent_on_overlap_and_refuses_invalid_input() {
        let alg = pq();
        let l = LocalContactAlgebra::compact(ContactRelation::overlap(alg.clone()));
        let (companion, map) = to_rho_s(&l).unwrap();
        assert_eq!(companion, l);
        assert!(check_lca_axioms(&companion).is_empty());
        assert!(check_morphism(&map, MorphismKind::Pal).is_empty());

        let bad = LocalContactAlgebra::compact(ContactRelation::complete(alg));
        assert!(matches!(to_rho_s(&bad), Err(Error::AxiomsFailed { .. })));
    }
}
