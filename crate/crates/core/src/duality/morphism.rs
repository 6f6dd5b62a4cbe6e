//! Morphisms between local contact algebras, their axiom checker, the
//! ˇ-modification and ⋄-composition.

use crate::contact::Contact;
use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::lca::LocalContactAlgebra;
use crate::report::{Report, Violation};

/// A total function on elements, stored as a table indexed by source mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraMorphism {
    pub source: LocalContactAlgebra,
    pub target: LocalContactAlgebra,
    table: Vec<Element>,
}

impl AlgebraMorphism {
    pub fn new(source: LocalContactAlgebra, target: LocalContactAlgebra, table: Vec<Element>) -> Result<Self> {
        if table.len() != source.algebra().element_count() {
            return Err(Error::Malformed(format!(
                "morphism table has {} entries, source has {} elements",
                table.len(),
                source.algebra().element_count()
            )));
        }
        for &v in &table {
            target.algebra().check(v)?;
        }
        Ok(AlgebraMorphism { source, target, table })
    }

    pub fn from_fn(
        source: LocalContactAlgebra,
        target: LocalContactAlgebra,
        f: impl FnMut(Element) -> Element,
    ) -> Result<Self> {
        let table = source.algebra().elements().map(f).collect();
        Self::new(source, target, table)
    }

    pub fn identity(l: &LocalContactAlgebra) -> Self {
        AlgebraMorphism {
            source: l.clone(),
            target: l.clone(),
            table: l.algebra().elements().collect(),
        }
    }

    /// `a ↦ a` between two structures on the same Boolean algebra.
    pub fn identity_carried(source: LocalContactAlgebra, target: LocalContactAlgebra) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::DomainMismatch(
                "identity-carried map needs the same underlying algebra".into(),
            ));
        }
        let table = source.algebra().elements().collect();
        Ok(AlgebraMorphism { source, target, table })
    }

    pub fn apply(&self, a: Element) -> Element {
        self.table[a.mask() as usize]
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn source_algebra(&self) -> &FiniteBooleanAlgebra {
        self.source.algebra()
    }

    pub fn target_algebra(&self) -> &FiniteBooleanAlgebra {
        self.target.algebra()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.table.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.table.len()
    }
}

/// Which axiom family [`check_morphism`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// PAL1–PAL6 against the stored ideals.
    Pal,
    /// DVAL1–DVAL4: both ideals treated as the whole algebra.
    Dval,
}

/// Exhaustive check of the morphism axioms; each failed law carries its
/// first witness (source elements, except PAL4 whose witness is a target element).
pub fn check_morphism(phi: &AlgebraMorphism, kind: MorphismKind) -> Report {
    let (sa, ta) = (phi.source_algebra(), phi.target_algebra());
    let (rho, eta) = (&phi.source.contact, &phi.target.contact);
    let mut report = Report::new();
    let names = match kind {
        MorphismKind::Pal => ["PAL1", "PAL2", "PAL3", "PAL6"],
        MorphismKind::Dval => ["DVAL1", "DVAL2", "DVAL3", "DVAL4"],
    };
    let bounded = |a: Element| kind == MorphismKind::Dval || phi.source.is_bounded(a);

    if !phi.apply(Element::ZERO).is_zero() {
        report.push(Violation::new(names[0], sa, &[Element::ZERO]));
    }

    let pairs = || sa.elements().flat_map(move |a| sa.elements().map(move |b| (a, b)));
    if let Some((a, b)) = pairs().find(|&(a, b)| phi.apply(a & b) != phi.apply(a) & phi.apply(b)) {
        report.push(Violation::new(names[1], sa, &[a, b]));
    }

    let pal3 = pairs().find(|&(a, b)| {
        bounded(a)
            && rho.way_below(a, b)
            && !eta.way_below(ta.complement(phi.apply(sa.complement(a))), phi.apply(b))
    });
    if let Some((a, b)) = pal3 {
        report.push(Violation::new(names[2], sa, &[a, b]));
    }

    if kind == MorphismKind::Pal {
        let image_of_bounded: Vec<Element> = phi.source.ideal.elements().map(|a| phi.apply(a)).collect();
        let pal4 = phi
            .target
            .ideal
            .elements()
            .find(|&b| !image_of_bounded.iter().any(|&v| b.is_below(v)));
        if let Some(b) = pal4 {
            report.push(Violation::new("PAL4", ta, &[b]));
        }
        let pal5 = phi
            .source
            .ideal
            .elements()
            .find(|&a| !phi.target.is_bounded(phi.apply(a)));
        if let Some(a) = pal5 {
            report.push(Violation::new("PAL5", sa, &[a]));
        }
    }

    let modified = modification_as(phi, kind);
    if let Some(a) = sa.elements().find(|&a| modified.apply(a) != phi.apply(a)) {
        report.push(Violation::new(names[3], sa, &[a]));
    }
    report
}

/// `ψˇ(a) = ⋁{ψ(b) | b ≪_{C_ρ} a}`.
pub fn modification(phi: &AlgebraMorphism) -> AlgebraMorphism {
    modification_as(phi, MorphismKind::Pal)
}

/// The ˇ-modification for [`MorphismKind::Pal`], the ˘-modification
/// (supremum over `≪_ρ`) for [`MorphismKind::Dval`].
pub fn modification_as(phi: &AlgebraMorphism, kind: MorphismKind) -> AlgebraMorphism {
    let c = phi.source.alexandroff();
    let rho = &phi.source.contact;
    let way_below = |b: Element, a: Element| match kind {
        MorphismKind::Pal => c.way_below(b, a),
        MorphismKind::Dval => rho.way_below(b, a),
    };
    // contact is reflexive, so b ≪ a forces b ≤ a
    let table = phi
        .source_algebra()
        .elements()
        .map(|a| {
            a.subsets()
                .filter(|&b| way_below(b, a))
                .fold(Element::ZERO, |acc, b| acc | phi.apply(b))
        })
        .collect();
    AlgebraMorphism {
        source: phi.source.clone(),
        target: phi.target.clone(),
        table,
    }
}

/// `φ₂ ⋄ φ₁ = (φ₂ ∘ φ₁)ˇ`.
pub fn compose(phi2: &AlgebraMorphism, phi1: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    compose_as(phi2, phi1, MorphismKind::Pal)
}

pub fn compose_as(phi2: &AlgebraMorphism, phi1: &AlgebraMorphism, kind: MorphismKind) -> Result<AlgebraMorphism> {
    let plain = compose_plain(phi2, phi1)?;
    Ok(modification_as(&plain, kind))
}

/// Plain table composition `φ₂ ∘ φ₁`.
pub fn compose_plain(phi2: &AlgebraMorphism, phi1: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    if phi1.target != phi2.source {
        return Err(Error::DomainMismatch(
            "the first morphism's target is not the second morphism's source".into(),
        ));
    }
    Ok(AlgebraMorphism {
        source: phi1.source.clone(),
        target: phi2.target.clone(),
        table: phi1.table.iter().map(|&v| phi2.apply(v)).collect(),
    })
}
