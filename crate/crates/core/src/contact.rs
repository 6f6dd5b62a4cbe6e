//! Contact relations, non-tangential inclusion and the axiom checkers.
//!
//! On a finite powerset algebra full additivity (C4) forces every contact
//! relation to be determined by its restriction to atoms, so
//! [`ContactRelation`] stores one neighbour mask per atom and lifts it.
//! Relations that are not atom-determined (the Alexandroff extension when
//! some elements are unbounded, or arbitrary test tables) implement the same
//! [`Contact`] trait.

use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::report::{Report, Violation};

/// Element-level contact query shared by atom-backed and table-backed relations.
pub trait Contact {
    fn algebra(&self) -> &FiniteBooleanAlgebra;

    fn contact(&self, a: Element, b: Element) -> bool;

    /// `a ≪ b` iff `a` is not in contact with `b*`.
    fn way_below(&self, a: Element, b: Element) -> bool {
        !self.contact(a, self.algebra().complement(b))
    }

    /// Atom neighbour masks when the relation is the lifting of an atom relation.
    fn atom_graph(&self) -> Option<&[u64]> {
        None
    }
}

impl<T: Contact + ?Sized> Contact for &T {
    fn algebra(&self) -> &FiniteBooleanAlgebra {
        (**self).algebra()
    }
    fn contact(&self, a: Element, b: Element) -> bool {
        (**self).contact(a, b)
    }
    fn way_below(&self, a: Element, b: Element) -> bool {
        (**self).way_below(a, b)
    }
    fn atom_graph(&self) -> Option<&[u64]> {
        (**self).atom_graph()
    }
}

/// A reflexive symmetric relation on atoms, lifted to elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContactRelation {
    algebra: FiniteBooleanAlgebra,
    /// `rows[i]` has bit `j` set iff atoms `i` and `j` touch; bit `i` always set.
    rows: Vec<u64>,
}

impl ContactRelation {
    /// Builds the relation from off-diagonal atom pairs; the diagonal is implied
    /// and pairs are symmetrized.
    pub fn from_pairs(
        algebra: FiniteBooleanAlgebra,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = algebra.atom_count();
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Malformed(format!("atom pair ({i},{j}) out of range")));
            }
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        Ok(ContactRelation { algebra, rows })
    }

    /// Builds the relation from a full boolean matrix, rejecting matrices that
    /// are not reflexive and symmetric.
    pub fn from_matrix(algebra: FiniteBooleanAlgebra, matrix: &[Vec<bool>]) -> Result<Self> {
        let n = algebra.atom_count();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("contact matrix must be {n}x{n}")));
        }
        let mut rows = vec![0u64; n];
        for i in 0..n {
            if !matrix[i][i] {
                return Err(Error::Malformed(format!(
                    "atom `{}` is not in contact with itself (C1)",
                    algebra.atom_names()[i]
                )));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::Malformed(format!(
                        "contact matrix is not symmetric at ({i},{j})"
                    )));
                }
                if matrix[i][j] {
                    rows[i] |= 1 << j;
                }
            }
        }
        Ok(ContactRelation { algebra, rows })
    }

    /// Builds the relation from neighbour masks (diagonal and symmetry enforced).
    pub fn from_rows(algebra: FiniteBooleanAlgebra, rows: &[u64]) -> Result<Self> {
        let n = algebra.atom_count();
        if rows.len() != n {
            return Err(Error::Malformed(format!("expected {n} neighbour rows")));
        }
        let pairs = (0..n).flat_map(|i| {
            Element::from_mask(rows[i])
                .atom_indices()
                .map(move |j| (i, j))
                .collect::<Vec<_>>()
        });
        Self::from_pairs(algebra, pairs)
    }

    /// The smallest contact relation: overlap.
    pub fn overlap(algebra: FiniteBooleanAlgebra) -> Self {
        let n = algebra.atom_count();
        ContactRelation {
            rows: (0..n).map(|i| 1u64 << i).collect(),
            algebra,
        }
    }

    /// The largest contact relation: any two nonzero elements touch.
    pub fn complete(algebra: FiniteBooleanAlgebra) -> Self {
        let top = algebra.top().mask();
        ContactRelation {
            rows: vec![top; algebra.atom_count()],
            algebra,
        }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn atoms_touch(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Off-diagonal pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.atoms_touch(i, j))
            .collect()
    }

    /// Union of the neighbour rows of the atoms of `a`.
    pub fn neighbourhood(&self, a: Element) -> Element {
        Element::from_mask(a.atom_indices().fold(0, |acc, i| acc | self.rows[i]))
    }

    pub fn is_overlap(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Width-checked lifting: some atom below `a` touches some atom below `b`.
    pub fn lift_contact(&self, a: Element, b: Element) -> Result<bool> {
        self.algebra.check(a)?;
        self.algebra.check(b)?;
        Ok(self.contact(a, b))
    }
}

impl Contact for ContactRelation {
    fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    fn contact(&self, a: Element, b: Element) -> bool {
        self.neighbourhood(a).meets(b)
    }

    fn atom_graph(&self) -> Option<&[u64]> {
        Some(&self.rows)
    }
}

/// `(ρ_s, ρ_l)`: the smallest and the largest contact relations on `algebra`.
pub fn extremal_contacts(algebra: &FiniteBooleanAlgebra) -> (ContactRelation, ContactRelation) {
    (
        ContactRelation::overlap(algebra.clone()),
        ContactRelation::complete(algebra.clone()),
    )
}

/// An arbitrary binary relation on elements, stored as a full table.
///
/// Used for relations that are not atom-determined and as a brute-force
/// oracle. Limited to six atoms (4096 element pairs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementRelation {
    algebra: FiniteBooleanAlgebra,
    /// Row `a` is a bitset over the `2^n` elements (at most 64 of them).
    rows: Vec<u64>,
}

impl ElementRelation {
    pub const MAX_ATOMS: usize = 6;

    pub fn from_fn(
        algebra: FiniteBooleanAlgebra,
        mut rel: impl FnMut(Element, Element) -> bool,
    ) -> Result<Self> {
        if algebra.atom_count() > Self::MAX_ATOMS {
            return Err(Error::CapExceeded {
                what: "table relation atom count",
                got: algebra.atom_count(),
                limit: Self::MAX_ATOMS,
            });
        }
        let rows = algebra
            .elements()
            .map(|a| {
                algebra
                    .elements()
                    .filter(|&b| rel(a, b))
                    .fold(0u64, |acc, b| acc | 1 << b.mask())
            })
            .collect();
        Ok(ElementRelation { algebra, rows })
    }

    pub fn tabulate(c: &impl Contact) -> Result<Self> {
        Self::from_fn(c.algebra().clone(), |a, b| c.contact(a, b))
    }

    /// The atom-level restriction of this relation, if it is reflexive on atoms.
    pub fn atom_restriction(&self) -> Result<ContactRelation> {
        let n = self.algebra.atom_count();
        let matrix: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.contact(Element::atom(i), Element::atom(j)))
                    .collect()
            })
            .collect();
        ContactRelation::from_matrix(self.algebra.clone(), &matrix)
    }
}

impl Contact for ElementRelation {
    fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    fn contact(&self, a: Element, b: Element) -> bool {
        self.rows[a.mask() as usize] >> b.mask() & 1 == 1
    }
}

/// Which family of axioms [`check_axioms`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomSystem {
    /// C1–C4.
    Ca,
    /// C1–C6.
    Nca,
    /// CON only.
    Con,
    /// The non-tangential inclusion axioms ≪1–≪7.
    Ll,
}

/// Exhaustively checks `system` on every element instance.
///
/// Each violated axiom is reported once, with the lexicographically smallest
/// witness tuple (by mask).
pub fn check_axioms(c: &impl Contact, system: AxiomSystem) -> Report {
    let mut report = Report::new();
    match system {
        AxiomSystem::Ca => check_ca(c, &mut report),
        AxiomSystem::Nca => {
            check_ca(c, &mut report);
            check_c5(c, &mut report);
            check_c6(c, &mut report);
        }
        AxiomSystem::Con => check_con(c, &mut report),
        AxiomSystem::Ll => check_ll(c, &mut report),
    }
    report
}

fn first<T>(iter: impl Iterator<Item = T>) -> Option<T> {
    iter.into_iter().next()
}

fn record(report: &mut Report, law: &'static str, alg: &FiniteBooleanAlgebra, w: Option<Vec<Element>>) {
    if let Some(w) = w {
        report.push(Violation::new(law, alg, &w));
    }
}

fn pairs(alg: &FiniteBooleanAlgebra) -> impl Iterator<Item = (Element, Element)> + '_ {
    alg.elements().flat_map(move |a| alg.elements().map(move |b| (a, b)))
}

fn triples(alg: &FiniteBooleanAlgebra) -> impl Iterator<Item = (Element, Element, Element)> + '_ {
    pairs(alg).flat_map(move |(a, b)| alg.elements().map(move |c| (a, b, c)))
}

fn check_ca(c: &impl Contact, report: &mut Report) {
    let alg = c.algebra();
    let c1 = first(alg.elements().filter(|&a| !a.is_zero() && !c.contact(a, a))).map(|a| vec![a]);
    record(report, "C1", alg, c1);
    let c2 = first(pairs(alg).filter(|&(a, b)| c.contact(a, b) && (a.is_zero() || b.is_zero())))
        .map(|(a, b)| vec![a, b]);
    record(report, "C2", alg, c2);
    let c3 = first(pairs(alg).filter(|&(a, b)| c.contact(a, b) && !c.contact(b, a)))
        .map(|(a, b)| vec![a, b]);
    record(report, "C3", alg, c3);
    let c4 = first(triples(alg).filter(|&(a, b, d)| {
        c.contact(a, alg.join(b, d)) != (c.contact(a, b) || c.contact(a, d))
    }))
    .map(|(a, b, d)| vec![a, b, d]);
    record(report, "C4", alg, c4);
}

fn check_c5(c: &impl Contact, report: &mut Report) {
    let alg = c.algebra();
    let w = first(pairs(alg).filter(|&(a, b)| {
        !c.contact(a, b)
            && !alg
                .elements()
                .any(|d| !c.contact(a, d) && !c.contact(b, alg.complement(d)))
    }))
    .map(|(a, b)| vec![a, b]);
    record(report, "C5", alg, w);
}

fn check_c6(c: &impl Contact, report: &mut Report) {
    let alg = c.algebra();
    let w = first(alg.elements().filter(|&a| {
        a != alg.top() && !alg.elements().any(|b| !b.is_zero() && !c.contact(b, a))
    }))
    .map(|a| vec![a]);
    record(report, "C6", alg, w);
}

fn check_con(c: &impl Contact, report: &mut Report) {
    let alg = c.algebra();
    let w = first(alg.elements().filter(|&a| {
        !a.is_zero() && a != alg.top() && !c.contact(a, alg.complement(a))
    }))
    .map(|a| vec![a]);
    record(report, "CON", alg, w);
}

fn check_ll(c: &impl Contact, report: &mut Report) {
    let alg = c.algebra();
    let wb = |a, b| c.way_below(a, b);

    let l1 = first(pairs(alg).filter(|&(a, b)| wb(a, b) && !alg.le(a, b))).map(|(a, b)| vec![a, b]);
    record(report, "LL1", alg, l1);

    let l2 = (!wb(alg.zero(), alg.zero())).then(|| vec![alg.zero(), alg.zero()]);
    record(report, "LL2", alg, l2);

    // a ≤ b ≪ c ≤ t ⇒ a ≪ t, with b ranging over supersets of a and t over supersets of c.
    let supersets = move |x: Element| {
        alg.complement(x).subsets().map(move |extra| x | extra)
    };
    let l3 = first(alg.elements().flat_map(|a| {
        supersets(a).flat_map(move |b| {
            alg.elements()
                .filter(move |&cc| wb(b, cc))
                .flat_map(move |cc| supersets(cc).map(move |t| (a, b, cc, t)))
        })
    }).filter(|&(a, _, _, t)| !wb(a, t)))
    .map(|(a, b, cc, t)| vec![a, b, cc, t]);
    record(report, "LL3", alg, l3);

    let l4 = first(triples(alg).filter(|&(a, b, cc)| wb(a, cc) && wb(b, cc) && !wb(alg.join(a, b), cc)))
        .map(|(a, b, cc)| vec![a, b, cc]);
    record(report, "LL4", alg, l4);

    let l5 = first(pairs(alg).filter(|&(a, cc)| {
        wb(a, cc) && !alg.elements().any(|b| wb(a, b) && wb(b, cc))
    }))
    .map(|(a, cc)| vec![a, cc]);
    record(report, "LL5", alg, l5);

    let l6 = first(alg.elements().filter(|&a| {
        !a.is_zero() && !alg.elements().any(|b| !b.is_zero() && wb(b, a))
    }))
    .map(|a| vec![a]);
    record(report, "LL6", alg, l6);

    let l7 = first(pairs(alg).filter(|&(a, b)| {
        wb(a, b) && !wb(alg.complement(b), alg.complement(a))
    }))
    .map(|(a, b)| vec![a, b]);
    record(report, "LL7", alg, l7);
}

/// Whether `perm` (atom `i` ↦ atom `perm[i]`) carries `r1` onto `r2`.
pub fn is_ca_isomorphism(r1: &ContactRelation, r2: &ContactRelation, perm: &[usize]) -> bool {
    let n = r1.rows.len();
    if r2.rows.len() != n || perm.len() != n {
        return false;
    }
    let image = perm.iter().fold(0u64, |acc, &t| acc | 1 << t);
    image == r2.algebra.top().mask()
        && (0..n).all(|i| (0..n).all(|j| r1.atoms_touch(i, j) == r2.atoms_touch(perm[i], perm[j])))
}

/// Largest atom count accepted by [`ca_isomorphic`].
pub const ISOMORPHISM_MAX_ATOMS: usize = 10;

/// Searches for an atom permutation `perm` (atom `i` of `r1` ↦ atom `perm[i]`
/// of `r2`) inducing a contact-preserving Boolean isomorphism.
pub fn ca_isomorphic(r1: &ContactRelation, r2: &ContactRelation) -> Result<Option<Vec<usize>>> {
    let n = r1.algebra().atom_count();
    for r in [r1, r2] {
        let got = r.algebra().atom_count();
        if got > ISOMORPHISM_MAX_ATOMS {
            return Err(Error::CapExceeded {
                what: "isomorphism search atom count",
                got,
                limit: ISOMORPHISM_MAX_ATOMS,
            });
        }
    }
    if r2.algebra().atom_count() != n {
        return Ok(None);
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u64;
    Ok(extend_perm(r1, r2, &mut perm, &mut used).then_some(perm))
}

fn extend_perm(r1: &ContactRelation, r2: &ContactRelation, perm: &mut Vec<usize>, used: &mut u64) -> bool {
    let i = perm.len();
    let n = r1.rows.len();
    if i == n {
        return true;
    }
    for target in 0..n {
        if *used >> target & 1 == 1 || r1.rows[i].count_ones() != r2.rows[target].count_ones() {
            continue;
        }
        let consistent = perm
            .iter()
            .enumerate()
            .all(|(k, &tk)| r1.atoms_touch(i, k) == r2.atoms_touch(target, tk));
        if !consistent {
            continue;
        }
        perm.push(target);
        *used |= 1 << target;
        if extend_perm(r1, r2, perm, used) {
            return true;
        }
        perm.pop();
        *used &= !(1 << target);
    }
    false
}
