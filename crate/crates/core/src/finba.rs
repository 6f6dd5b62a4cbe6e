//! Finite Boolean algebras realized as powersets of named atoms.
//!
//! An [`Element`] is a plain bit mask; the owning [`FiniteBooleanAlgebra`] is
//! passed explicitly to every operation that needs the width (complement, top,
//! enumeration). Masks with bits at or above the atom count are rejected by
//! [`FiniteBooleanAlgebra::check`].

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr};

use crate::error::{Error, Result};

/// Default limit on the number of atoms.
pub const DEFAULT_MAX_ATOMS: usize = 24;

/// Widest algebra representable with `u64` masks.
pub const HARD_MAX_ATOMS: usize = 63;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u64);

impl Element {
    pub const ZERO: Element = Element(0);

    pub const fn from_mask(mask: u64) -> Self {
        Element(mask)
    }

    pub const fn atom(index: usize) -> Self {
        Element(1 << index)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn has_atom(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    /// `self ∧ other ≠ 0`.
    pub const fn meets(self, other: Element) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn is_below(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn atom_count(self) -> u32 {
        self.0.count_ones()
    }

    /// Indices of the atoms below `self`, ascending.
    pub fn atom_indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// All elements below `self`, ascending by mask.
    pub fn subsets(self) -> impl Iterator<Item = Element> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur | !full).wrapping_add(1) & full)
            };
            Some(Element(cur))
        })
    }
}

impl BitOr for Element {
    type Output = Element;
    fn bitor(self, rhs: Element) -> Element {
        Element(self.0 | rhs.0)
    }
}

impl BitAnd for Element {
    type Output = Element;
    fn bitand(self, rhs: Element) -> Element {
        Element(self.0 & rhs.0)
    }
}

impl fmt::Binary for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Binary::fmt(&self.0, f)
    }
}

/// The powerset algebra on a list of distinct atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlgebra {
    names: Vec<String>,
}

impl FiniteBooleanAlgebra {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::with_cap(names, DEFAULT_MAX_ATOMS)
    }

    /// Like [`new`](Self::new) with a caller-chosen atom cap (clamped to
    /// [`HARD_MAX_ATOMS`]).
    pub fn with_cap<S: Into<String>>(names: impl IntoIterator<Item = S>, cap: usize) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Malformed("an algebra needs at least one atom".into()));
        }
        let limit = cap.min(HARD_MAX_ATOMS);
        if names.len() > limit {
            return Err(Error::CapExceeded {
                what: "atom count",
                got: names.len(),
                limit,
            });
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(FiniteBooleanAlgebra { names })
    }

    /// Algebra with atoms named `a0, a1, ...`.
    pub fn anonymous(atoms: usize) -> Result<Self> {
        Self::new((0..atoms).map(|i| format!("a{i}")))
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn zero(&self) -> Element {
        Element::ZERO
    }

    pub fn top(&self) -> Element {
        Element((1u64 << self.names.len()) - 1)
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if a.0 & !self.top().0 != 0 {
            Err(Error::WidthMismatch {
                mask: a.0,
                atoms: self.atom_count(),
            })
        } else {
            Ok(a)
        }
    }

    pub fn element_from_mask(&self, mask: u64) -> Result<Element> {
        self.check(Element(mask))
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        a | b
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        a & b
    }

    pub fn complement(&self, a: Element) -> Element {
        Element(!a.0 & self.top().0)
    }

    pub fn le(&self, a: Element, b: Element) -> bool {
        a.is_below(b)
    }

    pub fn big_join(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items.into_iter().fold(Element::ZERO, |acc, x| acc | x)
    }

    pub fn big_meet(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items.into_iter().fold(self.top(), |acc, x| acc & x)
    }

    /// Ascending atom indices of `a`; empty iff `a = 0`.
    pub fn atoms_of(&self, a: Element) -> Result<Vec<usize>> {
        Ok(self.check(a)?.atom_indices().collect())
    }

    /// Every element, ascending by mask.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..1u64 << self.names.len()).map(Element)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Element> {
        (0..self.names.len()).map(Element::atom)
    }

    pub fn atom_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_owned()))
    }

    pub fn element<S: AsRef<str>>(&self, names: &[S]) -> Result<Element> {
        names.iter().try_fold(Element::ZERO, |acc, n| {
            Ok(acc | Element::atom(self.atom_index(n.as_ref())?))
        })
    }

    /// Atom names of `a` in atom order.
    pub fn names_of(&self, a: Element) -> Vec<&str> {
        a.atom_indices()
            .filter(|&i| i < self.names.len())
            .map(|i| self.names[i].as_str())
            .collect()
    }

    /// `{p,q}`-style rendering.
    pub fn render(&self, a: Element) -> String {
        format!("{{{}}}", self.names_of(a).join(","))
    }
}
