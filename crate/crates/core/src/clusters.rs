//! Clusters: maximal pairwise-touching, join-prime sets of elements.
//!
//! On a finite powerset algebra every cluster is upward closed and join-prime,
//! hence the up-closure of the set of atoms it contains (its *support*). Two
//! enumeration routes share one output contract: a pivoting clique search on
//! the atom contact graph for atom-backed relations, and a brute-force scan
//! over all atom supports for relations given element-wise.

use crate::contact::Contact;
use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::lca::LocalContactAlgebra;

/// Largest atom count for the brute-force route (`2^16` elements).
pub const TABLE_MAX_ATOMS: usize = 16;

/// A set of elements of one algebra, as a bitset indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(alg: &FiniteBooleanAlgebra) -> Self {
        let len = alg.element_count();
        ElementSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_predicate(alg: &FiniteBooleanAlgebra, mut pred: impl FnMut(Element) -> bool) -> Self {
        let mut set = Self::empty(alg);
        for a in alg.elements() {
            if pred(a) {
                set.insert(a);
            }
        }
        set
    }

    pub fn insert(&mut self, a: Element) {
        let i = a.mask() as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, a: Element) -> bool {
        let i = a.mask() as usize;
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len as u64)
            .map(Element::from_mask)
            .filter(|&a| self.contains(a))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// A cluster, identified by its atom support `S`; its elements are all `b`
/// with `b ∧ S ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cluster {
    pub support: Element,
}

impl Cluster {
    pub fn contains(&self, b: Element) -> bool {
        b.meets(self.support)
    }

    pub fn elements<'a>(&'a self, alg: &'a FiniteBooleanAlgebra) -> impl Iterator<Item = Element> + 'a {
        alg.elements().filter(move |&b| self.contains(b))
    }

    pub fn element_set(&self, alg: &FiniteBooleanAlgebra) -> ElementSet {
        ElementSet::from_predicate(alg, |b| self.contains(b))
    }
}

/// Outcome of [`is_cluster`]: the first failed condition and its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterVerdict {
    Cluster,
    Empty,
    /// Two members not in contact.
    K1 { a: Element, b: Element },
    /// `a ∨ b` is a member but neither `a` nor `b` is.
    K2 { a: Element, b: Element },
    /// `a` touches every member but is not one.
    K3 { a: Element },
}

impl ClusterVerdict {
    pub fn holds(self) -> bool {
        self == ClusterVerdict::Cluster
    }

    pub fn condition(self) -> Option<&'static str> {
        match self {
            ClusterVerdict::Cluster => None,
            ClusterVerdict::Empty => Some("nonempty"),
            ClusterVerdict::K1 { .. } => Some("K1"),
            ClusterVerdict::K2 { .. } => Some("K2"),
            ClusterVerdict::K3 { .. } => Some("K3"),
        }
    }
}

/// Checks K1–K3 for `sigma` directly against the element-level relation.
pub fn is_cluster(c: &impl Contact, sigma: &ElementSet) -> ClusterVerdict {
    let alg = c.algebra();
    if sigma.is_empty() {
        return ClusterVerdict::Empty;
    }
    let members: Vec<Element> = sigma.iter().collect();
    for &a in &members {
        for &b in &members {
            if !c.contact(a, b) {
                return ClusterVerdict::K1 { a, b };
            }
        }
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if sigma.contains(a | b) && !sigma.contains(a) && !sigma.contains(b) {
                return ClusterVerdict::K2 { a, b };
            }
        }
    }
    for a in alg.elements() {
        if !sigma.contains(a) && members.iter().all(|&b| c.contact(a, b)) {
            return ClusterVerdict::K3 { a };
        }
    }
    ClusterVerdict::Cluster
}

/// All clusters, sorted by support mask.
///
/// Atom-backed relations go through [`clusters_by_cliques`]; everything else
/// through [`clusters_by_grills`].
pub fn enumerate_clusters(c: &impl Contact) -> Result<Vec<Cluster>> {
    match c.atom_graph() {
        Some(rows) => Ok(clusters_by_cliques(rows)),
        None => clusters_by_grills(c),
    }
}

/// Clusters of the lifting of an atom relation given by neighbour masks.
///
/// The up-closure of a clique `S` is pairwise touching and join-prime; it is
/// maximal (K3) exactly when some atom of `S` has closed neighbourhood `S`.
/// Such cliques are maximal, so the candidates come from a pivoting
/// Bron–Kerbosch search.
pub fn clusters_by_cliques(rows: &[u64]) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = maximal_cliques(rows)
        .into_iter()
        .filter(|&s| {
            Element::from_mask(s)
                .atom_indices()
                .any(|i| rows[i] == s)
        })
        .map(|s| Cluster {
            support: Element::from_mask(s),
        })
        .collect();
    out.sort();
    out
}

/// Maximal cliques of the graph whose neighbour masks are `rows` (self-loops ignored).
pub fn maximal_cliques(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let adj: Vec<u64> = rows
        .iter()
        .enumerate()
        .map(|(i, &r)| r & !(1u64 << i))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut out);
    out
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let px = p | x;
    let pivot = Element::from_mask(px)
        .atom_indices()
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("P is nonempty");
    let candidates = p & !adj[pivot];
    for v in Element::from_mask(candidates).atom_indices() {
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Brute force: every grill is the up-closure of an atom set, so test each
/// nonempty atom set with [`is_cluster`].
pub fn clusters_by_grills(c: &impl Contact) -> Result<Vec<Cluster>> {
    let alg = c.algebra();
    let n = alg.atom_count();
    if n > TABLE_MAX_ATOMS {
        return Err(Error::CapExceeded {
            what: "brute-force cluster enumeration atom count",
            got: n,
            limit: TABLE_MAX_ATOMS,
        });
    }
    Ok(alg
        .elements()
        .skip(1)
        .map(|support| Cluster { support })
        .filter(|cl| is_cluster(c, &cl.element_set(alg)).holds())
        .collect())
}

/// Clusters of `(B, C_ρ)` that contain a bounded element.
pub fn bounded_clusters(l: &LocalContactAlgebra) -> Result<Vec<Cluster>> {
    Ok(enumerate_clusters(&l.alexandroff())?
        .into_iter()
        .filter(|cl| cl.support.meets(l.ideal.generator))
        .collect())
}
