//! Finite topological spaces in minimal-neighbourhood form and their regular
//! closed / regular open algebras.
//!
//! Point sets are `u64` masks over the point indices of the owning space.

use std::collections::HashMap;

use crate::contact::{Contact, ContactRelation};
use crate::error::{Error, Result};
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::lca::LocalContactAlgebra;
use crate::report::{Report, Violation};

pub type PointSet = u64;

/// Largest space accepted by the regular-set enumerations.
pub const RC_MAX_POINTS: usize = 16;

/// Largest space representable at all.
pub const MAX_POINTS: usize = 63;

/// Pair checks in certificates run over all pairs up to this many members.
const PAIR_CHECK_LIMIT: usize = 1024;

fn bits(m: PointSet) -> impl Iterator<Item = usize> {
    Element::from_mask(m).atom_indices()
}

/// A finite space given by the minimal open neighbourhood `U_x` of each point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    names: Vec<String>,
    min_nbhd: Vec<PointSet>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, min_nbhd: Vec<PointSet>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("a space needs at least one point".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "point count",
                got: n,
                limit: MAX_POINTS,
            });
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if min_nbhd.len() != n {
            return Err(Error::Malformed(format!("expected {n} minimal neighbourhoods")));
        }
        let all = (1u64 << n) - 1;
        for (x, &u) in min_nbhd.iter().enumerate() {
            if u & !all != 0 {
                return Err(Error::Malformed(format!("U_{} mentions unknown points", names[x])));
            }
            if u >> x & 1 == 0 {
                return Err(Error::Malformed(format!("{} is not in its own neighbourhood", names[x])));
            }
            for y in bits(u) {
                if min_nbhd[y] & !u != 0 {
                    return Err(Error::Malformed(format!(
                        "{} lies in U_{} but U_{} is not contained in U_{}",
                        names[y], names[x], names[y], names[x]
                    )));
                }
            }
        }
        Ok(FiniteSpace { names, min_nbhd })
    }

    /// The discrete space on `n` points named `x0, x1, ...`.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("x{i}")), (0..n).map(|i| 1u64 << i).collect())
    }

    pub fn point_count(&self) -> usize {
        self.names.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.names
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.min_nbhd
    }

    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.min_nbhd[x]
    }

    pub fn all(&self) -> PointSet {
        (1u64 << self.names.len()) - 1
    }

    pub fn point_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_owned()))
    }

    pub fn point_set<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        names
            .iter()
            .try_fold(0u64, |acc, n| Ok(acc | 1 << self.point_index(n.as_ref())?))
    }

    pub fn names_of(&self, m: PointSet) -> Vec<&str> {
        bits(m).map(|i| self.names[i].as_str()).collect()
    }

    /// `cl(M) = {x : U_x ∩ M ≠ ∅}`.
    pub fn closure(&self, m: PointSet) -> PointSet {
        self.min_nbhd
            .iter()
            .enumerate()
            .filter(|&(_, &u)| u & m != 0)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    /// `int(M) = {x : U_x ⊆ M}`.
    pub fn interior(&self, m: PointSet) -> PointSet {
        self.min_nbhd
            .iter()
            .enumerate()
            .filter(|&(_, &u)| u & !m == 0)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    pub fn is_open(&self, m: PointSet) -> bool {
        self.interior(m) == m
    }

    pub fn is_closed(&self, m: PointSet) -> bool {
        self.closure(m) == m
    }

    pub fn is_regular_closed(&self, m: PointSet) -> bool {
        self.closure(self.interior(m)) == m
    }

    pub fn is_regular_open(&self, m: PointSet) -> bool {
        self.interior(self.closure(m)) == m
    }

    pub fn is_discrete(&self) -> bool {
        self.min_nbhd.iter().enumerate().all(|(x, &u)| u == 1 << x)
    }

    /// The subspace on `points` (indices kept in ascending order) with
    /// neighbourhoods `U_x ∩ points`.
    pub fn subspace(&self, points: PointSet) -> Result<(FiniteSpace, Vec<usize>)> {
        let points = points & self.all();
        let embed: Vec<usize> = bits(points).collect();
        let restrict = |m: PointSet| -> PointSet {
            embed
                .iter()
                .enumerate()
                .filter(|&(_, &y)| m >> y & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let names = embed.iter().map(|&y| self.names[y].clone());
        let nbhd = embed.iter().map(|&y| restrict(self.min_nbhd[y])).collect();
        Ok((FiniteSpace::new(names, nbhd)?, embed))
    }

    fn check_points(&self, m: PointSet) -> Result<PointSet> {
        if m & !self.all() != 0 {
            Err(Error::Malformed(format!("point set {m:#x} mentions unknown points")))
        } else {
            Ok(m)
        }
    }
}

/// `(cl(M), int(M))`.
pub fn closure_interior(x: &FiniteSpace, m: PointSet) -> Result<(PointSet, PointSet)> {
    x.check_points(m)?;
    Ok((x.closure(m), x.interior(m)))
}

/// `RC(X)` with its standard contact, exported as an atom-backed contact algebra.
#[derive(Clone, Debug)]
pub struct RegularClosedAlgebra {
    pub space: FiniteSpace,
    /// Every regular closed set, ascending by mask.
    pub members: Vec<PointSet>,
    /// Point sets of the RC-atoms; atom `i` of `contact` is `atom_sets[i]`.
    pub atom_sets: Vec<PointSet>,
    /// `F ρ_X G` iff `F ∩ G ≠ ∅`.
    pub contact: ContactRelation,
}

impl RegularClosedAlgebra {
    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        self.contact.algebra()
    }

    /// The point set of an element (union of its atoms).
    pub fn to_points(&self, e: Element) -> PointSet {
        e.atom_indices().fold(0, |acc, i| acc | self.atom_sets[i])
    }

    /// The element whose point set is `f`, if `f` is regular closed.
    pub fn from_points(&self, f: PointSet) -> Option<Element> {
        let e = self
            .atom_sets
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a & !f == 0)
            .fold(Element::ZERO, |acc, (i, _)| acc | Element::atom(i));
        (self.to_points(e) == f).then_some(e)
    }

    /// `Ψᵗ(X) = (RC(X), ρ_X, CR(X))`; finite spaces are compact, so `CR = RC`.
    pub fn lca(&self) -> LocalContactAlgebra {
        LocalContactAlgebra::compact(self.contact.clone())
    }
}

fn check_rc_cap(x: &FiniteSpace) -> Result<()> {
    if x.point_count() > RC_MAX_POINTS {
        Err(Error::CapExceeded {
            what: "regular set enumeration point count",
            got: x.point_count(),
            limit: RC_MAX_POINTS,
        })
    } else {
        Ok(())
    }
}

fn atom_name(x: &FiniteSpace, set: PointSet) -> String {
    x.names_of(set).join("+")
}

/// Enumerates `RC(X)`, identifies its atoms and certifies that the mask
/// operations of the exported algebra agree with `∪`, `cl∘int∘∩` and `cl(X∖·)`.
pub fn rc_algebra(x: &FiniteSpace) -> Result<RegularClosedAlgebra> {
    check_rc_cap(x)?;
    let members: Vec<PointSet> = (0..=x.all()).filter(|&f| x.is_regular_closed(f)).collect();
    let atom_sets: Vec<PointSet> = members
        .iter()
        .copied()
        .filter(|&f| f != 0 && !members.iter().any(|&g| g != 0 && g != f && g & !f == 0))
        .collect();
    let names: Vec<String> = atom_sets.iter().map(|&a| atom_name(x, a)).collect();
    let algebra = FiniteBooleanAlgebra::with_cap(names, RC_MAX_POINTS)?;
    let n = atom_sets.len();
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| atom_sets[i] & atom_sets[j] != 0);
    let contact = ContactRelation::from_pairs(algebra, pairs)?;
    let rc = RegularClosedAlgebra {
        space: x.clone(),
        members,
        atom_sets,
        contact,
    };
    let cert = certify_rc(&rc);
    if !cert.is_empty() {
        return Err(Error::Integrity(format!("RC(X) is not the powerset of its atoms: {cert}")));
    }
    Ok(rc)
}

fn certify_rc(rc: &RegularClosedAlgebra) -> Report {
    let x = &rc.space;
    let alg = rc.algebra();
    let mut report = Report::new();
    if rc.members.len() != alg.element_count() {
        report.push(Violation::new("RC-count", alg, &[]));
        return report;
    }
    let elems: Vec<Element> = rc.members.iter().map(|&f| rc.from_points(f).unwrap_or(Element::ZERO)).collect();
    if let Some(i) = (0..elems.len()).find(|&i| rc.to_points(elems[i]) != rc.members[i]) {
        report.push(Violation::new("RC-decomposition", alg, &[elems[i]]));
    }
    for e in alg.elements() {
        let f = rc.to_points(e);
        if x.closure(x.all() & !f) != rc.to_points(alg.complement(e)) {
            report.push(Violation::new("RC-complement", alg, &[e]));
            break;
        }
    }
    let meet_ok = |a: Element, b: Element| {
        x.closure(x.interior(rc.to_points(a) & rc.to_points(b))) == rc.to_points(a & b)
    };
    let witness = if alg.element_count() <= PAIR_CHECK_LIMIT {
        alg.elements()
            .flat_map(|a| alg.elements().map(move |b| (a, b)))
            .find(|&(a, b)| !meet_ok(a, b))
    } else {
        alg.atoms()
            .flat_map(|a| alg.elements().map(move |b| (a, b)))
            .find(|&(a, b)| !meet_ok(a, b))
    };
    if let Some((a, b)) = witness {
        report.push(Violation::new("RC-meet", alg, &[a, b]));
    }
    report
}

/// `RO(X)` and the closure map onto `RC(X)`.
#[derive(Clone, Debug)]
pub struct RegularOpenAlgebra {
    pub members: Vec<PointSet>,
    /// `(U, cl U)` for every regular open `U`, ascending by `U`.
    pub closure_map: Vec<(PointSet, PointSet)>,
    pub certificate: Report,
}

impl RegularOpenAlgebra {
    /// `U ∨ V = int(cl(U ∪ V))`.
    pub fn join(x: &FiniteSpace, u: PointSet, v: PointSet) -> PointSet {
        x.interior(x.closure(u | v))
    }

    pub fn meet(u: PointSet, v: PointSet) -> PointSet {
        u & v
    }

    /// `U* = int(X ∖ U)`.
    pub fn complement(x: &FiniteSpace, u: PointSet) -> PointSet {
        x.interior(x.all() & !u)
    }

    /// `U δ V` iff `cl U ∩ cl V ≠ ∅`.
    pub fn contact(x: &FiniteSpace, u: PointSet, v: PointSet) -> bool {
        x.closure(u) & x.closure(v) != 0
    }
}

/// Builds `RO(X)` and certifies that `U ↦ cl(U)` is a contact-preserving
/// Boolean isomorphism onto `RC(X)`.
pub fn ro_algebra(x: &FiniteSpace) -> Result<(RegularOpenAlgebra, RegularClosedAlgebra)> {
    let rc = rc_algebra(x)?;
    let members: Vec<PointSet> = (0..=x.all()).filter(|&u| x.is_regular_open(u)).collect();
    let closure_map: Vec<(PointSet, PointSet)> = members.iter().map(|&u| (u, x.closure(u))).collect();
    let alg = rc.algebra();
    let mut report = Report::new();
    let to_elem = |f: PointSet| rc.from_points(f);

    let mut images: Vec<Option<Element>> = closure_map.iter().map(|&(_, f)| to_elem(f)).collect();
    if images.iter().any(Option::is_none) {
        report.push(Violation::new("RO-image", alg, &[]));
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != rc.members.len() || members.len() != rc.members.len() {
        report.push(Violation::new("RO-bijective", alg, &[]));
    }
    images.retain(Option::is_some);

    let check_pair = |u: PointSet, v: PointSet| -> Option<&'static str> {
        let (cu, cv) = (x.closure(u), x.closure(v));
        if x.closure(RegularOpenAlgebra::join(x, u, v)) != cu | cv {
            return Some("RO-join");
        }
        if x.closure(RegularOpenAlgebra::meet(u, v)) != x.closure(x.interior(cu & cv)) {
            return Some("RO-meet");
        }
        if RegularOpenAlgebra::contact(x, u, v) != (cu & cv != 0) {
            return Some("RO-contact");
        }
        None
    };
    for &u in &members {
        if x.closure(RegularOpenAlgebra::complement(x, u)) != x.closure(x.all() & !x.closure(u)) {
            report.push(Violation::new("RO-complement", alg, &[]));
            break;
        }
    }
    let pair_set: Vec<PointSet> = if members.len() <= PAIR_CHECK_LIMIT {
        members.clone()
    } else {
        rc.atom_sets.iter().map(|&a| x.interior(a)).collect()
    };
    'outer: for &u in &pair_set {
        for &v in &members {
            if let Some(law) = check_pair(u, v) {
                report.push(Violation::new(law, alg, &[]));
                break 'outer;
            }
        }
    }
    Ok((
        RegularOpenAlgebra {
            members,
            closure_map,
            certificate: report,
        },
        rc,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpacePredicates {
    pub connected: bool,
    pub hausdorff: bool,
    pub extremally_disconnected: bool,
    pub compact: bool,
}

pub fn space_predicates(x: &FiniteSpace) -> SpacePredicates {
    SpacePredicates {
        connected: is_connected(x),
        hausdorff: x.is_discrete(),
        // closures of all opens are open iff closures of the U_x are
        extremally_disconnected: x.min_nbhds().iter().all(|&u| x.is_open(x.closure(u))),
        compact: true,
    }
}

/// Connectedness via components of the graph `x - y` for `y ∈ U_x`.
fn is_connected(x: &FiniteSpace) -> bool {
    let mut reached: PointSet = 1;
    loop {
        let next = bits(reached).fold(reached, |acc, p| acc | x.min_nbhd(p) | x.closure(1 << p));
        if next == reached {
            return reached == x.all();
        }
        reached = next;
    }
}

/// A total point function between two finite spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceMap {
    pub source: FiniteSpace,
    pub target: FiniteSpace,
    pub assign: Vec<usize>,
}

impl SpaceMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != source.point_count() {
            return Err(Error::Malformed("map must assign every source point".into()));
        }
        if let Some(&y) = assign.iter().find(|&&y| y >= target.point_count()) {
            return Err(Error::Malformed(format!("map value {y} is not a target point")));
        }
        Ok(SpaceMap {
            source,
            target,
            assign,
        })
    }

    pub fn identity(x: &FiniteSpace) -> Self {
        SpaceMap {
            source: x.clone(),
            target: x.clone(),
            assign: (0..x.point_count()).collect(),
        }
    }

    pub fn image(&self, m: PointSet) -> PointSet {
        bits(m).fold(0, |acc, x| acc | 1 << self.assign[x])
    }

    pub fn preimage(&self, m: PointSet) -> PointSet {
        self.assign
            .iter()
            .enumerate()
            .filter(|&(_, &y)| m >> y & 1 == 1)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SpaceMap) -> Result<SpaceMap> {
        if first.target != self.source {
            return Err(Error::DomainMismatch("maps are not composable".into()));
        }
        SpaceMap::new(
            first.source.clone(),
            self.target.clone(),
            first.assign.iter().map(|&y| self.assign[y]).collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapPredicates {
    pub continuous: bool,
    pub closed: bool,
    pub perfect: bool,
    pub injective: bool,
    pub surjective: bool,
    pub dense_image: bool,
}

pub fn map_predicates(f: &SpaceMap) -> MapPredicates {
    let (x, y) = (&f.source, &f.target);
    let n = x.point_count();
    let continuous = (0..n).all(|p| f.image(x.min_nbhd(p)) & !y.min_nbhd(f.assign[p]) == 0);
    // closed sets are unions of point closures, so images of those suffice
    let closed = (0..n).all(|p| y.is_closed(f.image(x.closure(1 << p))));
    let img = f.image(x.all());
    let mut sorted = f.assign.clone();
    sorted.sort_unstable();
    sorted.dedup();
    MapPredicates {
        continuous,
        closed,
        perfect: continuous && closed,
        injective: sorted.len() == n,
        surjective: img == y.all(),
        dense_image: y.closure(img) == y.all(),
    }
}

/// Injective, continuous, closed, and a homeomorphism onto its image.
pub fn is_closed_embedding(f: &SpaceMap) -> bool {
    let p = map_predicates(f);
    let img = f.image(f.source.all());
    p.continuous
        && p.closed
        && p.injective
        && (0..f.source.point_count())
            .all(|x| f.image(f.source.min_nbhd(x)) == f.target.min_nbhd(f.assign[x]) & img)
}

/// The restriction / extension isomorphisms between `RC(Y)` and `RC(X)` for a
/// dense subspace `X ⊆ Y`.
#[derive(Clone, Debug)]
pub struct DenseIso {
    pub subspace: FiniteSpace,
    /// Index in `Y` of each subspace point.
    pub embed: Vec<usize>,
    pub rc_ambient: RegularClosedAlgebra,
    pub rc_sub: RegularClosedAlgebra,
    /// `r(F) = F ∩ X`, indexed by `RC(Y)` element mask.
    pub restrict: Vec<Element>,
    /// `e(G) = cl_Y(G)`, indexed by `RC(X)` element mask.
    pub extend: Vec<Element>,
    pub certificate: Report,
}

pub fn dense_iso(y: &FiniteSpace, x_points: PointSet) -> Result<DenseIso> {
    y.check_points(x_points)?;
    if y.closure(x_points) != y.all() {
        return Err(Error::NotDense);
    }
    let (sub, embed) = y.subspace(x_points)?;
    let rc_y = rc_algebra(y)?;
    let rc_x = rc_algebra(&sub)?;
    let lift = |g: PointSet| bits(g).fold(0u64, |acc, i| acc | 1 << embed[i]);
    let lower = |f: PointSet| {
        embed
            .iter()
            .enumerate()
            .filter(|&(_, &p)| f >> p & 1 == 1)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    };
    let restrict = rc_y
        .algebra()
        .elements()
        .map(|e| {
            rc_x.from_points(lower(rc_y.to_points(e)))
                .ok_or_else(|| Error::Integrity("F ∩ X is not regular closed in X".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let extend = rc_x
        .algebra()
        .elements()
        .map(|g| {
            rc_y.from_points(y.closure(lift(rc_x.to_points(g))))
                .ok_or_else(|| Error::Integrity("cl_Y(G) is not regular closed in Y".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cert = Report::new();
    let (ay, ax) = (rc_y.algebra(), rc_x.algebra());
    if let Some(f) = ay.elements().find(|f| extend[restrict[f.mask() as usize].mask() as usize] != *f) {
        cert.push(Violation::new("e∘r=id", ay, &[f]));
    }
    if let Some(g) = ax.elements().find(|g| restrict[extend[g.mask() as usize].mask() as usize] != *g) {
        cert.push(Violation::new("r∘e=id", ax, &[g]));
    }
    check_boolean_hom(&mut cert, ["r preserves ∨", "r preserves ∧", "r preserves *"], ay, ax, &restrict);
    check_boolean_hom(&mut cert, ["e preserves ∨", "e preserves ∧", "e preserves *"], ax, ay, &extend);
    Ok(DenseIso {
        subspace: sub,
        embed,
        rc_ambient: rc_y,
        rc_sub: rc_x,
        restrict,
        extend,
        certificate: cert,
    })
}

/// Records the first failure of `∨`, `∧` or `*` preservation for `table`.
pub(crate) fn check_boolean_hom(
    report: &mut Report,
    labels: [&'static str; 3],
    src: &FiniteBooleanAlgebra,
    tgt: &FiniteBooleanAlgebra,
    table: &[Element],
) {
    let at = |e: Element| table[e.mask() as usize];
    let [join, meet, comp] = labels;
    if let Some((a, b)) = src
        .elements()
        .flat_map(|a| src.elements().map(move |b| (a, b)))
        .find(|&(a, b)| at(a | b) != at(a) | at(b))
    {
        report.push(Violation::new(join, src, &[a, b]));
    }
    if let Some((a, b)) = src
        .elements()
        .flat_map(|a| src.elements().map(move |b| (a, b)))
        .find(|&(a, b)| at(a & b) != at(a) & at(b))
    {
        report.push(Violation::new(meet, src, &[a, b]));
    }
    if let Some(a) = src.elements().find(|&a| at(src.complement(a)) != tgt.complement(at(a))) {
        report.push(Violation::new(comp, src, &[a]));
    }
}
