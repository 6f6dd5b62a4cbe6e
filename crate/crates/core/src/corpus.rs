//! Deterministic generators for the small structures the test suites sweep:
//! spaces, maps, atom relations, local contact algebras, morphisms and
//! random line regions.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contact::{Contact, ContactRelation};
use crate::duality::AlgebraMorphism;
use crate::error::Result;
use crate::finba::{Element, FiniteBooleanAlgebra};
use crate::fintop::{FiniteSpace, SpaceMap};
use crate::lca::LocalContactAlgebra;
use crate::lineregions::{Endpoint, RationalRegion};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn discrete_spaces(max_points: usize) -> Vec<FiniteSpace> {
    (1..=max_points)
        .map(|n| FiniteSpace::discrete(n).expect("small discrete space"))
        .collect()
}

/// Every function `x → y`, in lexicographic order of assignments.
pub fn all_maps(x: &FiniteSpace, y: &FiniteSpace) -> Vec<SpaceMap> {
    let (n, m) = (x.point_count(), y.point_count());
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let assign = (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect();
            SpaceMap::new(x.clone(), y.clone(), assign).expect("in range")
        })
        .collect()
}

/// `count` uniformly random functions `x → y`.
pub fn random_maps(x: &FiniteSpace, y: &FiniteSpace, count: usize, rng: &mut impl Rng) -> Vec<SpaceMap> {
    (0..count)
        .map(|_| {
            let assign = (0..x.point_count()).map(|_| rng.gen_range(0..y.point_count())).collect();
            SpaceMap::new(x.clone(), y.clone(), assign).expect("in range")
        })
        .collect()
}

/// All topologies on `n` labelled points, one per preorder
/// (`U_x` = the points above `x`).
pub fn preorder_spaces(n: usize) -> Vec<FiniteSpace> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut out = Vec::new();
    for code in 0u64..1 << off.len() {
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (k, &(i, j)) in off.iter().enumerate() {
            if code >> k & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            Element::from_mask(rows[i])
                .atom_indices()
                .all(|j| rows[j] & !rows[i] == 0)
        });
        if transitive {
            out.push(FiniteSpace::new(names.clone(), rows).expect("transitive rows"));
        }
    }
    out
}

/// Every reflexive symmetric relation on `n` atoms.
pub fn atom_relations(n: usize) -> Vec<ContactRelation> {
    let alg = FiniteBooleanAlgebra::anonymous(n).expect("small algebra");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|code| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| code >> k & 1 == 1)
                .map(|(_, &p)| p);
            ContactRelation::from_pairs(alg.clone(), chosen).expect("valid pairs")
        })
        .collect()
}

/// A reflexive symmetric relation on `n` atoms with each off-diagonal pair
/// present with probability `density`.
pub fn random_relation(n: usize, density: f64, rng: &mut impl Rng) -> ContactRelation {
    let alg = FiniteBooleanAlgebra::anonymous(n).expect("small algebra");
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    ContactRelation::from_pairs(alg, pairs).expect("valid pairs")
}

/// Every (relation, generator) pair on `n` atoms.
pub fn lca_candidates(n: usize) -> Vec<LocalContactAlgebra> {
    atom_relations(n)
        .into_iter()
        .flat_map(|rel| {
            let top = rel.algebra().top();
            top.subsets()
                .map(move |g| LocalContactAlgebra::new(rel.clone(), g).expect("generator in range"))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `(A, ρ_s, A)` on `n` anonymous atoms.
pub fn rho_s_compact(n: usize) -> LocalContactAlgebra {
    LocalContactAlgebra::compact(ContactRelation::overlap(
        FiniteBooleanAlgebra::anonymous(n).expect("small algebra"),
    ))
}

/// The Boolean homomorphism dual to an atom map `g` from target atoms to
/// source atoms: `φ(a) = {j | g(j) ≤ a}`.
pub fn dual_of_atom_map(
    source: &LocalContactAlgebra,
    target: &LocalContactAlgebra,
    g: &[usize],
) -> Result<AlgebraMorphism> {
    AlgebraMorphism::from_fn(source.clone(), target.clone(), |a| {
        g.iter()
            .enumerate()
            .filter(|&(_, &i)| a.has_atom(i))
            .fold(Element::ZERO, |acc, (j, _)| acc | Element::atom(j))
    })
}

/// Every function from `source` elements to `target` elements. Only sensible
/// for tiny algebras (`4^4 = 256` tables at two atoms each).
pub fn all_tables(source: &LocalContactAlgebra, target: &LocalContactAlgebra) -> Vec<AlgebraMorphism> {
    let (ns, nt) = (source.algebra().element_count(), target.algebra().element_count());
    let total = nt.pow(ns as u32);
    (0..total)
        .map(|mut code| {
            let table = (0..ns)
                .map(|_| {
                    let v = code % nt;
                    code /= nt;
                    Element::from_mask(v as u64)
                })
                .collect();
            AlgebraMorphism::new(source.clone(), target.clone(), table).expect("in range")
        })
        .collect()
}

/// Every atom map `{0..m} → {0..n}` as a vector.
pub fn atom_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect()
        })
        .collect()
}

fn random_rational(rng: &mut impl Rng, bound: i64, den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-bound * den..=bound * den)),
        BigInt::from(den),
    )
}

/// A random region with up to `max_intervals` intervals, endpoints on a grid
/// of step `1/den` within `[-bound, bound]`, rays with probability 1/8 at each end.
pub fn random_region(rng: &mut impl Rng, max_intervals: usize, bound: i64, den: i64) -> RationalRegion {
    let k = rng.gen_range(0..=max_intervals);
    let mut ivs = Vec::with_capacity(k);
    for _ in 0..k {
        let a = random_rational(rng, bound, den);
        let mut b = random_rational(rng, bound, den);
        if b == a {
            b = &a + BigRational::new(1.into(), den.into());
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let lo = if rng.gen_ratio(1, 8) { Endpoint::NegInf } else { Endpoint::Finite(a) };
        let hi = if rng.gen_ratio(1, 8) { Endpoint::PosInf } else { Endpoint::Finite(b) };
        ivs.push((lo, hi));
    }
    RationalRegion::from_intervals(ivs).expect("nondegenerate intervals")
}

/// A random nonzero rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_nonzero(rng: &mut impl Rng, bound: i64) -> BigRational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-bound..=bound);
    }
    BigRational::new(p.into(), rng.gen_range(1..=bound).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts_match_known_values() {
        // labelled topologies on 1..=4 points
        let counts: Vec<usize> = (1..=4).map(|n| preorder_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn relation_and_map_counts() {
        assert_eq!(atom_relations(3).len(), 8);
        assert_eq!(atom_relations(4).len(), 64);
        let d = discrete_spaces(3);
        assert_eq!(all_maps(&d[2], &d[1]).len(), 8);
        assert_eq!(atom_maps(2, 3).len(), 9);
        assert_eq!(lca_candidates(2).len(), 2 * 4);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_relation(6, 0.4, &mut seeded_rng(7));
        let b = random_relation(6, 0.4, &mut seeded_rng(7));
        assert_eq!(a, b);
        let r1 = random_region(&mut seeded_rng(3), 4, 10, 4);
        let r2 = random_region(&mut seeded_rng(3), 4, 10, 4);
        assert_eq!(r1, r2);
    }
}
