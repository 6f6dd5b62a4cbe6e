use contact_duality::contact::{check_axioms, extremal_contacts, AxiomSystem, Contact, ContactRelation, ElementRelation};
use contact_duality::corpus::atom_relations;
use contact_duality::finba::{Element, FiniteBooleanAlgebra};

/// Raw element-level relations on `2^n` elements, rows as bitsets.
fn satisfies_c4(rows: &[u64], n: usize) -> bool {
    let m = 1usize << n;
    (0..m).all(|a| {
        (0..m).all(|b| {
            (0..m).all(|c| (rows[a] >> (b | c) & 1 == 1) == (rows[a] >> b & 1 == 1 || rows[a] >> c & 1 == 1))
        })
    })
}

#[test]
fn every_contact_relation_is_atom_determined() {
    for n in 1..=3usize {
        let alg = FiniteBooleanAlgebra::anonymous(n).unwrap();
        let m = 1usize << n;
        // C1–C3 fix the diagonal and the zero row, so only off-diagonal
        // pairs of nonzero elements vary.
        let pairs: Vec<(usize, usize)> = (1..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let mut found = 0;
        for code in 0u64..1 << pairs.len() {
            let mut rows = vec![0u64; m];
            for (a, row) in rows.iter_mut().enumerate().skip(1) {
                *row |= 1 << a;
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if code >> k & 1 == 1 {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
            if !satisfies_c4(&rows, n) {
                continue;
            }
            found += 1;
            let table = ElementRelation::from_fn(alg.clone(), |a, b| rows[a.mask() as usize] >> b.mask() & 1 == 1).unwrap();
            assert!(check_axioms(&table, AxiomSystem::Ca).is_empty());
            let lifted = table.atom_restriction().unwrap();
            for a in alg.elements() {
                for b in alg.elements() {
                    assert_eq!(lifted.lift_contact(a, b).unwrap(), table.contact(a, b));
                }
            }
        }
        assert_eq!(found, atom_relations(n).len(), "n = {n}");
    }
}

#[test]
fn lifted_contact_is_symmetric_and_additive() {
    for n in 1..=4 {
        for rel in atom_relations(n) {
            let alg = rel.algebra().clone();
            for a in alg.elements() {
                for b in alg.elements() {
                    assert_eq!(rel.contact(a, b), rel.contact(b, a));
                    for c in alg.elements() {
                        assert_eq!(rel.contact(a, alg.join(b, c)), rel.contact(a, b) || rel.contact(a, c));
                    }
                }
            }
            assert!(check_axioms(&rel, AxiomSystem::Ca).is_empty());
        }
    }
}

#[test]
fn way_below_laws_track_normality() {
    for n in 1..=4 {
        for rel in atom_relations(n) {
            let ll = check_axioms(&rel, AxiomSystem::Ll);
            for law in ["LL1", "LL2", "LL3", "LL4", "LL7"] {
                assert!(!ll.violates(law), "{law} on {:?}", rel.rows());
            }
            let nca = check_axioms(&rel, AxiomSystem::Nca);
            assert_eq!(ll.violates("LL5"), nca.violates("C5"), "{:?}", rel.rows());
            assert_eq!(ll.violates("LL6"), nca.violates("C6"), "{:?}", rel.rows());
        }
    }
}

#[test]
fn every_relation_lies_between_overlap_and_complete() {
    for n in 1..=4 {
        let (s, l) = extremal_contacts(&FiniteBooleanAlgebra::anonymous(n).unwrap());
        for rel in atom_relations(n) {
            let alg = rel.algebra().clone();
            for a in alg.elements() {
                for b in alg.elements() {
                    assert!(!s.contact(a, b) || rel.contact(a, b));
                    assert!(!rel.contact(a, b) || l.contact(a, b));
                }
            }
        }
    }
}

#[test]
fn only_the_overlap_relation_is_normal() {
    for n in 1..=4 {
        for rel in atom_relations(n) {
            assert_eq!(check_axioms(&rel, AxiomSystem::Nca).is_empty(), rel.is_overlap());
        }
    }
}

#[test]
fn c2_follows_from_c4_and_c6() {
    // every reflexive-on-nonzero symmetric table on two atoms, zero row free
    let alg = FiniteBooleanAlgebra::anonymous(2).unwrap();
    let pairs: Vec<(u64, u64)> = (0..4u64).flat_map(|a| (a..4).map(move |b| (a, b))).collect();
    let mut checked = 0;
    for code in 0u64..1 << pairs.len() {
        let holds = |a: Element, b: Element| {
            let (x, y) = (a.mask().min(b.mask()), a.mask().max(b.mask()));
            let k = pairs.iter().position(|&p| p == (x, y)).unwrap();
            code >> k & 1 == 1
        };
        let table = ElementRelation::from_fn(alg.clone(), holds).unwrap();
        let r = check_axioms(&table, AxiomSystem::Nca);
        if !r.violates("C4") && !r.violates("C6") {
            assert!(!r.violates("C2"), "{r}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn each_axiom_is_reported_independently() {
    let alg = FiniteBooleanAlgebra::anonymous(2).unwrap();
    // everything touches everything, including 0
    let table = ElementRelation::from_fn(alg.clone(), |_, _| true).unwrap();
    let r = check_axioms(&table, AxiomSystem::Nca);
    assert!(r.violates("C2"));
    assert!(r.violates("C6"));
    assert!(!r.violates("C1"));
    assert!(!r.violates("C3"));
    assert_eq!(r.witness("C2").unwrap(), &[Element::ZERO, Element::ZERO]);
}

#[test]
fn witnesses_are_lexicographically_least() {
    let alg = FiniteBooleanAlgebra::new(["p", "q", "r"]).unwrap();
    let rel = ContactRelation::from_pairs(alg.clone(), [(0, 1)]).unwrap();
    let r = check_axioms(&rel, AxiomSystem::Nca);
    // p touches q, so {p} is not far from anything nonzero except {r}
    let w = r.witness("C6").unwrap();
    let first = alg
        .elements()
        .find(|&a| a != alg.top() && !alg.elements().any(|b| !b.is_zero() && !rel.contact(b, a)))
        .unwrap();
    assert_eq!(w, &[first]);
}
