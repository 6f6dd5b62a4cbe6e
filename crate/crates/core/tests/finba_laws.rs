use contact_duality::finba::{Element, FiniteBooleanAlgebra, DEFAULT_MAX_ATOMS};
use contact_duality::Error;

fn algebras() -> impl Iterator<Item = FiniteBooleanAlgebra> {
    (1..=4).map(|n| FiniteBooleanAlgebra::anonymous(n).unwrap())
}

#[test]
fn de_morgan_and_double_complement() {
    for alg in algebras() {
        for a in alg.elements() {
            assert_eq!(alg.complement(alg.complement(a)), a);
            for b in alg.elements() {
                assert_eq!(alg.complement(alg.join(a, b)), alg.meet(alg.complement(a), alg.complement(b)));
                assert_eq!(alg.complement(alg.meet(a, b)), alg.join(alg.complement(a), alg.complement(b)));
            }
        }
    }
}

#[test]
fn distributivity_and_absorption() {
    for alg in algebras() {
        for a in alg.elements() {
            for b in alg.elements() {
                assert_eq!(alg.join(a, alg.meet(a, b)), a);
                for c in alg.elements() {
                    assert_eq!(alg.meet(a, alg.join(b, c)), alg.join(alg.meet(a, b), alg.meet(a, c)));
                    assert_eq!(alg.join(a, alg.meet(b, c)), alg.meet(alg.join(a, b), alg.join(a, c)));
                }
            }
        }
    }
}

#[test]
fn order_is_meet_order() {
    for alg in algebras() {
        for a in alg.elements() {
            for b in alg.elements() {
                assert_eq!(alg.le(a, b), alg.meet(a, b) == a);
            }
        }
    }
}

#[test]
fn big_operations_and_bounds() {
    let alg = FiniteBooleanAlgebra::new(["p", "q", "r"]).unwrap();
    assert_eq!(alg.big_join(alg.atoms()), alg.top());
    assert_eq!(alg.big_meet(std::iter::empty()), alg.top());
    assert_eq!(alg.big_join(std::iter::empty()), alg.zero());
    assert_eq!(alg.element_count(), 8);
    let pr = alg.element(&["r", "p"]).unwrap();
    assert_eq!(alg.names_of(pr), vec!["p", "r"]);
    assert_eq!(alg.atoms_of(pr).unwrap(), vec![0, 2]);
}

#[test]
fn width_and_name_errors() {
    let alg = FiniteBooleanAlgebra::new(["p", "q"]).unwrap();
    assert!(matches!(alg.check(Element::from_mask(0b100)), Err(Error::WidthMismatch { .. })));
    assert!(matches!(alg.element(&["z"]), Err(Error::UnknownName(_))));
    assert!(matches!(FiniteBooleanAlgebra::new(["p", "p"]), Err(Error::DuplicateName(_))));
    let too_many = (0..=DEFAULT_MAX_ATOMS).map(|i| format!("a{i}"));
    assert!(matches!(FiniteBooleanAlgebra::new(too_many), Err(Error::CapExceeded { .. })));
}
