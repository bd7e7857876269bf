use topos_core::concrete::Probes;
use topos_core::logic::truth::{negation_table, truth_table};
use topos_core::logic::{global_truth_values, is_boolean, BinaryConnective, Connectives};
use topos_core::subobject::{sub, verify_classifier};
use topos_core::{arrow_topos, FinSet, FinSetObject, Slice, Topos};

#[test]
fn arrow_tables_and_negation() {
    let topos = arrow_topos();
    let conns = Connectives::new(&topos).unwrap();
    let values = global_truth_values(&topos).unwrap();
    let and = truth_table(&topos, &conns, &values, BinaryConnective::And).unwrap();
    assert_eq!(and.get("C", "C"), Some("C"));
    assert_eq!(and.get("C", "F"), Some("F"));
    let or = truth_table(&topos, &conns, &values, BinaryConnective::Or).unwrap();
    assert_eq!(or.get("C", "C"), Some("C"));
    assert_eq!(or.get("C", "F"), Some("C"));
    let implies = truth_table(&topos, &conns, &values, BinaryConnective::Implies).unwrap();
    assert_eq!(implies.get("C", "T"), Some("T"));
    assert_eq!(implies.get("T", "C"), Some("C"));
    let not = negation_table(&topos, &conns, &values).unwrap();
    assert_eq!(not.entries, vec![vec!["F", "F", "T"]]);
    assert_eq!(
        and.to_ascii(),
        "& | T C F\n--+------\nT | T C F\nC | C C F\nF | F F F\n"
    );
}

#[test]
fn subobjects_of_arrow_terminal_match_truth_values() {
    let topos = arrow_topos();
    assert_eq!(sub(&topos, &topos.terminal()).unwrap().len(), 3);
}

#[test]
fn booleanness_and_truth_value_counts() {
    assert!(is_boolean(&FinSet::new()).unwrap());
    assert_eq!(global_truth_values(&FinSet::new()).unwrap().len(), 2);
    assert!(!is_boolean(&arrow_topos()).unwrap());
    assert_eq!(global_truth_values(&arrow_topos()).unwrap().len(), 3);
    let over_one = Slice::new(FinSet::new(), FinSetObject::range(1)).unwrap();
    assert!(is_boolean(&over_one).unwrap());
    assert_eq!(global_truth_values(&over_one).unwrap().len(), 2);
    // Boolean, yet Hom(1, Ω) has one value per fiber choice.
    let over_two = Slice::new(FinSet::new(), FinSetObject::range(2)).unwrap();
    assert!(is_boolean(&over_two).unwrap());
    assert_eq!(global_truth_values(&over_two).unwrap().len(), 4);
}

#[test]
fn slice_classifier_over_two_points() {
    let slice = Slice::new(FinSet::new(), FinSetObject::range(2)).unwrap();
    let probes = slice.probe_objects(2).unwrap();
    assert!(verify_classifier(&slice, &slice.omega(), &slice.truth(), &probes).unwrap());
}
