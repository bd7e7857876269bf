use topos_core::concrete::Probes;
use topos_core::universal::{
    verify_coequalizer, verify_coproduct, verify_equalizer, verify_exponential, verify_product,
    verify_pullback,
};
use topos_core::{arrow_topos, FinSet, FinSetObject, Slice};

fn assert_limits<T: Probes>(topos: &T, bound: usize) {
    let objects = topos.probe_objects(bound).unwrap();
    for a in &objects {
        for b in &objects {
            for check in [
                verify_product(topos, a, b, &objects).unwrap(),
                verify_coproduct(topos, a, b, &objects).unwrap(),
                verify_exponential(topos, a, b, &objects).unwrap(),
            ] {
                assert!(check.holds(), "{check:?}");
            }
            let maps = topos.hom(a, b).unwrap();
            for f in &maps {
                for g in &maps {
                    assert!(verify_equalizer(topos, f, g, &objects).unwrap().holds());
                    assert!(verify_coequalizer(topos, f, g, &objects).unwrap().holds());
                }
                for c in &objects {
                    for g in topos.hom(c, b).unwrap() {
                        assert!(verify_pullback(topos, f, &g, &objects).unwrap().holds());
                    }
                }
            }
        }
    }
}

#[test]
fn finset_limits_and_colimits() {
    assert_limits(&FinSet::new(), 2);
}

#[test]
fn slice_limits_and_colimits() {
    let slice = Slice::new(FinSet::new(), FinSetObject::range(2)).unwrap();
    assert_limits(&slice, 1);
}

#[test]
fn interval_presheaf_limits_and_colimits() {
    assert_limits(&arrow_topos(), 1);
}

#[test]
fn exponential_cone_count_is_hom_of_product() {
    let fs = FinSet::new();
    let (a, b, c) = (
        FinSetObject::range(2),
        FinSetObject::range(3),
        FinSetObject::range(2),
    );
    let check = verify_exponential(&fs, &a, &b, &[c]).unwrap();
    assert!(check.holds());
    assert_eq!(check.cones, 81);
}
