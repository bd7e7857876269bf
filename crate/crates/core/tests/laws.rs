use proptest::prelude::*;
use topos_core::concrete::Probes;
use topos_core::kernel::{diagonal_of_signature, is_epi, is_monic};
use topos_core::subobject::{equivalent_monics, sub, sub_pullback, Subobject};
use topos_core::topos::power;
use topos_core::{
    arrow_topos, Category, FinSet, FinSetMap, FinSetObject, FiniteCategory, Signature, Topos,
};

fn map(from: usize, to: usize, table: Vec<usize>) -> FinSetMap {
    FinSetMap::new(&FinSetObject::range(from), &FinSetObject::range(to), table).unwrap()
}

prop_compose! {
    fn finset_map(max: usize)(from in 0..=max, to in 1..=max)
        (table in prop::collection::vec(0..to, from), from in Just(from), to in Just(to)) -> FinSetMap {
        map(from, to, table)
    }
}

prop_compose! {
    /// Three composable maps `h: A → B`, `g: B → C`, `f: C → D`.
    fn chain()(a in 0..=4usize, b in 1..=4usize, c in 1..=4usize, d in 1..=4usize)
        (h in prop::collection::vec(0..b, a), g in prop::collection::vec(0..c, b),
         f in prop::collection::vec(0..d, c), a in Just(a), b in Just(b), c in Just(c), d in Just(d))
        -> (FinSetMap, FinSetMap, FinSetMap) {
        (map(c, d, f), map(b, c, g), map(a, b, h))
    }
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in chain()) {
        let fs = FinSet::new();
        let left = fs.compose(&fs.compose(&f, &g).unwrap(), &h).unwrap();
        let right = fs.compose(&f, &fs.compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_units(f in finset_map(4)) {
        let fs = FinSet::new();
        prop_assert_eq!(fs.compose(&fs.identity(f.target()), &f).unwrap(), f.clone());
        prop_assert_eq!(fs.compose(&f, &fs.identity(f.source())).unwrap(), f);
    }

    #[test]
    fn cancellation_agrees_with_certificates(f in finset_map(4)) {
        let fs = FinSet::new();
        let probes = fs.probe_objects(2).unwrap();
        prop_assert_eq!(is_monic(&fs, &f, &probes).unwrap(), fs.certified_monic(&f));
        prop_assert_eq!(is_epi(&fs, &f, &probes).unwrap(), fs.certified_epi(&f));
        prop_assert_eq!(fs.certified_monic(&f), f.is_injective());
        prop_assert_eq!(fs.certified_epi(&f), f.is_surjective());
    }

    #[test]
    fn image_factorization(f in finset_map(4)) {
        let fs = FinSet::new();
        let (e, m) = fs.image(&f).unwrap();
        prop_assert!(fs.certified_epi(&e));
        prop_assert!(fs.certified_monic(&m));
        prop_assert_eq!(fs.compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn diagonal_projections(size in 1..=3usize, entries in prop::collection::vec(1..=3usize, 1..=3)) {
        let fs = FinSet::new();
        let a = FinSetObject::range(size);
        let sigma = Signature::new(entries.clone()).unwrap();
        let delta = diagonal_of_signature(&fs, &a, &sigma).unwrap();
        let source = power(&fs, &a, sigma.arity()).unwrap();
        let target = power(&fs, &a, entries.len()).unwrap();
        prop_assert_eq!(fs.source(&delta), source.apex.clone());
        for (i, &m) in entries.iter().enumerate() {
            prop_assert_eq!(
                fs.compose(&target.projections[i], &delta).unwrap(),
                source.projections[m - 1].clone()
            );
        }
    }

    #[test]
    fn sub_pullback_respects_equivalence(b in 1..=3usize, f in finset_map(3), shift in 0..6usize) {
        // A monic equivalent to a canonical one: precompose a permutation of its domain.
        let fs = FinSet::new();
        let f = map(f.source().len(), b, f.table().iter().map(|&y| y % b).collect());
        for s in sub(&fs, f.target()).unwrap() {
            let dom = s.monic().source().clone();
            let n = dom.len();
            let perm = FinSetMap::new(&dom, &dom, (0..n).map(|i| (i + shift) % n).collect()).unwrap();
            let other = fs.compose(s.monic(), &perm).unwrap();
            prop_assert!(equivalent_monics(&fs, s.monic(), &other).unwrap());
            let other = Subobject::from_monic(&fs, &other).unwrap();
            prop_assert_eq!(sub_pullback(&fs, &f, &s).unwrap(), sub_pullback(&fs, &f, &other).unwrap());
        }
    }
}

#[test]
fn sieves_are_closed_under_precomposition() {
    let topos = arrow_topos();
    let index = topos.index().clone();
    for j in 0..index.objects().len() {
        for sieve in topos.sieves_on(j) {
            for s in &sieve {
                let s = index.arrow_index(s).unwrap();
                for v in 0..index.arrows().len() {
                    if let Some(sv) = index.compose(s, v) {
                        let name = &index.arrows()[sv].name;
                        assert!(sieve.contains(name), "{sieve:?} misses {name}");
                    }
                }
            }
        }
    }
}

#[test]
fn presheaf_probes_are_functors_and_homs_are_natural() {
    let topos = arrow_topos();
    let probes = topos.probe_objects(2).unwrap();
    for p in &probes {
        topos.check_functor(p).unwrap();
        let id = topos.identity(p);
        for q in &probes {
            for f in topos.hom(p, q).unwrap() {
                assert_eq!(topos.compose(&f, &id).unwrap(), f);
                assert_eq!(topos.compose(&topos.identity(q), &f).unwrap(), f);
            }
        }
    }
}

#[test]
fn category_validation_rejects_missing_composites() {
    let bad = FiniteCategory::new(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[]);
    assert!(bad.is_err());
}
