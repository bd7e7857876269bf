mod common;

use common::{compare, fixture_tables, formula_corpus, Table};
use rand::rngs::StdRng;
use rand::SeedableRng;
use topos_core::logic::{Formula, Term};
use topos_core::FinSet;

#[test]
fn oracle_agrees_on_handwritten_formulas() {
    let fs = FinSet::new();
    let x = Term::var;
    let mul = |a, b| Term::apply("mul", vec![a, b]);
    let formulas = vec![
        Formula::forall(
            1,
            Formula::exists(2, Formula::eq(mul(x(1), x(2)), Term::constant("e"))),
        ),
        Formula::eq(
            Term::constant("e"),
            mul(Term::constant("e"), Term::constant("e")),
        ),
        Formula::eq(x(1), x(1)),
        Formula::rel("R", vec![x(2), x(1)]),
        Formula::forall(3, Formula::rel("R", vec![x(1), x(2)])),
        Formula::exists(
            1,
            Formula::and(
                Formula::rel("R", vec![x(1), x(2)]),
                Formula::not(Formula::eq(x(1), x(2))),
            ),
        ),
        Formula::iff(
            Formula::eq(mul(x(1), x(2)), mul(x(2), x(1))),
            Formula::rel("R", vec![x(1), x(1)]),
        ),
    ];
    for size in 1..=3 {
        let (checked, mismatches) = compare(&fs, &Table::cyclic(size), &formulas).unwrap();
        assert!(checked > 0);
        assert!(mismatches.is_empty(), "{mismatches:#?}");
    }
}

#[test]
fn oracle_agrees_on_random_formulas() {
    let fs = FinSet::new();
    let mut rng = StdRng::seed_from_u64(11);
    let formulas = formula_corpus(&mut rng, 150, 4);
    for table in fixture_tables(&mut rng, 2) {
        let (_, mismatches) = compare(&fs, &table, &formulas).unwrap();
        assert!(
            mismatches.is_empty(),
            "{:#?}",
            &mismatches[..mismatches.len().min(5)]
        );
    }
}
