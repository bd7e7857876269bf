//! Acceptance suite: one line per criterion, each under its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use topos_core::concrete::{Concrete, Probes};
use topos_core::logic::axioms::{epis_between, is_well_pointed, nno_sweep, satisfies_ac};
use topos_core::logic::connectives::{quantifier_exists, quantifier_forall};
use topos_core::logic::truth::{global_truth_values_with, truth_table};
use topos_core::logic::{
    global_truth_values, is_boolean, BinaryConnective, Connectives, Formula, Interpreter,
    LStructure, LanguageSignature, Term,
};
use topos_core::subobject::{
    omega_from_power, power_object, verify_classifier, verify_power_object,
};
use topos_core::topos::{constant_true, is_iso, power};
use topos_core::universal::{
    verify_equalizer, verify_exponential, verify_product, verify_pullback, UniversalCheck,
};
use topos_core::{arrow_topos, Category, FinSet, FinSetMap, FinSetObject, Slice, Topos};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn arrow_tables() -> Outcome {
    let topos = arrow_topos();
    let conns = Connectives::new(&topos).map_err(err)?;
    let values = global_truth_values_with(&topos, &conns).map_err(err)?;
    let expected = [
        (
            BinaryConnective::And,
            [["T", "C", "F"], ["C", "C", "F"], ["F", "F", "F"]],
        ),
        (
            BinaryConnective::Or,
            [["T", "T", "T"], ["T", "C", "C"], ["T", "C", "F"]],
        ),
        (
            BinaryConnective::Implies,
            [["T", "C", "F"], ["T", "T", "F"], ["T", "T", "T"]],
        ),
    ];
    let names = ["T", "C", "F"];
    let mut matched = 0;
    for (op, rows) in expected {
        let table = truth_table(&topos, &conns, &values, op).map_err(err)?;
        for (r, row) in rows.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                let got = table.get(names[r], names[c]);
                ensure(got == Some(*want), || {
                    format!(
                        "{} {} {}: got {got:?}, expected {want}",
                        names[r],
                        op.symbol(),
                        names[c]
                    )
                })?;
                matched += 1;
            }
        }
    }
    Ok(format!("{matched}/27 entries match"))
}

fn truth_value_counts() -> Outcome {
    let finset = global_truth_values(&FinSet::new()).map_err(err)?.len();
    let arrow = global_truth_values(&arrow_topos()).map_err(err)?.len();
    ensure(finset == 2 && arrow == 3, || {
        format!("FinSet {finset}, arrow {arrow}")
    })?;
    Ok(format!("FinSet {finset}, arrow {arrow}"))
}

fn quantifiers() -> Outcome {
    let fs = FinSet::new();
    let t = fs.truth().apply(0);
    let mut checked = 0;
    for size in 1..=3 {
        let m = FinSetObject::range(size);
        let exp = fs.exponential(&m, &fs.omega()).map_err(err)?;
        let all = quantifier_forall(&fs, &m).map_err(err)?;
        let some = quantifier_exists(&fs, &m).map_err(err)?;
        for b in 0..exp.object.len() {
            let trues = (0..size)
                .filter(|&x| exp.eval.apply(FinSet::product_index(b, x, size)) == t)
                .count();
            ensure((all.apply(b) == t) == (trues == size), || {
                format!("forall wrong on {}", exp.object.label(b))
            })?;
            ensure((some.apply(b) == t) == (trues > 0), || {
                format!("exists wrong on {}", exp.object.label(b))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} characteristic maps checked"))
}

fn power_objects() -> Outcome {
    let fs = FinSet::new();
    let probes = fs.probe_objects(3).map_err(err)?;
    for size in 0..=3 {
        let p = power_object(&fs, &FinSetObject::range(size)).map_err(err)?;
        if let Some(failure) = verify_power_object(&fs, &p, &probes).map_err(err)? {
            return Err(format!(
                "|X|={size}: relation {} has {} classifying maps",
                failure.relation,
                failure.classifying_maps.len()
            ));
        }
    }
    let p1 = power_object(&fs, &fs.terminal()).map_err(err)?;
    ensure(is_iso(&fs, &fs.to_terminal(&p1.k)), || {
        "K is not isomorphic to 1".into()
    })?;
    let (omega, truth) = omega_from_power(&fs, &p1).map_err(err)?;
    ensure(
        verify_classifier(&fs, &omega, &truth, &probes).map_err(err)?,
        || "recovered (Ω, T) fails the classifier check".into(),
    )?;
    Ok(format!(
        "|X| ≤ 3 against probes ≤ 3; K ≅ 1; recovered Ω = {omega}"
    ))
}

fn tarski() -> Outcome {
    let fs = FinSet::new();
    let mut rng = StdRng::seed_from_u64(2024);
    let formulas = common::formula_corpus(&mut rng, 600, 4);
    let tables = common::fixture_tables(&mut rng, 4);
    let mut checked = 0;
    for table in &tables {
        let (n, mismatches) = common::compare(&fs, table, &formulas).map_err(err)?;
        ensure(mismatches.is_empty(), || {
            format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
        })?;
        checked += n;
    }
    Ok(format!(
        "{} formulas × {} structures, {checked} evaluations, 0 mismatches",
        formulas.len(),
        tables.len()
    ))
}

fn lem() -> Outcome {
    let fs = FinSet::new();
    ensure(is_boolean(&fs).map_err(err)?, || {
        "FinSet is not Boolean".into()
    })?;
    let mut rng = StdRng::seed_from_u64(7);
    let formulas = common::formula_corpus(&mut rng, 100, 3);
    let mut checked = 0;
    for table in common::fixture_tables(&mut rng, 1) {
        let s = common::to_structure(&fs, &table).map_err(err)?;
        let interp = Interpreter::new(&s).map_err(err)?;
        for phi in &formulas {
            let lem = Formula::or(phi.clone(), Formula::not(phi.clone()));
            let m = interp.interpret_formula(&lem).map_err(err)?;
            let domain = power(&fs, s.support(), phi.free_vars().len())
                .map_err(err)?
                .apex;
            ensure(m == constant_true(&fs, &domain).map_err(err)?, || {
                format!("LEM fails for {phi}")
            })?;
            checked += 1;
        }
    }

    let arrow = arrow_topos();
    ensure(!is_boolean(&arrow).map_err(err)?, || {
        "arrow topos reported Boolean".into()
    })?;
    let point = FinSetObject::new(["a"]).map_err(err)?;
    let one = arrow
        .arrow_object(&FinSetMap::from_labels(&point, &point, &[("a", "a")]).map_err(err)?)
        .map_err(err)?;
    let mut sig = LanguageSignature::new();
    sig.add_relation("R", 1).map_err(err)?;
    sig.add_constant("a").map_err(err)?;
    let mut s = LStructure::new(&arrow, sig, one);
    let cod = arrow
        .stage_names()
        .iter()
        .position(|n| n == "cod")
        .expect("cod stage");
    s.set_relation_by("R", |stage, _| stage == cod)
        .map_err(err)?;
    s.set_constant_by_label("a", "a").map_err(err)?;
    let interp = Interpreter::new(&s).map_err(err)?;
    let r = Formula::rel("R", vec![Term::constant("a")]);
    let phi = Formula::or(r.clone(), Formula::not(r));
    let value = interp.evaluate(&phi, &[]).map_err(err)?;
    let name = arrow.truth_value_name(&value).unwrap_or_default();
    ensure(name == "C", || format!("{phi} evaluated to {name}"))?;
    Ok(format!(
        "FinSet: {checked} LEM instances are T∘!; arrow: {phi} = {name}"
    ))
}

fn slice_classifier() -> Outcome {
    let mut checked = Vec::new();
    for size in 0..=2 {
        let fs = FinSet::new();
        let x = FinSetObject::range(size);
        let slice = Slice::new(fs.clone(), x.clone()).map_err(err)?;
        let omega = slice.omega();
        let base_prod = fs.product(&fs.omega(), &x).map_err(err)?;
        ensure(omega.structure() == &base_prod.second, || {
            format!("Ω over {x} is not π₂")
        })?;
        let top = fs.compose(&fs.truth(), &fs.to_terminal(&x)).map_err(err)?;
        let expected_truth = fs.pair(&top, &fs.identity(&x)).map_err(err)?;
        ensure(slice.truth().map() == &expected_truth, || {
            format!("T̄ over {x} is not ⟨T∘!, id⟩")
        })?;
        let probes = slice.probe_objects(2).map_err(err)?;
        ensure(
            verify_classifier(&slice, &omega, &slice.truth(), &probes).map_err(err)?,
            || format!("classifier check fails over {x}"),
        )?;
        checked.push(format!("|X|={size}: {} probes", probes.len()));
    }
    Ok(checked.join(", "))
}

fn axioms() -> Outcome {
    let fs = FinSet::new();
    let probes = fs.probe_objects(3).map_err(err)?;
    let wp = is_well_pointed(&fs, &probes).map_err(err)?;
    ensure(wp.holds, || "FinSet not well-pointed".into())?;
    let epis = epis_between(&fs, &probes).map_err(err)?;
    let ac = satisfies_ac(&fs, &epis).map_err(err)?;
    ensure(ac.holds, || {
        format!("{} epis without sections", ac.failures.len())
    })?;
    ensure(is_boolean(&fs).map_err(err)?, || {
        "FinSet not Boolean".into()
    })?;
    let sweep = nno_sweep(&fs, 3).map_err(err)?;
    ensure(sweep.survivors.is_empty(), || {
        format!("{} NNO candidates survived", sweep.survivors.len())
    })?;

    let arrow = arrow_topos();
    let report = is_well_pointed(&arrow, &arrow.probe_objects(2).map_err(err)?).map_err(err)?;
    let (f, g) = report.witness.ok_or("arrow topos reported well-pointed")?;
    Ok(format!(
        "FinSet: well-pointed, {} epis split, Boolean, {} NNO candidates refuted; arrow witness: {f} ≠ {g} on {}",
        ac.epis_checked,
        sweep.candidates,
        arrow.source(&f)
    ))
}

fn run_checks<T: Topos>(
    topos: &T,
    objects: &[T::Object],
    probes: &[T::Object],
    tally: &mut [usize; 4],
) -> Result<(), String> {
    let record = |c: UniversalCheck, slot: &mut usize| -> Result<(), String> {
        if let Some(why) = c.failure {
            return Err(format!("{}: {why}", c.construction));
        }
        *slot += c.cones;
        Ok(())
    };
    for a in objects {
        for b in objects {
            record(
                verify_product(topos, a, b, probes).map_err(err)?,
                &mut tally[0],
            )?;
            record(
                verify_exponential(topos, a, b, probes).map_err(err)?,
                &mut tally[3],
            )?;
            let maps = topos.hom(a, b).map_err(err)?;
            for f in &maps {
                for g in &maps {
                    record(
                        verify_equalizer(topos, f, g, probes).map_err(err)?,
                        &mut tally[2],
                    )?;
                }
            }
        }
    }
    for d in objects {
        let into: Vec<T::Morphism> = objects
            .iter()
            .map(|b| topos.hom(b, d))
            .collect::<topos_core::Result<Vec<_>>>()
            .map_err(err)?
            .into_iter()
            .flatten()
            .collect();
        for f in &into {
            for g in &into {
                record(
                    verify_pullback(topos, f, g, probes).map_err(err)?,
                    &mut tally[1],
                )?;
            }
        }
    }
    Ok(())
}

fn universal_properties() -> Outcome {
    let fs = FinSet::new();
    let sets = fs.probe_objects(3).map_err(err)?;
    let mut finset = [0; 4];
    run_checks(&fs, &sets, &sets, &mut finset).map_err(|e| format!("FinSet {e}"))?;
    let arrow = arrow_topos();
    let functors = arrow.probe_objects(2).map_err(err)?;
    let mut presheaf = [0; 4];
    run_checks(&arrow, &functors, &functors, &mut presheaf).map_err(|e| format!("presheaf {e}"))?;
    Ok(format!(
        "cones (product, pullback, equalizer, exponential): FinSet {finset:?}, interval presheaves {presheaf:?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("arrow-topos truth tables", 10, arrow_tables),
        ("truth-value counts", 1, truth_value_counts),
        ("quantifier semantics", 30, quantifiers),
        ("power objects and Ω from P1", 60, power_objects),
        ("Tarski oracle equivalence", 300, tarski),
        ("Boolean / excluded middle", 30, lem),
        ("slice classifier", 60, slice_classifier),
        ("axiom suite", 120, axioms),
        ("universal properties", 120, universal_properties),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {limit}s limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} {} {name} ({:.2}s < {limit}s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
