//! Checkers for well-pointedness, choice, and natural numbers objects.
//!
//! All of them quantify over caller-supplied probes, so a `true` verdict
//! means "no counterexample among the probes".

use crate::concrete::Probes;
use crate::error::Result;
use crate::topos::Topos;

/// Outcome of the extensionality search.
#[derive(Debug, Clone)]
pub struct WellPointedness<M> {
    pub holds: bool,
    /// Distinct parallel maps that agree on every global element.
    pub witness: Option<(M, M)>,
    pub pairs_checked: usize,
}

/// Searches parallel pairs `f ≠ g: A → B` between probes for one that no
/// global element `x: 1 → A` separates.
pub fn is_well_pointed<T: Topos>(
    topos: &T,
    probes: &[T::Object],
) -> Result<WellPointedness<T::Morphism>> {
    let one = topos.terminal();
    let mut pairs_checked = 0;
    for a in probes {
        let points = topos.hom(&one, a)?;
        for b in probes {
            let maps = topos.hom(a, b)?;
            // Maps agreeing on all points share a signature of point images.
            let mut seen: std::collections::HashMap<Vec<T::Morphism>, T::Morphism> =
                std::collections::HashMap::new();
            for f in maps {
                pairs_checked += 1;
                let image = points
                    .iter()
                    .map(|x| topos.compose(&f, x))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(g) = seen.get(&image) {
                    return Ok(WellPointedness {
                        holds: false,
                        witness: Some((g.clone(), f)),
                        pairs_checked,
                    });
                }
                seen.insert(image, f);
            }
        }
    }
    Ok(WellPointedness {
        holds: true,
        witness: None,
        pairs_checked,
    })
}

/// Outcome of the section search.
#[derive(Debug, Clone)]
pub struct ChoiceReport<M> {
    pub holds: bool,
    pub epis_checked: usize,
    /// Epis with no right inverse.
    pub failures: Vec<M>,
    /// `(epi, section)` for every epi that has one.
    pub sections: Vec<(M, M)>,
}

/// A right inverse `g` of `f` (`f ∘ g = id`), by exhaustive search.
pub fn find_section<T: Topos>(topos: &T, f: &T::Morphism) -> Result<Option<T::Morphism>> {
    let (a, i) = (topos.source(f), topos.target(f));
    let id = topos.identity(&i);
    for g in topos.hom(&i, &a)? {
        if topos.compose(f, &g)? == id {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Checks that every epi in `epis` splits.
pub fn satisfies_ac<T: Topos>(
    topos: &T,
    epis: &[T::Morphism],
) -> Result<ChoiceReport<T::Morphism>> {
    let mut failures = Vec::new();
    let mut sections = Vec::new();
    for f in epis {
        match find_section(topos, f)? {
            Some(g) => sections.push((f.clone(), g)),
            None => failures.push(f.clone()),
        }
    }
    Ok(ChoiceReport {
        holds: failures.is_empty(),
        epis_checked: epis.len(),
        failures,
        sections,
    })
}

/// All epis between probe objects.
pub fn epis_between<T: Topos>(topos: &T, probes: &[T::Object]) -> Result<Vec<T::Morphism>> {
    let mut out = Vec::new();
    for a in probes {
        for b in probes {
            out.extend(
                topos
                    .hom(a, b)?
                    .into_iter()
                    .filter(|f| topos.certified_epi(f)),
            );
        }
    }
    Ok(out)
}

/// A diagram `1 →z N →s N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnoCandidate<O, M> {
    pub n: O,
    pub zero: M,
    pub succ: M,
}

/// A test diagram `1 →c A →v A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnoTest<O, M> {
    pub a: O,
    pub c: M,
    pub v: M,
}

/// Outcome of checking a candidate against tests.
#[derive(Debug, Clone)]
pub struct NnoVerdict<O, M> {
    pub holds: bool,
    /// The first failing test and how many `h` it admitted (0 or ≥ 2).
    pub failure: Option<(NnoTest<O, M>, usize)>,
}

/// Number of `h: N → A` with `h ∘ z = c` and `h ∘ s = v ∘ h`.
pub fn count_mediators<T: Topos>(
    topos: &T,
    candidate: &NnoCandidate<T::Object, T::Morphism>,
    test: &NnoTest<T::Object, T::Morphism>,
) -> Result<usize> {
    let mut count = 0;
    for h in topos.hom(&candidate.n, &test.a)? {
        if topos.compose(&h, &candidate.zero)? == test.c
            && topos.compose(&h, &candidate.succ)? == topos.compose(&test.v, &h)?
        {
            count += 1;
        }
    }
    Ok(count)
}

/// A candidate passes iff every test admits exactly one mediator.
pub fn verify_nno<T: Topos>(
    topos: &T,
    candidate: &NnoCandidate<T::Object, T::Morphism>,
    tests: &[NnoTest<T::Object, T::Morphism>],
) -> Result<NnoVerdict<T::Object, T::Morphism>> {
    for test in tests {
        let count = count_mediators(topos, candidate, test)?;
        if count != 1 {
            return Ok(NnoVerdict {
                holds: false,
                failure: Some((test.clone(), count)),
            });
        }
    }
    Ok(NnoVerdict {
        holds: true,
        failure: None,
    })
}

/// Every test diagram on the given objects.
pub fn nno_tests<T: Topos>(
    topos: &T,
    objects: &[T::Object],
) -> Result<Vec<NnoTest<T::Object, T::Morphism>>> {
    let one = topos.terminal();
    let mut out = Vec::new();
    for a in objects {
        let endos = topos.hom(a, a)?;
        for c in topos.hom(&one, a)? {
            for v in &endos {
                out.push(NnoTest {
                    a: a.clone(),
                    c: c.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Result of sweeping all candidates on probe objects up to a bound.
#[derive(Debug, Clone)]
pub struct NnoSweep<O, M> {
    pub bound: usize,
    pub candidates: usize,
    /// Candidates no test refuted.
    pub survivors: Vec<NnoCandidate<O, M>>,
}

/// Tries every candidate on probes of size `≤ bound` against every test on
/// probes of size `≤ bound + 1`.
pub fn nno_sweep<T: Probes>(topos: &T, bound: usize) -> Result<NnoSweep<T::Object, T::Morphism>> {
    let one = topos.terminal();
    let tests = nno_tests(topos, &topos.probe_objects(bound + 1)?)?;
    let mut candidates = 0;
    let mut survivors = Vec::new();
    for n in topos.probe_objects(bound)? {
        let endos = topos.hom(&n, &n)?;
        for zero in topos.hom(&one, &n)? {
            for succ in &endos {
                candidates += 1;
                let candidate = NnoCandidate {
                    n: n.clone(),
                    zero: zero.clone(),
                    succ: succ.clone(),
                };
                if verify_nno(topos, &candidate, &tests)?.holds {
                    survivors.push(candidate);
                }
            }
        }
    }
    Ok(NnoSweep {
        bound,
        candidates,
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetMap, FinSetObject};
    use crate::kernel::Category;
    use crate::presheaf::arrow_topos;

    #[test]
    fn finset_is_well_pointed_on_small_sets() {
        let fs = FinSet::new();
        let probes = fs.probe_objects(3).unwrap();
        assert!(is_well_pointed(&fs, &probes).unwrap().holds);
    }

    #[test]
    fn arrow_topos_is_not_well_pointed() {
        let topos = arrow_topos();
        let probes = topos.probe_objects(2).unwrap();
        let report = is_well_pointed(&topos, &probes).unwrap();
        let (f, g) = report.witness.expect("witness");
        assert_ne!(f, g);
        assert!(topos
            .hom(&topos.terminal(), &topos.source(&f))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn finset_epi_splits() {
        let fs = FinSet::new();
        let f = FinSetMap::new(
            &FinSetObject::range(3),
            &FinSetObject::range(2),
            vec![0, 1, 1],
        )
        .unwrap();
        assert!(satisfies_ac(&fs, &[f]).unwrap().holds);
    }

    #[test]
    fn singleton_candidate_fails() {
        let fs = FinSet::new();
        let one = FinSetObject::range(1);
        let candidate = NnoCandidate {
            n: one.clone(),
            zero: fs.identity(&one),
            succ: fs.identity(&one),
        };
        let two = FinSetObject::range(2);
        let test = NnoTest {
            a: two.clone(),
            c: fs.element(&two, 0).unwrap(),
            v: FinSetMap::new(&two, &two, vec![1, 0]).unwrap(),
        };
        assert!(!verify_nno(&fs, &candidate, &[test]).unwrap().holds);
    }
}
