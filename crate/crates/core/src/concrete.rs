//! Stage-wise views of objects and morphisms, plus probe generators.
//!
//! Every topos here is built from finite sets: FinSet has a single stage,
//! a presheaf topos has one stage per index object, and a slice of FinSet
//! has the single stage of the domain. This is what lets the CLI and the
//! structure builders talk about elements by label.

use crate::error::{Result, ToposError};
use crate::finset::{all_tables, FinSet, FinSetMap, FinSetObject};
use crate::presheaf::{Presheaf, PresheafTopos};
use crate::slice::{FiberedExponentials, Slice, SliceObject};
use crate::topos::{power, Topos};

/// A topos whose objects are families of finite sets.
pub trait Concrete: Topos {
    fn stage_names(&self) -> Vec<String>;
    fn stage_sets(&self, a: &Self::Object) -> Vec<FinSetObject>;
    fn stage_maps(&self, f: &Self::Morphism) -> Vec<FinSetMap>;
    /// Assembles a morphism from one FinSet map per stage, validating it.
    fn morphism_from_stages(
        &self,
        source: &Self::Object,
        target: &Self::Object,
        maps: Vec<FinSetMap>,
    ) -> Result<Self::Morphism>;
    /// The canonical monic onto the given stage-wise subsets (ascending
    /// indices); fails if they are not closed under the object's structure.
    fn subobject_from_stages(
        &self,
        a: &Self::Object,
        subsets: &[Vec<usize>],
    ) -> Result<Self::Morphism>;
}

/// Objects up to a size bound, for exhaustive checks.
pub trait Probes: Topos {
    fn probe_objects(&self, bound: usize) -> Result<Vec<Self::Object>>;
}

impl Concrete for FinSet {
    fn stage_names(&self) -> Vec<String> {
        vec!["*".into()]
    }

    fn stage_sets(&self, a: &FinSetObject) -> Vec<FinSetObject> {
        vec![a.clone()]
    }

    fn stage_maps(&self, f: &FinSetMap) -> Vec<FinSetMap> {
        vec![f.clone()]
    }

    fn morphism_from_stages(
        &self,
        source: &FinSetObject,
        target: &FinSetObject,
        maps: Vec<FinSetMap>,
    ) -> Result<FinSetMap> {
        match <[FinSetMap; 1]>::try_from(maps) {
            Ok([m]) if m.source() == source && m.target() == target => Ok(m),
            _ => Err(ToposError::InvalidMorphism(format!(
                "expected a single map {source} → {target}"
            ))),
        }
    }

    fn subobject_from_stages(&self, a: &FinSetObject, subsets: &[Vec<usize>]) -> Result<FinSetMap> {
        match subsets {
            [keep] if keep.windows(2).all(|w| w[0] < w[1]) && keep.iter().all(|&x| x < a.len()) => {
                Ok(self.inclusion(a, keep))
            }
            _ => Err(ToposError::InvalidObject(format!("not a subset of {a}"))),
        }
    }
}

impl Probes for FinSet {
    fn probe_objects(&self, bound: usize) -> Result<Vec<FinSetObject>> {
        Ok((0..=bound).map(FinSetObject::range).collect())
    }
}

impl Concrete for PresheafTopos {
    fn stage_names(&self) -> Vec<String> {
        self.index().objects().to_vec()
    }

    fn stage_sets(&self, a: &Presheaf) -> Vec<FinSetObject> {
        a.sets().to_vec()
    }

    fn stage_maps(&self, f: &Self::Morphism) -> Vec<FinSetMap> {
        f.components().to_vec()
    }

    fn morphism_from_stages(
        &self,
        source: &Presheaf,
        target: &Presheaf,
        maps: Vec<FinSetMap>,
    ) -> Result<Self::Morphism> {
        self.nat_trans(source, target, maps)
    }

    fn subobject_from_stages(
        &self,
        a: &Presheaf,
        subsets: &[Vec<usize>],
    ) -> Result<Self::Morphism> {
        if subsets.len() != a.sets().len()
            || subsets.iter().zip(a.sets()).any(|(keep, set)| {
                !keep.windows(2).all(|w| w[0] < w[1]) || keep.iter().any(|&x| x >= set.len())
            })
        {
            return Err(ToposError::InvalidObject(format!(
                "not a family of subsets of {a}"
            )));
        }
        self.subpresheaf(a, subsets)
    }
}

impl Probes for PresheafTopos {
    /// Every presheaf whose components have at most `bound` elements,
    /// labelled `0, 1, …` in each component. Isomorphic copies are kept.
    fn probe_objects(&self, bound: usize) -> Result<Vec<Presheaf>> {
        let index = self.index();
        let n = index.objects().len();
        let non_identity: Vec<usize> = (n..index.arrows().len()).collect();
        let mut found = Vec::new();
        let mut sizes = vec![0usize; n];
        loop {
            let sets: Vec<FinSetObject> = sizes.iter().map(|&k| FinSetObject::range(k)).collect();
            let choices: Vec<Vec<Vec<usize>>> = non_identity
                .iter()
                .map(|&u| {
                    let arrow = &index.arrows()[u];
                    all_tables(sizes[arrow.target], sizes[arrow.source])
                })
                .collect::<Result<_>>()?;
            let mut pick = vec![0usize; non_identity.len()];
            'tables: loop {
                if choices.iter().all(|c| !c.is_empty()) {
                    let restrictions: Vec<(&str, FinSetMap)> = non_identity
                        .iter()
                        .zip(&pick)
                        .map(|(&u, &k)| {
                            let arrow = &index.arrows()[u];
                            let map = FinSetMap::new(
                                &sets[arrow.target],
                                &sets[arrow.source],
                                choices[u - n][k].clone(),
                            )
                            .expect("enumerated table");
                            (arrow.name.as_str(), map)
                        })
                        .collect();
                    if let Ok(p) = self.presheaf(sets.clone(), &restrictions) {
                        found.push(p);
                    }
                } else {
                    break 'tables;
                }
                let mut i = 0;
                loop {
                    if i == pick.len() {
                        break 'tables;
                    }
                    pick[i] += 1;
                    if pick[i] < choices[i].len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(found);
                }
                sizes[i] += 1;
                if sizes[i] <= bound {
                    break;
                }
                sizes[i] = 0;
                i += 1;
            }
        }
    }
}

impl<B: FiberedExponentials + Concrete> Concrete for Slice<B> {
    fn stage_names(&self) -> Vec<String> {
        self.base().stage_names()
    }

    fn stage_sets(&self, a: &Self::Object) -> Vec<FinSetObject> {
        self.base().stage_sets(&self.base().source(a.structure()))
    }

    fn stage_maps(&self, f: &Self::Morphism) -> Vec<FinSetMap> {
        self.base().stage_maps(f.map())
    }

    fn morphism_from_stages(
        &self,
        source: &Self::Object,
        target: &Self::Object,
        maps: Vec<FinSetMap>,
    ) -> Result<Self::Morphism> {
        let base = self.base();
        let map = base.morphism_from_stages(
            &base.source(source.structure()),
            &base.source(target.structure()),
            maps,
        )?;
        self.morphism(source, target, map)
    }

    fn subobject_from_stages(
        &self,
        a: &Self::Object,
        subsets: &[Vec<usize>],
    ) -> Result<Self::Morphism> {
        let base = self.base();
        let m = base.subobject_from_stages(&base.source(a.structure()), subsets)?;
        let sub = self.object(base.compose(a.structure(), &m)?)?;
        self.morphism(&sub, a, m)
    }
}

impl Probes for Slice<FinSet> {
    /// Every map `A → X` with `|A| ≤ bound`.
    fn probe_objects(&self, bound: usize) -> Result<Vec<SliceObject<FinSetMap>>> {
        let mut found = Vec::new();
        for size in 0..=bound {
            let a = FinSetObject::range(size);
            for table in all_tables(size, self.over().len())? {
                found.push(self.object(FinSetMap::new(&a, self.over(), table)?)?);
            }
        }
        Ok(found)
    }
}

/// Stage-wise coordinates of every element of `M^n`: for each stage, each
/// element's projections onto the `n` factors.
pub fn power_coordinates<T: Concrete>(
    topos: &T,
    m: &T::Object,
    n: usize,
) -> Result<(T::Object, Vec<Vec<Vec<usize>>>)> {
    let pw = power(topos, m, n)?;
    let stages = topos.stage_sets(&pw.apex);
    let projections: Vec<Vec<FinSetMap>> =
        pw.projections.iter().map(|p| topos.stage_maps(p)).collect();
    let coords = stages
        .iter()
        .enumerate()
        .map(|(s, set)| {
            (0..set.len())
                .map(|x| projections.iter().map(|p| p[s].apply(x)).collect())
                .collect()
        })
        .collect();
    Ok((pw.apex, coords))
}

/// The morphism `M^n → M` given stage-wise by `value(stage, coordinates)`.
pub fn function_from_tuples<T, F>(
    topos: &T,
    m: &T::Object,
    n: usize,
    value: F,
) -> Result<T::Morphism>
where
    T: Concrete,
    F: Fn(usize, &[usize]) -> Result<usize>,
{
    let (apex, coords) = power_coordinates(topos, m, n)?;
    let sources = topos.stage_sets(&apex);
    let targets = topos.stage_sets(m);
    let maps = coords
        .iter()
        .enumerate()
        .map(|(s, elems)| {
            let table = elems
                .iter()
                .map(|c| value(s, c))
                .collect::<Result<Vec<_>>>()?;
            FinSetMap::new(&sources[s], &targets[s], table)
        })
        .collect::<Result<Vec<_>>>()?;
    topos.morphism_from_stages(&apex, m, maps)
}

/// Global elements `1 → a`.
pub fn global_elements<T: Topos>(topos: &T, a: &T::Object) -> Result<Vec<T::Morphism>> {
    topos.hom(&topos.terminal(), a)
}
