//! Presheaf topoi `Set^{J^op}` over a finite index category `J`.
//!
//! Limits and colimits are computed pointwise with the FinSet constructions.
//! Exponentials use `(B^A)(j) = Nat(y(j) × A, B)`, enumerated exhaustively,
//! and Ω assigns to each object its set of sieves, with `T` picking the
//! maximal sieve.
//!
//! [`arrow_topos`] is the presheaf topos on the interval, presented as the
//! arrow category `Set^→`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToposError};
use crate::finset::{FinSet, FinSetMap, FinSetObject, ENUMERATION_LIMIT};
use crate::kernel::{composition_error, Category};
use crate::topos::{
    product_map, require_cospan, require_parallel, BinaryCoproduct, BinaryProduct, Coequalizer,
    Equalizer, Exponential, Pullback, Topos,
};

/// Exponentials are only enumerated over index categories this small.
pub const MAX_EXPONENTIAL_INDEX_OBJECTS: usize = 4;
/// ... and for presheaves whose components are at most this large.
pub const MAX_EXPONENTIAL_COMPONENT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by objects, arrows and a composition table.
///
/// Arrow `i < objects.len()` is the identity on object `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CategoryDocument", into = "CategoryDocument")]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<IndexArrow>,
    /// `composition[f][g] = f ∘ g` whenever `target(g) = source(f)`.
    composition: Vec<Vec<Option<usize>>>,
}

/// Serialized form: non-identity arrows by endpoint names and the
/// non-identity composites `left ∘ right = result`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDocument {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDocument>,
    #[serde(default)]
    pub composition: Vec<CompositeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDocument {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeDocument {
    pub left: String,
    pub right: String,
    pub result: String,
}

impl TryFrom<CategoryDocument> for FiniteCategory {
    type Error = ToposError;
    fn try_from(doc: CategoryDocument) -> Result<Self> {
        let arrows: Vec<(&str, &str, &str)> = doc
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let composites: Vec<(&str, &str, &str)> = doc
            .composition
            .iter()
            .map(|c| (c.left.as_str(), c.right.as_str(), c.result.as_str()))
            .collect();
        FiniteCategory::new(&doc.objects, &arrows, &composites)
    }
}

impl From<FiniteCategory> for CategoryDocument {
    fn from(cat: FiniteCategory) -> Self {
        let n = cat.objects.len();
        let arrows = cat.arrows[n..]
            .iter()
            .map(|a| ArrowDocument {
                name: a.name.clone(),
                source: cat.objects[a.source].clone(),
                target: cat.objects[a.target].clone(),
            })
            .collect();
        let mut composition = Vec::new();
        for f in n..cat.arrows.len() {
            for g in n..cat.arrows.len() {
                if let Some(h) = cat.composition[f][g] {
                    composition.push(CompositeDocument {
                        left: cat.arrows[f].name.clone(),
                        right: cat.arrows[g].name.clone(),
                        result: cat.arrows[h].name.clone(),
                    });
                }
            }
        }
        CategoryDocument {
            objects: cat.objects,
            arrows,
            composition,
        }
    }
}

impl FiniteCategory {
    /// Builds a category from non-identity `arrows` `(name, source, target)`
    /// and `composites` `(f, g, f∘g)`. Identities are added as `id_<object>`;
    /// every composable pair of non-identity arrows needs a composite.
    pub fn new(
        objects: &[impl AsRef<str>],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let object_index = |name: &str| {
            objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| ToposError::InvalidObject(format!("unknown index object `{name}`")))
        };
        let mut all: Vec<IndexArrow> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| IndexArrow {
                name: format!("id_{o}"),
                source: i,
                target: i,
            })
            .collect();
        for (name, s, t) in arrows {
            all.push(IndexArrow {
                name: name.to_string(),
                source: object_index(s)?,
                target: object_index(t)?,
            });
        }
        let mut names = std::collections::HashSet::new();
        for a in &all {
            if !names.insert(a.name.as_str()) {
                return Err(ToposError::InvalidObject(format!(
                    "duplicate arrow or object name `{}`",
                    a.name
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !objects.iter().all(|o| seen.insert(o)) {
            return Err(ToposError::InvalidObject("duplicate object name".into()));
        }
        let arrow_index = |name: &str| {
            all.iter()
                .position(|a| a.name == name)
                .ok_or_else(|| ToposError::InvalidObject(format!("unknown index arrow `{name}`")))
        };
        let n = objects.len();
        let mut composition = vec![vec![None; all.len()]; all.len()];
        for f in 0..all.len() {
            for g in 0..all.len() {
                if all[g].target != all[f].source {
                    continue;
                }
                if f == all[f].source && f < n {
                    composition[f][g] = Some(g);
                } else if g < n {
                    composition[f][g] = Some(f);
                }
            }
        }
        for (f, g, h) in composites {
            let (f, g, h) = (arrow_index(f)?, arrow_index(g)?, arrow_index(h)?);
            if all[g].target != all[f].source {
                return Err(ToposError::InvalidObject(format!(
                    "composite {} ∘ {} is not composable",
                    all[f].name, all[g].name
                )));
            }
            if all[h].source != all[g].source || all[h].target != all[f].target {
                return Err(ToposError::InvalidObject(format!(
                    "composite {} ∘ {} = {} has the wrong endpoints",
                    all[f].name, all[g].name, all[h].name
                )));
            }
            if composition[f][g].replace(h).is_some_and(|old| old != h) {
                return Err(ToposError::InvalidObject(format!(
                    "conflicting composites for {} ∘ {}",
                    all[f].name, all[g].name
                )));
            }
        }
        let cat = FiniteCategory {
            objects,
            arrows: all,
            composition,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<()> {
        let m = self.arrows.len();
        for f in 0..m {
            for g in 0..m {
                if self.arrows[g].target == self.arrows[f].source
                    && self.composition[f][g].is_none()
                {
                    return Err(ToposError::InvalidObject(format!(
                        "missing composite {} ∘ {}",
                        self.arrows[f].name, self.arrows[g].name
                    )));
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = self.composition[f][g] else {
                    continue;
                };
                for h in 0..m {
                    let Some(gh) = self.composition[g][h] else {
                        continue;
                    };
                    if self.composition[fg][h] != self.composition[f][gh] {
                        return Err(ToposError::InvalidObject(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The category with one object and only its identity.
    pub fn point() -> Self {
        Self::new(&["*"], &[], &[]).expect("point category is valid")
    }

    /// Objects `dom`, `cod` and a single arrow `t: cod → dom`, so that a
    /// presheaf on it is a function `F(dom) → F(cod)`.
    pub fn interval() -> Self {
        Self::new(&["dom", "cod"], &[("t", "cod", "dom")], &[]).expect("interval is valid")
    }

    /// The discrete category on the given objects.
    pub fn discrete(objects: &[impl AsRef<str>]) -> Result<Self> {
        Self::new(objects, &[], &[])
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[IndexArrow] {
        &self.arrows
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn identity(&self, object: usize) -> usize {
        object
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition[f][g]
    }

    /// Arrows with the given target, in arrow order.
    pub fn arrows_into(&self, object: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].target == object)
            .collect()
    }

    /// Arrows `from → to`.
    pub fn arrows_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == from && self.arrows[a].target == to)
            .collect()
    }

    fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        self.objects.len()..self.arrows.len()
    }
}

/// A presheaf: one finite set per index object and, for each index arrow
/// `u: i → j`, a restriction map `F(j) → F(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presheaf(Arc<PresheafData>);

#[derive(PartialEq, Eq, Hash)]
struct PresheafData {
    sets: Vec<FinSetObject>,
    actions: Vec<FinSetMap>,
}

impl Presheaf {
    pub fn set(&self, object: usize) -> &FinSetObject {
        &self.0.sets[object]
    }

    pub fn sets(&self) -> &[FinSetObject] {
        &self.0.sets
    }

    /// Restriction along arrow `u: i → j`, a map `F(j) → F(i)`.
    pub fn action(&self, arrow: usize) -> &FinSetMap {
        &self.0.actions[arrow]
    }

    /// Largest component size.
    pub fn max_component(&self) -> usize {
        self.0.sets.iter().map(FinSetObject::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.sets.iter().map(ToString::to_string).collect();
        // Restrictions along the non-identity arrows, in index order.
        let actions: Vec<String> = self.0.actions[self.0.sets.len()..]
            .iter()
            .map(|a| {
                let body: Vec<String> = (0..a.source().len())
                    .map(|x| format!("{}↦{}", a.source().label(x), a.target().label(a.apply(x))))
                    .collect();
                format!("[{}]", body.join(", "))
            })
            .collect();
        if actions.is_empty() {
            write!(f, "⟨{}⟩", parts.join("; "))
        } else {
            write!(f, "⟨{} | {}⟩", parts.join("; "), actions.join("; "))
        }
    }
}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A natural transformation, one FinSet component per index object.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NatTrans {
    source: Presheaf,
    target: Presheaf,
    components: Arc<[FinSetMap]>,
}

impl NatTrans {
    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn component(&self, object: usize) -> &FinSetMap {
        &self.components[object]
    }

    pub fn components(&self) -> &[FinSetMap] {
        &self.components
    }
}

impl fmt::Display for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let body: Vec<String> = (0..c.source().len())
                    .map(|x| format!("{}↦{}", c.source().label(x), c.target().label(c.apply(x))))
                    .collect();
                format!("[{}]", body.join(", "))
            })
            .collect();
        write!(
            f,
            "⟨{}⟩: {} → {}",
            parts.join("; "),
            self.source,
            self.target
        )
    }
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized presheaf: its index category, per-object elements, and the
/// restriction table of every non-identity arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafDocument {
    pub index: FiniteCategory,
    pub sets: BTreeMap<String, Vec<String>>,
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

struct ExponentialData {
    object: Presheaf,
    eval: NatTrans,
    /// Per index object, positions of the natural transformations `y(j) × A → B`.
    lookup: Vec<HashMap<NatTrans, usize>>,
}

/// The topos of presheaves on a finite category.
pub struct PresheafTopos {
    index: Arc<FiniteCategory>,
    fs: FinSet,
    terminal: Presheaf,
    initial: Presheaf,
    /// Per object, its sieves as arrow bitmasks; position 0 is the maximal sieve.
    sieves: Vec<Vec<u64>>,
    omega: Presheaf,
    truth: NatTrans,
    truth_names: HashMap<Vec<usize>, String>,
    exponentials: Mutex<HashMap<(Presheaf, Presheaf), Arc<ExponentialData>>>,
}

impl fmt::Debug for PresheafTopos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresheafTopos")
            .field("index", &self.index)
            .finish_non_exhaustive()
    }
}

impl Clone for PresheafTopos {
    fn clone(&self) -> Self {
        PresheafTopos {
            index: self.index.clone(),
            fs: self.fs.clone(),
            terminal: self.terminal.clone(),
            initial: self.initial.clone(),
            sieves: self.sieves.clone(),
            omega: self.omega.clone(),
            truth: self.truth.clone(),
            truth_names: self.truth_names.clone(),
            exponentials: Mutex::new(HashMap::new()),
        }
    }
}

/// `Set^{J^op}` for a finite `J`.
pub fn presheaf_topos(index: FiniteCategory) -> Result<PresheafTopos> {
    PresheafTopos::new(index)
}

/// The arrow category `Set^→`: presheaves on the interval, with the middle
/// truth value named `C`.
pub fn arrow_topos() -> PresheafTopos {
    let mut topos =
        PresheafTopos::new(FiniteCategory::interval()).expect("interval presheaves form a topos");
    // Sieve indices per object: at `dom`, {t} sits between the maximal and empty sieve.
    let dom = topos.index.object_index("dom").expect("dom");
    let t = topos.index.arrow_index("t").expect("t");
    let middle = topos.sieves[dom]
        .iter()
        .position(|&s| s == 1 << t)
        .expect("sieve {t} exists");
    topos.truth_names.insert(vec![middle, 0], "C".to_string());
    topos
}

impl PresheafTopos {
    pub fn new(index: FiniteCategory) -> Result<Self> {
        if index.arrows.len() > 64 {
            return Err(ToposError::Resource {
                what: "index category arrows (sieves are stored as bitmasks)".into(),
                limit: 64,
            });
        }
        let index = Arc::new(index);
        let fs = FinSet::new();
        let n = index.objects.len();
        let constant = |set: &FinSetObject| {
            let sets = vec![set.clone(); n];
            let actions = index
                .arrows
                .iter()
                .map(|_| fs.identity(set))
                .collect::<Vec<_>>();
            Presheaf(Arc::new(PresheafData { sets, actions }))
        };
        let terminal = constant(&fs.terminal());
        let initial = constant(&fs.initial());

        let sieves: Vec<Vec<u64>> = (0..n).map(|j| Self::enumerate_sieves(&index, j)).collect();
        let sieve_sets: Vec<FinSetObject> = sieves
            .iter()
            .map(|list| {
                FinSetObject::new(list.iter().map(|&s| Self::sieve_label(&index, s)))
                    .expect("sieve labels are distinct")
            })
            .collect();
        let actions = index
            .arrows
            .iter()
            .enumerate()
            .map(|(u, arrow)| {
                let (i, j) = (arrow.source, arrow.target);
                let table = sieves[j]
                    .iter()
                    .map(|&s| {
                        let pulled = Self::pull_sieve(&index, u, s, i);
                        sieves[i].iter().position(|&x| x == pulled).expect("closed")
                    })
                    .collect();
                FinSetMap::new(&sieve_sets[j], &sieve_sets[i], table).expect("valid table")
            })
            .collect();
        let omega = Presheaf(Arc::new(PresheafData {
            sets: sieve_sets,
            actions,
        }));
        let components: Vec<FinSetMap> = (0..n)
            .map(|j| FinSetMap::new(terminal.set(j), omega.set(j), vec![0]).expect("maximal"))
            .collect();
        let truth = NatTrans {
            source: terminal.clone(),
            target: omega.clone(),
            components: components.into(),
        };
        Ok(PresheafTopos {
            index,
            fs,
            terminal,
            initial,
            sieves,
            omega,
            truth,
            truth_names: HashMap::new(),
            exponentials: Mutex::new(HashMap::new()),
        })
    }

    pub fn index(&self) -> &FiniteCategory {
        &self.index
    }

    /// The sieves on `object`, as sorted lists of arrow names.
    pub fn sieves_on(&self, object: usize) -> Vec<Vec<String>> {
        self.sieves[object]
            .iter()
            .map(|&s| {
                (0..self.index.arrows.len())
                    .filter(|&a| s >> a & 1 == 1)
                    .map(|a| self.index.arrows[a].name.clone())
                    .collect()
            })
            .collect()
    }

    fn enumerate_sieves(index: &FiniteCategory, j: usize) -> Vec<u64> {
        let into = index.arrows_into(j);
        let mut found = Vec::new();
        for mask in 0u64..(1u64 << into.len()) {
            let sieve: u64 = into
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .fold(0, |acc, (_, &a)| acc | 1 << a);
            let closed = into.iter().filter(|&&s| sieve >> s & 1 == 1).all(|&s| {
                index
                    .arrows_into(index.arrows[s].source)
                    .iter()
                    .all(|&t| index.composition[s][t].is_some_and(|st| sieve >> st & 1 == 1))
            });
            if closed {
                found.push(sieve);
            }
        }
        found.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
        found
    }

    fn sieve_label(index: &FiniteCategory, sieve: u64) -> String {
        let names: Vec<&str> = (0..index.arrows.len())
            .filter(|&a| sieve >> a & 1 == 1)
            .map(|a| index.arrows[a].name.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// `u*(S) = { t : u ∘ t ∈ S }` for `u: i → j`.
    fn pull_sieve(index: &FiniteCategory, u: usize, sieve: u64, i: usize) -> u64 {
        index
            .arrows_into(i)
            .into_iter()
            .filter(|&t| index.composition[u][t].is_some_and(|ut| sieve >> ut & 1 == 1))
            .fold(0, |acc, t| acc | 1 << t)
    }

    /// Builds and validates a presheaf from per-object sets and the
    /// restriction maps of the non-identity arrows, keyed by arrow name.
    pub fn presheaf(
        &self,
        sets: Vec<FinSetObject>,
        restrictions: &[(&str, FinSetMap)],
    ) -> Result<Presheaf> {
        let n = self.index.objects.len();
        if sets.len() != n {
            return Err(ToposError::InvalidObject(format!(
                "expected {n} component sets, got {}",
                sets.len()
            )));
        }
        let mut actions: Vec<Option<FinSetMap>> = vec![None; self.index.arrows.len()];
        for (i, slot) in actions.iter_mut().enumerate().take(n) {
            *slot = Some(self.fs.identity(&sets[i]));
        }
        for (name, map) in restrictions {
            let u = self
                .index
                .arrow_index(name)
                .ok_or_else(|| ToposError::InvalidObject(format!("unknown arrow `{name}`")))?;
            if u < n {
                return Err(ToposError::InvalidObject(format!(
                    "identity `{name}` cannot be given a restriction"
                )));
            }
            let IndexArrow { source, target, .. } = self.index.arrows[u];
            if map.source() != &sets[target] || map.target() != &sets[source] {
                return Err(ToposError::InvalidObject(format!(
                    "restriction along `{name}` must map {} → {}",
                    sets[target], sets[source]
                )));
            }
            actions[u] = Some(map.clone());
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(u, a)| {
                a.ok_or_else(|| {
                    ToposError::InvalidObject(format!(
                        "missing restriction along `{}`",
                        self.index.arrows[u].name
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Presheaf(Arc::new(PresheafData { sets, actions }));
        self.check_functor(&p)?;
        Ok(p)
    }

    /// Functor laws, contravariantly: `F(id) = id` and `F(f∘g) = F(g)∘F(f)`.
    pub fn check_functor(&self, p: &Presheaf) -> Result<()> {
        for j in 0..self.index.objects.len() {
            if p.action(j) != &self.fs.identity(p.set(j)) {
                return Err(ToposError::InvalidObject(format!(
                    "identity on `{}` does not act trivially",
                    self.index.objects[j]
                )));
            }
        }
        for f in 0..self.index.arrows.len() {
            for g in 0..self.index.arrows.len() {
                if let Some(fg) = self.index.composition[f][g] {
                    if *p.action(fg) != self.fs.compose(p.action(g), p.action(f))? {
                        return Err(ToposError::InvalidObject(format!(
                            "restrictions do not respect {} ∘ {}",
                            self.index.arrows[f].name, self.index.arrows[g].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn raw(&self, sets: Vec<FinSetObject>, actions: Vec<FinSetMap>) -> Presheaf {
        let p = Presheaf(Arc::new(PresheafData { sets, actions }));
        debug_assert!(self.check_functor(&p).is_ok());
        p
    }

    /// Builds and validates a natural transformation from its components.
    pub fn nat_trans(
        &self,
        source: &Presheaf,
        target: &Presheaf,
        components: Vec<FinSetMap>,
    ) -> Result<NatTrans> {
        if components.len() != self.index.objects.len() {
            return Err(ToposError::InvalidMorphism(format!(
                "expected {} components, got {}",
                self.index.objects.len(),
                components.len()
            )));
        }
        for (j, c) in components.iter().enumerate() {
            if c.source() != source.set(j) || c.target() != target.set(j) {
                return Err(ToposError::InvalidMorphism(format!(
                    "component at `{}` has the wrong endpoints",
                    self.index.objects[j]
                )));
            }
        }
        for u in self.index.non_identity() {
            let IndexArrow {
                source: i,
                target: j,
                ..
            } = self.index.arrows[u];
            let lhs = self.fs.compose(&components[i], source.action(u))?;
            let rhs = self.fs.compose(target.action(u), &components[j])?;
            if lhs != rhs {
                return Err(ToposError::InvalidMorphism(format!(
                    "not natural along `{}`",
                    self.index.arrows[u].name
                )));
            }
        }
        Ok(self.raw_nat(source, target, components))
    }

    fn raw_nat(
        &self,
        source: &Presheaf,
        target: &Presheaf,
        components: Vec<FinSetMap>,
    ) -> NatTrans {
        NatTrans {
            source: source.clone(),
            target: target.clone(),
            components: components.into(),
        }
    }

    /// The sub-presheaf of `b` with the given per-object subsets (ascending
    /// indices), as its canonical inclusion.
    pub fn subpresheaf(&self, b: &Presheaf, subsets: &[Vec<usize>]) -> Result<NatTrans> {
        let n = self.index.objects.len();
        let mut member = Vec::with_capacity(n);
        for j in 0..n {
            let mut pos = vec![None; b.set(j).len()];
            for (p, &x) in subsets[j].iter().enumerate() {
                pos[x] = Some(p);
            }
            member.push(pos);
        }
        let inclusions: Vec<FinSetMap> = (0..n)
            .map(|j| self.fs.inclusion(b.set(j), &subsets[j]))
            .collect();
        let sets: Vec<FinSetObject> = inclusions.iter().map(|m| m.source().clone()).collect();
        let mut actions = Vec::with_capacity(self.index.arrows.len());
        for (u, arrow) in self.index.arrows.iter().enumerate() {
            let (i, j) = (arrow.source, arrow.target);
            let table = subsets[j]
                .iter()
                .map(|&x| {
                    member[i][b.action(u).apply(x)].ok_or_else(|| {
                        ToposError::InvalidObject(format!(
                            "subsets not closed under restriction along `{}`",
                            arrow.name
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(FinSetMap::new(&sets[j], &sets[i], table)?);
        }
        let sub = self.raw(sets, actions);
        Ok(self.raw_nat(&sub, b, inclusions))
    }

    /// The representable presheaf `y(j) = Hom(−, j)`.
    pub fn representable(&self, j: usize) -> Presheaf {
        let n = self.index.objects.len();
        let homs: Vec<Vec<usize>> = (0..n).map(|i| self.index.arrows_between(i, j)).collect();
        let sets: Vec<FinSetObject> = homs
            .iter()
            .map(|list| {
                FinSetObject::new(list.iter().map(|&a| self.index.arrows[a].name.clone()))
                    .expect("arrow names are distinct")
            })
            .collect();
        let actions = self
            .index
            .arrows
            .iter()
            .enumerate()
            .map(|(u, arrow)| {
                let (k, i) = (arrow.source, arrow.target);
                let table = homs[i]
                    .iter()
                    .map(|&g| {
                        let gu = self.index.composition[g][u].expect("composable");
                        homs[k].iter().position(|&x| x == gu).expect("in hom-set")
                    })
                    .collect();
                FinSetMap::new(&sets[i], &sets[k], table).expect("valid table")
            })
            .collect();
        self.raw(sets, actions)
    }

    /// `y(u): y(i) → y(j)` for `u: i → j`, postcomposition with `u`.
    fn representable_map(&self, u: usize) -> NatTrans {
        let IndexArrow {
            source: i,
            target: j,
            ..
        } = self.index.arrows[u];
        let (yi, yj) = (self.representable(i), self.representable(j));
        let components = (0..self.index.objects.len())
            .map(|k| {
                let from = self.index.arrows_between(k, i);
                let to = self.index.arrows_between(k, j);
                let table = from
                    .iter()
                    .map(|&g| {
                        let ug = self.index.composition[u][g].expect("composable");
                        to.iter().position(|&x| x == ug).expect("in hom-set")
                    })
                    .collect();
                FinSetMap::new(yi.set(k), yj.set(k), table).expect("valid table")
            })
            .collect();
        self.raw_nat(&yi, &yj, components)
    }

    /// Enumerates `Nat(a, b)` by backtracking over element assignments,
    /// checking each naturality constraint as soon as both sides are fixed.
    pub fn natural_transformations(&self, a: &Presheaf, b: &Presheaf) -> Result<Vec<NatTrans>> {
        let n = self.index.objects.len();
        let mut offset = vec![0; n + 1];
        for j in 0..n {
            offset[j + 1] = offset[j] + a.set(j).len();
        }
        let vars = offset[n];
        let object_of: Vec<usize> = (0..n)
            .flat_map(|j| std::iter::repeat_n(j, a.set(j).len()))
            .collect();
        // Constraint (u, x): α_i(A(u) x) = B(u)(α_j x), checked at the later variable.
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vars];
        for u in self.index.non_identity() {
            let IndexArrow {
                source: i,
                target: j,
                ..
            } = self.index.arrows[u];
            for x in 0..a.set(j).len() {
                let vj = offset[j] + x;
                let vi = offset[i] + a.action(u).apply(x);
                checks[vj.max(vi)].push((u, vj, vi));
            }
        }
        let mut assignment = vec![0usize; vars];
        let mut solutions = Vec::new();
        fn search(
            pos: usize,
            vars: usize,
            object_of: &[usize],
            b: &Presheaf,
            checks: &[Vec<(usize, usize, usize)>],
            assignment: &mut Vec<usize>,
            solutions: &mut Vec<Vec<usize>>,
        ) -> Result<()> {
            if pos == vars {
                if solutions.len() >= ENUMERATION_LIMIT {
                    return Err(ToposError::Resource {
                        what: "natural transformation enumeration".into(),
                        limit: ENUMERATION_LIMIT,
                    });
                }
                solutions.push(assignment.clone());
                return Ok(());
            }
            for value in 0..b.set(object_of[pos]).len() {
                assignment[pos] = value;
                let ok = checks[pos]
                    .iter()
                    .all(|&(u, vj, vi)| assignment[vi] == b.action(u).apply(assignment[vj]));
                if ok {
                    search(pos + 1, vars, object_of, b, checks, assignment, solutions)?;
                }
            }
            Ok(())
        }
        search(
            0,
            vars,
            &object_of,
            b,
            &checks,
            &mut assignment,
            &mut solutions,
        )?;
        Ok(solutions
            .into_iter()
            .map(|flat| {
                let components = (0..n)
                    .map(|j| {
                        FinSetMap::new(a.set(j), b.set(j), flat[offset[j]..offset[j + 1]].to_vec())
                            .expect("values in range")
                    })
                    .collect();
                self.raw_nat(a, b, components)
            })
            .collect())
    }

    fn nat_label(theta: &NatTrans) -> String {
        let parts: Vec<String> = theta
            .components
            .iter()
            .map(|c| {
                let body: Vec<String> = (0..c.source().len())
                    .map(|x| format!("{}:{}", c.source().label(x), c.target().label(c.apply(x))))
                    .collect();
                format!("[{}]", body.join(","))
            })
            .collect();
        format!("<{}>", parts.join("|"))
    }

    fn exponential_data(&self, a: &Presheaf, b: &Presheaf) -> Result<Arc<ExponentialData>> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.exponentials.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let n = self.index.objects.len();
        if n > MAX_EXPONENTIAL_INDEX_OBJECTS {
            return Err(ToposError::Resource {
                what: "index objects for presheaf exponentials".into(),
                limit: MAX_EXPONENTIAL_INDEX_OBJECTS,
            });
        }
        if a.max_component() > MAX_EXPONENTIAL_COMPONENT
            || b.max_component() > MAX_EXPONENTIAL_COMPONENT
        {
            return Err(ToposError::Resource {
                what: "component size for presheaf exponentials".into(),
                limit: MAX_EXPONENTIAL_COMPONENT,
            });
        }
        let mut elements = Vec::with_capacity(n);
        for j in 0..n {
            let yj_a = self.product(&self.representable(j), a)?;
            elements.push(self.natural_transformations(&yj_a.apex, b)?);
        }
        let lookup: Vec<HashMap<NatTrans, usize>> = elements
            .iter()
            .map(|list| {
                list.iter()
                    .cloned()
                    .enumerate()
                    .map(|(k, t)| (t, k))
                    .collect()
            })
            .collect();
        let sets: Vec<FinSetObject> = elements
            .iter()
            .map(|list| FinSetObject::new(list.iter().map(Self::nat_label)))
            .collect::<Result<_>>()?;
        let id_a = self.identity(a);
        let mut actions = Vec::with_capacity(self.index.arrows.len());
        for (u, arrow) in self.index.arrows.iter().enumerate() {
            let (i, j) = (arrow.source, arrow.target);
            let reindex = product_map(self, &self.representable_map(u), &id_a)?;
            let table = elements[j]
                .iter()
                .map(|theta| {
                    let restricted = self.compose(theta, &reindex)?;
                    lookup[i].get(&restricted).copied().ok_or_else(|| {
                        ToposError::Inconsistent("restricted transformation not enumerated".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(FinSetMap::new(&sets[j], &sets[i], table)?);
        }
        let object = self.raw(sets, actions);

        let prod = self.product(&object, a)?;
        let mut eval_components = Vec::with_capacity(n);
        for j in 0..n {
            let a_len = a.set(j).len();
            let yj = self.representable(j);
            let id_pos = yj
                .set(j)
                .index_of(&self.index.arrows[j].name)
                .expect("identity in y(j)(j)");
            let table = (0..prod.apex.set(j).len())
                .map(|k| {
                    let (theta, x) = (k / a_len.max(1), k % a_len.max(1));
                    elements[j][theta].component(j).apply(id_pos * a_len + x)
                })
                .collect();
            eval_components.push(FinSetMap::new(prod.apex.set(j), b.set(j), table)?);
        }
        let eval = self.raw_nat(&prod.apex, b, eval_components);
        let data = Arc::new(ExponentialData {
            object,
            eval,
            lookup,
        });
        self.exponentials
            .lock()
            .expect("cache lock")
            .insert(key, data.clone());
        Ok(data)
    }

    /// Restriction-compatible families at every stage of a presheaf, i.e.
    /// the elements `x ∈ F(j)` as global data: `apply_at(f, j, x)`.
    pub fn apply_at(&self, f: &NatTrans, object: usize, x: usize) -> usize {
        f.component(object).apply(x)
    }

    /// Wraps a function `f: A → B` as an object of the arrow category.
    pub fn arrow_object(&self, f: &FinSetMap) -> Result<Presheaf> {
        self.require_interval()?;
        self.presheaf(
            vec![f.source().clone(), f.target().clone()],
            &[("t", f.clone())],
        )
    }

    /// The function `F(dom) → F(cod)` presented by an arrow-category object.
    pub fn arrow_function(&self, p: &Presheaf) -> Result<FinSetMap> {
        self.require_interval()?;
        Ok(p.action(self.index.arrow_index("t").expect("t")).clone())
    }

    /// A commutative square `(top: A → C, bottom: B → D)` between arrow objects.
    pub fn arrow_square(
        &self,
        source: &Presheaf,
        target: &Presheaf,
        top: &FinSetMap,
        bottom: &FinSetMap,
    ) -> Result<NatTrans> {
        self.require_interval()?;
        self.nat_trans(source, target, vec![top.clone(), bottom.clone()])
    }

    fn require_interval(&self) -> Result<()> {
        if *self.index != FiniteCategory::interval() {
            return Err(ToposError::Capability(
                "arrow-category views need the interval index category".into(),
            ));
        }
        Ok(())
    }

    pub fn encode(&self, p: &Presheaf) -> PresheafDocument {
        let sets = self
            .index
            .objects
            .iter()
            .enumerate()
            .map(|(j, o)| (o.clone(), p.set(j).elements().to_vec()))
            .collect();
        let restrictions = self
            .index
            .non_identity()
            .map(|u| {
                let map = p.action(u);
                let table = (0..map.source().len())
                    .map(|x| {
                        (
                            map.source().label(x).to_string(),
                            map.target().label(map.apply(x)).to_string(),
                        )
                    })
                    .collect();
                (self.index.arrows[u].name.clone(), table)
            })
            .collect();
        PresheafDocument {
            index: (*self.index).clone(),
            sets,
            restrictions,
        }
    }

    pub fn decode(&self, doc: &PresheafDocument) -> Result<Presheaf> {
        if doc.index != *self.index {
            return Err(ToposError::InvalidObject(
                "document index category differs from the topos".into(),
            ));
        }
        let sets = self
            .index
            .objects
            .iter()
            .map(|o| {
                let labels = doc.sets.get(o).ok_or_else(|| {
                    ToposError::InvalidObject(format!("no elements given for `{o}`"))
                })?;
                FinSetObject::new(labels.iter().cloned())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = Vec::new();
        for u in self.index.non_identity() {
            let arrow = &self.index.arrows[u];
            let table = doc.restrictions.get(&arrow.name).ok_or_else(|| {
                ToposError::InvalidObject(format!("no restriction given for `{}`", arrow.name))
            })?;
            let pairs: Vec<(&str, &str)> = table
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect();
            let map = FinSetMap::from_labels(&sets[arrow.target], &sets[arrow.source], &pairs)?;
            restrictions.push((arrow.name.as_str(), map));
        }
        self.presheaf(sets, &restrictions)
    }

    fn check_compose(f: &NatTrans, g: &NatTrans) -> Result<()> {
        if f.source != g.target {
            return Err(composition_error(f, g, &f.source, &g.target));
        }
        Ok(())
    }

    fn pointwise<F>(&self, f: F) -> Result<Vec<FinSetMap>>
    where
        F: Fn(usize) -> Result<FinSetMap>,
    {
        (0..self.index.objects.len()).map(f).collect()
    }
}

impl Category for PresheafTopos {
    type Object = Presheaf;
    type Morphism = NatTrans;

    fn source(&self, f: &NatTrans) -> Presheaf {
        f.source.clone()
    }

    fn target(&self, f: &NatTrans) -> Presheaf {
        f.target.clone()
    }

    fn identity(&self, a: &Presheaf) -> NatTrans {
        let components = a.sets().iter().map(|s| self.fs.identity(s)).collect();
        self.raw_nat(a, a, components)
    }

    fn compose(&self, f: &NatTrans, g: &NatTrans) -> Result<NatTrans> {
        Self::check_compose(f, g)?;
        let components = self.pointwise(|j| self.fs.compose(f.component(j), g.component(j)))?;
        Ok(self.raw_nat(&g.source, &f.target, components))
    }

    fn hom(&self, a: &Presheaf, b: &Presheaf) -> Result<Vec<NatTrans>> {
        self.natural_transformations(a, b)
    }
}

impl Topos for PresheafTopos {
    fn terminal(&self) -> Presheaf {
        self.terminal.clone()
    }

    fn initial(&self) -> Presheaf {
        self.initial.clone()
    }

    fn to_terminal(&self, a: &Presheaf) -> NatTrans {
        let components = a.sets().iter().map(|s| self.fs.to_terminal(s)).collect();
        self.raw_nat(a, &self.terminal, components)
    }

    fn from_initial(&self, a: &Presheaf) -> NatTrans {
        let components = a.sets().iter().map(|s| self.fs.from_initial(s)).collect();
        self.raw_nat(&self.initial, a, components)
    }

    fn product(&self, a: &Presheaf, b: &Presheaf) -> Result<BinaryProduct<Presheaf, NatTrans>> {
        let n = self.index.objects.len();
        let parts = (0..n)
            .map(|j| self.fs.product(a.set(j), b.set(j)))
            .collect::<Result<Vec<_>>>()?;
        let sets = parts.iter().map(|p| p.apex.clone()).collect();
        let actions = (0..self.index.arrows.len())
            .map(|u| product_map(&self.fs, a.action(u), b.action(u)))
            .collect::<Result<Vec<_>>>()?;
        let apex = self.raw(sets, actions);
        let first = parts.iter().map(|p| p.first.clone()).collect();
        let second = parts.iter().map(|p| p.second.clone()).collect();
        Ok(BinaryProduct {
            first: self.raw_nat(&apex, a, first),
            second: self.raw_nat(&apex, b, second),
            apex,
        })
    }

    fn pair(&self, f: &NatTrans, g: &NatTrans) -> Result<NatTrans> {
        if f.source != g.source {
            return Err(ToposError::NoFactorization(format!(
                "pair legs have different sources: {f} and {g}"
            )));
        }
        let prod = self.product(&f.target, &g.target)?;
        let components = self.pointwise(|j| self.fs.pair(f.component(j), g.component(j)))?;
        Ok(self.raw_nat(&f.source, &prod.apex, components))
    }

    fn coproduct(&self, a: &Presheaf, b: &Presheaf) -> Result<BinaryCoproduct<Presheaf, NatTrans>> {
        let n = self.index.objects.len();
        let parts = (0..n)
            .map(|j| self.fs.coproduct(a.set(j), b.set(j)))
            .collect::<Result<Vec<_>>>()?;
        let sets = parts.iter().map(|p| p.apex.clone()).collect();
        let actions = self
            .index
            .arrows
            .iter()
            .enumerate()
            .map(|(u, arrow)| {
                let (i, j) = (arrow.source, arrow.target);
                let l = self.fs.compose(&parts[i].left, a.action(u))?;
                let r = self.fs.compose(&parts[i].right, b.action(u))?;
                let m = self.fs.copair(&l, &r)?;
                debug_assert_eq!(m.source(), &parts[j].apex);
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let apex = self.raw(sets, actions);
        let left = parts.iter().map(|p| p.left.clone()).collect();
        let right = parts.iter().map(|p| p.right.clone()).collect();
        Ok(BinaryCoproduct {
            left: self.raw_nat(a, &apex, left),
            right: self.raw_nat(b, &apex, right),
            apex,
        })
    }

    fn copair(&self, f: &NatTrans, g: &NatTrans) -> Result<NatTrans> {
        if f.target != g.target {
            return Err(ToposError::NoFactorization(format!(
                "copair legs have different targets: {f} and {g}"
            )));
        }
        let cop = self.coproduct(&f.source, &g.source)?;
        let components = self.pointwise(|j| self.fs.copair(f.component(j), g.component(j)))?;
        Ok(self.raw_nat(&cop.apex, &f.target, components))
    }

    fn pullback(&self, f: &NatTrans, g: &NatTrans) -> Result<Pullback<Presheaf, NatTrans>> {
        require_cospan(self, f, g)?;
        let n = self.index.objects.len();
        let parts = (0..n)
            .map(|j| self.fs.pullback(f.component(j), g.component(j)))
            .collect::<Result<Vec<_>>>()?;
        let sets = parts.iter().map(|p| p.apex.clone()).collect();
        let actions = self
            .index
            .arrows
            .iter()
            .enumerate()
            .map(|(u, arrow)| {
                let (i, j) = (arrow.source, arrow.target);
                let h = self.fs.compose(f.source.action(u), &parts[j].left)?;
                let k = self.fs.compose(g.source.action(u), &parts[j].right)?;
                self.fs
                    .pullback_factor(f.component(i), g.component(i), &h, &k)
            })
            .collect::<Result<Vec<_>>>()?;
        let apex = self.raw(sets, actions);
        let left = parts.iter().map(|p| p.left.clone()).collect();
        let right = parts.iter().map(|p| p.right.clone()).collect();
        Ok(Pullback {
            left: self.raw_nat(&apex, &f.source, left),
            right: self.raw_nat(&apex, &g.source, right),
            apex,
        })
    }

    fn pullback_factor(
        &self,
        f: &NatTrans,
        g: &NatTrans,
        h: &NatTrans,
        k: &NatTrans,
    ) -> Result<NatTrans> {
        if h.source != k.source || h.target != f.source || k.target != g.source {
            return Err(ToposError::NoFactorization(format!(
                "{h} and {k} do not form a cone over the cospan"
            )));
        }
        if self.compose(f, h)? != self.compose(g, k)? {
            return Err(ToposError::NoFactorization(format!(
                "square with {h} and {k} does not commute"
            )));
        }
        let pb = self.pullback(f, g)?;
        let components = self.pointwise(|j| {
            self.fs.pullback_factor(
                f.component(j),
                g.component(j),
                h.component(j),
                k.component(j),
            )
        })?;
        Ok(self.raw_nat(&h.source, &pb.apex, components))
    }

    fn equalizer(&self, f: &NatTrans, g: &NatTrans) -> Result<Equalizer<Presheaf, NatTrans>> {
        let (a, _) = require_parallel(self, f, g)?;
        let n = self.index.objects.len();
        let subsets: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..a.set(j).len())
                    .filter(|&x| f.component(j).apply(x) == g.component(j).apply(x))
                    .collect()
            })
            .collect();
        let inclusion = self.subpresheaf(&a, &subsets)?;
        Ok(Equalizer {
            apex: inclusion.source.clone(),
            inclusion,
        })
    }

    fn equalizer_factor(&self, f: &NatTrans, g: &NatTrans, h: &NatTrans) -> Result<NatTrans> {
        if self.compose(f, h)? != self.compose(g, h)? {
            return Err(ToposError::NoFactorization(format!(
                "{h} does not equalize the pair"
            )));
        }
        let eq = self.equalizer(f, g)?;
        let components = self.pointwise(|j| {
            self.fs
                .equalizer_factor(f.component(j), g.component(j), h.component(j))
        })?;
        Ok(self.raw_nat(&h.source, &eq.apex, components))
    }

    fn coequalizer(&self, f: &NatTrans, g: &NatTrans) -> Result<Coequalizer<Presheaf, NatTrans>> {
        let (_, b) = require_parallel(self, f, g)?;
        let n = self.index.objects.len();
        let parts = (0..n)
            .map(|j| self.fs.coequalizer(f.component(j), g.component(j)))
            .collect::<Result<Vec<_>>>()?;
        let sets = parts.iter().map(|p| p.apex.clone()).collect();
        let actions = self
            .index
            .arrows
            .iter()
            .enumerate()
            .map(|(u, arrow)| {
                let (i, j) = (arrow.source, arrow.target);
                let h = self.fs.compose(&parts[i].projection, b.action(u))?;
                self.fs
                    .coequalizer_factor(f.component(j), g.component(j), &h)
            })
            .collect::<Result<Vec<_>>>()?;
        let apex = self.raw(sets, actions);
        let projection = parts.iter().map(|p| p.projection.clone()).collect();
        Ok(Coequalizer {
            projection: self.raw_nat(&b, &apex, projection),
            apex,
        })
    }

    fn coequalizer_factor(&self, f: &NatTrans, g: &NatTrans, h: &NatTrans) -> Result<NatTrans> {
        if self.compose(h, f)? != self.compose(h, g)? {
            return Err(ToposError::NoFactorization(format!(
                "{h} does not coequalize the pair"
            )));
        }
        let coeq = self.coequalizer(f, g)?;
        let components = self.pointwise(|j| {
            self.fs
                .coequalizer_factor(f.component(j), g.component(j), h.component(j))
        })?;
        Ok(self.raw_nat(&coeq.apex, &h.target, components))
    }

    fn exponential(&self, a: &Presheaf, b: &Presheaf) -> Result<Exponential<Presheaf, NatTrans>> {
        let data = self.exponential_data(a, b)?;
        Ok(Exponential {
            object: data.object.clone(),
            eval: data.eval.clone(),
        })
    }

    fn curry(&self, c: &Presheaf, a: &Presheaf, g: &NatTrans) -> Result<NatTrans> {
        let prod = self.product(c, a)?;
        if g.source != prod.apex {
            return Err(ToposError::NoFactorization(format!(
                "{g} is not defined on {c} × {a}"
            )));
        }
        let data = self.exponential_data(a, &g.target)?;
        let n = self.index.objects.len();
        let mut components = Vec::with_capacity(n);
        for j in 0..n {
            let yj = self.representable(j);
            let yj_a = self.product(&yj, a)?;
            let mut table = Vec::with_capacity(c.set(j).len());
            for x in 0..c.set(j).len() {
                // θ_i(h, y) = g_i(C(h)(x), y) for h: i → j.
                let theta_components = (0..n)
                    .map(|i| {
                        let arrows = self.index.arrows_between(i, j);
                        let a_len = a.set(i).len();
                        let values = (0..yj_a.apex.set(i).len())
                            .map(|k| {
                                let (h, y) = (arrows[k / a_len.max(1)], k % a_len.max(1));
                                let restricted = c.action(h).apply(x);
                                g.component(i).apply(restricted * a_len + y)
                            })
                            .collect();
                        FinSetMap::new(yj_a.apex.set(i), g.target.set(i), values)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let theta = self.raw_nat(&yj_a.apex, &g.target, theta_components);
                let idx = data.lookup[j].get(&theta).copied().ok_or_else(|| {
                    ToposError::Inconsistent("transpose is not a natural transformation".into())
                })?;
                table.push(idx);
            }
            components.push(FinSetMap::new(c.set(j), data.object.set(j), table)?);
        }
        Ok(self.raw_nat(c, &data.object, components))
    }

    fn omega(&self) -> Presheaf {
        self.omega.clone()
    }

    fn truth(&self) -> NatTrans {
        self.truth.clone()
    }

    fn classify(&self, monic: &NatTrans) -> Result<NatTrans> {
        let b = &monic.target;
        let n = self.index.objects.len();
        let image: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let mut hit = vec![false; b.set(i).len()];
                for &y in monic.component(i).table() {
                    hit[y] = true;
                }
                hit
            })
            .collect();
        let components = self.pointwise(|j| {
            let into = self.index.arrows_into(j);
            let table = (0..b.set(j).len())
                .map(|x| {
                    let sieve = into
                        .iter()
                        .filter(|&&u| image[self.index.arrows[u].source][b.action(u).apply(x)])
                        .fold(0u64, |acc, &u| acc | 1 << u);
                    self.sieves[j]
                        .iter()
                        .position(|&s| s == sieve)
                        .ok_or_else(|| ToposError::ClassifierViolation(format!("{monic}")))
                })
                .collect::<Result<Vec<_>>>()?;
            FinSetMap::new(b.set(j), self.omega.set(j), table)
        })?;
        Ok(self.raw_nat(b, &self.omega, components))
    }

    fn certified_monic(&self, f: &NatTrans) -> bool {
        f.components.iter().all(FinSetMap::is_injective)
    }

    fn certified_epi(&self, f: &NatTrans) -> bool {
        f.components.iter().all(FinSetMap::is_surjective)
    }

    fn image(&self, f: &NatTrans) -> Result<(NatTrans, NatTrans)> {
        let n = self.index.objects.len();
        let parts = (0..n)
            .map(|j| self.fs.image(f.component(j)))
            .collect::<Result<Vec<_>>>()?;
        let subsets: Vec<Vec<usize>> = parts.iter().map(|(_, im)| im.table().to_vec()).collect();
        let im = self.subpresheaf(&f.target, &subsets)?;
        let coim = parts.into_iter().map(|(coim, _)| coim).collect();
        Ok((self.raw_nat(&f.source, &im.source, coim), im))
    }

    fn subobjects(&self, b: &Presheaf) -> Result<Vec<NatTrans>> {
        let n = self.index.objects.len();
        let mut total: usize = 1;
        for j in 0..n {
            total = total
                .checked_mul(
                    1usize
                        .checked_shl(b.set(j).len() as u32)
                        .unwrap_or(usize::MAX),
                )
                .filter(|&t| t <= ENUMERATION_LIMIT)
                .ok_or_else(|| ToposError::Resource {
                    what: "subpresheaf enumeration".into(),
                    limit: ENUMERATION_LIMIT,
                })?;
        }
        let mut found = Vec::new();
        for code in 0..total {
            let mut rest = code;
            let mut subsets = Vec::with_capacity(n);
            for j in 0..n {
                let size = b.set(j).len();
                let mask = rest & ((1 << size) - 1);
                rest >>= size;
                subsets.push(
                    (0..size)
                        .filter(|&x| mask >> x & 1 == 1)
                        .collect::<Vec<_>>(),
                );
            }
            let closed = self.index.non_identity().all(|u| {
                let IndexArrow {
                    source: i,
                    target: j,
                    ..
                } = self.index.arrows[u];
                subsets[j]
                    .iter()
                    .all(|&x| subsets[i].binary_search(&b.action(u).apply(x)).is_ok())
            });
            if closed {
                found.push(self.subpresheaf(b, &subsets)?);
            }
        }
        Ok(found)
    }

    fn truth_value_name(&self, value: &NatTrans) -> Option<String> {
        if value.source != self.terminal || value.target != self.omega {
            return None;
        }
        let key: Vec<usize> = value.components.iter().map(|c| c.apply(0)).collect();
        if let Some(name) = self.truth_names.get(&key) {
            return Some(name.clone());
        }
        let parts: Vec<String> = key
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                let value = match (s, self.sieves[j][s]) {
                    (0, _) => "T",
                    (_, 0) => "F",
                    _ => self.omega.set(j).label(s),
                };
                format!("{}:{value}", self.index.objects()[j])
            })
            .collect();
        Some(format!("<{}>", parts.join(",")))
    }
}
