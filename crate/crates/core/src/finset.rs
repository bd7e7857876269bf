//! The category of finite sets: labeled finite sets and total maps.
//!
//! Constructed objects get canonical labels so that equal constructions
//! produce structurally equal objects:
//! products `(a,b)` in lexicographic order, coproducts `inl:a` / `inr:b`,
//! exponentials `[a:x,b:y]` (the graph of the function), and quotients named
//! by the least label of each class.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToposError};
use crate::kernel::{composition_error, Category};
use crate::topos::{
    require_cospan, require_parallel, BinaryCoproduct, BinaryProduct, Coequalizer, Equalizer,
    Exponential, Pullback, Topos,
};

/// Largest hom-set or exponential the enumerators will materialize.
pub const ENUMERATION_LIMIT: usize = 2_000_000;

pub const TERMINAL_LABEL: &str = "*";
pub const TRUE_LABEL: &str = "T";
pub const FALSE_LABEL: &str = "F";

/// A finite set of distinct labels in a fixed order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawObject", into = "RawObject")]
pub struct FinSetObject {
    elements: Arc<[String]>,
}

#[derive(Serialize, Deserialize)]
struct RawObject {
    elements: Vec<String>,
}

impl TryFrom<RawObject> for FinSetObject {
    type Error = ToposError;
    fn try_from(raw: RawObject) -> Result<Self> {
        FinSetObject::new(raw.elements)
    }
}

impl From<FinSetObject> for RawObject {
    fn from(obj: FinSetObject) -> Self {
        RawObject {
            elements: obj.elements.to_vec(),
        }
    }
}

impl FinSetObject {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::with_capacity(elements.len());
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(ToposError::InvalidObject(format!("duplicate label `{e}`")));
            }
        }
        Ok(FinSetObject {
            elements: elements.into(),
        })
    }

    /// `{0, 1, …, n-1}`.
    pub fn range(n: usize) -> Self {
        FinSetObject {
            elements: (0..n).map(|i| i.to_string()).collect::<Vec<_>>().into(),
        }
    }

    pub fn empty() -> Self {
        Self::range(0)
    }

    fn from_unique(elements: Vec<String>) -> Self {
        debug_assert!(FinSetObject::new(elements.clone()).is_ok());
        FinSetObject {
            elements: elements.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

impl fmt::Display for FinSetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(","))
    }
}

impl fmt::Debug for FinSetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total map between finite sets, stored as a table of target indices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct FinSetMap {
    source: FinSetObject,
    target: FinSetObject,
    table: Arc<[usize]>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: FinSetObject,
    target: FinSetObject,
    table: BTreeMap<String, String>,
}

impl TryFrom<RawMap> for FinSetMap {
    type Error = ToposError;
    fn try_from(raw: RawMap) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = raw
            .table
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        if pairs.len() != raw.source.len() {
            return Err(ToposError::InvalidMorphism(format!(
                "table has {} entries for a source of size {}",
                pairs.len(),
                raw.source.len()
            )));
        }
        FinSetMap::from_labels(&raw.source, &raw.target, &pairs)
    }
}

impl From<FinSetMap> for RawMap {
    fn from(map: FinSetMap) -> Self {
        let table = (0..map.source.len())
            .map(|i| {
                (
                    map.source.label(i).to_string(),
                    map.target.label(map.table[i]).to_string(),
                )
            })
            .collect();
        RawMap {
            source: map.source,
            target: map.target,
            table,
        }
    }
}

impl FinSetMap {
    pub fn new(source: &FinSetObject, target: &FinSetObject, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(ToposError::InvalidMorphism(format!(
                "table of length {} for source {source}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(ToposError::InvalidMorphism(format!(
                "index {bad} outside target {target}"
            )));
        }
        Ok(Self::from_table(source, target, table))
    }

    fn from_table(source: &FinSetObject, target: &FinSetObject, table: Vec<usize>) -> Self {
        FinSetMap {
            source: source.clone(),
            target: target.clone(),
            table: table.into(),
        }
    }

    /// Builds a map from `(source label, target label)` pairs covering the source.
    pub fn from_labels(
        source: &FinSetObject,
        target: &FinSetObject,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut table = vec![None; source.len()];
        for (from, to) in pairs {
            let i = source.index_of(from).ok_or_else(|| {
                ToposError::InvalidMorphism(format!("`{from}` is not an element of {source}"))
            })?;
            let j = target.index_of(to).ok_or_else(|| {
                ToposError::InvalidMorphism(format!("`{to}` is not an element of {target}"))
            })?;
            if table[i].replace(j).is_some_and(|old| old != j) {
                return Err(ToposError::InvalidMorphism(format!(
                    "`{from}` is assigned twice"
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    ToposError::InvalidMorphism(format!("no image for `{}`", source.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_table(source, target, table))
    }

    pub fn from_fn(
        source: &FinSetObject,
        target: &FinSetObject,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        Self::new(source, target, (0..source.len()).map(f).collect())
    }

    pub fn source(&self) -> &FinSetObject {
        &self.source
    }

    pub fn target(&self) -> &FinSetObject {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_label(&self, label: &str) -> Option<&str> {
        self.source
            .index_of(label)
            .map(|i| self.target.label(self.table[i]))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.table
            .iter()
            .all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &t in self.table.iter() {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

impl fmt::Display for FinSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &t) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.source.label(i), self.target.label(t))?;
        }
        write!(f, "]: {} → {}", self.source, self.target)
    }
}

impl fmt::Debug for FinSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `base^exp`, failing past [`ENUMERATION_LIMIT`].
pub fn checked_power(base: usize, exp: usize, what: &str) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&n| n <= ENUMERATION_LIMIT)
            .ok_or_else(|| ToposError::Resource {
                what: what.to_string(),
                limit: ENUMERATION_LIMIT,
            })?;
    }
    Ok(acc)
}

/// Decodes the `index`-th table in lexicographic order of functions
/// `{0..len} → {0..base}` (first entry most significant).
pub fn decode_table(mut index: usize, len: usize, base: usize) -> Vec<usize> {
    let mut table = vec![0; len];
    for slot in table.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    table
}

pub fn encode_table(table: &[usize], base: usize) -> usize {
    table.iter().fold(0, |acc, &t| acc * base + t)
}

/// All functions `{0..len} → {0..base}` in lexicographic order.
pub fn all_tables(len: usize, base: usize) -> Result<Vec<Vec<usize>>> {
    let count = checked_power(base, len, "function table enumeration")?;
    Ok((0..count).map(|i| decode_table(i, len, base)).collect())
}

/// The topos of finite sets with `Ω = {T, F}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSet {
    terminal: FinSetObject,
    omega: FinSetObject,
    truth: FinSetMap,
}

impl Default for FinSet {
    fn default() -> Self {
        Self::new()
    }
}

impl FinSet {
    pub fn new() -> Self {
        let terminal = FinSetObject::from_unique(vec![TERMINAL_LABEL.to_string()]);
        let omega =
            FinSetObject::from_unique(vec![TRUE_LABEL.to_string(), FALSE_LABEL.to_string()]);
        let truth = FinSetMap::from_table(&terminal, &omega, vec![0]);
        FinSet {
            terminal,
            omega,
            truth,
        }
    }

    /// The element `F` of Ω as a global element.
    pub fn falsity(&self) -> FinSetMap {
        FinSetMap::from_table(&self.terminal, &self.omega, vec![1])
    }

    /// The global element `1 → a` picking element `i`.
    pub fn element(&self, a: &FinSetObject, i: usize) -> Result<FinSetMap> {
        FinSetMap::new(&self.terminal, a, vec![i])
    }

    /// Index of `(i, j)` in the canonical product of a left factor with a
    /// right factor of size `right_len`.
    pub fn product_index(i: usize, j: usize, right_len: usize) -> usize {
        i * right_len + j
    }

    fn product_labels(a: &FinSetObject, b: &FinSetObject) -> Vec<String> {
        let mut labels = Vec::with_capacity(a.len() * b.len());
        for x in a.elements() {
            for y in b.elements() {
                labels.push(format!("({x},{y})"));
            }
        }
        labels
    }

    fn graph_label(a: &FinSetObject, b: &FinSetObject, table: &[usize]) -> String {
        let body: Vec<String> = table
            .iter()
            .enumerate()
            .map(|(i, &t)| format!("{}:{}", a.label(i), b.label(t)))
            .collect();
        format!("[{}]", body.join(","))
    }

    /// Canonical inclusion of the subset `keep` (indices in ascending order).
    pub fn inclusion(&self, b: &FinSetObject, keep: &[usize]) -> FinSetMap {
        let labels = keep.iter().map(|&i| b.label(i).to_string()).collect();
        FinSetMap::from_table(&FinSetObject::from_unique(labels), b, keep.to_vec())
    }

    fn check_compose(f: &FinSetMap, g: &FinSetMap) -> Result<()> {
        if f.source != g.target {
            return Err(composition_error(f, g, &f.source, &g.target));
        }
        Ok(())
    }
}

impl Category for FinSet {
    type Object = FinSetObject;
    type Morphism = FinSetMap;

    fn source(&self, f: &FinSetMap) -> FinSetObject {
        f.source.clone()
    }

    fn target(&self, f: &FinSetMap) -> FinSetObject {
        f.target.clone()
    }

    fn identity(&self, a: &FinSetObject) -> FinSetMap {
        FinSetMap::from_table(a, a, (0..a.len()).collect())
    }

    fn compose(&self, f: &FinSetMap, g: &FinSetMap) -> Result<FinSetMap> {
        Self::check_compose(f, g)?;
        let table = g.table.iter().map(|&x| f.table[x]).collect();
        Ok(FinSetMap::from_table(&g.source, &f.target, table))
    }

    fn hom(&self, a: &FinSetObject, b: &FinSetObject) -> Result<Vec<FinSetMap>> {
        Ok(all_tables(a.len(), b.len())?
            .into_iter()
            .map(|t| FinSetMap::from_table(a, b, t))
            .collect())
    }
}

impl Topos for FinSet {
    fn terminal(&self) -> FinSetObject {
        self.terminal.clone()
    }

    fn initial(&self) -> FinSetObject {
        FinSetObject::empty()
    }

    fn to_terminal(&self, a: &FinSetObject) -> FinSetMap {
        FinSetMap::from_table(a, &self.terminal, vec![0; a.len()])
    }

    fn from_initial(&self, a: &FinSetObject) -> FinSetMap {
        FinSetMap::from_table(&FinSetObject::empty(), a, Vec::new())
    }

    fn product(
        &self,
        a: &FinSetObject,
        b: &FinSetObject,
    ) -> Result<BinaryProduct<FinSetObject, FinSetMap>> {
        let apex = FinSetObject::from_unique(Self::product_labels(a, b));
        let first = (0..apex.len()).map(|k| k / b.len().max(1)).collect();
        let second = (0..apex.len()).map(|k| k % b.len().max(1)).collect();
        Ok(BinaryProduct {
            first: FinSetMap::from_table(&apex, a, first),
            second: FinSetMap::from_table(&apex, b, second),
            apex,
        })
    }

    fn pair(&self, f: &FinSetMap, g: &FinSetMap) -> Result<FinSetMap> {
        if f.source != g.source {
            return Err(ToposError::NoFactorization(format!(
                "pair legs have different sources: {f} and {g}"
            )));
        }
        let apex = FinSetObject::from_unique(Self::product_labels(&f.target, &g.target));
        let n = g.target.len();
        let table = (0..f.source.len())
            .map(|x| Self::product_index(f.table[x], g.table[x], n))
            .collect();
        Ok(FinSetMap::from_table(&f.source, &apex, table))
    }

    fn coproduct(
        &self,
        a: &FinSetObject,
        b: &FinSetObject,
    ) -> Result<BinaryCoproduct<FinSetObject, FinSetMap>> {
        let labels = a
            .elements()
            .iter()
            .map(|x| format!("inl:{x}"))
            .chain(b.elements().iter().map(|y| format!("inr:{y}")))
            .collect();
        let apex = FinSetObject::from_unique(labels);
        Ok(BinaryCoproduct {
            left: FinSetMap::from_table(a, &apex, (0..a.len()).collect()),
            right: FinSetMap::from_table(b, &apex, (a.len()..a.len() + b.len()).collect()),
            apex,
        })
    }

    fn copair(&self, f: &FinSetMap, g: &FinSetMap) -> Result<FinSetMap> {
        if f.target != g.target {
            return Err(ToposError::NoFactorization(format!(
                "copair legs have different targets: {f} and {g}"
            )));
        }
        let cop = self.coproduct(&f.source, &g.source)?;
        let table = f.table.iter().chain(g.table.iter()).copied().collect();
        Ok(FinSetMap::from_table(&cop.apex, &f.target, table))
    }

    fn pullback(&self, f: &FinSetMap, g: &FinSetMap) -> Result<Pullback<FinSetObject, FinSetMap>> {
        require_cospan(self, f, g)?;
        let (b, c) = (&f.source, &g.source);
        let mut labels = Vec::new();
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for i in 0..b.len() {
            for j in 0..c.len() {
                if f.table[i] == g.table[j] {
                    labels.push(format!("({},{})", b.label(i), c.label(j)));
                    left.push(i);
                    right.push(j);
                }
            }
        }
        let apex = FinSetObject::from_unique(labels);
        Ok(Pullback {
            left: FinSetMap::from_table(&apex, b, left),
            right: FinSetMap::from_table(&apex, c, right),
            apex,
        })
    }

    fn pullback_factor(
        &self,
        f: &FinSetMap,
        g: &FinSetMap,
        h: &FinSetMap,
        k: &FinSetMap,
    ) -> Result<FinSetMap> {
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
        let c_len = g.source.len();
        let mut lookup = vec![usize::MAX; f.source.len() * c_len];
        for p in 0..pb.apex.len() {
            lookup[pb.left.table[p] * c_len + pb.right.table[p]] = p;
        }
        let table = (0..h.source.len())
            .map(|x| lookup[h.table[x] * c_len + k.table[x]])
            .collect();
        Ok(FinSetMap::from_table(&h.source, &pb.apex, table))
    }

    fn equalizer(
        &self,
        f: &FinSetMap,
        g: &FinSetMap,
    ) -> Result<Equalizer<FinSetObject, FinSetMap>> {
        let (a, _) = require_parallel(self, f, g)?;
        let keep: Vec<usize> = (0..a.len()).filter(|&x| f.table[x] == g.table[x]).collect();
        let inclusion = self.inclusion(&a, &keep);
        Ok(Equalizer {
            apex: inclusion.source.clone(),
            inclusion,
        })
    }

    fn equalizer_factor(&self, f: &FinSetMap, g: &FinSetMap, h: &FinSetMap) -> Result<FinSetMap> {
        if self.compose(f, h)? != self.compose(g, h)? {
            return Err(ToposError::NoFactorization(format!(
                "{h} does not equalize the pair"
            )));
        }
        let eq = self.equalizer(f, g)?;
        let mut position = vec![usize::MAX; f.source.len()];
        for (p, &x) in eq.inclusion.table.iter().enumerate() {
            position[x] = p;
        }
        let table = h.table.iter().map(|&x| position[x]).collect();
        Ok(FinSetMap::from_table(&h.source, &eq.apex, table))
    }

    fn coequalizer(
        &self,
        f: &FinSetMap,
        g: &FinSetMap,
    ) -> Result<Coequalizer<FinSetObject, FinSetMap>> {
        let (_, b) = require_parallel(self, f, g)?;
        let mut parent: Vec<usize> = (0..b.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for x in 0..f.source.len() {
            let (r1, r2) = (find(&mut parent, f.table[x]), find(&mut parent, g.table[x]));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
        // Representative: least label in each class.
        let mut rep_of_root: HashMap<usize, usize> = HashMap::new();
        for y in 0..b.len() {
            let root = find(&mut parent, y);
            rep_of_root
                .entry(root)
                .and_modify(|r| {
                    if b.label(y) < b.label(*r) {
                        *r = y;
                    }
                })
                .or_insert(y);
        }
        let mut reps: Vec<usize> = rep_of_root.values().copied().collect();
        reps.sort_unstable();
        let apex =
            FinSetObject::from_unique(reps.iter().map(|&r| b.label(r).to_string()).collect());
        let class_index: HashMap<usize, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, &r)| (find(&mut parent, r), i))
            .collect();
        let table = (0..b.len())
            .map(|y| class_index[&find(&mut parent, y)])
            .collect();
        Ok(Coequalizer {
            projection: FinSetMap::from_table(&b, &apex, table),
            apex,
        })
    }

    fn coequalizer_factor(&self, f: &FinSetMap, g: &FinSetMap, h: &FinSetMap) -> Result<FinSetMap> {
        if self.compose(h, f)? != self.compose(h, g)? {
            return Err(ToposError::NoFactorization(format!(
                "{h} does not coequalize the pair"
            )));
        }
        let coeq = self.coequalizer(f, g)?;
        let mut table = vec![usize::MAX; coeq.apex.len()];
        for y in 0..f.target.len() {
            table[coeq.projection.table[y]] = h.table[y];
        }
        Ok(FinSetMap::from_table(&coeq.apex, &h.target, table))
    }

    fn exponential(
        &self,
        a: &FinSetObject,
        b: &FinSetObject,
    ) -> Result<Exponential<FinSetObject, FinSetMap>> {
        let tables = all_tables(a.len(), b.len())?;
        let labels = tables.iter().map(|t| Self::graph_label(a, b, t)).collect();
        let object = FinSetObject::from_unique(labels);
        let prod = self.product(&object, a)?;
        let eval_table = (0..prod.apex.len())
            .map(|k| {
                let (func, x) = (prod.first.table[k], prod.second.table[k]);
                tables[func][x]
            })
            .collect();
        Ok(Exponential {
            eval: FinSetMap::from_table(&prod.apex, b, eval_table),
            object,
        })
    }

    fn curry(&self, c: &FinSetObject, a: &FinSetObject, g: &FinSetMap) -> Result<FinSetMap> {
        let prod = self.product(c, a)?;
        if g.source != prod.apex {
            return Err(ToposError::NoFactorization(format!(
                "{g} is not defined on {c} × {a}"
            )));
        }
        let exp = self.exponential(a, &g.target)?;
        let base = g.target.len();
        let table = (0..c.len())
            .map(|x| {
                let row: Vec<usize> = (0..a.len())
                    .map(|y| g.table[Self::product_index(x, y, a.len())])
                    .collect();
                encode_table(&row, base)
            })
            .collect();
        Ok(FinSetMap::from_table(c, &exp.object, table))
    }

    fn omega(&self) -> FinSetObject {
        self.omega.clone()
    }

    fn truth(&self) -> FinSetMap {
        self.truth.clone()
    }

    fn classify(&self, monic: &FinSetMap) -> Result<FinSetMap> {
        let mut table = vec![1; monic.target.len()];
        for &y in monic.table.iter() {
            table[y] = 0;
        }
        Ok(FinSetMap::from_table(&monic.target, &self.omega, table))
    }

    fn certified_monic(&self, f: &FinSetMap) -> bool {
        f.is_injective()
    }

    fn certified_epi(&self, f: &FinSetMap) -> bool {
        f.is_surjective()
    }

    fn image(&self, f: &FinSetMap) -> Result<(FinSetMap, FinSetMap)> {
        let mut hit = vec![false; f.target.len()];
        for &y in f.table.iter() {
            hit[y] = true;
        }
        let keep: Vec<usize> = (0..f.target.len()).filter(|&y| hit[y]).collect();
        let im = self.inclusion(&f.target, &keep);
        let mut position = vec![usize::MAX; f.target.len()];
        for (p, &y) in keep.iter().enumerate() {
            position[y] = p;
        }
        let coim_table = f.table.iter().map(|&y| position[y]).collect();
        let coim = FinSetMap::from_table(&f.source, &im.source, coim_table);
        Ok((coim, im))
    }

    fn subobjects(&self, b: &FinSetObject) -> Result<Vec<FinSetMap>> {
        let count = checked_power(2, b.len(), "subset enumeration")?;
        Ok((0..count)
            .map(|mask| {
                let keep: Vec<usize> = (0..b.len()).filter(|&i| mask >> i & 1 == 1).collect();
                self.inclusion(b, &keep)
            })
            .collect())
    }

    fn truth_value_name(&self, value: &FinSetMap) -> Option<String> {
        (value.source == self.terminal && value.target == self.omega)
            .then(|| self.omega.label(value.table[0]).to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{is_epi, is_monic};

    fn set(n: usize) -> FinSetObject {
        FinSetObject::range(n)
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSetObject::new(["a", "a"]).is_err());
    }

    #[test]
    fn composition_matches_pointwise() {
        let fs = FinSet::new();
        let f = FinSetMap::new(&set(2), &set(2), vec![1, 1]).unwrap();
        let g = FinSetMap::new(&set(2), &set(2), vec![0, 0]).unwrap();
        // [0↦1] after [0↦0, 1↦0]: both land on 1.
        assert_eq!(fs.compose(&f, &g).unwrap().table(), &[1, 1]);
        let h = FinSetMap::new(&set(3), &set(2), vec![0, 1, 0]).unwrap();
        assert!(matches!(
            fs.compose(&h, &f),
            Err(ToposError::Composition { .. })
        ));
    }

    #[test]
    fn monic_epi_examples() {
        let fs = FinSet::new();
        let probes: Vec<_> = (0..=3).map(set).collect();
        let constant = FinSetMap::new(&set(2), &set(2), vec![0, 0]).unwrap();
        assert!(!is_monic(&fs, &constant, &probes).unwrap());
        let inj = FinSetMap::new(&set(2), &set(3), vec![0, 2]).unwrap();
        assert!(is_monic(&fs, &inj, &probes).unwrap());
        let surj = FinSetMap::new(&set(2), &set(1), vec![0, 0]).unwrap();
        assert!(is_epi(&fs, &surj, &probes).unwrap());
        let incl = FinSetMap::new(&set(1), &set(2), vec![0]).unwrap();
        assert!(!is_epi(&fs, &incl, &probes).unwrap());
    }

    #[test]
    fn product_and_coproduct_sizes() {
        let fs = FinSet::new();
        let p = fs.product(&set(2), &set(3)).unwrap();
        assert_eq!(p.apex.len(), 6);
        assert_eq!(p.apex.label(1), "(0,1)");
        let c = fs.coproduct(&set(2), &set(3)).unwrap();
        assert_eq!(c.apex.len(), 5);
        assert_eq!(c.apex.label(2), "inr:0");
        // A × 1 ≅ A through the first projection.
        let unit = fs.product(&set(2), &fs.terminal()).unwrap();
        assert!(unit.first.is_injective() && unit.first.is_surjective());
    }

    #[test]
    fn pullback_examples() {
        let fs = FinSet::new();
        let id = fs.identity(&set(2));
        let pb = fs.pullback(&id, &id).unwrap();
        assert_eq!(pb.apex.elements(), &["(0,0)", "(1,1)"]);
        let f = FinSetMap::new(&set(3), &set(2), vec![0, 1, 1]).unwrap();
        let along_id = fs.pullback(&f, &id).unwrap();
        assert_eq!(along_id.apex.len(), 3);
        let other = FinSetMap::new(&set(2), &set(3), vec![0, 1]).unwrap();
        assert!(matches!(
            fs.pullback(&f, &other),
            Err(ToposError::MismatchedTargets(_))
        ));
    }

    #[test]
    fn equalizer_and_coequalizer_examples() {
        let fs = FinSet::new();
        let id = fs.identity(&set(2));
        let swap = FinSetMap::new(&set(2), &set(2), vec![1, 0]).unwrap();
        assert_eq!(fs.equalizer(&id, &id).unwrap().apex.len(), 2);
        assert!(fs.equalizer(&id, &swap).unwrap().apex.is_empty());
        let q = fs.coequalizer(&id, &swap).unwrap();
        assert_eq!(q.apex.elements(), &["0"]);
        let bad = FinSetMap::new(&set(2), &set(3), vec![0, 0]).unwrap();
        assert!(matches!(
            fs.equalizer(&id, &bad),
            Err(ToposError::NotParallel(_))
        ));
    }

    #[test]
    fn coequalizer_representative_is_least_label() {
        let fs = FinSet::new();
        let b = FinSetObject::new(["z", "m", "a"]).unwrap();
        let a = set(1);
        let f = FinSetMap::new(&a, &b, vec![0]).unwrap();
        let g = FinSetMap::new(&a, &b, vec![2]).unwrap();
        let q = fs.coequalizer(&f, &g).unwrap();
        // Classes keep the order of their representatives in the target.
        assert_eq!(q.apex.elements(), &["m", "a"]);
        assert_eq!(q.projection.table(), &[1, 0, 1]);
    }

    #[test]
    fn exponential_sizes_and_eval() {
        let fs = FinSet::new();
        let e = fs.exponential(&set(2), &set(3)).unwrap();
        assert_eq!(e.object.len(), 9);
        assert_eq!(e.object.label(5), "[0:1,1:2]");
        let one = fs.exponential(&fs.terminal(), &set(3)).unwrap();
        assert_eq!(one.object.len(), 3);
        let empty = fs.exponential(&set(0), &set(3)).unwrap();
        assert_eq!(empty.object.elements(), &["[]"]);
    }

    #[test]
    fn epi_monic_factorization_of_constant() {
        let fs = FinSet::new();
        let f = FinSetMap::new(&set(2), &set(2), vec![0, 0]).unwrap();
        let (coim, im) = fs.image(&f).unwrap();
        assert_eq!(im.source().elements(), &["0"]);
        assert!(coim.is_surjective() && im.is_injective());
        assert_eq!(fs.compose(&im, &coim).unwrap(), f);
    }

    #[test]
    fn json_round_trip() {
        let f = FinSetMap::from_labels(
            &FinSetObject::new(["a", "b"]).unwrap(),
            &FinSetObject::new(["x"]).unwrap(),
            &[("a", "x"), ("b", "x")],
        )
        .unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"source":{"elements":["a","b"]},"target":{"elements":["x"]},"table":{"a":"x","b":"x"}}"#
        );
        let back: FinSetMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"source":{"elements":["a"]},"target":{"elements":["x"]},"table":{"a":"y"}}"#;
        assert!(serde_json::from_str::<FinSetMap>(bad).is_err());
    }
}
