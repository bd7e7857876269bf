//! Slice topoi `C/X`.
//!
//! Objects are base maps `a: A → X`, morphisms are commuting triangles.
//! Finite limits come from base pullbacks and colimits from base colimits;
//! the classifier is `π₂: Ω × X → X` with `T̄ = ⟨T∘!, id⟩: X → Ω × X`.
//! Exponentials are fiberwise and need a base implementing
//! [`FiberedExponentials`], which only [`FinSet`] does.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Result, ToposError};
use crate::finset::{
    all_tables, checked_power, FinSet, FinSetMap, FinSetObject, ENUMERATION_LIMIT,
};
use crate::kernel::Category;
use crate::topos::{
    constant_true, require_cospan, BinaryCoproduct, BinaryProduct, Coequalizer, Equalizer,
    Exponential, Pullback, Topos,
};

/// An object of `C/X`: a base morphism into `X`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SliceObject<M>(pub M);

impl<M> SliceObject<M> {
    pub fn structure(&self) -> &M {
        &self.0
    }
}

impl<M: fmt::Display> fmt::Display for SliceObject<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl<M: fmt::Display> fmt::Debug for SliceObject<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A morphism of `C/X`: a base map `g: A → A′` with `a′ ∘ g = a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SliceMorphism<M> {
    source: M,
    target: M,
    map: M,
}

impl<M> SliceMorphism<M> {
    pub fn map(&self) -> &M {
        &self.map
    }
}

impl<M: fmt::Display> fmt::Display for SliceMorphism<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over ({} ⇒ {})", self.map, self.source, self.target)
    }
}

impl<M: fmt::Display> fmt::Debug for SliceMorphism<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bases whose slices have computable exponentials.
pub trait FiberedExponentials: Topos {
    /// `(e: E → X, ev: E ×_X A → B)` for `a: A → X`, `b: B → X`, where
    /// `E ×_X A` is the base pullback of `e` along `a`.
    fn fibered_exponential(
        &self,
        over: &Self::Object,
        a: &Self::Morphism,
        b: &Self::Morphism,
    ) -> Result<(Self::Morphism, Self::Morphism)>;

    /// Transpose of `g: C ×_X A → B` (source the base pullback of `c` along `a`).
    fn fibered_curry(
        &self,
        over: &Self::Object,
        c: &Self::Morphism,
        a: &Self::Morphism,
        b: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// Display name for a global element `X → Ω × X` of the slice classifier.
    fn fibered_truth_name(&self, _over: &Self::Object, _value: &Self::Morphism) -> Option<String> {
        None
    }
}

/// `C/X` for a base topos `C`.
#[derive(Debug, Clone)]
pub struct Slice<B: Topos> {
    base: B,
    over: B::Object,
    omega: SliceObject<B::Morphism>,
    truth: SliceMorphism<B::Morphism>,
}

/// `FinSet/X`.
pub fn slice_topos<B: Topos>(base: B, over: B::Object) -> Result<Slice<B>> {
    Slice::new(base, over)
}

impl<B: Topos> Slice<B> {
    pub fn new(base: B, over: B::Object) -> Result<Self> {
        let prod = base.product(&base.omega(), &over)?;
        let id_x = base.identity(&over);
        let top = base.pair(&constant_true(&base, &over)?, &id_x)?;
        let omega = SliceObject(prod.second);
        let truth = SliceMorphism {
            source: id_x,
            target: omega.0.clone(),
            map: top,
        };
        Ok(Slice {
            base,
            over,
            omega,
            truth,
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn over(&self) -> &B::Object {
        &self.over
    }

    /// Wraps a base map into `X` as a slice object.
    pub fn object(&self, structure: B::Morphism) -> Result<SliceObject<B::Morphism>> {
        if self.base.target(&structure) != self.over {
            return Err(ToposError::InvalidObject(format!(
                "{structure} does not land in {}",
                self.over
            )));
        }
        Ok(SliceObject(structure))
    }

    /// Wraps a base map as a slice morphism, checking the triangle.
    pub fn morphism(
        &self,
        source: &SliceObject<B::Morphism>,
        target: &SliceObject<B::Morphism>,
        map: B::Morphism,
    ) -> Result<SliceMorphism<B::Morphism>> {
        if self.base.compose(&target.0, &map)? != source.0 {
            return Err(ToposError::InvalidMorphism(format!(
                "{map} does not commute over {}",
                self.over
            )));
        }
        Ok(self.raw(&source.0, &target.0, map))
    }

    fn raw(
        &self,
        source: &B::Morphism,
        target: &B::Morphism,
        map: B::Morphism,
    ) -> SliceMorphism<B::Morphism> {
        SliceMorphism {
            source: source.clone(),
            target: target.clone(),
            map,
        }
    }

    fn domain(&self, a: &SliceObject<B::Morphism>) -> B::Object {
        self.base.source(&a.0)
    }
}

impl<B: Topos> Category for Slice<B> {
    type Object = SliceObject<B::Morphism>;
    type Morphism = SliceMorphism<B::Morphism>;

    fn source(&self, f: &Self::Morphism) -> Self::Object {
        SliceObject(f.source.clone())
    }

    fn target(&self, f: &Self::Morphism) -> Self::Object {
        SliceObject(f.target.clone())
    }

    fn identity(&self, a: &Self::Object) -> Self::Morphism {
        self.raw(&a.0, &a.0, self.base.identity(&self.domain(a)))
    }

    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        if f.source != g.target {
            return Err(crate::kernel::composition_error(
                f,
                g,
                &SliceObject(f.source.clone()),
                &SliceObject(g.target.clone()),
            ));
        }
        Ok(self.raw(&g.source, &f.target, self.base.compose(&f.map, &g.map)?))
    }

    fn hom(&self, a: &Self::Object, b: &Self::Object) -> Result<Vec<Self::Morphism>> {
        let mut found = Vec::new();
        for g in self.base.hom(&self.domain(a), &self.domain(b))? {
            if self.base.compose(&b.0, &g)? == a.0 {
                found.push(self.raw(&a.0, &b.0, g));
            }
        }
        Ok(found)
    }
}

impl<B: FiberedExponentials> Topos for Slice<B> {
    fn terminal(&self) -> Self::Object {
        SliceObject(self.base.identity(&self.over))
    }

    fn initial(&self) -> Self::Object {
        SliceObject(self.base.from_initial(&self.over))
    }

    fn to_terminal(&self, a: &Self::Object) -> Self::Morphism {
        let id = self.base.identity(&self.over);
        self.raw(&a.0, &id, a.0.clone())
    }

    fn from_initial(&self, a: &Self::Object) -> Self::Morphism {
        let zero = self.base.from_initial(&self.over);
        self.raw(&zero, &a.0, self.base.from_initial(&self.domain(a)))
    }

    fn product(
        &self,
        a: &Self::Object,
        b: &Self::Object,
    ) -> Result<BinaryProduct<Self::Object, Self::Morphism>> {
        let pb = self.base.pullback(&a.0, &b.0)?;
        let apex = self.base.compose(&a.0, &pb.left)?;
        Ok(BinaryProduct {
            first: self.raw(&apex, &a.0, pb.left),
            second: self.raw(&apex, &b.0, pb.right),
            apex: SliceObject(apex),
        })
    }

    fn pair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        if f.source != g.source {
            return Err(ToposError::NoFactorization(format!(
                "pair legs have different sources: {f} and {g}"
            )));
        }
        let prod = self.product(
            &SliceObject(f.target.clone()),
            &SliceObject(g.target.clone()),
        )?;
        let map = self
            .base
            .pullback_factor(&f.target, &g.target, &f.map, &g.map)?;
        Ok(self.raw(&f.source, &prod.apex.0, map))
    }

    fn coproduct(
        &self,
        a: &Self::Object,
        b: &Self::Object,
    ) -> Result<BinaryCoproduct<Self::Object, Self::Morphism>> {
        let cop = self.base.coproduct(&self.domain(a), &self.domain(b))?;
        let apex = self.base.copair(&a.0, &b.0)?;
        Ok(BinaryCoproduct {
            left: self.raw(&a.0, &apex, cop.left),
            right: self.raw(&b.0, &apex, cop.right),
            apex: SliceObject(apex),
        })
    }

    fn copair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        if f.target != g.target {
            return Err(ToposError::NoFactorization(format!(
                "copair legs have different targets: {f} and {g}"
            )));
        }
        let apex = self.base.copair(&f.source, &g.source)?;
        Ok(self.raw(&apex, &f.target, self.base.copair(&f.map, &g.map)?))
    }

    fn pullback(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Pullback<Self::Object, Self::Morphism>> {
        require_cospan(self, f, g)?;
        let pb = self.base.pullback(&f.map, &g.map)?;
        let apex = self.base.compose(&f.source, &pb.left)?;
        Ok(Pullback {
            left: self.raw(&apex, &f.source, pb.left),
            right: self.raw(&apex, &g.source, pb.right),
            apex: SliceObject(apex),
        })
    }

    fn pullback_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
        k: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        let pb = self.pullback(f, g)?;
        let map = self.base.pullback_factor(&f.map, &g.map, &h.map, &k.map)?;
        Ok(self.raw(&h.source, &pb.apex.0, map))
    }

    fn equalizer(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Equalizer<Self::Object, Self::Morphism>> {
        crate::topos::require_parallel(self, f, g)?;
        let eq = self.base.equalizer(&f.map, &g.map)?;
        let apex = self.base.compose(&f.source, &eq.inclusion)?;
        Ok(Equalizer {
            inclusion: self.raw(&apex, &f.source, eq.inclusion),
            apex: SliceObject(apex),
        })
    }

    fn equalizer_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        let eq = self.equalizer(f, g)?;
        let map = self.base.equalizer_factor(&f.map, &g.map, &h.map)?;
        Ok(self.raw(&h.source, &eq.apex.0, map))
    }

    fn coequalizer(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<Coequalizer<Self::Object, Self::Morphism>> {
        crate::topos::require_parallel(self, f, g)?;
        let co = self.base.coequalizer(&f.map, &g.map)?;
        let apex = self.base.coequalizer_factor(&f.map, &g.map, &f.target)?;
        Ok(Coequalizer {
            projection: self.raw(&f.target, &apex, co.projection),
            apex: SliceObject(apex),
        })
    }

    fn coequalizer_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        let co = self.coequalizer(f, g)?;
        let map = self.base.coequalizer_factor(&f.map, &g.map, &h.map)?;
        Ok(self.raw(&co.apex.0, &h.target, map))
    }

    fn exponential(
        &self,
        a: &Self::Object,
        b: &Self::Object,
    ) -> Result<Exponential<Self::Object, Self::Morphism>> {
        let (e, ev) = self.base.fibered_exponential(&self.over, &a.0, &b.0)?;
        let prod = self.product(&SliceObject(e.clone()), a)?;
        Ok(Exponential {
            eval: self.raw(&prod.apex.0, &b.0, ev),
            object: SliceObject(e),
        })
    }

    fn curry(
        &self,
        c: &Self::Object,
        a: &Self::Object,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        let prod = self.product(c, a)?;
        if g.source != prod.apex.0 {
            return Err(ToposError::NoFactorization(format!(
                "{g} is not defined on {c} × {a}"
            )));
        }
        let (e, _) = self.base.fibered_exponential(&self.over, &a.0, &g.target)?;
        let map = self
            .base
            .fibered_curry(&self.over, &c.0, &a.0, &g.target, &g.map)?;
        Ok(self.raw(&c.0, &e, map))
    }

    fn omega(&self) -> Self::Object {
        self.omega.clone()
    }

    fn truth(&self) -> Self::Morphism {
        self.truth.clone()
    }

    /// `(χ_f × b) ∘ Δ_B = ⟨χ_f, b⟩`.
    fn classify(&self, monic: &Self::Morphism) -> Result<Self::Morphism> {
        let chi = self.base.classify(&monic.map)?;
        let map = self.base.pair(&chi, &monic.target)?;
        Ok(self.raw(&monic.target, &self.omega.0, map))
    }

    fn certified_monic(&self, f: &Self::Morphism) -> bool {
        self.base.certified_monic(&f.map)
    }

    fn certified_epi(&self, f: &Self::Morphism) -> bool {
        self.base.certified_epi(&f.map)
    }

    fn image(&self, f: &Self::Morphism) -> Result<(Self::Morphism, Self::Morphism)> {
        let (coim, im) = self.base.image(&f.map)?;
        let apex = self.base.compose(&f.target, &im)?;
        Ok((
            self.raw(&f.source, &apex, coim),
            self.raw(&apex, &f.target, im),
        ))
    }

    fn subobjects(&self, b: &Self::Object) -> Result<Vec<Self::Morphism>> {
        self.base
            .subobjects(&self.domain(b))?
            .into_iter()
            .map(|m| Ok(self.raw(&self.base.compose(&b.0, &m)?, &b.0, m)))
            .collect()
    }

    fn truth_value_name(&self, value: &Self::Morphism) -> Option<String> {
        if value.target != self.omega.0 || value.source != self.base.identity(&self.over) {
            return None;
        }
        self.base.fibered_truth_name(&self.over, &value.map)
    }
}

impl FiberedExponentials for FinSet {
    fn fibered_exponential(
        &self,
        over: &FinSetObject,
        a: &FinSetMap,
        b: &FinSetMap,
    ) -> Result<(FinSetMap, FinSetMap)> {
        let fibers_a = fibers(over, a);
        let fibers_b = fibers(over, b);
        let mut labels = Vec::new();
        let mut structure = Vec::new();
        // Per element of E: its base point and the section table on A_x.
        let mut sections: Vec<(usize, Vec<usize>)> = Vec::new();
        for x in 0..over.len() {
            let (fa, fb) = (&fibers_a[x], &fibers_b[x]);
            let count = checked_power(fb.len(), fa.len(), "fibered exponential")?;
            if sections.len() + count > ENUMERATION_LIMIT {
                return Err(ToposError::Resource {
                    what: "fibered exponential".into(),
                    limit: ENUMERATION_LIMIT,
                });
            }
            for table in all_tables(fa.len(), fb.len())? {
                let body: Vec<String> = table
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        format!("{}:{}", a.source().label(fa[i]), b.source().label(fb[t]))
                    })
                    .collect();
                labels.push(format!("{}:[{}]", over.label(x), body.join(",")));
                structure.push(x);
                sections.push((x, table.iter().map(|&t| fb[t]).collect()));
            }
        }
        let e_obj = FinSetObject::new(labels)?;
        let e = FinSetMap::new(&e_obj, over, structure)?;
        let pb = self.pullback(&e, a)?;
        let position_in_fiber = fiber_positions(over, a);
        let eval_table = (0..pb.apex.len())
            .map(|k| {
                let (s, y) = (pb.left.apply(k), pb.right.apply(k));
                sections[s].1[position_in_fiber[y]]
            })
            .collect();
        let ev = FinSetMap::new(&pb.apex, b.source(), eval_table)?;
        Ok((e, ev))
    }

    fn fibered_curry(
        &self,
        over: &FinSetObject,
        c: &FinSetMap,
        a: &FinSetMap,
        b: &FinSetMap,
        g: &FinSetMap,
    ) -> Result<FinSetMap> {
        let (e, _) = self.fibered_exponential(over, a, b)?;
        let pb = self.pullback(c, a)?;
        if g.source() != &pb.apex || g.target() != b.source() {
            return Err(ToposError::NoFactorization(format!(
                "{g} is not defined on the fibered product"
            )));
        }
        let index: HashMap<(usize, usize), usize> = (0..pb.apex.len())
            .map(|k| ((pb.left.apply(k), pb.right.apply(k)), k))
            .collect();
        let fibers_a = fibers(over, a);
        let fibers_b = fibers(over, b);
        let positions_b = fiber_positions(over, b);
        // Offset of the first section over each x in E.
        let mut offset = vec![0; over.len() + 1];
        for x in 0..over.len() {
            offset[x + 1] = offset[x]
                + checked_power(fibers_b[x].len(), fibers_a[x].len(), "fibered exponential")?;
        }
        let table = (0..c.source().len())
            .map(|z| {
                let x = c.apply(z);
                let base = fibers_b[x].len();
                let mut code = 0;
                for &y in &fibers_a[x] {
                    let value = g.apply(index[&(z, y)]);
                    if b.apply(value) != x {
                        return Err(ToposError::NoFactorization(format!(
                            "{g} does not commute over {over}"
                        )));
                    }
                    code = code * base + positions_b[value];
                }
                Ok(offset[x] + code)
            })
            .collect::<Result<Vec<_>>>()?;
        FinSetMap::new(c.source(), e.source(), table)
    }

    fn fibered_truth_name(&self, over: &FinSetObject, value: &FinSetMap) -> Option<String> {
        let omega = self.omega();
        let prod = self.product(&omega, over).ok()?;
        let first = self.compose(&prod.first, value).ok()?;
        let parts: Vec<String> = (0..over.len())
            .map(|x| format!("{}:{}", over.label(x), omega.label(first.apply(x))))
            .collect();
        Some(format!("<{}>", parts.join(",")))
    }
}

/// Per point of `X`, the elements of the fiber of `a` in ascending order.
fn fibers(over: &FinSetObject, a: &FinSetMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); over.len()];
    for (i, &x) in a.table().iter().enumerate() {
        out[x].push(i);
    }
    out
}

/// Position of each source element within its fiber.
fn fiber_positions(over: &FinSetObject, a: &FinSetMap) -> Vec<usize> {
    let mut seen = vec![0; over.len()];
    a.table()
        .iter()
        .map(|&x| {
            seen[x] += 1;
            seen[x] - 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subobject::{character, characters_by_search, verify_classifier};

    fn fs_slice(points: &[&str]) -> Slice<FinSet> {
        let fs = FinSet::new();
        let over = FinSetObject::new(points.iter().copied()).unwrap();
        Slice::new(fs, over).unwrap()
    }

    fn obj(s: &Slice<FinSet>, table: Vec<usize>) -> SliceObject<FinSetMap> {
        let src = FinSetObject::range(table.len());
        s.object(FinSetMap::new(&src, s.over(), table).unwrap())
            .unwrap()
    }

    #[test]
    fn terminal_is_identity() {
        let s = fs_slice(&["x", "y"]);
        assert_eq!(s.terminal().0, FinSet::new().identity(s.over()));
    }

    #[test]
    fn fiberwise_exponential_cardinalities() {
        let s = fs_slice(&["x", "y"]);
        let a = obj(&s, vec![0, 1]);
        let b = obj(&s, vec![0, 0, 1, 1]);
        let e = s.exponential(&a, &b).unwrap();
        let fib = fibers(s.over(), e.object.structure());
        assert_eq!(fib.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn curry_inverts_evaluation() {
        let s = fs_slice(&["x", "y"]);
        let a = obj(&s, vec![0, 1, 1]);
        let b = obj(&s, vec![0, 1, 1]);
        let c = obj(&s, vec![0, 1]);
        let prod = s.product(&c, &a).unwrap();
        let exp = s.exponential(&a, &b).unwrap();
        for g in s.hom(&prod.apex, &b).unwrap() {
            let bar = s.curry(&c, &a, &g).unwrap();
            let back = s
                .compose(
                    &exp.eval,
                    &crate::topos::product_map(&s, &bar, &s.identity(&a)).unwrap(),
                )
                .unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn slice_character_is_unique() {
        let s = fs_slice(&["x", "y"]);
        let b = obj(&s, vec![0, 1]);
        let sub = obj(&s, vec![1]);
        let m = s
            .morphism(
                &sub,
                &b,
                FinSetMap::new(sub.0.source(), b.0.source(), vec![1]).unwrap(),
            )
            .unwrap();
        let chi = character(&s, &m).unwrap();
        assert_eq!(
            characters_by_search(&s, &m, &s.omega(), &s.truth()).unwrap(),
            vec![chi]
        );
    }

    #[test]
    fn slice_classifier_small() {
        let s = fs_slice(&["x", "y"]);
        let probes = vec![
            s.initial(),
            s.terminal(),
            obj(&s, vec![0]),
            obj(&s, vec![0, 1]),
        ];
        assert!(verify_classifier(&s, &s.omega(), &s.truth(), &probes).unwrap());
    }
}
