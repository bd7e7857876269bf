//! The capability bundle every topos implementation provides, plus generic
//! finite-product plumbing built on top of it.

use crate::error::{Result, ToposError};
use crate::kernel::Category;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryProduct<O, M> {
    pub apex: O,
    pub first: M,
    pub second: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCoproduct<O, M> {
    pub apex: O,
    pub left: M,
    pub right: M,
}

/// Pullback of a cospan `f: B → D ← C :g`; `left: P → B`, `right: P → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback<O, M> {
    pub apex: O,
    pub left: M,
    pub right: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equalizer<O, M> {
    pub apex: O,
    pub inclusion: M,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coequalizer<O, M> {
    pub apex: O,
    pub projection: M,
}

/// `B^A` together with `ev: B^A × A → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponential<O, M> {
    pub object: O,
    pub eval: M,
}

/// `A^n` as a left-nested product `((A × A) × A) …` with its projections.
/// `A^0` is the terminal object and `A^1` is `A` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaryProduct<O, M> {
    pub apex: O,
    pub projections: Vec<M>,
}

pub type ProductOf<T> = BinaryProduct<<T as Category>::Object, <T as Category>::Morphism>;
pub type CoproductOf<T> = BinaryCoproduct<<T as Category>::Object, <T as Category>::Morphism>;
pub type PullbackOf<T> = Pullback<<T as Category>::Object, <T as Category>::Morphism>;
pub type EqualizerOf<T> = Equalizer<<T as Category>::Object, <T as Category>::Morphism>;
pub type CoequalizerOf<T> = Coequalizer<<T as Category>::Object, <T as Category>::Morphism>;
pub type ExponentialOf<T> = Exponential<<T as Category>::Object, <T as Category>::Morphism>;
pub type PowerOf<T> = NaryProduct<<T as Category>::Object, <T as Category>::Morphism>;

/// A finite ccc⁺ with a subobject classifier.
///
/// Every limit construction is canonical: calling it twice on the same input
/// yields structurally equal results. The `*_factor` / `pair` / `copair` /
/// `curry` methods produce the mediating map for a competing cone and fail
/// with [`ToposError::NoFactorization`] when the cone does not commute.
pub trait Topos: Category {
    fn terminal(&self) -> Self::Object;
    fn initial(&self) -> Self::Object;
    fn to_terminal(&self, a: &Self::Object) -> Self::Morphism;
    fn from_initial(&self, a: &Self::Object) -> Self::Morphism;

    fn product(&self, a: &Self::Object, b: &Self::Object) -> Result<ProductOf<Self>>;
    /// `⟨f, g⟩: C → A × B` for `f: C → A`, `g: C → B`.
    fn pair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn coproduct(&self, a: &Self::Object, b: &Self::Object) -> Result<CoproductOf<Self>>;
    /// `[f, g]: A + B → C` for `f: A → C`, `g: B → C`.
    fn copair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn pullback(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<PullbackOf<Self>>;
    /// Mediator `A' → P` for `h: A' → B`, `k: A' → C` with `f∘h = g∘k`.
    fn pullback_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
        k: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    fn equalizer(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<EqualizerOf<Self>>;
    fn equalizer_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    fn coequalizer(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<CoequalizerOf<Self>>;
    fn coequalizer_factor(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        h: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// `B^A` for exponent `a` and base `b`.
    fn exponential(&self, a: &Self::Object, b: &Self::Object) -> Result<ExponentialOf<Self>>;
    /// Transpose `ḡ: C → B^A` of `g: C × A → B`.
    fn curry(
        &self,
        c: &Self::Object,
        a: &Self::Object,
        g: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    fn omega(&self) -> Self::Object;
    /// `T: 1 → Ω`.
    fn truth(&self) -> Self::Morphism;

    /// Closed-form character of a monic. Callers are expected to have checked
    /// monicity; [`crate::subobject::character`] wraps this with the checks.
    fn classify(&self, monic: &Self::Morphism) -> Result<Self::Morphism>;

    /// Certified monic test (must agree with cancellation on probes).
    fn certified_monic(&self, f: &Self::Morphism) -> bool;
    /// Certified epi test (must agree with cancellation on probes).
    fn certified_epi(&self, f: &Self::Morphism) -> bool;

    /// Epi-monic factorization `f = im ∘ coim`, returned as `(coim, im)`.
    fn image(&self, f: &Self::Morphism) -> Result<(Self::Morphism, Self::Morphism)>;

    /// One canonical monic per subobject of `b`.
    fn subobjects(&self, b: &Self::Object) -> Result<Vec<Self::Morphism>>;

    /// Display name for a global element of Ω, when the topos has one.
    fn truth_value_name(&self, _value: &Self::Morphism) -> Option<String> {
        None
    }
}

/// In a topos monic + epi implies iso.
pub fn is_iso<T: Topos>(topos: &T, f: &T::Morphism) -> bool {
    topos.certified_monic(f) && topos.certified_epi(f)
}

pub fn power<T: Topos>(topos: &T, a: &T::Object, n: usize) -> Result<PowerOf<T>> {
    match n {
        0 => Ok(NaryProduct {
            apex: topos.terminal(),
            projections: Vec::new(),
        }),
        1 => Ok(NaryProduct {
            apex: a.clone(),
            projections: vec![topos.identity(a)],
        }),
        _ => {
            let prev = power(topos, a, n - 1)?;
            let prod = topos.product(&prev.apex, a)?;
            let mut projections = Vec::with_capacity(n);
            for p in &prev.projections {
                projections.push(topos.compose(p, &prod.first)?);
            }
            projections.push(prod.second);
            Ok(NaryProduct {
                apex: prod.apex,
                projections,
            })
        }
    }
}

/// The map `domain → factor^n` whose i-th projection is `legs[i]`.
pub fn tuple<T: Topos>(
    topos: &T,
    factor: &T::Object,
    domain: &T::Object,
    legs: &[T::Morphism],
) -> Result<T::Morphism> {
    for leg in legs {
        if &topos.source(leg) != domain || &topos.target(leg) != factor {
            return Err(ToposError::InvalidMorphism(format!(
                "tuple leg {leg} is not a map {domain} → {factor}"
            )));
        }
    }
    match legs {
        [] => Ok(topos.to_terminal(domain)),
        [only] => Ok(only.clone()),
        [init @ .., last] => {
            let head = tuple(topos, factor, domain, init)?;
            topos.pair(&head, last)
        }
    }
}

/// `f × g: A × B → C × D`.
pub fn product_map<T: Topos>(topos: &T, f: &T::Morphism, g: &T::Morphism) -> Result<T::Morphism> {
    let dom = topos.product(&topos.source(f), &topos.source(g))?;
    let left = topos.compose(f, &dom.first)?;
    let right = topos.compose(g, &dom.second)?;
    topos.pair(&left, &right)
}

/// The diagonal `Δ: A → A × A`.
pub fn diagonal<T: Topos>(topos: &T, a: &T::Object) -> Result<T::Morphism> {
    let id = topos.identity(a);
    topos.pair(&id, &id)
}

/// The coherence iso `B → 1 × B` (inverse of the second projection).
pub fn left_unit_inverse<T: Topos>(topos: &T, b: &T::Object) -> Result<T::Morphism> {
    topos.pair(&topos.to_terminal(b), &topos.identity(b))
}

/// The coherence iso `B → B × 1` (inverse of the first projection).
pub fn right_unit_inverse<T: Topos>(topos: &T, b: &T::Object) -> Result<T::Morphism> {
    topos.pair(&topos.identity(b), &topos.to_terminal(b))
}

/// `T ∘ !: A → Ω`, the constantly-true map.
pub fn constant_true<T: Topos>(topos: &T, a: &T::Object) -> Result<T::Morphism> {
    topos.compose(&topos.truth(), &topos.to_terminal(a))
}

/// Checks that `f` and `g` are parallel and returns their common endpoints.
pub fn require_parallel<T: Category>(
    cat: &T,
    f: &T::Morphism,
    g: &T::Morphism,
) -> Result<(T::Object, T::Object)> {
    let (fs, ft) = (cat.source(f), cat.target(f));
    if fs != cat.source(g) || ft != cat.target(g) {
        return Err(ToposError::NotParallel(format!("{f} and {g}")));
    }
    Ok((fs, ft))
}

/// Checks that a cospan shares its codomain.
pub fn require_cospan<T: Category>(cat: &T, f: &T::Morphism, g: &T::Morphism) -> Result<T::Object> {
    let d = cat.target(f);
    if d != cat.target(g) {
        return Err(ToposError::MismatchedTargets(format!(
            "{f} lands in {d}, {g} lands in {}",
            cat.target(g)
        )));
    }
    Ok(d)
}
