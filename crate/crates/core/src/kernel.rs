//! The abstract category contract and the generic machinery built on it:
//! monic/epi tests by cancellation, and diagonals of a signature.

use std::collections::HashSet;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::error::{Result, ToposError};
use crate::topos::{power, tuple, Topos};

/// A category whose hom-sets can be enumerated.
///
/// Objects and morphisms are plain values: equality is structural and both
/// are hashable so diagram searches can memoize on them.
pub trait Category {
    type Object: Clone + Eq + Hash + Debug + Display;
    type Morphism: Clone + Eq + Hash + Debug + Display;

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;

    /// `f ∘ g`, defined when `target(g) = source(f)`.
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    /// Every morphism `a → b`, in a deterministic order.
    fn hom(&self, a: &Self::Object, b: &Self::Object) -> Result<Vec<Self::Morphism>>;

    /// Composes a chain right-to-left: `compose_all([f, g, h]) = f ∘ g ∘ h`.
    fn compose_all(&self, chain: &[&Self::Morphism]) -> Result<Self::Morphism> {
        let (last, rest) = chain
            .split_last()
            .ok_or_else(|| ToposError::InvalidMorphism("empty composition chain".into()))?;
        rest.iter()
            .rev()
            .try_fold((*last).clone(), |acc, f| self.compose(f, &acc))
    }
}

/// Builds the standard composition error for a non-composable pair.
pub fn composition_error<O: Display, M: Display>(
    f: &M,
    g: &M,
    f_source: &O,
    g_target: &O,
) -> ToposError {
    ToposError::Composition {
        left: f.to_string(),
        right: g.to_string(),
        left_source: f_source.to_string(),
        right_target: g_target.to_string(),
    }
}

/// Monic by left cancellation, quantifying over maps out of the probe objects.
///
/// `f` is monic on the probes when `g ↦ f∘g` is injective on every
/// `Hom(A, source f)` with `A` a probe.
pub fn is_monic<C: Category>(cat: &C, f: &C::Morphism, probes: &[C::Object]) -> Result<bool> {
    let dom = cat.source(f);
    for a in probes {
        let mut seen = HashSet::new();
        for g in cat.hom(a, &dom)? {
            if !seen.insert(cat.compose(f, &g)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Epi by right cancellation, quantifying over maps into the probe objects.
pub fn is_epi<C: Category>(cat: &C, f: &C::Morphism, probes: &[C::Object]) -> Result<bool> {
    let cod = cat.target(f);
    for d in probes {
        let mut seen = HashSet::new();
        for g in cat.hom(&cod, d)? {
            if !seen.insert(cat.compose(&g, f)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Isomorphism test by exhaustive search for a two-sided inverse.
pub fn is_iso_by_search<C: Category>(cat: &C, f: &C::Morphism) -> Result<Option<C::Morphism>> {
    let (a, b) = (cat.source(f), cat.target(f));
    let (id_a, id_b) = (cat.identity(&a), cat.identity(&b));
    for g in cat.hom(&b, &a)? {
        if cat.compose(&g, f)? == id_a && cat.compose(f, &g)? == id_b {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// A diagonal signature `(m₁,…,mₙ)`: entry `i` names which factor of `A^d`
/// feeds factor `i` of `A^n`. Entries are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(ToposError::InvalidSignature(
                "signature must be nonempty".into(),
            ));
        }
        if entries.contains(&0) {
            return Err(ToposError::InvalidSignature(format!(
                "entries must be positive, got {entries:?}"
            )));
        }
        Ok(Signature(entries))
    }

    /// The regular diagonal `A → A^n`, signature `(1,…,1)`.
    pub fn regular(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `d = max mᵢ`.
    pub fn arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The unique `Δσ: A^d → A^n` with `πᵢ ∘ Δσ = π_{mᵢ}`.
pub fn diagonal_of_signature<T: Topos>(
    topos: &T,
    a: &T::Object,
    sigma: &Signature,
) -> Result<T::Morphism> {
    diagonal_by_positions(topos, a, sigma.arity(), sigma.entries())
}

/// Diagonal for an arbitrary (possibly empty) position list into `A^d`.
/// With no positions this is `!: A^d → 1 = A^0`.
pub(crate) fn diagonal_by_positions<T: Topos>(
    topos: &T,
    a: &T::Object,
    d: usize,
    positions: &[usize],
) -> Result<T::Morphism> {
    let domain = power(topos, a, d)?;
    if let Some(bad) = positions.iter().find(|&&m| m == 0 || m > d) {
        return Err(ToposError::InvalidSignature(format!(
            "position {bad} outside 1..={d}"
        )));
    }
    let legs: Vec<_> = positions
        .iter()
        .map(|&m| domain.projections[m - 1].clone())
        .collect();
    tuple(topos, a, &domain.apex, &legs)
}
