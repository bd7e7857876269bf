//! Exhaustive checks of universal properties against probe objects.
//!
//! Each check compares hom-sets: for a limit `L` with legs `λ`, the map
//! `u ↦ λ ∘ u` from `Hom(C, L)` to the cones over `C` must be a bijection,
//! with the construction's mediator as its inverse. Injectivity is
//! uniqueness of mediators; hitting every cone is existence.

use std::collections::HashSet;

use crate::error::Result;
use crate::topos::{product_map, Topos};

/// Outcome of one universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCheck {
    pub construction: &'static str,
    /// Competing cones examined.
    pub cones: usize,
    /// First violation found, if any.
    pub failure: Option<String>,
}

impl UniversalCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    fn new(construction: &'static str) -> Self {
        UniversalCheck {
            construction,
            cones: 0,
            failure: None,
        }
    }

    fn fail(mut self, why: String) -> Self {
        self.failure = Some(why);
        self
    }
}

/// `A × B`: `Hom(C, A × B) ≅ Hom(C, A) × Hom(C, B)`.
pub fn verify_product<T: Topos>(
    topos: &T,
    a: &T::Object,
    b: &T::Object,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let prod = topos.product(a, b)?;
    let mut check = UniversalCheck::new("product");
    for c in probes {
        let mut seen = HashSet::new();
        for u in topos.hom(c, &prod.apex)? {
            let legs = (
                topos.compose(&prod.first, &u)?,
                topos.compose(&prod.second, &u)?,
            );
            if !seen.insert(legs) {
                return Ok(check.fail(format!("two mediators from {c} into {a} × {b}")));
            }
        }
        for f in topos.hom(c, a)? {
            for g in topos.hom(c, b)? {
                check.cones += 1;
                let u = topos.pair(&f, &g)?;
                if topos.compose(&prod.first, &u)? != f || topos.compose(&prod.second, &u)? != g {
                    return Ok(check.fail(format!("⟨{f}, {g}⟩ does not factor the cone")));
                }
            }
        }
    }
    Ok(check)
}

/// `A + B`: `Hom(A + B, D) ≅ Hom(A, D) × Hom(B, D)`.
pub fn verify_coproduct<T: Topos>(
    topos: &T,
    a: &T::Object,
    b: &T::Object,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let cop = topos.coproduct(a, b)?;
    let mut check = UniversalCheck::new("coproduct");
    for d in probes {
        let mut seen = HashSet::new();
        for u in topos.hom(&cop.apex, d)? {
            let legs = (
                topos.compose(&u, &cop.left)?,
                topos.compose(&u, &cop.right)?,
            );
            if !seen.insert(legs) {
                return Ok(check.fail(format!("two mediators from {a} + {b} into {d}")));
            }
        }
        for f in topos.hom(a, d)? {
            for g in topos.hom(b, d)? {
                check.cones += 1;
                let u = topos.copair(&f, &g)?;
                if topos.compose(&u, &cop.left)? != f || topos.compose(&u, &cop.right)? != g {
                    return Ok(check.fail(format!("[{f}, {g}] does not factor the cocone")));
                }
            }
        }
    }
    Ok(check)
}

/// Pullback of `f: B → D ← C :g`.
pub fn verify_pullback<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    g: &T::Morphism,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let pb = topos.pullback(f, g)?;
    let mut check = UniversalCheck::new("pullback");
    if topos.compose(f, &pb.left)? != topos.compose(g, &pb.right)? {
        return Ok(check.fail(format!("pullback square of {f} and {g} does not commute")));
    }
    let (b, c) = (topos.source(f), topos.source(g));
    for x in probes {
        let mut seen = HashSet::new();
        for u in topos.hom(x, &pb.apex)? {
            let legs = (topos.compose(&pb.left, &u)?, topos.compose(&pb.right, &u)?);
            if !seen.insert(legs) {
                return Ok(check.fail(format!("two mediators from {x} into the pullback")));
            }
        }
        let ks = topos.hom(x, &c)?;
        for h in topos.hom(x, &b)? {
            let fh = topos.compose(f, &h)?;
            for k in &ks {
                if topos.compose(g, k)? != fh {
                    continue;
                }
                check.cones += 1;
                let u = topos.pullback_factor(f, g, &h, k)?;
                if topos.compose(&pb.left, &u)? != h || topos.compose(&pb.right, &u)? != *k {
                    return Ok(check.fail(format!("mediator for ({h}, {k}) does not commute")));
                }
            }
        }
    }
    Ok(check)
}

/// Equalizer of a parallel pair.
pub fn verify_equalizer<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    g: &T::Morphism,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let eq = topos.equalizer(f, g)?;
    let mut check = UniversalCheck::new("equalizer");
    if topos.compose(f, &eq.inclusion)? != topos.compose(g, &eq.inclusion)? {
        return Ok(check.fail("equalizer inclusion does not equalize".into()));
    }
    let a = topos.source(f);
    for x in probes {
        let mut seen = HashSet::new();
        for u in topos.hom(x, &eq.apex)? {
            if !seen.insert(topos.compose(&eq.inclusion, &u)?) {
                return Ok(check.fail(format!("two mediators from {x} into the equalizer")));
            }
        }
        for h in topos.hom(x, &a)? {
            if topos.compose(f, &h)? != topos.compose(g, &h)? {
                continue;
            }
            check.cones += 1;
            let u = topos.equalizer_factor(f, g, &h)?;
            if topos.compose(&eq.inclusion, &u)? != h {
                return Ok(check.fail(format!("mediator for {h} does not commute")));
            }
        }
    }
    Ok(check)
}

/// Coequalizer of a parallel pair.
pub fn verify_coequalizer<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    g: &T::Morphism,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let co = topos.coequalizer(f, g)?;
    let mut check = UniversalCheck::new("coequalizer");
    if topos.compose(&co.projection, f)? != topos.compose(&co.projection, g)? {
        return Ok(check.fail("coequalizer projection does not coequalize".into()));
    }
    let b = topos.target(f);
    for y in probes {
        let mut seen = HashSet::new();
        for u in topos.hom(&co.apex, y)? {
            if !seen.insert(topos.compose(&u, &co.projection)?) {
                return Ok(check.fail(format!("two mediators from the coequalizer into {y}")));
            }
        }
        for h in topos.hom(&b, y)? {
            if topos.compose(&h, f)? != topos.compose(&h, g)? {
                continue;
            }
            check.cones += 1;
            let u = topos.coequalizer_factor(f, g, &h)?;
            if topos.compose(&u, &co.projection)? != h {
                return Ok(check.fail(format!("mediator for {h} does not commute")));
            }
        }
    }
    Ok(check)
}

/// `B^A`: `h ↦ ev ∘ (h × id_A)` is a bijection `Hom(C, B^A) → Hom(C × A, B)`
/// inverted by `curry`.
pub fn verify_exponential<T: Topos>(
    topos: &T,
    a: &T::Object,
    b: &T::Object,
    probes: &[T::Object],
) -> Result<UniversalCheck> {
    let exp = topos.exponential(a, b)?;
    let id_a = topos.identity(a);
    let mut check = UniversalCheck::new("exponential");
    for c in probes {
        let mut seen = HashSet::new();
        for h in topos.hom(c, &exp.object)? {
            let g = topos.compose(&exp.eval, &product_map(topos, &h, &id_a)?)?;
            if !seen.insert(g) {
                return Ok(check.fail(format!("two transposes from {c} into {b}^{a}")));
            }
        }
        let prod = topos.product(c, a)?;
        for g in topos.hom(&prod.apex, b)? {
            check.cones += 1;
            let bar = topos.curry(c, a, &g)?;
            if topos.compose(&exp.eval, &product_map(topos, &bar, &id_a)?)? != g {
                return Ok(check.fail(format!("curry of {g} does not evaluate back")));
            }
        }
    }
    Ok(check)
}
