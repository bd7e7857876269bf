//! Characters, the subobject functor and its representation by Ω, and power
//! objects in both directions (`PX = Ω^X`, and `Ω = P1`).

use std::collections::HashSet;

use crate::error::{Result, ToposError};
use crate::kernel::Category;
use crate::topos::{is_iso, product_map, Topos};

/// Whether `f: A ↪ B`, `! : A → 1`, `chi: B → Ω`, `truth: 1 → Ω` is a pullback.
///
/// The square is a pullback iff it commutes and the mediator from `A` into
/// the canonical pullback of `chi` and `truth` is an isomorphism.
pub fn is_pullback_square<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    chi: &T::Morphism,
    truth: &T::Morphism,
) -> Result<bool> {
    let a = topos.source(f);
    let bang = topos.to_terminal(&a);
    if topos.compose(chi, f)? != topos.compose(truth, &bang)? {
        return Ok(false);
    }
    let mediator = topos.pullback_factor(chi, truth, f, &bang)?;
    Ok(is_iso(topos, &mediator))
}

/// The character `χ_f: B → Ω` of a monic `f: A ↪ B`.
pub fn character<T: Topos>(topos: &T, f: &T::Morphism) -> Result<T::Morphism> {
    if !topos.certified_monic(f) {
        return Err(ToposError::NotMonic(f.to_string()));
    }
    let chi = topos.classify(f)?;
    if !is_pullback_square(topos, f, &chi, &topos.truth())? {
        return Err(ToposError::ClassifierViolation(f.to_string()));
    }
    Ok(chi)
}

/// Every map `B → omega` whose square with `truth` is a pullback over `f`.
pub fn characters_by_search<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    omega: &T::Object,
    truth: &T::Morphism,
) -> Result<Vec<T::Morphism>> {
    let mut found = Vec::new();
    for chi in topos.hom(&topos.target(f), omega)? {
        if is_pullback_square(topos, f, &chi, truth)? {
            found.push(chi);
        }
    }
    Ok(found)
}

/// All monics between probe objects.
pub fn monics_between<T: Topos>(topos: &T, probes: &[T::Object]) -> Result<Vec<T::Morphism>> {
    let mut monics = Vec::new();
    for a in probes {
        for b in probes {
            monics.extend(
                topos
                    .hom(a, b)?
                    .into_iter()
                    .filter(|f| topos.certified_monic(f)),
            );
        }
    }
    Ok(monics)
}

/// A monic between probes that does not have exactly one character.
#[derive(Debug, Clone)]
pub struct ClassifierFailure<M> {
    pub monic: M,
    pub characters: Vec<M>,
}

/// Searches the probe monics for one lacking a unique character in `(omega, truth)`.
pub fn find_classifier_failure<T: Topos>(
    topos: &T,
    omega: &T::Object,
    truth: &T::Morphism,
    probes: &[T::Object],
) -> Result<Option<ClassifierFailure<T::Morphism>>> {
    for monic in monics_between(topos, probes)? {
        let characters = characters_by_search(topos, &monic, omega, truth)?;
        if characters.len() != 1 {
            return Ok(Some(ClassifierFailure { monic, characters }));
        }
    }
    Ok(None)
}

/// True iff every monic between probe objects has exactly one character.
pub fn verify_classifier<T: Topos>(
    topos: &T,
    omega: &T::Object,
    truth: &T::Morphism,
    probes: &[T::Object],
) -> Result<bool> {
    Ok(find_classifier_failure(topos, omega, truth, probes)?.is_none())
}

/// A subobject, held as its canonical representative monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subobject<M> {
    monic: M,
}

impl<M: Clone + std::fmt::Display> Subobject<M> {
    /// Canonicalizes an arbitrary monic to the image inclusion the topos
    /// uses as representative for its class.
    pub fn from_monic<T: Topos<Morphism = M>>(topos: &T, monic: &M) -> Result<Self> {
        if !topos.certified_monic(monic) {
            return Err(ToposError::NotMonic(monic.to_string()));
        }
        let (_, im) = topos.image(monic)?;
        Ok(Subobject { monic: im })
    }

    pub fn monic(&self) -> &M {
        &self.monic
    }
}

/// Whether two monics into the same object represent the same subobject.
pub fn equivalent_monics<T: Topos>(topos: &T, f: &T::Morphism, g: &T::Morphism) -> Result<bool> {
    if topos.target(f) != topos.target(g) {
        return Ok(false);
    }
    let pb = topos.pullback(f, g)?;
    Ok(is_iso(topos, &pb.left) && is_iso(topos, &pb.right))
}

/// `Sub(B)`, one canonical representative per class.
pub fn sub<T: Topos>(topos: &T, b: &T::Object) -> Result<Vec<Subobject<T::Morphism>>> {
    topos
        .subobjects(b)?
        .iter()
        .map(|m| Subobject::from_monic(topos, m))
        .collect()
}

/// The subobject functor on a morphism `f: B' → B`: pulls `s` back along `f`.
pub fn sub_pullback<T: Topos>(
    topos: &T,
    f: &T::Morphism,
    s: &Subobject<T::Morphism>,
) -> Result<Subobject<T::Morphism>> {
    let pb = topos.pullback(s.monic(), f)?;
    Subobject::from_monic(topos, &pb.right)
}

/// Outcome of checking that `s ↦ χ_s` represents `Sub` at an object.
#[derive(Debug, Clone)]
pub struct Representation<M> {
    /// `(subobject, character)` pairs: the bijection `φ_B`.
    pub correspondence: Vec<(Subobject<M>, M)>,
    pub hom_size: usize,
    pub bijective: bool,
    /// Naturality failures, as the probe maps that broke the square.
    pub non_natural: Vec<M>,
}

impl<M> Representation<M> {
    pub fn holds(&self) -> bool {
        self.bijective && self.non_natural.is_empty()
    }
}

/// Checks `φ_B: Sub(B) ≅ Hom(B, Ω)` and its naturality against `probe_maps`
/// (each a map `B' → B`).
pub fn representation_check<T: Topos>(
    topos: &T,
    b: &T::Object,
    probe_maps: &[T::Morphism],
) -> Result<Representation<T::Morphism>> {
    let subs = sub(topos, b)?;
    let mut correspondence = Vec::with_capacity(subs.len());
    for s in subs {
        let chi = character(topos, s.monic())?;
        correspondence.push((s, chi));
    }
    let homs = topos.hom(b, &topos.omega())?;
    let images: HashSet<&T::Morphism> = correspondence.iter().map(|(_, c)| c).collect();
    let bijective = images.len() == correspondence.len()
        && images.len() == homs.len()
        && homs.iter().all(|h| images.contains(h));

    let mut non_natural = Vec::new();
    for f in probe_maps {
        if &topos.target(f) != b {
            return Err(ToposError::InvalidMorphism(format!(
                "naturality probe {f} does not land in {b}"
            )));
        }
        for (s, chi) in &correspondence {
            let pulled = sub_pullback(topos, f, s)?;
            if character(topos, pulled.monic())? != topos.compose(chi, f)? {
                non_natural.push(f.clone());
                break;
            }
        }
    }
    Ok(Representation {
        correspondence,
        hom_size: homs.len(),
        bijective,
        non_natural,
    })
}

/// The truth arrow as the image of `id_1` under `φ_1`.
pub fn truth_from_representation<T: Topos>(topos: &T) -> Result<T::Morphism> {
    character(topos, &topos.identity(&topos.terminal()))
}

/// A power object `PX` with membership `∋: K ↪ PX × X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerObject<O, M> {
    pub exponent: O,
    pub px: O,
    pub k: O,
    pub membership: M,
}

pub type PowerObjectOf<T> = PowerObject<<T as Category>::Object, <T as Category>::Morphism>;

/// `PX = Ω^X`, with `∋` the pullback of `T` along `ev: Ω^X × X → Ω`.
pub fn power_object<T: Topos>(topos: &T, x: &T::Object) -> Result<PowerObjectOf<T>> {
    let exp = topos.exponential(x, &topos.omega())?;
    let pb = topos.pullback(&exp.eval, &topos.truth())?;
    Ok(PowerObject {
        exponent: x.clone(),
        px: exp.object,
        k: pb.apex,
        membership: pb.left,
    })
}

/// `χ̄_r: B → PX` for a monic `r: A ↪ B × X`.
pub fn power_transpose<T: Topos>(
    topos: &T,
    p: &PowerObjectOf<T>,
    b: &T::Object,
    r: &T::Morphism,
) -> Result<T::Morphism> {
    let chi = character(topos, r)?;
    let transpose = topos.curry(b, &p.exponent, &chi)?;
    if topos.target(&transpose) != p.px {
        return Err(ToposError::Inconsistent(format!(
            "transpose lands in {}, expected {}",
            topos.target(&transpose),
            p.px
        )));
    }
    Ok(transpose)
}

/// A subobject of `B × X` whose classifying map into `PX` is not unique.
#[derive(Debug, Clone)]
pub struct PowerObjectFailure<M> {
    pub relation: M,
    pub classifying_maps: Vec<M>,
}

/// Exhaustively checks the power-object property for every subobject of
/// `B × X`, `B` ranging over `probes`.
pub fn verify_power_object<T: Topos>(
    topos: &T,
    p: &PowerObjectOf<T>,
    probes: &[T::Object],
) -> Result<Option<PowerObjectFailure<T::Morphism>>> {
    if !topos.certified_monic(&p.membership) {
        return Err(ToposError::NotMonic(p.membership.to_string()));
    }
    let id_x = topos.identity(&p.exponent);
    for b in probes {
        let bx = topos.product(b, &p.exponent)?;
        let candidates = topos.hom(b, &p.px)?;
        for r in topos.subobjects(&bx.apex)? {
            let mut classifying = Vec::new();
            for q in &candidates {
                let q_times_id = product_map(topos, q, &id_x)?;
                let pulled = topos.pullback(&p.membership, &q_times_id)?;
                if equivalent_monics(topos, &pulled.right, &r)? {
                    classifying.push(q.clone());
                }
            }
            let expected = power_transpose(topos, p, b, &r)?;
            if classifying.len() != 1 || classifying[0] != expected {
                return Ok(Some(PowerObjectFailure {
                    relation: r,
                    classifying_maps: classifying,
                }));
            }
        }
    }
    Ok(None)
}

/// Recovers `(Ω, T)` from a power object of the terminal: `Ω = P1`, with `T`
/// read off the membership monic through `K ≅ 1` and `P1 × 1 ≅ P1`.
pub fn omega_from_power<T: Topos>(
    topos: &T,
    p1: &PowerObjectOf<T>,
) -> Result<(T::Object, T::Morphism)> {
    let one = topos.terminal();
    if p1.exponent != one {
        return Err(ToposError::Inconsistent(format!(
            "power object is of {}, not of the terminal object",
            p1.exponent
        )));
    }
    let bang = topos.to_terminal(&p1.k);
    if !is_iso(topos, &bang) {
        return Err(ToposError::Inconsistent(format!(
            "membership domain {} is not isomorphic to 1",
            p1.k
        )));
    }
    let points = topos.hom(&one, &p1.k)?;
    let [point] = points.as_slice() else {
        return Err(ToposError::Inconsistent(format!(
            "expected exactly one point of {}, found {}",
            p1.k,
            points.len()
        )));
    };
    let prod = topos.product(&p1.px, &one)?;
    let truth = topos.compose_all(&[&prod.first, &p1.membership, point])?;
    Ok((p1.px.clone(), truth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetMap, FinSetObject};

    fn set(n: usize) -> FinSetObject {
        FinSetObject::range(n)
    }

    #[test]
    fn character_of_singleton_inclusion() {
        let fs = FinSet::new();
        let b = FinSetObject::new(["a", "b"]).unwrap();
        let incl = fs.inclusion(&b, &[0]);
        let chi = character(&fs, &incl).unwrap();
        assert_eq!(chi.apply_label("a"), Some("T"));
        assert_eq!(chi.apply_label("b"), Some("F"));
        let all = characters_by_search(&fs, &incl, &fs.omega(), &fs.truth()).unwrap();
        assert_eq!(all, vec![chi]);
    }

    #[test]
    fn character_of_identity_and_empty() {
        let fs = FinSet::new();
        let b = set(3);
        let chi = character(&fs, &fs.identity(&b)).unwrap();
        assert_eq!(chi, crate::topos::constant_true(&fs, &b).unwrap());
        let bang = fs.from_initial(&fs.terminal());
        assert_eq!(character(&fs, &bang).unwrap(), fs.falsity());
    }

    #[test]
    fn non_monic_rejected() {
        let fs = FinSet::new();
        let f = FinSetMap::new(&set(2), &set(1), vec![0, 0]).unwrap();
        assert!(matches!(character(&fs, &f), Err(ToposError::NotMonic(_))));
    }

    #[test]
    fn classifier_candidates() {
        let fs = FinSet::new();
        let probes: Vec<_> = (0..=2).map(set).collect();
        assert!(verify_classifier(&fs, &fs.omega(), &fs.truth(), &probes).unwrap());
        let three = set(3);
        let t3 = fs.element(&three, 0).unwrap();
        assert!(!verify_classifier(&fs, &three, &t3, &probes).unwrap());
        let one = fs.terminal();
        assert!(!verify_classifier(&fs, &one, &fs.identity(&one), &probes).unwrap());
    }

    #[test]
    fn sub_counts() {
        let fs = FinSet::new();
        assert_eq!(sub(&fs, &set(3)).unwrap().len(), 8);
        assert_eq!(sub(&fs, &fs.initial()).unwrap().len(), 1);
        let one = fs.terminal();
        let id1 = Subobject::from_monic(&fs, &fs.identity(&one)).unwrap();
        assert!(sub(&fs, &one).unwrap().contains(&id1));
    }

    #[test]
    fn sub_pullback_swap_and_identity() {
        let fs = FinSet::new();
        let b = set(2);
        let swap = FinSetMap::new(&b, &b, vec![1, 0]).unwrap();
        let s = Subobject::from_monic(&fs, &fs.inclusion(&b, &[0])).unwrap();
        let pulled = sub_pullback(&fs, &swap, &s).unwrap();
        assert_eq!(pulled.monic().table(), &[1]);
        assert_eq!(sub_pullback(&fs, &fs.identity(&b), &s).unwrap(), s);
    }

    #[test]
    fn representation_on_two_elements() {
        let fs = FinSet::new();
        let b = set(2);
        let swap = FinSetMap::new(&b, &b, vec![1, 0]).unwrap();
        let rep = representation_check(&fs, &b, &[swap]).unwrap();
        assert_eq!(rep.correspondence.len(), 4);
        assert_eq!(rep.hom_size, 4);
        assert!(rep.holds());
        assert_eq!(truth_from_representation(&fs).unwrap(), fs.truth());
    }

    #[test]
    fn power_object_sizes() {
        let fs = FinSet::new();
        let p = power_object(&fs, &set(2)).unwrap();
        assert_eq!(p.px.len(), 4);
        assert_eq!(p.k.len(), 4);
        let p0 = power_object(&fs, &fs.initial()).unwrap();
        assert_eq!(p0.px.len(), 1);
        let p1 = power_object(&fs, &fs.terminal()).unwrap();
        assert_eq!(p1.k.len(), 1);
    }

    #[test]
    fn omega_round_trip() {
        let fs = FinSet::new();
        let p1 = power_object(&fs, &fs.terminal()).unwrap();
        let (omega, truth) = omega_from_power(&fs, &p1).unwrap();
        assert_eq!(omega.len(), 2);
        let probes: Vec<_> = (0..=2).map(set).collect();
        assert!(verify_classifier(&fs, &omega, &truth, &probes).unwrap());
        let p2 = power_object(&fs, &set(2)).unwrap();
        assert!(omega_from_power(&fs, &p2).is_err());
    }
}
