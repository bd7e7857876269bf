//! Connectives `Ωⁿ → Ω` and quantifiers `Ω^M → Ω`, each built as the
//! character of a specific subobject.

use crate::error::Result;
use crate::subobject::{character, power_object};
use crate::topos::{constant_true, diagonal, Topos};

/// `F = χ(!: 0 → 1)`.
pub fn connective_false<T: Topos>(topos: &T) -> Result<T::Morphism> {
    character(topos, &topos.to_terminal(&topos.initial()))
}

/// `¬ = χ(F)`.
pub fn connective_not<T: Topos>(topos: &T) -> Result<T::Morphism> {
    character(topos, &connective_false(topos)?)
}

/// `∧ = χ(⟨T, T⟩: 1 → Ω²)`.
pub fn connective_and<T: Topos>(topos: &T) -> Result<T::Morphism> {
    let t = topos.truth();
    character(topos, &topos.pair(&t, &t)?)
}

/// `∨ = χ(im k)` with `k = [⟨T∘!, id⟩, ⟨id, T∘!⟩]: Ω + Ω → Ω²`.
pub fn connective_or<T: Topos>(topos: &T) -> Result<T::Morphism> {
    let omega = topos.omega();
    let id = topos.identity(&omega);
    let top = constant_true(topos, &omega)?;
    let k = topos.copair(&topos.pair(&top, &id)?, &topos.pair(&id, &top)?)?;
    let (_, im) = topos.image(&k)?;
    character(topos, &im)
}

/// `→ = χ(eq(π₁, ∧))`.
pub fn connective_implies<T: Topos>(topos: &T) -> Result<T::Morphism> {
    let omega = topos.omega();
    let prod = topos.product(&omega, &omega)?;
    let eq = topos.equalizer(&prod.first, &connective_and(topos)?)?;
    character(topos, &eq.inclusion)
}

/// `↔ = χ(Δ_Ω)`.
pub fn connective_iff<T: Topos>(topos: &T) -> Result<T::Morphism> {
    character(topos, &diagonal(topos, &topos.omega())?)
}

/// The characters of equality on `M`: `χ_Δ: M² → Ω`.
pub fn equality_character<T: Topos>(topos: &T, m: &T::Object) -> Result<T::Morphism> {
    character(topos, &diagonal(topos, m)?)
}

/// `∀_M = χ(ā)`, where `ā: 1 → Ω^M` is the transpose of `T∘!: 1 × M → Ω`.
pub fn quantifier_forall<T: Topos>(topos: &T, m: &T::Object) -> Result<T::Morphism> {
    let one = topos.terminal();
    let prod = topos.product(&one, m)?;
    let a_bar = topos.curry(&one, m, &constant_true(topos, &prod.apex)?)?;
    character(topos, &a_bar)
}

/// `∃_M = χ(im(π₁ ∘ ∋_M))`. The composite is not monic in general, so it
/// is replaced by its image before classifying.
pub fn quantifier_exists<T: Topos>(topos: &T, m: &T::Object) -> Result<T::Morphism> {
    let p = power_object(topos, m)?;
    let prod = topos.product(&p.px, m)?;
    let projected = topos.compose(&prod.first, &p.membership)?;
    let (_, im) = topos.image(&projected)?;
    character(topos, &im)
}

/// The five connectives of a topos, computed once.
#[derive(Debug, Clone)]
pub struct Connectives<M> {
    pub truth: M,
    pub falsity: M,
    pub not: M,
    pub and: M,
    pub or: M,
    pub implies: M,
    pub iff: M,
}

impl<M: Clone> Connectives<M> {
    pub fn new<T: Topos<Morphism = M>>(topos: &T) -> Result<Self> {
        Ok(Connectives {
            truth: topos.truth(),
            falsity: connective_false(topos)?,
            not: connective_not(topos)?,
            and: connective_and(topos)?,
            or: connective_or(topos)?,
            implies: connective_implies(topos)?,
            iff: connective_iff(topos)?,
        })
    }

    pub fn binary(&self, op: BinaryConnective) -> &M {
        match op {
            BinaryConnective::And => &self.and,
            BinaryConnective::Or => &self.or,
            BinaryConnective::Implies => &self.implies,
            BinaryConnective::Iff => &self.iff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryConnective {
    And,
    Or,
    Implies,
    Iff,
}

impl BinaryConnective {
    pub const ALL: [BinaryConnective; 4] = [
        BinaryConnective::And,
        BinaryConnective::Or,
        BinaryConnective::Implies,
        BinaryConnective::Iff,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryConnective::And => "&",
            BinaryConnective::Or => "|",
            BinaryConnective::Implies => "->",
            BinaryConnective::Iff => "<->",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryConnective::And => "and",
            BinaryConnective::Or => "or",
            BinaryConnective::Implies => "implies",
            BinaryConnective::Iff => "iff",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetObject};

    #[test]
    fn finset_connectives_are_classical() {
        let fs = FinSet::new();
        let c = Connectives::new(&fs).unwrap();
        // Ω = {T, F}; Ω² in the order TT, TF, FT, FF.
        assert_eq!(c.falsity.table(), &[1]);
        assert_eq!(c.not.table(), &[1, 0]);
        assert_eq!(c.and.table(), &[0, 1, 1, 1]);
        assert_eq!(c.or.table(), &[0, 0, 0, 1]);
        assert_eq!(c.implies.table(), &[0, 1, 0, 0]);
        assert_eq!(c.iff.table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn finset_quantifiers_on_two_elements() {
        let fs = FinSet::new();
        let m = FinSetObject::range(2);
        let exp = fs.exponential(&m, &fs.omega()).unwrap();
        let all = quantifier_forall(&fs, &m).unwrap();
        let some = quantifier_exists(&fs, &m).unwrap();
        for (i, label) in exp.object.elements().iter().enumerate() {
            let trues = label.matches(":T").count();
            assert_eq!(all.apply(i) == 0, trues == 2, "{label}");
            assert_eq!(some.apply(i) == 0, trues > 0, "{label}");
        }
    }

    #[test]
    fn vacuous_forall_is_true() {
        let fs = FinSet::new();
        let m = FinSetObject::empty();
        let all = quantifier_forall(&fs, &m).unwrap();
        assert_eq!(all.table(), &[0]);
    }
}
