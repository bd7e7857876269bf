//! L-structures: a support object and morphisms interpreting each symbol.

use std::collections::BTreeMap;

use crate::concrete::{function_from_tuples, power_coordinates, Concrete};
use crate::error::{Result, ToposError};
use crate::finset::FinSetObject;
use crate::logic::syntax::LanguageSignature;
use crate::subobject::character;
use crate::topos::{power, Topos};

/// `M` in a topos, with `f^M: M^n → M`, `R^M: M^n → Ω` and `c^M: 1 → M`.
#[derive(Debug, Clone)]
pub struct LStructure<'a, T: Topos> {
    topos: &'a T,
    signature: LanguageSignature,
    support: T::Object,
    functions: BTreeMap<String, T::Morphism>,
    relations: BTreeMap<String, T::Morphism>,
    constants: BTreeMap<String, T::Morphism>,
}

impl<'a, T: Topos> LStructure<'a, T> {
    /// A structure with no symbols interpreted yet; every declared symbol must
    /// be interpreted before [`LStructure::check_complete`] passes.
    pub fn new(topos: &'a T, signature: LanguageSignature, support: T::Object) -> Self {
        LStructure {
            topos,
            signature,
            support,
            functions: BTreeMap::new(),
            relations: BTreeMap::new(),
            constants: BTreeMap::new(),
        }
    }

    pub fn topos(&self) -> &'a T {
        self.topos
    }

    pub fn signature(&self) -> &LanguageSignature {
        &self.signature
    }

    pub fn support(&self) -> &T::Object {
        &self.support
    }

    fn expect_map(
        &self,
        what: &str,
        f: &T::Morphism,
        source: &T::Object,
        target: &T::Object,
    ) -> Result<()> {
        if &self.topos.source(f) != source || &self.topos.target(f) != target {
            return Err(ToposError::InvalidMorphism(format!(
                "interpretation of `{what}` must be a map {source} → {target}, got {f}"
            )));
        }
        Ok(())
    }

    pub fn set_function(&mut self, name: &str, f: T::Morphism) -> Result<()> {
        let n = self
            .signature
            .function_arity(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))?;
        let domain = power(self.topos, &self.support, n)?.apex;
        self.expect_map(name, &f, &domain, &self.support)?;
        self.functions.insert(name.to_string(), f);
        Ok(())
    }

    pub fn set_relation(&mut self, name: &str, r: T::Morphism) -> Result<()> {
        let n = self
            .signature
            .relation_arity(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))?;
        let domain = power(self.topos, &self.support, n)?.apex;
        self.expect_map(name, &r, &domain, &self.topos.omega())?;
        self.relations.insert(name.to_string(), r);
        Ok(())
    }

    pub fn set_constant(&mut self, name: &str, c: T::Morphism) -> Result<()> {
        if !self.signature.has_constant(name) {
            return Err(ToposError::UnknownSymbol(name.to_string()));
        }
        self.expect_map(name, &c, &self.topos.terminal(), &self.support)?;
        self.constants.insert(name.to_string(), c);
        Ok(())
    }

    pub fn function(&self, name: &str) -> Result<&T::Morphism> {
        self.functions
            .get(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))
    }

    pub fn relation(&self, name: &str) -> Result<&T::Morphism> {
        self.relations
            .get(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))
    }

    pub fn constant(&self, name: &str) -> Result<&T::Morphism> {
        self.constants
            .get(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))
    }

    /// Every declared symbol has an interpretation.
    pub fn check_complete(&self) -> Result<()> {
        for (name, _) in self.signature.functions() {
            self.function(name)?;
        }
        for (name, _) in self.signature.relations() {
            self.relation(name)?;
        }
        for name in self.signature.constants() {
            self.constant(name)?;
        }
        Ok(())
    }
}

impl<T: Concrete> LStructure<'_, T> {
    /// Interprets `name` by a stage-wise table on tuples of `M^n`.
    pub fn set_function_by<F>(&mut self, name: &str, value: F) -> Result<()>
    where
        F: Fn(usize, &[usize]) -> Result<usize>,
    {
        let n = self
            .signature
            .function_arity(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))?;
        let f = function_from_tuples(self.topos, &self.support, n, value)?;
        self.set_function(name, f)
    }

    /// Interprets `name` as the character of the sub-object of `M^n` holding
    /// the tuples on which `holds(stage, coordinates)` is true. The chosen
    /// tuples must be closed under restriction.
    pub fn set_relation_by<F>(&mut self, name: &str, holds: F) -> Result<()>
    where
        F: Fn(usize, &[usize]) -> bool,
    {
        let n = self
            .signature
            .relation_arity(name)
            .ok_or_else(|| ToposError::UnknownSymbol(name.to_string()))?;
        let r = relation_from_tuples(self.topos, &self.support, n, holds)?;
        self.set_relation(name, r)
    }

    /// Interprets a constant by the unique global element having `label` at
    /// some stage.
    pub fn set_constant_by_label(&mut self, name: &str, label: &str) -> Result<()> {
        let c = global_element_by_label(self.topos, &self.support, label)?;
        self.set_constant(name, c)
    }
}

/// The character of the sub-object of `M^n` selected stage-wise by `holds`.
pub fn relation_from_tuples<T, F>(
    topos: &T,
    m: &T::Object,
    n: usize,
    holds: F,
) -> Result<T::Morphism>
where
    T: Concrete,
    F: Fn(usize, &[usize]) -> bool,
{
    let (apex, coords) = power_coordinates(topos, m, n)?;
    let selected: Vec<Vec<usize>> = coords
        .iter()
        .enumerate()
        .map(|(s, elems)| (0..elems.len()).filter(|&x| holds(s, &elems[x])).collect())
        .collect();
    let monic = topos.subobject_from_stages(&apex, &selected)?;
    character(topos, &monic)
}

/// The unique global element `1 → a` that passes through `label` at some stage.
pub fn global_element_by_label<T: Concrete>(
    topos: &T,
    a: &T::Object,
    label: &str,
) -> Result<T::Morphism> {
    let mut matches = Vec::new();
    for g in topos.hom(&topos.terminal(), a)? {
        let hit = topos
            .stage_maps(&g)
            .iter()
            .any(|m| m.table().iter().any(|&y| m.target().label(y) == label));
        if hit {
            matches.push(g);
        }
    }
    match matches.len() {
        1 => Ok(matches.pop().expect("one match")),
        0 => Err(ToposError::InvalidObject(format!(
            "no global element of {a} passes through `{label}`"
        ))),
        k => Err(ToposError::InvalidObject(format!(
            "`{label}` lies on {k} global elements of {a}"
        ))),
    }
}

/// Stage sets of the support, for callers that need labels.
pub fn support_stages<T: Concrete>(structure: &LStructure<'_, T>) -> Vec<FinSetObject> {
    structure.topos().stage_sets(structure.support())
}
