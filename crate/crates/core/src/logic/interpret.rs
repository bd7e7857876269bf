//! Interpretation of terms as maps `M^d → M` and formulae as maps `M^n → Ω`.
//!
//! Free variables are ordered ascending, so factor `i` of `M^n` carries the
//! `i`-th smallest free variable. Shared variables are identified through
//! diagonals that pick, for each subterm or subformula, the positions of its
//! own variables inside the combined list.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Result, ToposError};
use crate::kernel::diagonal_by_positions;
use crate::logic::connectives::{
    equality_character, quantifier_exists, quantifier_forall, BinaryConnective, Connectives,
};
use crate::logic::structure::LStructure;
use crate::logic::syntax::{Formula, Term};
use crate::topos::{power, tuple, Topos};

/// One composite built while interpreting, for `--trace` style output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub label: String,
    pub source: String,
    pub target: String,
}

struct Tracer<'t>(Option<&'t mut Vec<TraceStep>>);

impl Tracer<'_> {
    fn record<T: Topos>(&mut self, topos: &T, label: impl FnOnce() -> String, m: &T::Morphism) {
        if let Some(steps) = self.0.as_deref_mut() {
            steps.push(TraceStep {
                label: label(),
                source: topos.source(m).to_string(),
                target: topos.target(m).to_string(),
            });
        }
    }
}

/// Interprets terms and formulae of one L-structure.
pub struct Interpreter<'s, 'a, T: Topos> {
    structure: &'s LStructure<'a, T>,
    connectives: Connectives<T::Morphism>,
    equality: OnceLock<T::Morphism>,
    forall: OnceLock<T::Morphism>,
    exists: OnceLock<T::Morphism>,
}

fn cached<M: Clone>(cell: &OnceLock<M>, build: impl FnOnce() -> Result<M>) -> Result<M> {
    if let Some(m) = cell.get() {
        return Ok(m.clone());
    }
    let m = build()?;
    Ok(cell.get_or_init(|| m).clone())
}

fn var_list(vars: &BTreeSet<usize>) -> String {
    let names: Vec<String> = vars.iter().map(|v| format!("x{v}")).collect();
    format!("({})", names.join(","))
}

impl<'s, 'a, T: Topos> Interpreter<'s, 'a, T> {
    pub fn new(structure: &'s LStructure<'a, T>) -> Result<Self> {
        structure.check_complete()?;
        Ok(Interpreter {
            structure,
            connectives: Connectives::new(structure.topos())?,
            equality: OnceLock::new(),
            forall: OnceLock::new(),
            exists: OnceLock::new(),
        })
    }

    pub fn structure(&self) -> &'s LStructure<'a, T> {
        self.structure
    }

    pub fn connectives(&self) -> &Connectives<T::Morphism> {
        &self.connectives
    }

    fn topos(&self) -> &'a T {
        self.structure.topos()
    }

    fn support(&self) -> &T::Object {
        self.structure.support()
    }

    /// `∀_M`, computed on first use.
    pub fn forall(&self) -> Result<T::Morphism> {
        cached(&self.forall, || {
            quantifier_forall(self.topos(), self.support())
        })
    }

    /// `∃_M`, computed on first use.
    pub fn exists(&self) -> Result<T::Morphism> {
        cached(&self.exists, || {
            quantifier_exists(self.topos(), self.support())
        })
    }

    /// `χ_Δ: M² → Ω`.
    pub fn equality(&self) -> Result<T::Morphism> {
        cached(&self.equality, || {
            equality_character(self.topos(), self.support())
        })
    }

    /// `t^M: M^d → M` with `d = |v(t)|`.
    pub fn interpret_term(&self, t: &Term) -> Result<T::Morphism> {
        self.structure.signature().check_term(t)?;
        self.term(t, &mut Tracer(None))
    }

    /// `φ^M: M^n → Ω` with `n = |v(φ)|`.
    pub fn interpret_formula(&self, phi: &Formula) -> Result<T::Morphism> {
        self.structure.signature().check_formula(phi)?;
        self.formula(phi, &mut Tracer(None))
    }

    /// As [`Interpreter::interpret_formula`], recording every composite built.
    pub fn interpret_formula_traced(
        &self,
        phi: &Formula,
        trace: &mut Vec<TraceStep>,
    ) -> Result<T::Morphism> {
        self.structure.signature().check_formula(phi)?;
        self.formula(phi, &mut Tracer(Some(trace)))
    }

    /// `M^{|all|} → M^{|sub|}` projecting onto the positions of `sub` in `all`.
    fn reindex(&self, sub: &BTreeSet<usize>, all: &[usize]) -> Result<T::Morphism> {
        let positions: Vec<usize> = sub
            .iter()
            .map(|v| {
                all.iter()
                    .position(|w| w == v)
                    .expect("subset of variables")
                    + 1
            })
            .collect();
        diagonal_by_positions(self.topos(), self.support(), all.len(), &positions)
    }

    /// `(t₁,…,tₙ)^M: M^d → M^n`, each leg `tᵢ^M` precomposed with the
    /// diagonal selecting its own variables.
    fn product_term(&self, args: &[Term], tracer: &mut Tracer<'_>) -> Result<T::Morphism> {
        let all: BTreeSet<usize> = args.iter().flat_map(Term::free_vars).collect();
        let order: Vec<usize> = all.iter().copied().collect();
        let domain = power(self.topos(), self.support(), order.len())?.apex;
        let mut legs = Vec::with_capacity(args.len());
        for t in args {
            let inner = self.term(t, tracer)?;
            let vars = t.free_vars();
            let delta = self.reindex(&vars, &order)?;
            tracer.record(
                self.topos(),
                || format!("Δσ {} ⊆ {}", var_list(&vars), var_list(&all)),
                &delta,
            );
            legs.push(self.topos().compose(&inner, &delta)?);
        }
        let m = tuple(self.topos(), self.support(), &domain, &legs)?;
        let shown: Vec<String> = args.iter().map(ToString::to_string).collect();
        tracer.record(self.topos(), || format!("({})", shown.join(", ")), &m);
        Ok(m)
    }

    fn term(&self, t: &Term, tracer: &mut Tracer<'_>) -> Result<T::Morphism> {
        let m = match t {
            Term::Var(_) => self.topos().identity(self.support()),
            Term::Const(c) => self.structure.constant(c)?.clone(),
            Term::Apply(f, args) => {
                let inner = self.product_term(args, tracer)?;
                self.topos().compose(self.structure.function(f)?, &inner)?
            }
            Term::Product(args) => return self.product_term(args, tracer),
        };
        tracer.record(self.topos(), || t.to_string(), &m);
        Ok(m)
    }

    fn binary(
        &self,
        op: BinaryConnective,
        p: &Formula,
        q: &Formula,
        tracer: &mut Tracer<'_>,
    ) -> Result<T::Morphism> {
        let (vp, vq) = (p.free_vars(), q.free_vars());
        let all: Vec<usize> = vp.union(&vq).copied().collect();
        let left = self
            .topos()
            .compose(&self.formula(p, tracer)?, &self.reindex(&vp, &all)?)?;
        let right = self
            .topos()
            .compose(&self.formula(q, tracer)?, &self.reindex(&vq, &all)?)?;
        let paired = self.topos().pair(&left, &right)?;
        self.topos().compose(self.connectives.binary(op), &paired)
    }

    /// `Q x φ`: extend `φ^M` to `v(φ) ∪ {x}`, move `x` to the last factor,
    /// curry it away and compose with `Q_M`.
    fn quantified(
        &self,
        x: usize,
        body: &Formula,
        quantifier: &T::Morphism,
        tracer: &mut Tracer<'_>,
    ) -> Result<T::Morphism> {
        let topos = self.topos();
        let m = self.support();
        let vb = body.free_vars();
        let mut with_x = vb.clone();
        with_x.insert(x);
        let order: Vec<usize> = with_x.iter().copied().collect();
        let inner = self.formula(body, tracer)?;
        let extended = topos.compose(&inner, &self.reindex(&vb, &order)?)?;
        if !vb.contains(&x) {
            tracer.record(topos, || format!("dummy factor for x{x}"), &extended);
        }

        let rest: Vec<usize> = order.iter().copied().filter(|&v| v != x).collect();
        let mn = power(topos, m, rest.len())?;
        let prod = topos.product(&mn.apex, m)?;
        let legs = order
            .iter()
            .map(|&v| match rest.iter().position(|&w| w == v) {
                Some(i) => topos.compose(&mn.projections[i], &prod.first),
                None => Ok(prod.second.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        let reorder = tuple(topos, m, &prod.apex, &legs)?;
        let uncurried = topos.compose(&extended, &reorder)?;
        let transpose = topos.curry(&mn.apex, m, &uncurried)?;
        tracer.record(topos, || format!("curry x{x}"), &transpose);
        topos.compose(quantifier, &transpose)
    }

    fn formula(&self, phi: &Formula, tracer: &mut Tracer<'_>) -> Result<T::Morphism> {
        let topos = self.topos();
        let m = match phi {
            Formula::Eq(s, t) => {
                let pair = self.product_term(&[s.clone(), t.clone()], tracer)?;
                topos.compose(&self.equality()?, &pair)?
            }
            Formula::Rel(r, args) => {
                let inner = self.product_term(args, tracer)?;
                topos.compose(self.structure.relation(r)?, &inner)?
            }
            Formula::Not(p) => topos.compose(&self.connectives.not, &self.formula(p, tracer)?)?,
            Formula::And(p, q) => self.binary(BinaryConnective::And, p, q, tracer)?,
            Formula::Or(p, q) => self.binary(BinaryConnective::Or, p, q, tracer)?,
            Formula::Implies(p, q) => self.binary(BinaryConnective::Implies, p, q, tracer)?,
            Formula::Iff(p, q) => self.binary(BinaryConnective::Iff, p, q, tracer)?,
            Formula::Forall(x, p) => self.quantified(*x, p, &self.forall()?, tracer)?,
            Formula::Exists(x, p) => self.quantified(*x, p, &self.exists()?, tracer)?,
        };
        tracer.record(topos, || phi.to_string(), &m);
        Ok(m)
    }

    /// `φ^M ∘ (a₁ × ⋯ × aₙ): 1 → Ω`, the elements listed in free-variable order.
    pub fn evaluate(&self, phi: &Formula, elements: &[T::Morphism]) -> Result<T::Morphism> {
        let interpretation = self.interpret_formula(phi)?;
        self.evaluate_interpretation(phi, &interpretation, elements)
    }

    /// As [`Interpreter::evaluate`] for an already interpreted formula.
    pub fn evaluate_interpretation(
        &self,
        phi: &Formula,
        interpretation: &T::Morphism,
        elements: &[T::Morphism],
    ) -> Result<T::Morphism> {
        let n = phi.free_vars().len();
        if elements.len() != n {
            return Err(ToposError::Arity {
                symbol: phi.to_string(),
                expected: n,
                found: elements.len(),
            });
        }
        let topos = self.topos();
        let one = topos.terminal();
        let point = tuple(topos, self.support(), &one, elements)?;
        topos.compose(interpretation, &point)
    }

    /// `M ⊨ φ(a₁,…,aₙ)`.
    pub fn satisfies(&self, phi: &Formula, elements: &[T::Morphism]) -> Result<bool> {
        Ok(self.evaluate(phi, elements)? == self.connectives.truth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetObject};
    use crate::kernel::Category;
    use crate::logic::syntax::LanguageSignature;

    fn z2(fs: &FinSet) -> LStructure<'_, FinSet> {
        let mut sig = LanguageSignature::new();
        sig.add_function("mul", 2).unwrap();
        sig.add_constant("e").unwrap();
        let mut s = LStructure::new(fs, sig, FinSetObject::range(2));
        s.set_function_by("mul", |_, c| Ok((c[0] + c[1]) % 2))
            .unwrap();
        s.set_constant("e", fs.element(&FinSetObject::range(2), 0).unwrap())
            .unwrap();
        s
    }

    #[test]
    fn variable_is_identity() {
        let fs = FinSet::new();
        let s = z2(&fs);
        let i = Interpreter::new(&s).unwrap();
        assert_eq!(
            i.interpret_term(&Term::var(4)).unwrap(),
            fs.identity(s.support())
        );
    }

    #[test]
    fn repeated_variable_goes_through_diagonal() {
        let fs = FinSet::new();
        let s = z2(&fs);
        let i = Interpreter::new(&s).unwrap();
        let t = Term::apply("mul", vec![Term::var(1), Term::var(1)]);
        assert_eq!(i.interpret_term(&t).unwrap().table(), &[0, 0]);
    }

    #[test]
    fn inverses_exist_in_z2() {
        let fs = FinSet::new();
        let s = z2(&fs);
        let i = Interpreter::new(&s).unwrap();
        let phi = Formula::forall(
            1,
            Formula::exists(
                2,
                Formula::eq(
                    Term::apply("mul", vec![Term::var(1), Term::var(2)]),
                    Term::constant("e"),
                ),
            ),
        );
        assert!(i.satisfies(&phi, &[]).unwrap());
        let mut trace = Vec::new();
        i.interpret_formula_traced(&phi, &mut trace).unwrap();
        assert!(trace.iter().any(|s| s.label == "curry x2"));
    }

    #[test]
    fn variable_order_is_ascending() {
        let fs = FinSet::new();
        let mut sig = LanguageSignature::new();
        sig.add_function("sub", 2).unwrap();
        let m = FinSetObject::range(3);
        let mut s = LStructure::new(&fs, sig, m.clone());
        s.set_function_by("sub", |_, c| Ok((c[0] + 3 - c[1]) % 3))
            .unwrap();
        let i = Interpreter::new(&s).unwrap();
        // sub(x2, x1) on M^2 ordered (x1, x2) computes x2 - x1.
        let t = Term::apply("sub", vec![Term::var(2), Term::var(1)]);
        let f = i.interpret_term(&t).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f.apply(FinSet::product_index(a, b, 3)), (b + 3 - a) % 3);
            }
        }
    }

    #[test]
    fn wrong_element_count_is_an_arity_error() {
        let fs = FinSet::new();
        let s = z2(&fs);
        let i = Interpreter::new(&s).unwrap();
        let phi = Formula::eq(Term::var(1), Term::var(1));
        assert!(matches!(
            i.satisfies(&phi, &[]),
            Err(ToposError::Arity { .. })
        ));
    }
}
