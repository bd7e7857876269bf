//! Shared fixtures: a naive Tarski evaluator, random structures and a
//! seeded formula generator. Nothing here calls into the categorical
//! interpreter.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use topos_core::logic::{Formula, LStructure, LanguageSignature, Term};
use topos_core::{FinSet, FinSetObject, Result};

/// A structure on `{0, …, size-1}` over `mul/2`, `R/2`, `e`.
#[derive(Debug, Clone)]
pub struct Table {
    pub size: usize,
    pub mul: Vec<usize>,
    pub rel: Vec<bool>,
    pub e: usize,
}

impl Table {
    pub fn random(rng: &mut StdRng, size: usize) -> Self {
        Table {
            size,
            mul: (0..size * size).map(|_| rng.gen_range(0..size)).collect(),
            rel: (0..size * size).map(|_| rng.gen_bool(0.5)).collect(),
            e: rng.gen_range(0..size),
        }
    }

    /// Addition mod `size`, with `R` as `≤`.
    pub fn cyclic(size: usize) -> Self {
        Table {
            size,
            mul: (0..size * size)
                .map(|i| (i / size + i % size) % size)
                .collect(),
            rel: (0..size * size).map(|i| i / size <= i % size).collect(),
            e: 0,
        }
    }

    pub fn term(&self, t: &Term, env: &[usize]) -> usize {
        match t {
            Term::Var(i) => env[*i],
            Term::Const(_) => self.e,
            Term::Apply(_, args) => {
                let a = self.term(&args[0], env);
                let b = self.term(&args[1], env);
                self.mul[a * self.size + b]
            }
            Term::Product(_) => panic!("product terms are not generated"),
        }
    }

    /// Classical satisfaction; `env[i]` is the value of `x_i`.
    pub fn holds(&self, phi: &Formula, env: &mut Vec<usize>) -> bool {
        match phi {
            Formula::Eq(s, t) => self.term(s, env) == self.term(t, env),
            Formula::Rel(_, args) => {
                let a = self.term(&args[0], env);
                let b = self.term(&args[1], env);
                self.rel[a * self.size + b]
            }
            Formula::Not(p) => !self.holds(p, env),
            Formula::And(p, q) => self.holds(p, env) && self.holds(q, env),
            Formula::Or(p, q) => self.holds(p, env) || self.holds(q, env),
            Formula::Implies(p, q) => !self.holds(p, env) || self.holds(q, env),
            Formula::Iff(p, q) => self.holds(p, env) == self.holds(q, env),
            Formula::Forall(x, p) | Formula::Exists(x, p) => {
                let universal = matches!(phi, Formula::Forall(..));
                let saved = env[*x];
                let mut result = universal;
                for a in 0..self.size {
                    env[*x] = a;
                    if self.holds(p, env) != universal {
                        result = !universal;
                        break;
                    }
                }
                env[*x] = saved;
                result
            }
        }
    }
}

pub fn signature() -> LanguageSignature {
    let mut sig = LanguageSignature::new();
    sig.add_function("mul", 2).unwrap();
    sig.add_relation("R", 2).unwrap();
    sig.add_constant("e").unwrap();
    sig
}

/// The same structure as an object of FinSet.
pub fn to_structure<'a>(fs: &'a FinSet, table: &Table) -> Result<LStructure<'a, FinSet>> {
    let m = FinSetObject::range(table.size);
    let mut s = LStructure::new(fs, signature(), m.clone());
    let (n, mul, rel) = (table.size, table.mul.clone(), table.rel.clone());
    s.set_function_by("mul", move |_, c| Ok(mul[c[0] * n + c[1]]))?;
    s.set_relation_by("R", move |_, c| rel[c[0] * n + c[1]])?;
    s.set_constant("e", fs.element(&m, table.e)?)?;
    Ok(s)
}

/// Variables range over `x1..=x3`.
pub const VARIABLES: usize = 3;

fn random_term(rng: &mut StdRng, depth: usize) -> Term {
    let roll = rng.gen_range(0..10);
    if depth <= 1 || roll < 6 {
        if roll % 4 == 0 {
            Term::constant("e")
        } else {
            Term::var(rng.gen_range(1..=VARIABLES))
        }
    } else {
        Term::apply(
            "mul",
            vec![random_term(rng, depth - 1), random_term(rng, depth - 1)],
        )
    }
}

/// A formula of depth at most `depth` over the fixture signature.
pub fn random_formula(rng: &mut StdRng, depth: usize) -> Formula {
    if depth <= 1 {
        let (s, t) = (random_term(rng, 3), random_term(rng, 3));
        return if rng.gen_bool(0.5) {
            Formula::eq(s, t)
        } else {
            Formula::rel("R", vec![s, t])
        };
    }
    let sub = |rng: &mut StdRng| random_formula(rng, depth - 1);
    match rng.gen_range(0..10) {
        0 => sub(rng),
        1 => Formula::not(sub(rng)),
        2 => Formula::and(sub(rng), sub(rng)),
        3 => Formula::or(sub(rng), sub(rng)),
        4 => Formula::implies(sub(rng), sub(rng)),
        5 => Formula::iff(sub(rng), sub(rng)),
        6 | 7 => Formula::forall(rng.gen_range(1..=VARIABLES), sub(rng)),
        _ => Formula::exists(rng.gen_range(1..=VARIABLES), sub(rng)),
    }
}

/// `count` formulas of depth ≤ `depth` with at most two free variables.
pub fn formula_corpus(rng: &mut StdRng, count: usize, depth: usize) -> Vec<Formula> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let phi = random_formula(rng, depth);
        if phi.free_vars().len() <= 2 && phi.depth() <= depth {
            out.push(phi);
        }
    }
    out
}

/// All assignments to `vars` (ascending) over `{0, …, size-1}`.
pub fn assignments(size: usize, vars: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..size).map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// The fixture family: cyclic structures plus seeded random ones per size.
pub fn fixture_tables(rng: &mut StdRng, random_per_size: usize) -> Vec<Table> {
    let mut out = Vec::new();
    for size in 1..=3 {
        out.push(Table::cyclic(size));
        for _ in 0..random_per_size {
            out.push(Table::random(rng, size));
        }
    }
    out
}

/// Compares categorical and classical satisfaction on every assignment;
/// returns the number of comparisons and the mismatches found.
pub fn compare(fs: &FinSet, table: &Table, formulas: &[Formula]) -> Result<(usize, Vec<String>)> {
    use topos_core::logic::Interpreter;
    let s = to_structure(fs, table)?;
    let interp = Interpreter::new(&s)?;
    let m = FinSetObject::range(table.size);
    let points: Vec<_> = (0..table.size)
        .map(|i| fs.element(&m, i))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for phi in formulas {
        let vars: Vec<usize> = phi.free_vars().into_iter().collect();
        let interpretation = interp.interpret_formula(phi)?;
        for values in assignments(table.size, vars.len()) {
            let mut env = vec![0; VARIABLES + 1];
            for (v, a) in vars.iter().zip(&values) {
                env[*v] = *a;
            }
            let expected = table.holds(phi, &mut env);
            let elements: Vec<_> = values.iter().map(|&a| points[a].clone()).collect();
            let value = interp.evaluate_interpretation(phi, &interpretation, &elements)?;
            let got = value == interp.connectives().truth;
            checked += 1;
            if got != expected {
                mismatches.push(format!(
                    "|M|={} {phi} at {values:?}: engine {got}, oracle {expected}",
                    table.size
                ));
            }
        }
    }
    Ok((checked, mismatches))
}
