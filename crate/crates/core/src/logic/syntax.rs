//! Terms, formulae and language signatures.
//!
//! `Display` prints the ASCII surface syntax (`~ & | -> <-> = forall exists`),
//! parenthesized so that the output parses back to the same tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Result, ToposError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// `x_i`, with `i ≥ 1`.
    Var(usize),
    Const(String),
    Apply(String, Vec<Term>),
    Product(Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Rel(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(usize, Box<Formula>),
    Exists(usize, Box<Formula>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn apply(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Apply(name.into(), args)
    }

    /// `v(t)`, ascending.
    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Const(_) => {}
            Term::Apply(_, args) | Term::Product(args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Apply(_, args) | Term::Product(args) => {
                1 + args.iter().map(Term::depth).max().unwrap_or(0)
            }
        }
    }
}

impl Formula {
    pub fn eq(s: Term, t: Term) -> Self {
        Formula::Eq(s, t)
    }

    pub fn rel(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Rel(name.into(), args)
    }

    pub fn not(p: Formula) -> Self {
        Formula::Not(Box::new(p))
    }

    pub fn and(p: Formula, q: Formula) -> Self {
        Formula::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: Formula, q: Formula) -> Self {
        Formula::Or(Box::new(p), Box::new(q))
    }

    pub fn implies(p: Formula, q: Formula) -> Self {
        Formula::Implies(Box::new(p), Box::new(q))
    }

    pub fn iff(p: Formula, q: Formula) -> Self {
        Formula::Iff(Box::new(p), Box::new(q))
    }

    pub fn forall(x: usize, p: Formula) -> Self {
        Formula::Forall(x, Box::new(p))
    }

    pub fn exists(x: usize, p: Formula) -> Self {
        Formula::Exists(x, Box::new(p))
    }

    /// `v(φ)`, ascending.
    pub fn free_vars(&self) -> BTreeSet<usize> {
        match self {
            Formula::Eq(s, t) => {
                let mut out = s.free_vars();
                out.extend(t.free_vars());
                out
            }
            Formula::Rel(_, args) => args.iter().flat_map(Term::free_vars).collect(),
            Formula::Not(p) => p.free_vars(),
            Formula::And(p, q)
            | Formula::Or(p, q)
            | Formula::Implies(p, q)
            | Formula::Iff(p, q) => {
                let mut out = p.free_vars();
                out.extend(q.free_vars());
                out
            }
            Formula::Forall(x, p) | Formula::Exists(x, p) => {
                let mut out = p.free_vars();
                out.remove(x);
                out
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// AST depth: atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Rel(..) => 1,
            Formula::Not(p) | Formula::Forall(_, p) | Formula::Exists(_, p) => 1 + p.depth(),
            Formula::And(p, q)
            | Formula::Or(p, q)
            | Formula::Implies(p, q)
            | Formula::Iff(p, q) => 1 + p.depth().max(q.depth()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::Eq(..) | Formula::Rel(..) => 6,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Apply(name, args) => {
                write!(f, "{name}(")?;
                join(f, args)?;
                write!(f, ")")
            }
            Term::Product(args) => {
                write!(f, "(")?;
                join(f, args)?;
                if args.len() == 1 {
                    write!(f, ",")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(s, t) => write!(f, "{s} = {t}"),
            Formula::Rel(name, args) => {
                write!(f, "{name}(")?;
                join(f, args)?;
                write!(f, ")")
            }
            Formula::Not(p) => {
                write!(f, "~")?;
                p.fmt_operand(f, 5)
            }
            Formula::And(p, q) => {
                p.fmt_operand(f, 4)?;
                write!(f, " & ")?;
                q.fmt_operand(f, 5)
            }
            Formula::Or(p, q) => {
                p.fmt_operand(f, 3)?;
                write!(f, " | ")?;
                q.fmt_operand(f, 4)
            }
            Formula::Implies(p, q) => {
                p.fmt_operand(f, 3)?;
                write!(f, " -> ")?;
                q.fmt_operand(f, 2)
            }
            Formula::Iff(p, q) => {
                p.fmt_operand(f, 2)?;
                write!(f, " <-> ")?;
                q.fmt_operand(f, 2)
            }
            Formula::Forall(x, p) => write!(f, "forall x{x}. {p}"),
            Formula::Exists(x, p) => write!(f, "exists x{x}. {p}"),
        }
    }
}

/// Function and relation symbols with arities, and constant symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LanguageSignature {
    functions: BTreeMap<String, usize>,
    relations: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
}

impl LanguageSignature {
    pub fn new() -> Self {
        Self::default()
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.functions.contains_key(name)
            || self.relations.contains_key(name)
            || self.constants.contains(name)
        {
            return Err(ToposError::InvalidSignature(format!(
                "symbol `{name}` is declared twice"
            )));
        }
        if name.is_empty() || !is_identifier(name) || is_variable_name(name) {
            return Err(ToposError::InvalidSignature(format!(
                "`{name}` is not a valid symbol name"
            )));
        }
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<()> {
        self.check_fresh(name)?;
        if arity == 0 {
            return Err(ToposError::InvalidSignature(format!(
                "function `{name}` needs arity at least 1"
            )));
        }
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> Result<()> {
        self.check_fresh(name)?;
        if arity == 0 {
            return Err(ToposError::InvalidSignature(format!(
                "relation `{name}` needs arity at least 1"
            )));
        }
        self.relations.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<()> {
        self.check_fresh(name)?;
        self.constants.insert(name.to_string());
        Ok(())
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn has_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    /// Checks symbols, arities and variable indices of a term.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(0) => Err(ToposError::InvalidSignature(
                "variable indices start at 1".into(),
            )),
            Term::Var(_) => Ok(()),
            Term::Const(c) if self.constants.contains(c) => Ok(()),
            Term::Const(c) => Err(ToposError::UnknownSymbol(c.clone())),
            Term::Apply(name, args) => {
                let expected = self
                    .function_arity(name)
                    .ok_or_else(|| ToposError::UnknownSymbol(name.clone()))?;
                if expected != args.len() {
                    return Err(ToposError::Arity {
                        symbol: name.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Term::Product(args) => {
                if args.is_empty() {
                    return Err(ToposError::InvalidSignature("empty product term".into()));
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Checks symbols, arities and variable indices of a formula.
    pub fn check_formula(&self, p: &Formula) -> Result<()> {
        match p {
            Formula::Eq(s, t) => {
                self.check_term(s)?;
                self.check_term(t)
            }
            Formula::Rel(name, args) => {
                let expected = self
                    .relation_arity(name)
                    .ok_or_else(|| ToposError::UnknownSymbol(name.clone()))?;
                if expected != args.len() {
                    return Err(ToposError::Arity {
                        symbol: name.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::Not(q) => self.check_formula(q),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
            Formula::Forall(0, _) | Formula::Exists(0, _) => Err(ToposError::InvalidSignature(
                "variable indices start at 1".into(),
            )),
            Formula::Forall(_, q) | Formula::Exists(_, q) => self.check_formula(q),
        }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `x` followed by digits is reserved for variables.
pub fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].chars().all(|c| c.is_ascii_digit())
}
