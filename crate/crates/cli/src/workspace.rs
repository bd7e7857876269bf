//! Workspace syntax tree and its canonical serialization.

use std::fmt;

use topos_core::logic::{Formula, LanguageSignature};

/// Index categories available to `presheaf(...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSpec {
    /// `dom`, `cod` and `t: cod → dom`.
    Interval,
    Discrete(Vec<String>),
}

impl IndexSpec {
    pub fn objects(&self) -> Vec<String> {
        match self {
            IndexSpec::Interval => vec!["dom".into(), "cod".into()],
            IndexSpec::Discrete(objects) => objects.clone(),
        }
    }

    /// Non-identity arrows as `(name, source, target)`.
    pub fn arrows(&self) -> Vec<(String, String, String)> {
        match self {
            IndexSpec::Interval => vec![("t".into(), "cod".into(), "dom".into())],
            IndexSpec::Discrete(_) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToposSpec {
    FinSet,
    /// The arrow category, with its middle truth value named `C`.
    Arrow,
    /// `FinSet/X`.
    Slice(Vec<String>),
    Presheaf(IndexSpec),
}

impl ToposSpec {
    /// Index objects and arrows when the topos is a presheaf topos.
    pub fn index(&self) -> Option<IndexSpec> {
        match self {
            ToposSpec::Arrow => Some(IndexSpec::Interval),
            ToposSpec::Presheaf(index) => Some(index.clone()),
            _ => None,
        }
    }
}

/// A restriction map or a component set, keyed by arrow or object name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StageValue {
    Set(Vec<String>),
    Map(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortSpec {
    /// `{a, b}` in FinSet.
    Set(Vec<String>),
    /// `{a: x, b: y}` in a slice: each element with its fiber.
    Fibered(Vec<(String, String)>),
    /// `{dom: {a}, cod: {b}, t: {a: b}}` in a presheaf topos.
    Stages(Vec<(String, StageValue)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Topos(ToposSpec),
    Sort {
        name: String,
        spec: SortSpec,
    },
    /// The unique global element through all of `labels`.
    Const {
        name: String,
        labels: Vec<String>,
    },
    Fun {
        name: String,
        arity: usize,
        table: Vec<(Vec<String>, String)>,
    },
    Rel {
        name: String,
        arity: usize,
        tuples: Vec<Vec<String>>,
    },
    Formula {
        name: String,
        formula: Formula,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub statements: Vec<Statement>,
}

impl Workspace {
    pub fn topos(&self) -> &ToposSpec {
        self.statements
            .iter()
            .find_map(|s| match s {
                Statement::Topos(t) => Some(t),
                _ => None,
            })
            .expect("parser guarantees a topos statement")
    }

    pub fn sort(&self) -> Option<(&str, &SortSpec)> {
        self.statements.iter().find_map(|s| match s {
            Statement::Sort { name, spec } => Some((name.as_str(), spec)),
            _ => None,
        })
    }

    pub fn signature(&self) -> LanguageSignature {
        let mut sig = LanguageSignature::new();
        for s in &self.statements {
            // Names were validated while parsing.
            let _ = match s {
                Statement::Const { name, .. } => sig.add_constant(name),
                Statement::Fun { name, arity, .. } => sig.add_function(name, *arity),
                Statement::Rel { name, arity, .. } => sig.add_relation(name, *arity),
                _ => Ok(()),
            };
        }
        sig
    }

    pub fn formulas(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Formula { name, formula } => Some((name.as_str(), formula)),
            _ => None,
        })
    }

    pub fn formula(&self, name: &str) -> Option<&Formula> {
        self.formulas().find(|(n, _)| *n == name).map(|(_, f)| f)
    }
}

fn set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn pairs(entries: &[(String, String)]) -> String {
    let shown: Vec<String> = entries.iter().map(|(a, b)| format!("{a}: {b}")).collect();
    format!("{{{}}}", shown.join(", "))
}

fn tuple(labels: &[String]) -> String {
    if labels.len() == 1 {
        labels[0].clone()
    } else {
        format!("({})", labels.join(", "))
    }
}

impl fmt::Display for IndexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSpec::Interval => write!(f, "interval"),
            IndexSpec::Discrete(objects) => write!(f, "discrete{}", set(objects)),
        }
    }
}

impl fmt::Display for ToposSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToposSpec::FinSet => write!(f, "finset"),
            ToposSpec::Arrow => write!(f, "arrow"),
            ToposSpec::Slice(x) => write!(f, "slice(finset, {})", set(x)),
            ToposSpec::Presheaf(index) => write!(f, "presheaf({index})"),
        }
    }
}

impl fmt::Display for SortSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortSpec::Set(labels) => write!(f, "{}", set(labels)),
            SortSpec::Fibered(entries) => write!(f, "{}", pairs(entries)),
            SortSpec::Stages(stages) => {
                let shown: Vec<String> = stages
                    .iter()
                    .map(|(key, value)| match value {
                        StageValue::Set(labels) => format!("{key}: {}", set(labels)),
                        StageValue::Map(entries) => format!("{key}: {}", pairs(entries)),
                    })
                    .collect();
                write!(f, "{{{}}}", shown.join(", "))
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Topos(spec) => write!(f, "topos {spec}"),
            Statement::Sort { name, spec } => write!(f, "sort {name} = {spec}"),
            Statement::Const { name, labels } if labels.len() == 1 => {
                write!(f, "const {name} = {}", labels[0])
            }
            Statement::Const { name, labels } => write!(f, "const {name} = {}", set(labels)),
            Statement::Fun { name, arity, table } => {
                let shown: Vec<String> = table
                    .iter()
                    .map(|(k, v)| format!("{}: {v}", tuple(k)))
                    .collect();
                write!(f, "fun {name}/{arity} = {{{}}}", shown.join(", "))
            }
            Statement::Rel {
                name,
                arity,
                tuples,
            } => {
                let shown: Vec<String> = tuples.iter().map(|t| tuple(t)).collect();
                write!(f, "rel {name}/{arity} = {{{}}}", shown.join(", "))
            }
            Statement::Formula { name, formula } => write!(f, "formula {name} = {formula}"),
        }
    }
}

/// One statement per line, each terminated by `;`.
impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s};")?;
        }
        Ok(())
    }
}
