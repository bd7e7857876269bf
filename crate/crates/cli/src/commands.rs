//! Command implementations. Every answer comes from the library; this
//! module only builds inputs and formats outputs.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use serde::Serialize;
use topos_core::concrete::{Concrete, Probes};
use topos_core::logic::axioms::{epis_between, is_well_pointed, nno_sweep, satisfies_ac};
use topos_core::logic::truth::{
    global_truth_values_with, name_of, negation_table, truth_table, TruthValue,
};
use topos_core::logic::{
    is_boolean, BinaryConnective, Connectives, Formula, Interpreter, LStructure, TraceStep,
};
use topos_core::presheaf::presheaf_topos;
use topos_core::subobject::{character, sub};
use topos_core::{
    arrow_topos, FinSet, FinSetMap, FinSetObject, FiniteCategory, PresheafTopos, Slice, ToposError,
};

use crate::error::{CliError, CliResult};
use crate::parser::{describe_free, parse_formula};
use crate::workspace::{IndexSpec, SortSpec, StageValue, Statement, ToposSpec, Workspace};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Json,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub trace: bool,
    pub format: Format,
    pub bound: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trace: false,
            format: Format::Ascii,
            bound: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// A formula name or literal; every named formula when absent.
    Eval(Option<String>),
    Tables,
    Axioms,
    /// `support` (or the sort's name), `terminal`, `initial` or `omega`.
    Subobjects(Option<String>),
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit: u8,
}

/// Topoi the workspace language can describe.
pub trait Surface: Concrete + Probes {
    fn support_from_sort(&self, spec: &SortSpec) -> topos_core::Result<Self::Object>;
}

impl Surface for FinSet {
    fn support_from_sort(&self, spec: &SortSpec) -> topos_core::Result<FinSetObject> {
        match spec {
            SortSpec::Set(labels) => FinSetObject::new(labels),
            _ => Err(ToposError::InvalidObject(
                "FinSet sorts are plain sets".into(),
            )),
        }
    }
}

impl Surface for Slice<FinSet> {
    fn support_from_sort(&self, spec: &SortSpec) -> topos_core::Result<Self::Object> {
        let SortSpec::Fibered(entries) = spec else {
            return Err(ToposError::InvalidObject(
                "slice sorts list each element with its fiber".into(),
            ));
        };
        let domain = FinSetObject::new(entries.iter().map(|(l, _)| l))?;
        let pairs: Vec<(&str, &str)> = entries
            .iter()
            .map(|(l, x)| (l.as_str(), x.as_str()))
            .collect();
        self.object(FinSetMap::from_labels(&domain, self.over(), &pairs)?)
    }
}

impl Surface for PresheafTopos {
    fn support_from_sort(&self, spec: &SortSpec) -> topos_core::Result<Self::Object> {
        let SortSpec::Stages(stages) = spec else {
            return Err(ToposError::InvalidObject(
                "presheaf sorts give one set per object".into(),
            ));
        };
        let lookup = |key: &str| stages.iter().find(|(k, _)| k == key).map(|(_, v)| v);
        let index = self.index();
        let sets = index
            .objects()
            .iter()
            .map(|o| match lookup(o) {
                Some(StageValue::Set(labels)) => FinSetObject::new(labels),
                _ => Err(ToposError::InvalidObject(format!(
                    "missing component `{o}`"
                ))),
            })
            .collect::<topos_core::Result<Vec<_>>>()?;
        let mut restrictions = Vec::new();
        for arrow in &index.arrows()[index.objects().len()..] {
            let Some(StageValue::Map(entries)) = lookup(&arrow.name) else {
                return Err(ToposError::InvalidObject(format!(
                    "missing restriction `{}`",
                    arrow.name
                )));
            };
            let pairs: Vec<(&str, &str)> = entries
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let map = FinSetMap::from_labels(&sets[arrow.target], &sets[arrow.source], &pairs)?;
            restrictions.push((arrow.name.as_str(), map));
        }
        self.presheaf(sets, &restrictions)
    }
}

/// Builds the selected topos and runs `command` in it.
pub fn execute(workspace: &Workspace, command: &Command, options: &Options) -> CliResult<Output> {
    match workspace.topos() {
        ToposSpec::FinSet => run(&FinSet::new(), workspace, command, options),
        ToposSpec::Arrow => run(&arrow_topos(), workspace, command, options),
        ToposSpec::Presheaf(index) => {
            let index = match index {
                IndexSpec::Interval => FiniteCategory::interval(),
                IndexSpec::Discrete(objects) => {
                    FiniteCategory::discrete(objects).map_err(CliError::Build)?
                }
            };
            let topos = presheaf_topos(index).map_err(CliError::Build)?;
            run(&topos, workspace, command, options)
        }
        ToposSpec::Slice(x) => {
            let over = FinSetObject::new(x).map_err(CliError::Build)?;
            let topos = Slice::new(FinSet::new(), over).map_err(CliError::Build)?;
            run(&topos, workspace, command, options)
        }
    }
}

pub fn run<T: Surface>(
    topos: &T,
    workspace: &Workspace,
    command: &Command,
    options: &Options,
) -> CliResult<Output> {
    match command {
        Command::Eval(target) => eval(topos, workspace, target.as_deref(), options),
        Command::Tables => tables(topos, workspace, options),
        Command::Axioms => axioms(topos, workspace, options),
        Command::Subobjects(object) => subobjects(topos, workspace, object.as_deref(), options),
    }
}

fn json<S: Serialize>(value: &S) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(ToposError::Inconsistent(e.to_string())))
}

/// The interpreted structure of the workspace, if it declares a sort.
pub fn build_structure<'a, T: Surface>(
    topos: &'a T,
    workspace: &Workspace,
) -> CliResult<Option<LStructure<'a, T>>> {
    let Some((_, spec)) = workspace.sort() else {
        return Ok(None);
    };
    let support = topos.support_from_sort(spec).map_err(CliError::Build)?;
    let stages = topos.stage_sets(&support);
    let mut structure = LStructure::new(topos, workspace.signature(), support.clone());
    let labels_of = |stage: usize, coords: &[usize]| -> Vec<String> {
        coords
            .iter()
            .map(|&c| stages[stage].label(c).to_string())
            .collect()
    };
    for statement in &workspace.statements {
        match statement {
            Statement::Fun { name, table, .. } => {
                let table: HashMap<Vec<String>, String> = table.iter().cloned().collect();
                structure
                    .set_function_by(name, |stage, coords| {
                        let key = labels_of(stage, coords);
                        table
                            .get(&key)
                            .and_then(|v| stages[stage].index_of(v))
                            .ok_or_else(|| {
                                ToposError::InvalidMorphism(format!(
                                    "`{name}` undefined on {key:?}"
                                ))
                            })
                    })
                    .map_err(CliError::Build)?;
            }
            Statement::Rel { name, tuples, .. } => {
                let tuples: HashSet<&Vec<String>> = tuples.iter().collect();
                structure
                    .set_relation_by(name, |stage, coords| {
                        tuples.contains(&labels_of(stage, coords))
                    })
                    .map_err(CliError::Build)?;
            }
            Statement::Const { name, labels } => {
                let element = element_through(topos, &support, labels).map_err(CliError::Build)?;
                structure
                    .set_constant(name, element)
                    .map_err(CliError::Build)?;
            }
            _ => {}
        }
    }
    Ok(Some(structure))
}

/// The unique global element whose stage images contain every label.
fn element_through<T: Surface>(
    topos: &T,
    support: &T::Object,
    labels: &[String],
) -> topos_core::Result<T::Morphism> {
    let mut found = Vec::new();
    for g in topos.hom(&topos.terminal(), support)? {
        let mut hit = HashSet::new();
        for m in topos.stage_maps(&g) {
            hit.extend(m.table().iter().map(|&y| m.target().label(y).to_string()));
        }
        if labels.iter().all(|l| hit.contains(l)) {
            found.push(g);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        0 => Err(ToposError::InvalidObject(format!(
            "no global element passes through {{{}}}",
            labels.join(", ")
        ))),
        k => Err(ToposError::InvalidObject(format!(
            "{k} global elements pass through {{{}}}; name more labels",
            labels.join(", ")
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub label: String,
    pub source: String,
    pub target: String,
}

impl From<TraceStep> for TraceEntry {
    fn from(s: TraceStep) -> Self {
        TraceEntry {
            label: s.label,
            source: s.source,
            target: s.target,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub name: Option<String>,
    pub formula: String,
    pub value: String,
    pub trace: Vec<TraceEntry>,
    pub elapsed_ms: f64,
}

#[derive(Serialize)]
struct EvalDocument<'r> {
    schema: u32,
    topos: String,
    results: &'r [EvalReport],
}

fn eval<T: Surface>(
    topos: &T,
    workspace: &Workspace,
    target: Option<&str>,
    options: &Options,
) -> CliResult<Output> {
    let structure = build_structure(topos, workspace)?
        .ok_or_else(|| CliError::Usage("the workspace declares no sort to evaluate in".into()))?;
    let formulas: Vec<(Option<String>, Formula)> = match target {
        Some(t) => match workspace.formula(t) {
            Some(f) => vec![(Some(t.to_string()), f.clone())],
            None => vec![(None, parse_formula(t, structure.signature())?)],
        },
        None => workspace
            .formulas()
            .map(|(n, f)| (Some(n.to_string()), f.clone()))
            .collect(),
    };
    if formulas.is_empty() {
        return Err(CliError::Usage(
            "no formula given and the workspace names none".into(),
        ));
    }
    let interpreter = Interpreter::new(&structure).map_err(CliError::Build)?;
    let values = global_truth_values_with(topos, interpreter.connectives())?;
    let mut reports = Vec::new();
    for (name, formula) in formulas {
        if !formula.is_sentence() {
            return Err(CliError::Usage(format!(
                "`{formula}` has free variables {}; only sentences can be evaluated",
                describe_free(&formula)
            )));
        }
        let start = Instant::now();
        let mut trace = Vec::new();
        let value = if options.trace {
            interpreter.interpret_formula_traced(&formula, &mut trace)?
        } else {
            interpreter.interpret_formula(&formula)?
        };
        let value = name_of(&values, &value).ok_or_else(|| {
            ToposError::Inconsistent(format!("{value} is not a global truth value"))
        })?;
        reports.push(EvalReport {
            name,
            formula: formula.to_string(),
            value,
            trace: trace.into_iter().map(TraceEntry::from).collect(),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let exit = if reports.iter().all(|r| r.value == "T") {
        0
    } else {
        1
    };
    let text = match options.format {
        Format::Json => json(&EvalDocument {
            schema: SCHEMA,
            topos: workspace.topos().to_string(),
            results: &reports,
        })?,
        Format::Ascii => {
            let single = reports.len() == 1 && target.is_some();
            let mut out = String::new();
            for r in &reports {
                for step in &r.trace {
                    out.push_str(&format!(
                        "  {}: {} → {}\n",
                        step.label, step.source, step.target
                    ));
                }
                match (&r.name, single) {
                    (_, true) | (None, _) => out.push_str(&format!("{}\n", r.value)),
                    (Some(n), false) => out.push_str(&format!("{n}: {}\n", r.value)),
                }
            }
            out
        }
    };
    Ok(Output { text, exit })
}

#[derive(Serialize)]
struct TablesDocument {
    schema: u32,
    topos: String,
    values: Vec<String>,
    tables: Vec<topos_core::logic::TruthTable>,
}

fn tables<T: Surface>(topos: &T, workspace: &Workspace, options: &Options) -> CliResult<Output> {
    let conns = Connectives::new(topos)?;
    let values: Vec<TruthValue<T::Morphism>> = global_truth_values_with(topos, &conns)?;
    let mut tables = BinaryConnective::ALL
        .iter()
        .map(|&op| truth_table(topos, &conns, &values, op))
        .collect::<topos_core::Result<Vec<_>>>()?;
    tables.push(negation_table(topos, &conns, &values)?);
    let text = match options.format {
        Format::Json => json(&TablesDocument {
            schema: SCHEMA,
            topos: workspace.topos().to_string(),
            values: values.iter().map(|v| v.name.clone()).collect(),
            tables,
        })?,
        Format::Ascii => tables
            .iter()
            .map(|t| t.to_ascii())
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Output { text, exit: 0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub schema: u32,
    pub topos: String,
    pub bound: usize,
    /// Bound 0 leaves only empty or trivial probes.
    pub vacuous: bool,
    pub boolean: bool,
    pub well_pointed: bool,
    pub well_pointed_witness: Option<[String; 2]>,
    pub choice: bool,
    pub epis_checked: usize,
    pub choice_failures: Vec<String>,
    pub nno_candidates: usize,
    pub nno_survivors: Vec<String>,
}

fn axioms<T: Surface>(topos: &T, workspace: &Workspace, options: &Options) -> CliResult<Output> {
    let bound = options.bound;
    let probes = topos.probe_objects(bound)?;
    let wp = is_well_pointed(topos, &probes)?;
    let ac = satisfies_ac(topos, &epis_between(topos, &probes)?)?;
    let sweep = nno_sweep(topos, bound)?;
    let report = AxiomReport {
        schema: SCHEMA,
        topos: workspace.topos().to_string(),
        bound,
        vacuous: bound == 0,
        boolean: is_boolean(topos)?,
        well_pointed: wp.holds,
        well_pointed_witness: wp.witness.map(|(f, g)| [f.to_string(), g.to_string()]),
        choice: ac.holds,
        epis_checked: ac.epis_checked,
        choice_failures: ac.failures.iter().map(ToString::to_string).collect(),
        nno_candidates: sweep.candidates,
        nno_survivors: sweep
            .survivors
            .iter()
            .map(|c| format!("({}, {}, {})", c.n, c.zero, c.succ))
            .collect(),
    };
    let text = match options.format {
        Format::Json => json(&report)?,
        Format::Ascii => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut out = format!("topos: {}\nbound: {bound}\n", report.topos);
            if report.vacuous {
                out.push_str("note: bound 0 probes only the smallest objects; the checks below are vacuous\n");
            }
            out.push_str(&format!("boolean: {}\n", yes(report.boolean)));
            match &report.well_pointed_witness {
                None => out.push_str(&format!("well-pointed: yes ({} maps checked)\n", wp.pairs_checked)),
                Some([f, g]) => out.push_str(&format!("well-pointed: no\n  witness: {f}\n       and {g}\n  agree on every global element\n")),
            }
            out.push_str(&format!(
                "choice: {} ({} epis checked)\n",
                yes(report.choice),
                report.epis_checked
            ));
            for f in &report.choice_failures {
                out.push_str(&format!("  no section: {f}\n"));
            }
            if report.nno_survivors.is_empty() {
                out.push_str(&format!(
                    "nno (|N| ≤ {bound}): none; all {} candidates refuted by tests of size ≤ {}\n",
                    report.nno_candidates,
                    bound + 1
                ));
            } else {
                out.push_str(&format!(
                    "nno (|N| ≤ {bound}): {} survivors\n",
                    report.nno_survivors.len()
                ));
                for s in &report.nno_survivors {
                    out.push_str(&format!("  {s}\n"));
                }
            }
            out
        }
    };
    Ok(Output { text, exit: 0 })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubobjectEntry {
    /// Element labels per stage.
    pub elements: Vec<Vec<String>>,
    pub character: String,
}

#[derive(Serialize)]
struct SubobjectsDocument {
    schema: u32,
    topos: String,
    object: String,
    stages: Vec<String>,
    subobjects: Vec<SubobjectEntry>,
}

fn subobjects<T: Surface>(
    topos: &T,
    workspace: &Workspace,
    object: Option<&str>,
    options: &Options,
) -> CliResult<Output> {
    let sort_name = workspace.sort().map(|(n, _)| n.to_string());
    let which = object
        .map(str::to_string)
        .or_else(|| sort_name.clone())
        .unwrap_or_else(|| "terminal".into());
    let target = match which.as_str() {
        "terminal" | "1" => topos.terminal(),
        "initial" | "0" => topos.initial(),
        "omega" => topos.omega(),
        name if name == "support" || Some(name) == sort_name.as_deref() => {
            let structure = build_structure(topos, workspace)?
                .ok_or_else(|| CliError::Usage("the workspace declares no sort".into()))?;
            structure.support().clone()
        }
        other => {
            return Err(CliError::Usage(format!(
            "unknown object `{other}`; expected the sort name, support, terminal, initial or omega"
        )))
        }
    };
    let conns = Connectives::new(topos)?;
    let values = global_truth_values_with(topos, &conns)?;
    let mut entries = Vec::new();
    for s in sub(topos, &target)? {
        let chi = character(topos, s.monic())?;
        let elements = topos
            .stage_maps(s.monic())
            .iter()
            .map(|m| {
                m.table()
                    .iter()
                    .map(|&y| m.target().label(y).to_string())
                    .collect()
            })
            .collect();
        entries.push(SubobjectEntry {
            elements,
            character: name_of(&values, &chi).unwrap_or_else(|| chi.to_string()),
        });
    }
    let stages = topos.stage_names();
    let text = match options.format {
        Format::Json => json(&SubobjectsDocument {
            schema: SCHEMA,
            topos: workspace.topos().to_string(),
            object: which,
            stages,
            subobjects: entries,
        })?,
        Format::Ascii => {
            let noun = if entries.len() == 1 {
                "subobject"
            } else {
                "subobjects"
            };
            let mut out = format!("{} {noun} of {which}\n", entries.len());
            for e in &entries {
                let shown: Vec<String> = if stages.len() == 1 {
                    vec![format!("{{{}}}", e.elements[0].join(", "))]
                } else {
                    stages
                        .iter()
                        .zip(&e.elements)
                        .map(|(s, l)| format!("{s}: {{{}}}", l.join(", ")))
                        .collect()
                };
                out.push_str(&format!("  {}  χ = {}\n", shown.join(", "), e.character));
            }
            out
        }
    };
    Ok(Output { text, exit: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_workspace;

    const Z2: &str = "topos finset; sort M = {0,1}; const e = 0; \
        fun mul/2 = {(0,0):0,(0,1):1,(1,0):1,(1,1):0}";

    fn eval_text(ws: &str, formula: &str) -> Output {
        let w = parse_workspace(ws).unwrap();
        execute(
            &w,
            &Command::Eval(Some(formula.into())),
            &Options::default(),
        )
        .unwrap()
    }

    #[test]
    fn z2_inverses() {
        let out = eval_text(Z2, "forall x1. exists x2. mul(x1,x2) = e");
        assert_eq!(
            out,
            Output {
                text: "T\n".into(),
                exit: 0
            }
        );
        assert_eq!(
            eval_text(Z2, "~(e = e)"),
            Output {
                text: "F\n".into(),
                exit: 1
            }
        );
    }

    #[test]
    fn arrow_excluded_middle() {
        let ws =
            "topos arrow; sort M = {dom: {a}, cod: {b}, t: {a: b}}; rel R/1 = {b}; const k = a";
        assert_eq!(
            eval_text(ws, "R(k) | ~R(k)"),
            Output {
                text: "C\n".into(),
                exit: 1
            }
        );
    }

    #[test]
    fn free_variables_are_rejected() {
        let w = parse_workspace(Z2).unwrap();
        let err = execute(
            &w,
            &Command::Eval(Some("x1 = e".into())),
            &Options::default(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn subobject_counts() {
        let w = parse_workspace(Z2).unwrap();
        let out = execute(&w, &Command::Subobjects(None), &Options::default()).unwrap();
        assert!(out.text.starts_with("4 subobjects of M"), "{}", out.text);
        let arrow = parse_workspace("topos arrow").unwrap();
        let out = execute(
            &arrow,
            &Command::Subobjects(Some("terminal".into())),
            &Options::default(),
        )
        .unwrap();
        assert!(out.text.starts_with("3 subobjects"), "{}", out.text);
        let out = execute(
            &arrow,
            &Command::Subobjects(Some("initial".into())),
            &Options::default(),
        )
        .unwrap();
        assert!(
            out.text.starts_with("1 subobject of initial"),
            "{}",
            out.text
        );
    }
}
