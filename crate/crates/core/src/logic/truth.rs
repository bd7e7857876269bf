//! Global truth values, truth tables, and the Boolean test.

use serde::Serialize;

use crate::error::Result;
use crate::logic::connectives::{BinaryConnective, Connectives};
use crate::topos::{is_iso, Topos};

/// A global element `1 → Ω` with a display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthValue<M> {
    pub morphism: M,
    pub name: String,
}

/// `Hom(1, Ω)`, ordered `T` first and `F` last.
///
/// `T` and `F` are always named so; other values take the topos's name for
/// them, or `V1`, `V2`, … when it has none.
pub fn global_truth_values<T: Topos>(topos: &T) -> Result<Vec<TruthValue<T::Morphism>>> {
    let connectives = Connectives::new(topos)?;
    global_truth_values_with(topos, &connectives)
}

pub fn global_truth_values_with<T: Topos>(
    topos: &T,
    connectives: &Connectives<T::Morphism>,
) -> Result<Vec<TruthValue<T::Morphism>>> {
    let all = topos.hom(&topos.terminal(), &topos.omega())?;
    let mut middle = Vec::new();
    let mut unnamed = 0;
    for v in all {
        if v == connectives.truth || v == connectives.falsity {
            continue;
        }
        let name = topos.truth_value_name(&v).unwrap_or_else(|| {
            unnamed += 1;
            format!("V{unnamed}")
        });
        middle.push(TruthValue { morphism: v, name });
    }
    let mut out = vec![TruthValue {
        morphism: connectives.truth.clone(),
        name: "T".into(),
    }];
    out.extend(middle);
    if connectives.falsity != connectives.truth {
        out.push(TruthValue {
            morphism: connectives.falsity.clone(),
            name: "F".into(),
        });
    }
    Ok(out)
}

/// The name of a global truth value among `values`.
pub fn name_of<M: PartialEq>(values: &[TruthValue<M>], v: &M) -> Option<String> {
    values
        .iter()
        .find(|t| &t.morphism == v)
        .map(|t| t.name.clone())
}

/// A connective tabulated on global truth values; rows are the first argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub connective: String,
    pub values: Vec<String>,
    /// `entries[row][col]` for binary connectives; a single row for `¬`.
    pub entries: Vec<Vec<String>>,
}

impl TruthTable {
    /// Looks up `row op col` by value names.
    pub fn get(&self, row: &str, col: &str) -> Option<&str> {
        let r = self.values.iter().position(|v| v == row)?;
        let c = self.values.iter().position(|v| v == col)?;
        self.entries.get(r)?.get(c).map(String::as_str)
    }

    /// Fixed-width ASCII grid, one line per row.
    pub fn to_ascii(&self) -> String {
        let width = self
            .values
            .iter()
            .chain(self.entries.iter().flatten())
            .chain(std::iter::once(&self.connective))
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let pad = |s: &str| format!("{s:<width$}");
        let mut out = String::new();
        if self.entries.len() == 1 && self.values.len() != 1 {
            out.push_str(&format!("{} | {}\n", pad(""), pad(&self.connective)));
            out.push_str(&format!("{}-+-{}\n", "-".repeat(width), "-".repeat(width)));
            for (v, e) in self.values.iter().zip(&self.entries[0]) {
                out.push_str(format!("{} | {}\n", pad(v), pad(e)).trim_end());
                out.push('\n');
            }
            return out;
        }
        let header: Vec<String> = self.values.iter().map(|v| pad(v)).collect();
        out.push_str(format!("{} | {}", pad(&self.connective), header.join(" ")).trim_end());
        out.push('\n');
        out.push_str(&format!(
            "{}-+-{}\n",
            "-".repeat(width),
            "-".repeat((width + 1) * self.values.len() - 1)
        ));
        for (v, row) in self.values.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|e| pad(e)).collect();
            out.push_str(format!("{} | {}", pad(v), cells.join(" ")).trim_end());
            out.push('\n');
        }
        out
    }
}

/// `op` evaluated on every pair of global truth values, via `op ∘ ⟨a, b⟩`.
pub fn truth_table<T: Topos>(
    topos: &T,
    connectives: &Connectives<T::Morphism>,
    values: &[TruthValue<T::Morphism>],
    op: BinaryConnective,
) -> Result<TruthTable> {
    let morphism = connectives.binary(op);
    let mut entries = Vec::with_capacity(values.len());
    for a in values {
        let mut row = Vec::with_capacity(values.len());
        for b in values {
            let v = topos.compose(morphism, &topos.pair(&a.morphism, &b.morphism)?)?;
            row.push(name_of(values, &v).unwrap_or_else(|| "?".into()));
        }
        entries.push(row);
    }
    Ok(TruthTable {
        connective: op.symbol().into(),
        values: values.iter().map(|v| v.name.clone()).collect(),
        entries,
    })
}

/// `¬` on every global truth value, as a single row.
pub fn negation_table<T: Topos>(
    topos: &T,
    connectives: &Connectives<T::Morphism>,
    values: &[TruthValue<T::Morphism>],
) -> Result<TruthTable> {
    let row = values
        .iter()
        .map(|a| {
            let v = topos.compose(&connectives.not, &a.morphism)?;
            Ok(name_of(values, &v).unwrap_or_else(|| "?".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruthTable {
        connective: "~".into(),
        values: values.iter().map(|v| v.name.clone()).collect(),
        entries: vec![row],
    })
}

/// Whether `k = [T, F]: 1 + 1 → Ω` is an isomorphism.
pub fn is_boolean<T: Topos>(topos: &T) -> Result<bool> {
    let connectives = Connectives::new(topos)?;
    let k = topos.copair(&connectives.truth, &connectives.falsity)?;
    Ok(is_iso(topos, &k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;
    use crate::presheaf::arrow_topos;

    #[test]
    fn counts() {
        assert_eq!(global_truth_values(&FinSet::new()).unwrap().len(), 2);
        let names: Vec<String> = global_truth_values(&arrow_topos())
            .unwrap()
            .into_iter()
            .map(|v| v.name)
            .collect();
        assert_eq!(names, vec!["T", "C", "F"]);
    }

    #[test]
    fn booleanness() {
        assert!(is_boolean(&FinSet::new()).unwrap());
        assert!(!is_boolean(&arrow_topos()).unwrap());
    }
}
