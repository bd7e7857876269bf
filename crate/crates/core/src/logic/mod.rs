//! First-order logic inside a topos.

pub mod axioms;
pub mod connectives;
pub mod interpret;
pub mod structure;
pub mod syntax;
pub mod truth;

pub use connectives::{BinaryConnective, Connectives};
pub use interpret::{Interpreter, TraceStep};
pub use structure::LStructure;
pub use syntax::{Formula, LanguageSignature, Term};
pub use truth::{global_truth_values, is_boolean, TruthTable, TruthValue};
