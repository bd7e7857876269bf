use std::path::PathBuf;
use std::process::Command;

use topos_cli::commands::{execute, Command as Cmd, Options};
use topos_cli::parse_workspace;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn topos(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_topos"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn with_workspace(name: &str, args: &[&str]) -> (String, String, i32) {
    let path = fixture(name);
    let mut all = vec!["--workspace", path.to_str().unwrap()];
    all.extend_from_slice(args);
    topos(&all)
}

#[test]
fn z2_inverse_sentence_is_true() {
    let (out, _, code) = with_workspace(
        "z2.topos",
        &["eval", "forall x1. exists x2. mul(x1,x2) = e"],
    );
    assert_eq!((out.as_str(), code), ("T\n", 0));
    let (out, _, code) = with_workspace("z2.topos", &["eval", "inverses"]);
    assert_eq!((out.as_str(), code), ("T\n", 0));
}

#[test]
fn false_sentence_exits_one() {
    let (out, _, code) = with_workspace("z2.topos", &["eval", "~(e = e)"]);
    assert_eq!((out.as_str(), code), ("F\n", 1));
}

#[test]
fn all_named_formulas() {
    let (out, _, code) = with_workspace("order.topos", &["eval"]);
    assert_eq!(
        out,
        "bottom: T\njoin_is_upper: T\ntotal: T\nantisymmetric: T\ntop_is_bot: F\n"
    );
    assert_eq!(code, 1);
}

#[test]
fn excluded_middle_fails_in_the_arrow_topos() {
    let (out, _, code) = with_workspace("arrow.topos", &["eval", "lem"]);
    assert_eq!((out.as_str(), code), ("C\n", 1));
    let (out, _, _) = with_workspace("arrow.topos", &["eval", "dne"]);
    assert_eq!(out, "C\n");
}

#[test]
fn slices_and_discrete_presheaves() {
    let (out, _, code) = with_workspace("slice.topos", &["eval"]);
    assert_eq!(
        (out.as_str(), code),
        ("involution: T\nfixed: <x:F,y:T>\n", 1)
    );
    let (out, _, code) = with_workspace("discrete.topos", &["eval"]);
    assert_eq!((out.as_str(), code), ("some: T\nall: <u:F,v:T>\n", 1));
}

#[test]
fn trace_lists_composites() {
    let (out, _, code) = with_workspace("z2.topos", &["eval", "inverses", "--trace"]);
    assert_eq!(code, 0);
    assert!(out.contains("curry x2"), "{out}");
    assert!(out.ends_with("T\n"));
}

#[test]
fn arrow_tables_in_ascii() {
    let (out, _, code) = topos(&["--topos", "arrow", "tables"]);
    assert_eq!(code, 0);
    let and = "& | T C F\n--+------\nT | T C F\nC | C C F\nF | F F F\n";
    let or = "| | T C F\n--+------\nT | T T T\nC | T C C\nF | T C F\n";
    let implies = "-> | T  C  F\n---+---------\nT  | T  C  F\nC  | T  T  F\nF  | T  T  T\n";
    for table in [and, or, implies] {
        assert!(out.contains(table), "{out}");
    }
    assert!(
        out.ends_with("  | ~\n--+--\nT | F\nC | F\nF | T\n"),
        "{out}"
    );
}

#[test]
fn tables_in_json_match_the_library() {
    let (out, _, code) = topos(&["--topos", "finset", "tables", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["values"], serde_json::json!(["T", "F"]));
    let implies = &doc["tables"][2];
    assert_eq!(implies["connective"], "->");
    assert_eq!(
        implies["entries"],
        serde_json::json!([["T", "F"], ["T", "T"]])
    );

    let w = parse_workspace("topos finset").unwrap();
    let opts = Options {
        format: topos_cli::commands::Format::Json,
        ..Options::default()
    };
    assert_eq!(execute(&w, &Cmd::Tables, &opts).unwrap().text, out);
}

#[test]
fn axioms_reports() {
    let (out, _, code) = topos(&["--topos", "finset", "axioms", "--bound", "3"]);
    assert_eq!(code, 0);
    for line in [
        "boolean: yes",
        "well-pointed: yes",
        "choice: yes",
        "nno (|N| ≤ 3): none",
    ] {
        assert!(out.contains(line), "{out}");
    }
    let (out, _, _) = topos(&["--topos", "arrow", "axioms", "--bound", "2"]);
    assert!(out.contains("boolean: no"), "{out}");
    assert!(out.contains("well-pointed: no\n  witness:"), "{out}");
    let (out, _, _) = topos(&["--topos", "finset", "axioms", "--bound", "0"]);
    assert!(out.contains("vacuous"), "{out}");
    let (out, _, _) = topos(&[
        "--topos", "finset", "axioms", "--bound", "0", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (doc["schema"].clone(), doc["vacuous"].clone()),
        (1.into(), true.into())
    );
}

#[test]
fn subobject_listings() {
    let (out, _, _) = with_workspace("z2.topos", &["subobjects", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let subs = doc["subobjects"].as_array().unwrap();
    assert_eq!(subs.len(), 4);
    let characters: std::collections::HashSet<&str> = subs
        .iter()
        .map(|s| s["character"].as_str().unwrap())
        .collect();
    assert_eq!(characters.len(), 4);
    let (out, _, _) = topos(&["--topos", "arrow", "subobjects", "terminal"]);
    assert!(out.starts_with("3 subobjects of terminal"), "{out}");
    for value in ["χ = T", "χ = C", "χ = F"] {
        assert!(out.contains(value), "{out}");
    }
    let (out, _, _) = topos(&["--topos", "finset", "subobjects", "initial"]);
    assert!(out.starts_with("1 subobject of initial"), "{out}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("topos-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.topos");
    std::fs::write(&empty, "").unwrap();
    let (_, err, code) = topos(&["--workspace", empty.to_str().unwrap(), "tables"]);
    assert_eq!(code, 2);
    assert!(err.contains(":1:1:"), "{err}");

    let bad = dir.join("range.topos");
    std::fs::write(
        &bad,
        "topos finset;\nsort M = {0,1};\nfun mul/2 = {(0,0):2}",
    )
    .unwrap();
    let (_, err, code) = topos(&["--workspace", bad.to_str().unwrap(), "tables"]);
    assert_eq!(code, 2);
    assert!(err.contains(":3:20: range error"), "{err}");

    let (_, _, code) = topos(&["tables"]);
    assert_eq!(code, 2);
    let (_, _, code) = with_workspace("z2.topos", &["eval", "missing_formula"]);
    assert_eq!(code, 2);
    let (_, err, code) = with_workspace("z2.topos", &["eval", "mul(e) = e"]);
    assert_eq!(code, 2);
    assert!(err.contains("arity"), "{err}");
}

#[test]
fn topos_flag_overrides_the_workspace() {
    let (out, _, code) = with_workspace("z2.topos", &["--topos", "arrow", "tables"]);
    // The Z2 sort is not a presheaf sort, so the override is rejected while parsing.
    assert_eq!(code, 2, "{out}");
    let (out, _, code) = with_workspace("order.topos", &["--topos", "finset", "eval", "total"]);
    assert_eq!((out.as_str(), code), ("T\n", 0));
}
