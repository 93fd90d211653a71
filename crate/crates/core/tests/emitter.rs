//! Snapshot tests for the emitted ASP programs, and an optional cross-check
//! of the emitted program against clingo (skipped when the Python bindings
//! are not installed).

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use cwm_core::asp::{emit_preference_program, emit_program, Mangler};
use cwm_core::entailment::{Options, Problem};
use cwm_core::fixtures;
use cwm_core::materialize::{translate, Scope};
use cwm_core::{normalize, parse_kb, parse_query};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn emitted() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fixtures::QUERIES
        .iter()
        .map(|(name, q)| {
            let kb = normalize(&parse_kb(fixtures::by_name(name).unwrap()).unwrap()).unwrap();
            (format!("{name}.lp"), emit_program(&kb, &parse_query(q).unwrap()))
        })
        .collect();
    out.push(("preference.lp".into(), emit_preference_program().to_string()));
    out
}

#[test]
fn golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (file, text) in emitted() {
        let path = golden_dir().join(&file);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(expected == text, "{file} differs from its snapshot");
    }
}

#[test]
fn emission_is_stable_across_runs() {
    assert_eq!(emitted(), emitted());
}

fn clingo_available() -> bool {
    Command::new("python3")
        .args(["-c", "import clingo"])
        .stderr(Stdio::null())
        .status()
        .is_ok_and(|s| s.success())
}

fn python(script: &str, input: &str) -> String {
    let mut child = Command::new("python3")
        .args(["-c", script])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "python failed");
    String::from_utf8(out.stdout).unwrap()
}

/// Prints, per answer set, the typical-property atoms of `auxC`.
const SOLVE: &str = r#"
import sys, clingo
ctl = clingo.Control(["0", "--warn=none"])
ctl.add("base", [], sys.stdin.read())
ctl.ground([("base", [])])
with ctl.solve(yield_=True) as h:
    for m in h:
        atoms = set(str(s) for s in m.symbols(atoms=True))
        props = sorted(str(s.arguments[1]) for s in m.symbols(atoms=True)
                       if s.name == "tprop" and "inst(auxC,%s)" % s.arguments[1] in atoms)
        print(" ".join(sorted(set(props))))
"#;

const PARSE: &str = r#"
import sys, clingo.ast
clingo.ast.parse_string(sys.stdin.read(), lambda s: None)
print("ok")
"#;

#[test]
fn answer_sets_match_candidate_worlds() {
    if !clingo_available() {
        eprintln!("skipping: python clingo bindings not installed");
        return;
    }
    for (name, q) in fixtures::QUERIES {
        let kb = normalize(&parse_kb(fixtures::by_name(name).unwrap()).unwrap()).unwrap();
        let query = parse_query(q).unwrap();
        let program = emit_program(&kb, &query);
        let solved = python(SOLVE, &program);
        let from_clingo: BTreeSet<String> = solved.lines().map(str::to_string).collect();
        let count = solved.lines().count();

        let problem = Problem::from_normalized(&kb, &query);
        let cands = problem.enumerate(&Options::default()).unwrap();
        let (qkb, nq) = kb.with_query(&query);
        let m = Mangler::new(&translate(&qkb, Some(&nq), Scope::Full));
        let ours: BTreeSet<String> = cands
            .iter()
            .map(|w| {
                let mut v: Vec<&str> = w.properties.iter().map(|s| m.constant(*s)).collect();
                v.sort();
                v.join(" ")
            })
            .collect();
        assert_eq!(count, cands.len(), "{name}: answer set count");
        assert_eq!(from_clingo, ours, "{name}: typical properties per answer set");
    }
}

#[test]
fn preference_program_parses() {
    if !clingo_available() {
        eprintln!("skipping: python clingo bindings not installed");
        return;
    }
    // The #preference and #optimize directives are asprin syntax; the rest is plain clingo.
    let p = emit_preference_program();
    let program = &p[p.find("#program").unwrap()..];
    assert_eq!(python(PARSE, program).trim(), "ok");
}
