use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.kb"))
        .to_string_lossy()
        .into_owned()
}

fn cwm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwm")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    cwm(args).status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    let kb = fixture("students");
    assert_eq!(code(&["check", &kb, "-q", "T(Employee and Student) <= Has_no_Scholarship"]), 0);
    assert_eq!(code(&["check", &kb, "-q", "T(Employee and Student) <= Young"]), 1);
    assert_eq!(code(&["check", &kb, "-q", "T(Young and NotYoung) <= Bright"]), 2);
    assert_eq!(code(&["check", &kb, "-q", "T(A) <="]), 2);
    assert_eq!(code(&["check", "/nonexistent.kb", "-q", "T(A) <= B"]), 2);
    assert_eq!(code(&["check", &kb]), 64);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn strict_inconsistency() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kb");
    std::fs::write(&path, "strict:\n A <= bot\nabox:\n A(a)\n").unwrap();
    let o = cwm(&["check", path.to_str().unwrap(), "-q", "T(B) <= C"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inconsistent"));
}

#[test]
fn syntax_errors_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kb");
    std::fs::write(&path, "strict:\n  A <= \n").unwrap();
    let o = cwm(&["normalize", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:1"));
}

#[test]
fn node_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_cwm"))
        .args(["check", &fixture("chains"), "-q", "T(C3 and C5) <= Q1"])
        .env("CWM_MAX_CANDIDATES", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("50") && err.contains("CWM_MAX_CANDIDATES"), "{err}");
}

#[test]
fn jobs_and_json() {
    let o = cwm(&["--jobs", "1", "--json", "check", &fixture("chains"), "-q", "T(C3 and C5) <= Q1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "Entailed");
    assert_eq!(v["candidates"], 6144);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_cwm"))
        .args(["check", "-", "-q", "T(Bird) <= Fly"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"defeasible Bird:\n rank 0: T(Bird) <= Fly\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn emit_asp_writes_both_programs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("asp");
    let o = cwm(&["emit-asp", &fixture("students"), "-q", "T(PhDStudent) <= Young", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let program = std::fs::read_to_string(out.join("program.lp")).unwrap();
    assert!(program.contains("nom(auxC)."));
    assert!(program.contains("subTyp(phDStudent, bright, 1)."));
    let pref = std::fs::read_to_string(out.join("preference.lp")).unwrap();
    assert!(pref.contains("#optimize(p)."));
}

#[test]
fn reduce_pdlp_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("p.pdlp");
    // Minimal models {p1} and {p2}: neither p1 nor -p1 holds in both.
    std::fs::write(&prog, "pdlp 2 1\n1 2 0\n").unwrap();
    let kb = dir.path().join("p.kb");
    let o = cwm(&["reduce-pdlp", prog.to_str().unwrap(), "-o", kb.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&kb).unwrap();
    assert!(text.contains("# p1: T(H) <= P_p1"));
    let kb = kb.to_str().unwrap();
    assert_eq!(code(&["check", kb, "-q", "T(H) <= P_p1"]), 1);
    assert_eq!(code(&["check", kb, "-q", "T(H) <= NotP_p1"]), 1);
    assert_eq!(code(&["check", kb, "-q", "T(H) <= D1"]), 0);
}

#[test]
fn normalize_and_compare() {
    let o = cwm(&["normalize", &fixture("students")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PhDStudent <= Student"));
    let o = cwm(&["compare", &fixture("horses"), "spirit", "buddy"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("overall: StrictlyPreferred"));
    assert_eq!(code(&["compare", &fixture("horses"), "spirit", "nobody"]), 2);
}

#[test]
fn selftest_passes() {
    let o = cwm(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
