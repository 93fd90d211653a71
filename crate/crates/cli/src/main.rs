use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use cwm_core::asp::{emit_preference_program, emit_program};
use cwm_core::entailment::{Options, MAX_NODES_ENV};
use cwm_core::materialize::check_strict_consistency;
use cwm_core::pdlp::{reduce_with, Pdlp, Variant};
use cwm_core::preference::{Clause, Explanation, OrderResult};
use cwm_core::report::{compare_individuals, ConceptProfile, VerdictReport, WorldReport};
use cwm_core::{fixtures, normalize, parse_kb, parse_query, render, Error, Problem, RankedKb, Status};

const EXIT_ENTAILED: u8 = 0;
const EXIT_NOT_ENTAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "cwm", version, about = "Concept-wise multipreference entailment for ranked EL+bot knowledge bases")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for candidate enumeration.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the KB entails the query.
    Check {
        /// Knowledge base file, or `-` for stdin.
        kb: PathBuf,
        #[arg(short, long)]
        query: String,
    },
    /// List the preferred candidate worlds of a query with their profiles.
    Models {
        kb: PathBuf,
        #[arg(short, long)]
        query: String,
    },
    /// Compare two ABox individuals wrt every distinguished concept.
    Compare { kb: PathBuf, left: String, right: String },
    /// Print the normal form of a KB.
    Normalize { kb: PathBuf },
    /// Write the ASP program for a query and the preference program.
    EmitAsp {
        kb: PathBuf,
        #[arg(short, long)]
        query: String,
        #[arg(short, long, value_name = "DIR")]
        output: PathBuf,
    },
    /// Reduce a positive disjunctive program to a ranked KB.
    ReducePdlp {
        file: PathBuf,
        /// Use the reduction without the links that make it faithful.
        #[arg(long)]
        unlinked: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the built-in example knowledge bases.
    Selftest,
}

fn read_input(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"));
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_kb(path: &Path) -> Result<RankedKb, String> {
    let text = read_input(path)?;
    parse_kb(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Entailed => EXIT_ENTAILED,
        Status::NotEntailed => EXIT_NOT_ENTAILED,
        Status::StrictInconsistent | Status::NoCandidateWorld => EXIT_ERROR,
    }
}

fn list(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn profile_table(out: &mut String, profile: &[ConceptProfile]) {
    for c in profile {
        let counts: Vec<String> = c.ranks.iter().zip(&c.counts).map(|(r, n)| format!("r{r}={n}")).collect();
        let member = if c.member { "member" } else { "not a member" };
        let _ = writeln!(out, "    {:<24} {:<13} {:<20} {}", c.concept, member, counts.join(" "), list(&c.satisfied));
    }
}

fn world_text(out: &mut String, w: &WorldReport) {
    let mark = if w.satisfies_query { "satisfies the query" } else { "violates the query" };
    let _ = writeln!(out, "  world {} ({mark}): {}", w.index, list(&w.properties));
    profile_table(out, &w.profile);
}

fn explanation_text(out: &mut String, e: &Explanation) {
    for c in &e.concepts {
        let how = match c.result {
            OrderResult::StrictlyPreferred => "left better",
            OrderResult::StrictlyDispreferred => "right better",
            OrderResult::Equivalent => "equivalent",
            OrderResult::Incomparable => "incomparable",
        };
        let at = c.decided_at.map(|r| format!(" at rank {r}")).unwrap_or_default();
        let clause = match &c.clause {
            Clause::Better => "better".to_string(),
            Clause::NoWorse => "no worse".to_string(),
            Clause::Overridden { by } => format!("overridden by {by}"),
            Clause::Violated => "worse".to_string(),
        };
        let _ = writeln!(
            out,
            "    {}: {how}{at} ({:?} vs {:?}; {clause})",
            c.concept, c.left_counts, c.right_counts
        );
    }
    let _ = writeln!(out, "    overall: {:?}", e.result);
}

fn verdict_text(r: &VerdictReport, models: bool) -> String {
    let mut out = String::new();
    let verdict = match r.status {
        Status::Entailed => "entailed",
        Status::NotEntailed => "not entailed",
        Status::StrictInconsistent => "strict part inconsistent (vacuously entailed)",
        Status::NoCandidateWorld => "no candidate world (vacuously entailed)",
    };
    let _ = writeln!(out, "{}: {verdict}", r.query);
    let _ = writeln!(out, "candidate worlds: {}, preferred: {}", r.candidates, r.preferred.len());
    if models {
        for w in &r.preferred {
            world_text(&mut out, w);
        }
        for p in &r.explanations {
            let _ = writeln!(out, "  world {} vs world {}:", p.left, p.right);
            explanation_text(&mut out, &p.explanation);
        }
    } else if let Some(w) = r.counterexample.and_then(|i| r.preferred.iter().find(|w| w.index == i)) {
        let _ = writeln!(out, "counterexample: world {} {}", w.index, list(&w.properties));
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn decide(kb: &RankedKb, query: &str, models: bool, json: bool) -> Result<u8, String> {
    let q = parse_query(query).map_err(|e| format!("query: {e}"))?;
    let problem = Problem::new(kb, &q).map_err(|e| e.to_string())?;
    let verdict = problem.decide(&Options::from_env()).map_err(|e| match e {
        Error::CapExceeded { .. } => format!("{e}; raise it with {MAX_NODES_ENV}"),
        e => e.to_string(),
    })?;
    let mut report = VerdictReport::new(&problem, &verdict, models);
    let consistency = check_strict_consistency(problem.kb());
    for w in consistency.warnings {
        report.warnings.push(format!(
            "{} cannot have all its typical properties at once; the KB has no T-compliant model if it has an instance",
            problem.kb().describe(&w.concept)
        ));
    }
    if json {
        println!("{}", to_json(&report));
    } else {
        print!("{}", verdict_text(&report, models));
    }
    Ok(exit_for(report.status))
}

fn selftest() -> (bool, String) {
    let mut out = String::new();
    let mut ok = true;
    let mut expect = |name: &str, kb: &str, query: &str, want: bool| {
        let got = parse_kb(kb)
            .and_then(|kb| cwm_core::entails(&kb, &parse_query(query)?))
            .map(|v| v.entailed);
        let pass = matches!(got, Ok(g) if g == want);
        ok &= pass;
        let _ = writeln!(out, "{} {name}: {query} (expected {want})", if pass { "PASS" } else { "FAIL" });
    };
    let s = "T(Employee and Student)";
    expect("students", fixtures::STUDENTS, &format!("{s} <= has_boss some Employee"), true);
    expect("students", fixtures::STUDENTS, &format!("{s} <= has_classes some top"), true);
    expect("students", fixtures::STUDENTS, &format!("{s} <= Has_no_Scholarship"), true);
    expect("students", fixtures::STUDENTS, &format!("{s} <= Young"), false);
    expect("students", fixtures::STUDENTS, &format!("{s} <= NotYoung"), false);
    expect("students", fixtures::STUDENTS, "T(PhDStudent) <= Young", true);
    expect("students", fixtures::STUDENTS, "T(PhDStudent) <= Has_no_Scholarship", false);
    expect("horses", fixtures::HORSES, "T(Horse) <= RunFast", true);
    let horses = parse_kb(fixtures::HORSES).and_then(|kb| compare_individuals(&kb, "spirit", "buddy"));
    let pass = matches!(horses, Ok(c) if c.explanation.result == OrderResult::StrictlyPreferred);
    ok &= pass;
    let _ = writeln!(out, "{} horses: spirit is more typical than buddy", if pass { "PASS" } else { "FAIL" });
    (ok, out)
}

fn run(cli: Cli) -> Result<u8, String> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    match cli.command {
        Command::Check { kb, query } => decide(&load_kb(&kb)?, &query, false, cli.json),
        Command::Models { kb, query } => decide(&load_kb(&kb)?, &query, true, cli.json),
        Command::Compare { kb, left, right } => {
            let c = compare_individuals(&load_kb(&kb)?, &left, &right).map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", to_json(&c));
            } else {
                let mut out = String::new();
                for (name, p) in [(&c.left, &c.left_profile), (&c.right, &c.right_profile)] {
                    let _ = writeln!(out, "{name}:");
                    profile_table(&mut out, p);
                }
                let _ = writeln!(out, "{} vs {}:", c.left, c.right);
                explanation_text(&mut out, &c.explanation);
                print!("{out}");
            }
            Ok(0)
        }
        Command::Normalize { kb } => {
            let n = normalize(&load_kb(&kb)?).map_err(|e| e.to_string())?;
            print!("{n}");
            Ok(0)
        }
        Command::EmitAsp { kb, query, output } => {
            let n = normalize(&load_kb(&kb)?).map_err(|e| e.to_string())?;
            let q = parse_query(&query).map_err(|e| format!("query: {e}"))?;
            std::fs::create_dir_all(&output).map_err(|e| format!("{}: {e}", output.display()))?;
            for (file, text) in [("program.lp", emit_program(&n, &q)), ("preference.lp", emit_preference_program().into())] {
                let path = output.join(file);
                std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(0)
        }
        Command::ReducePdlp { file, unlinked, output } => {
            let p = Pdlp::parse(&read_input(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let r = reduce_with(&p, if unlinked { Variant::Unlinked } else { Variant::Repaired });
            let mut text = render(&r.kb);
            for (l, q) in r.queries() {
                let _ = writeln!(text, "# {}: {q}", p.literal_name(*l));
            }
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Selftest => {
            let (ok, out) = selftest();
            print!("{out}");
            Ok(if ok { 0 } else { EXIT_ERROR })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
