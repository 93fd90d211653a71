use std::time::{Duration, Instant};

use cwm_core::generate::replicate;
use cwm_core::suites::atomic_predicates;
use cwm_core::{entails, fixtures, parse_kb, parse_query, ConceptExpr, Query, RankedKb};

const COPIES: usize = 8;

fn verdicts(kb: &RankedKb, subject: &ConceptExpr, preds: &[ConceptExpr]) -> Vec<(String, bool)> {
    preds
        .iter()
        .map(|d| (d.to_string(), entails(kb, &Query::new(subject.clone(), d.clone())).unwrap().entailed))
        .collect()
}

fn suffixed(e: &ConceptExpr, s: &str) -> ConceptExpr {
    match e {
        ConceptExpr::Atomic(n) => ConceptExpr::atomic(format!("{n}{s}")),
        ConceptExpr::Conjunction(a, b) => suffixed(a, s).and(suffixed(b, s)),
        other => other.clone(),
    }
}

#[test]
fn replicated_staff_matches_single_copy() {
    let base = parse_kb(fixtures::STAFF).unwrap();
    let big = replicate(&base, COPIES);
    assert_eq!(big.distinguished().len(), 40);
    assert_eq!(big.defeasible().count(), 400);

    let subject = parse_query(fixtures::QUERIES.iter().find(|(n, _)| *n == "staff").unwrap().1).unwrap().subject;
    let preds = atomic_predicates(&base);
    let expected = verdicts(&base, &subject, &preds);
    assert!(expected.iter().any(|(_, e)| *e) && expected.iter().any(|(_, e)| !*e));

    let start = Instant::now();
    assert_eq!(verdicts(&big, &subject, &preds), expected);
    let last = format!("_c{COPIES}");
    let renamed: Vec<ConceptExpr> = preds.iter().map(|d| suffixed(d, &last)).collect();
    let got: Vec<bool> = verdicts(&big, &suffixed(&subject, &last), &renamed).into_iter().map(|(_, e)| e).collect();
    assert_eq!(got, expected.iter().map(|(_, e)| *e).collect::<Vec<_>>());
    let elapsed = start.elapsed();
    println!("{} predicates on two copies of {COPIES}: {elapsed:.2?}", preds.len());
    assert!(elapsed < Duration::from_secs(120));
}
