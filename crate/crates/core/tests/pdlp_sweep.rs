//! Minimal-model entailment against cw^m-entailment of the reduced KB, over
//! seeded random programs.

use cwm_core::pdlp::Variant;
use cwm_core::suites::pdlp_sweep;

const SEED: u64 = 0x5eed_0001;

#[test]
fn repaired_reduction_agrees_everywhere() {
    let r = pdlp_sweep(SEED, 200, Variant::Repaired).unwrap();
    println!("seed {SEED:#x}: 200 programs, {} literals, {} disagreements", r.checks, r.violations.len());
    assert!(r.passed(), "first disagreement: {}", r.violations[0]);
}

#[test]
fn unlinked_reduction_disagreement_rate() {
    let r = pdlp_sweep(SEED, 200, Variant::Unlinked).unwrap();
    let bad = r.violations.len();
    println!("seed {SEED:#x}: unlinked reduction disagrees on {bad} of {} literals ({:.1}%)", r.checks, 100.0 * bad as f64 / r.checks as f64);
    assert!(bad > 0);
}
