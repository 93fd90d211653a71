//! Normalization against an independent completion-based EL classifier over
//! the original axioms, and the size bound of the normal form.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cwm_core::generate::{random_kb, random_rich_kb, KbShape};
use cwm_core::materialize::Subsumption;
use cwm_core::{fixtures, normalize, parse_kb, ConceptExpr, RankedKb, StrictAxiom};

const BOT: &str = "⊥";

#[derive(Default)]
struct Completion {
    sub: Vec<(String, String)>,
    conj: Vec<(String, String, String)>,
    ex_sup: Vec<(String, String, String)>,
    ex_sub: Vec<(String, String, String)>,
}

fn name(e: &ConceptExpr) -> String {
    match e {
        ConceptExpr::Atomic(n) => n.to_string(),
        ConceptExpr::Bottom => BOT.to_string(),
        other => panic!("not a name: {other}"),
    }
}

impl Completion {
    /// Accepts the axiom shapes produced by `random_kb`.
    fn new(kb: &RankedKb) -> Self {
        let mut c = Completion::default();
        for ax in kb.strict() {
            let StrictAxiom::ConceptInclusion { sub, sup } = ax else { panic!("unexpected {ax:?}") };
            match (sub, sup) {
                (ConceptExpr::Conjunction(l, r), s) => c.conj.push((name(l), name(r), name(s))),
                (ConceptExpr::Existential(r, f), s) => c.ex_sub.push((r.to_string(), name(f), name(s))),
                (a, ConceptExpr::Existential(r, f)) => c.ex_sup.push((name(a), r.to_string(), name(f))),
                (a, b) => c.sub.push((name(a), name(b))),
            }
        }
        c
    }

    /// S(A) for every name A in `names`.
    fn classify(&self, names: &BTreeSet<String>) -> BTreeMap<String, BTreeSet<String>> {
        let mut s: BTreeMap<String, BTreeSet<String>> = names.iter().map(|a| (a.clone(), BTreeSet::from([a.clone()]))).collect();
        let mut r: BTreeSet<(String, String, String)> = BTreeSet::new();
        loop {
            let mut changed = false;
            for x in names {
                let mut add = BTreeSet::new();
                let sx = &s[x];
                for (a, b) in &self.sub {
                    if sx.contains(a) {
                        add.insert(b.clone());
                    }
                }
                for (a1, a2, b) in &self.conj {
                    if sx.contains(a1) && sx.contains(a2) {
                        add.insert(b.clone());
                    }
                }
                for (a, role, b) in &self.ex_sup {
                    if sx.contains(a) {
                        changed |= r.insert((x.clone(), role.clone(), b.clone()));
                    }
                }
                for (_, role, y) in r.iter().filter(|(from, _, _)| from == x) {
                    if s[y].contains(BOT) {
                        add.insert(BOT.to_string());
                    }
                    for (er, a, b) in &self.ex_sub {
                        if er == role && s[y].contains(a) {
                            add.insert(b.clone());
                        }
                    }
                }
                let sx = s.get_mut(x).unwrap();
                for a in add {
                    changed |= sx.insert(a);
                }
            }
            if !changed {
                return s;
            }
        }
    }
}

#[test]
fn subsumption_matches_completion_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00e1_0001);
    let shape = KbShape { strict_axioms: 10, ..KbShape::default() };
    let mut positives = 0;
    for i in 0..300 {
        let kb = random_kb(&mut rng, &shape);
        let mut names: BTreeSet<String> = kb.concept_names().iter().map(|n| n.to_string()).collect();
        names.insert(BOT.to_string());
        let s = Completion::new(&kb).classify(&names);
        let sub = Subsumption::new(&normalize(&kb).unwrap());
        for a in kb.concept_names() {
            for b in kb.concept_names() {
                let sa = &s[a.as_str()];
                let expected = sa.contains(BOT) || sa.contains(b.as_str());
                positives += usize::from(expected && a != b);
                assert_eq!(sub.subsumes(&a, &b), expected, "kb {i}: {a} <= {b}");
            }
        }
    }
    assert!(positives > 300, "oracle sweep too sparse: {positives}");
}

#[test]
fn fixture_normal_forms_stay_within_four_axioms_per_input_axiom() {
    for (name, text) in fixtures::ALL {
        let kb = parse_kb(text).unwrap();
        if kb.axiom_count() == 0 {
            continue;
        }
        let n = normalize(&kb).unwrap();
        let ratio = n.axiom_count() as f64 / kb.axiom_count() as f64;
        println!("{name}: {} -> {} axioms ({ratio:.3})", kb.axiom_count(), n.axiom_count());
        assert!(ratio <= 4.0, "{name}: {ratio}");
    }
}

/// The bound is on input size: an axiom nesting concepts arbitrarily deep
/// needs proportionally many normal axioms.
#[test]
fn normal_form_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00e1_0002);
    let shape = KbShape::default();
    let (mut worst, mut per_axiom): (f64, f64) = (0.0, 0.0);
    let mut kbs: Vec<RankedKb> = fixtures::ALL.iter().map(|(_, t)| parse_kb(t).unwrap()).collect();
    kbs.extend((0..500).map(|_| random_rich_kb(&mut rng, &shape)));
    kbs.extend((0..500).map(|_| random_kb(&mut rng, &shape)));
    for kb in kbs.iter().filter(|kb| kb.axiom_count() > 0) {
        // Random rich KBs may declare distinguished concepts that collapse onto each other.
        let Ok(n) = normalize(kb) else { continue };
        let ratio = n.axiom_count() as f64 / kb.size() as f64;
        worst = worst.max(ratio);
        per_axiom = per_axiom.max(n.axiom_count() as f64 / kb.axiom_count() as f64);
    }
    println!("max normalized axioms per input constructor: {worst:.3}, per input axiom: {per_axiom:.3}");
    assert!(worst <= 4.0, "ratio {worst}");
}
