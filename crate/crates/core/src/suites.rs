//! Seeded property suites: preference-order laws, KLM postulates over random
//! KBs, and the PDLP equivalence sweep. Each returns what it checked and any
//! violations instead of panicking.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entailment::{entails_with, Options};
use crate::error::Result;
use crate::generate::{concept_name, random_kb, random_preference_model, random_profile, KbShape};
use crate::materialize::Subsumption;
use crate::model::{ConceptExpr, ConceptName, Query, RankedKb};
use crate::normalize::normalize;
use crate::pdlp::{min_entails_brute_force, random_pdlp, reduce_with, Variant};
use crate::preference::{OrderResult, PreferenceModel, TypicalityProfile};

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self
    }
}

struct Checker {
    report: SuiteReport,
}

impl Checker {
    fn new(seed: u64) -> Self {
        Self { report: SuiteReport { seed, ..Default::default() } }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok {
            self.report.violations.push(what());
        }
    }
}

fn per_concept_laws(c: &mut Checker, m: &PreferenceModel, t: [&TypicalityProfile; 3], tag: &str) {
    let [x, y, z] = t;
    for j in 0..m.concepts().len() {
        let cmp = |a, b| m.compare_wrt(a, b, j);
        let leq = |a, b| cmp(a, b).at_least_as_good();
        let less = |a, b| cmp(a, b) == OrderResult::StrictlyPreferred;
        c.check(cmp(x, y) != OrderResult::Incomparable, || format!("{tag} C{j}: incomparable"));
        c.check(leq(x, y) || leq(y, x), || format!("{tag} C{j}: totality"));
        c.check(cmp(x, x) == OrderResult::Equivalent, || format!("{tag} C{j}: reflexivity"));
        c.check(cmp(x, y) == cmp(y, x).flip(), || format!("{tag} C{j}: converse"));
        c.check(!(leq(x, y) && leq(y, z)) || leq(x, z), || format!("{tag} C{j}: transitivity of <="));
        c.check(!(less(x, y) && less(y, z)) || less(x, z), || format!("{tag} C{j}: transitivity of <"));
        c.check(!less(x, x), || format!("{tag} C{j}: irreflexivity of <"));
        c.check(!less(x, y) || less(x, z) || less(z, y), || format!("{tag} C{j}: modularity"));
        let eq = |a, b| cmp(a, b) == OrderResult::Equivalent;
        c.check(!(eq(x, y) && eq(y, z)) || eq(x, z), || format!("{tag} C{j}: equivalence"));
    }
}

fn global_laws(c: &mut Checker, m: &PreferenceModel, t: [&TypicalityProfile; 3], tag: &str) {
    let [x, y, z] = t;
    c.check(!m.globally_less(x, x), || format!("{tag}: global irreflexivity"));
    c.check(!(m.globally_less(x, y) && m.globally_less(y, z)) || m.globally_less(x, z), || {
        format!("{tag}: global transitivity")
    });
    for (a, b) in [(x, y), (y, x), (y, z), (x, z)] {
        c.check(m.globally_less(a, b) == m.globally_less_via_leq(a, b), || format!("{tag}: formulations disagree"));
        c.check(!(m.globally_less(a, b) && m.globally_less(b, a)), || format!("{tag}: global asymmetry"));
        let g = m.global_compare(a, b);
        c.check(g == m.global_compare(b, a).flip(), || format!("{tag}: global converse"));
        c.check((g == OrderResult::StrictlyPreferred) == m.globally_less(a, b), || format!("{tag}: global compare"));
    }
}

/// `triples` random profile triples; a fresh random model every 100 triples.
pub fn preference_laws(seed: u64, triples: usize) -> SuiteReport {
    let chunks: Vec<usize> = (0..triples.div_ceil(100)).collect();
    chunks
        .par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (*chunk as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut c = Checker::new(seed);
            let k = rng.random_range(1..=6);
            let model = random_preference_model(&mut rng, k, 5, 3);
            for i in 0..100.min(triples - chunk * 100) {
                let t: Vec<TypicalityProfile> = (0..3).map(|_| random_profile(&mut rng, &model)).collect();
                let tag = format!("chunk {chunk} triple {i}");
                per_concept_laws(&mut c, &model, [&t[0], &t[1], &t[2]], &tag);
                global_laws(&mut c, &model, [&t[0], &t[1], &t[2]], &tag);
            }
            c.report
        })
        .reduce(|| SuiteReport { seed, ..Default::default() }, SuiteReport::merge)
}

/// Shape of the KLM suite KBs.
pub fn klm_shape() -> KbShape {
    KbShape { concepts: 6, roles: 2, strict_axioms: 6, max_distinguished: 4, max_inclusions: 10, max_rank: 2 }
}

fn atoms(shape: &KbShape) -> Vec<ConceptExpr> {
    (0..shape.concepts).map(|i| ConceptExpr::atomic(concept_name(i))).collect()
}

fn entailed(kb: &RankedKb, subject: &ConceptExpr, candidates: &[ConceptExpr]) -> Result<BTreeSet<ConceptExpr>> {
    let mut out = BTreeSet::new();
    for d in candidates {
        if entails_with(kb, &Query::new(subject.clone(), d.clone()), &Options::default())?.entailed {
            out.insert(d.clone());
        }
    }
    Ok(out)
}

fn holds(kb: &RankedKb, subject: &ConceptExpr, predicate: ConceptExpr) -> Result<bool> {
    Ok(entails_with(kb, &Query::new(subject.clone(), predicate), &Options::default())?.entailed)
}

fn klm_one(kb: &RankedKb, shape: &KbShape, tag: &str, extra_subject: ConceptExpr) -> Result<SuiteReport> {
    let mut c = Checker::new(0);
    let preds = atoms(shape);
    let sub = Subsumption::new(&normalize(kb)?);
    let mut subjects: Vec<ConceptExpr> = kb.distinguished().to_vec();
    subjects.push(extra_subject);
    for s in &subjects {
        let e = entailed(kb, s, &preds)?;
        c.check(holds(kb, s, s.clone())?, || format!("{tag}: REFL fails for T({s}) <= {s}"));
        // AND
        let ev: Vec<&ConceptExpr> = e.iter().collect();
        for (i, a) in ev.iter().enumerate() {
            for b in &ev[i + 1..] {
                let conj = (*a).clone().and((*b).clone());
                c.check(holds(kb, s, conj.clone())?, || format!("{tag}: AND fails for T({s}) <= {conj}"));
            }
        }
        // RW
        for a in &e {
            for d in &preds {
                let (an, dn) = (a.as_atomic().unwrap(), d.as_atomic().unwrap());
                if sub.subsumes(an, dn) {
                    c.check(e.contains(d), || format!("{tag}: RW fails for T({s}) <= {a}, {a} <= {d}"));
                }
            }
        }
        // CM
        for d in &e {
            let sd = s.clone().and(d.clone());
            let e2 = entailed(kb, &sd, &preds)?;
            for x in &e {
                c.check(e2.contains(x), || format!("{tag}: CM fails for T({sd}) <= {x}"));
            }
        }
        // LLE
        let variants: Vec<ConceptExpr> = match s {
            ConceptExpr::Conjunction(l, r) => vec![(**r).clone().and((**l).clone()), s.clone().and(s.clone())],
            _ => vec![s.clone().and(s.clone()), s.clone().and(ConceptExpr::Top)],
        };
        for v in variants {
            let e2 = entailed(kb, &v, &preds)?;
            c.check(e2 == e, || format!("{tag}: LLE fails for T({s}) vs T({v})"));
        }
    }
    Ok(c.report)
}

/// REFL, AND, RW, CM and LLE over `kbs` random KBs. Subjects are the
/// distinguished concepts and one random conjunction of two atoms.
pub fn klm(seed: u64, kbs: usize) -> Result<SuiteReport> {
    let shape = klm_shape();
    let inputs: Vec<(RankedKb, ConceptExpr)> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..kbs)
            .map(|_| {
                let kb = random_kb(&mut rng, &shape);
                let a = ConceptExpr::atomic(concept_name(rng.random_range(0..shape.concepts)));
                let b = ConceptExpr::atomic(concept_name(rng.random_range(0..shape.concepts)));
                (kb, a.and(b))
            })
            .collect()
    };
    let reports: Vec<Result<SuiteReport>> = inputs
        .par_iter()
        .enumerate()
        .map(|(i, (kb, s))| klm_one(kb, &shape, &format!("kb {i}"), s.clone()))
        .collect();
    let mut total = SuiteReport { seed, ..Default::default() };
    for r in reports {
        total = total.merge(r?);
    }
    Ok(total)
}

/// Brute-force minimal entailment against cw^m-entailment of the reduction,
/// for every literal of `instances` random programs.
pub fn pdlp_sweep(seed: u64, instances: usize, variant: Variant) -> Result<SuiteReport> {
    let programs: Vec<_> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..instances).map(|_| random_pdlp(&mut rng, 6, 8, 3)).collect()
    };
    let reports: Vec<Result<SuiteReport>> = programs
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut c = Checker::new(seed);
            let r = reduce_with(p, variant);
            for (l, q) in r.queries() {
                let expected = min_entails_brute_force(p, *l)?;
                let got = entails_with(&r.kb, q, &Options::default())?.entailed;
                c.check(expected == got, || {
                    format!("program {i} literal {}: expected {expected}\n{p}", p.literal_name(*l))
                });
            }
            Ok(c.report)
        })
        .collect();
    let mut total = SuiteReport { seed, ..Default::default() };
    for r in reports {
        total = total.merge(r?);
    }
    Ok(total)
}

/// Atomic concept names of a KB, for predicate sweeps.
pub fn atomic_predicates(kb: &RankedKb) -> Vec<ConceptExpr> {
    kb.concept_names().into_iter().map(|n: ConceptName| ConceptExpr::Atomic(n)).collect()
}
