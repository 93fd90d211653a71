//! Seeded generators for knowledge bases, preference models and profiles,
//! and KB replication for scaling runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{
    ConceptExpr, ConceptName, DefeasibleInclusion, IndividualName, RankedKb, RoleName, StrictAxiom,
};
use crate::normalize::NormalTyp;
use crate::preference::{PreferenceModel, TypicalityProfile};

/// Size limits for [`random_kb`].
#[derive(Clone, Debug)]
pub struct KbShape {
    pub concepts: usize,
    pub roles: usize,
    pub strict_axioms: usize,
    pub max_distinguished: usize,
    pub max_inclusions: usize,
    pub max_rank: u32,
}

impl Default for KbShape {
    fn default() -> Self {
        Self { concepts: 6, roles: 2, strict_axioms: 6, max_distinguished: 4, max_inclusions: 10, max_rank: 2 }
    }
}

pub fn concept_name(i: usize) -> String {
    format!("A{i}")
}

fn atom(rng: &mut impl Rng, shape: &KbShape) -> ConceptExpr {
    ConceptExpr::atomic(concept_name(rng.random_range(0..shape.concepts)))
}

fn role(rng: &mut impl Rng, shape: &KbShape) -> String {
    format!("r{}", rng.random_range(0..shape.roles))
}

/// Random KB over atoms `A0..` and roles `r0..`: subclass, disjointness,
/// conjunction and existential axioms, then up to `max_distinguished`
/// distinguished atoms sharing at most `max_inclusions` typicality inclusions.
pub fn random_kb(rng: &mut impl Rng, shape: &KbShape) -> RankedKb {
    let mut kb = RankedKb::new();
    for _ in 0..shape.strict_axioms {
        let (sub, sup) = match rng.random_range(0..6) {
            0 | 1 => (atom(rng, shape), atom(rng, shape)),
            2 => (atom(rng, shape).and(atom(rng, shape)), ConceptExpr::Bottom),
            3 => (atom(rng, shape).and(atom(rng, shape)), atom(rng, shape)),
            4 => (atom(rng, shape), ConceptExpr::some(role(rng, shape), atom(rng, shape))),
            _ => (ConceptExpr::some(role(rng, shape), atom(rng, shape)), atom(rng, shape)),
        };
        kb.add_axiom(StrictAxiom::inclusion(sub, sup)).expect("concept inclusion");
    }
    let mut pool: Vec<usize> = (0..shape.concepts).collect();
    pool.shuffle(rng);
    let k = rng.random_range(1..=shape.max_distinguished.min(shape.concepts));
    let chosen: Vec<ConceptExpr> = pool[..k].iter().map(|i| ConceptExpr::atomic(concept_name(*i))).collect();
    let total = rng.random_range(k..=shape.max_inclusions.max(k));
    for (n, c) in chosen.iter().cycle().take(total).enumerate() {
        if n < k {
            kb.declare_distinguished(c.clone()).expect("atomic");
        }
        let property = if rng.random_bool(0.2) {
            ConceptExpr::some(role(rng, shape), atom(rng, shape))
        } else {
            atom(rng, shape)
        };
        let rank = rng.random_range(0..=shape.max_rank);
        // A repeated inclusion keeps its first rank.
        let _ = kb.add_defeasible(DefeasibleInclusion::new(c.clone(), property, rank));
    }
    kb
}

/// Random concept of nesting depth at most `depth`, including nominals.
pub fn random_concept(rng: &mut impl Rng, shape: &KbShape, depth: u32) -> ConceptExpr {
    let leaf = depth == 0 || rng.random_bool(0.4);
    if leaf {
        return match rng.random_range(0..10) {
            0 => ConceptExpr::Top,
            1 => ConceptExpr::Bottom,
            2 => ConceptExpr::nominal(format!("i{}", rng.random_range(0..3))),
            _ => atom(rng, shape),
        };
    }
    if rng.random_bool(0.5) {
        random_concept(rng, shape, depth - 1).and(random_concept(rng, shape, depth - 1))
    } else {
        ConceptExpr::some(role(rng, shape), random_concept(rng, shape, depth - 1))
    }
}

/// Random KB exercising every syntactic form: complex concepts on both sides,
/// role inclusions and chains, assertions, complex distinguished concepts.
pub fn random_rich_kb(rng: &mut impl Rng, shape: &KbShape) -> RankedKb {
    let mut kb = RankedKb::new();
    for _ in 0..shape.strict_axioms {
        let ax = match rng.random_range(0..5) {
            0 => {
                let len = rng.random_range(1..=3);
                StrictAxiom::RoleInclusion {
                    chain: (0..len).map(|_| RoleName::new(role(rng, shape))).collect(),
                    sup: RoleName::new(role(rng, shape)),
                }
            }
            1 => StrictAxiom::ConceptAssertion {
                concept: random_concept(rng, shape, 2),
                individual: IndividualName::new(format!("i{}", rng.random_range(0..3))),
            },
            2 => StrictAxiom::RoleAssertion {
                role: RoleName::new(role(rng, shape)),
                subject: IndividualName::new(format!("i{}", rng.random_range(0..3))),
                object: IndividualName::new(format!("i{}", rng.random_range(0..3))),
            },
            _ => StrictAxiom::inclusion(random_concept(rng, shape, 2), random_concept(rng, shape, 2)),
        };
        kb.add_axiom(ax).expect("nonempty chain");
    }
    for _ in 0..rng.random_range(0..=shape.max_distinguished) {
        let subject = loop {
            let c = random_concept(rng, shape, 1);
            if !matches!(c, ConceptExpr::Nominal(_)) {
                break c;
            }
        };
        kb.declare_distinguished(subject.clone()).expect("not a nominal");
        for _ in 0..rng.random_range(0..=3) {
            let d = DefeasibleInclusion::new(subject.clone(), random_concept(rng, shape, 2), rng.random_range(0..=shape.max_rank));
            let _ = kb.add_defeasible(d);
        }
    }
    kb
}

fn rename_concept(e: &ConceptExpr, s: &str) -> ConceptExpr {
    match e {
        ConceptExpr::Atomic(n) => ConceptExpr::atomic(format!("{n}{s}")),
        ConceptExpr::Nominal(i) => ConceptExpr::nominal(format!("{i}{s}")),
        ConceptExpr::Top | ConceptExpr::Bottom => e.clone(),
        ConceptExpr::Conjunction(a, b) => rename_concept(a, s).and(rename_concept(b, s)),
        ConceptExpr::Existential(r, f) => ConceptExpr::some(format!("{r}{s}"), rename_concept(f, s)),
    }
}

fn rename_axiom(ax: &StrictAxiom, s: &str) -> StrictAxiom {
    let role = |r: &RoleName| RoleName::new(format!("{r}{s}"));
    let ind = |i: &IndividualName| IndividualName::new(format!("{i}{s}"));
    match ax {
        StrictAxiom::ConceptInclusion { sub, sup } => StrictAxiom::inclusion(rename_concept(sub, s), rename_concept(sup, s)),
        StrictAxiom::RoleInclusion { chain, sup } => {
            StrictAxiom::RoleInclusion { chain: chain.iter().map(role).collect(), sup: role(sup) }
        }
        StrictAxiom::ConceptAssertion { concept, individual } => {
            StrictAxiom::ConceptAssertion { concept: rename_concept(concept, s), individual: ind(individual) }
        }
        StrictAxiom::RoleAssertion { role: r, subject, object } => {
            StrictAxiom::RoleAssertion { role: role(r), subject: ind(subject), object: ind(object) }
        }
    }
}

/// `copies` disjoint copies of `kb`. The first keeps its names; copy `k`
/// (from 2) suffixes every concept, role and individual name with `_c{k}`.
pub fn replicate(kb: &RankedKb, copies: usize) -> RankedKb {
    let mut out = RankedKb::new();
    for k in 1..=copies {
        let s = if k == 1 { String::new() } else { format!("_c{k}") };
        for ax in kb.strict().iter().chain(kb.abox()) {
            out.add_axiom(rename_axiom(ax, &s)).expect("renaming keeps chains nonempty");
        }
        for c in kb.distinguished() {
            out.declare_distinguished(rename_concept(c, &s)).expect("renaming keeps nominals out");
            for d in kb.ranked_tbox(c) {
                let d = DefeasibleInclusion::new(rename_concept(&d.subject, &s), rename_concept(&d.property, &s), d.rank);
                out.add_defeasible(d).expect("declared");
            }
        }
    }
    out
}

/// Random strict partial order on `k` concepts: edges from higher to lower
/// index with probability `density`, transitively closed.
pub fn random_specificity(rng: &mut impl Rng, k: usize, density: f64) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; k]; k];
    for (h, row) in m.iter_mut().enumerate() {
        for cell in &mut row[..h] {
            *cell = rng.random_bool(density);
        }
    }
    for mid in 0..k {
        for h in 0..k {
            for j in 0..k {
                if m[h][mid] && m[mid][j] {
                    m[h][j] = true;
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    (0..k).map(|h| (0..k).map(|j| m[perm[h]][perm[j]]).collect()).collect()
}

/// Random ranked TBoxes (not necessarily contiguous ranks) over `k` concepts
/// and a random specificity order.
pub fn random_preference_model(rng: &mut impl Rng, k: usize, max_inclusions: usize, max_rank: u32) -> PreferenceModel {
    let concepts: Vec<ConceptName> = (0..k).map(|i| ConceptName::new(format!("C{i}"))).collect();
    let tboxes = concepts
        .iter()
        .map(|c| {
            (0..rng.random_range(1..=max_inclusions))
                .map(|n| NormalTyp {
                    subject: c.clone(),
                    property: ConceptName::new(format!("{c}_D{n}")),
                    rank: rng.random_range(0..=max_rank),
                })
                .collect()
        })
        .collect();
    let spec = random_specificity(rng, k, 0.3);
    PreferenceModel::from_parts(concepts, tboxes, spec)
}

/// Random profile: non-members satisfy everything, members a random subset.
pub fn random_profile(rng: &mut impl Rng, model: &PreferenceModel) -> TypicalityProfile {
    let k = model.concepts().len();
    let mut member = Vec::with_capacity(k);
    let mut counts = Vec::with_capacity(k);
    for j in 0..k {
        let m = rng.random_bool(0.7);
        let per_rank = model
            .ranks(j)
            .iter()
            .map(|r| {
                let full = model.tbox(j).iter().filter(|d| d.rank == *r).count() as u32;
                if m { rng.random_range(0..=full) } else { full }
            })
            .collect();
        member.push(m);
        counts.push(per_rank);
    }
    TypicalityProfile::from_counts(member, counts)
}
