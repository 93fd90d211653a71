//! Name-resolved, serializable views of verdicts and comparisons.

use serde::Serialize;

use crate::entailment::{CandidateWorld, Problem, Status, Verdict};
use crate::error::{Error, Result};
use crate::materialize::{saturate, translate, Scope, Subsumption, SymKind};
use crate::model::RankedKb;
use crate::normalize::{normalize, NormalizedKb};
use crate::preference::{Explanation, PreferenceModel, TypicalityProfile};

/// Typicality of a term with respect to one distinguished concept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConceptProfile {
    pub concept: String,
    pub member: bool,
    /// Distinct ranks, highest first.
    pub ranks: Vec<u32>,
    /// Satisfied inclusions per rank, aligned with `ranks`.
    pub counts: Vec<u32>,
    pub satisfied: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorldReport {
    pub index: usize,
    /// Typical properties the prototype has, readable and sorted.
    pub properties: Vec<String>,
    pub satisfies_query: bool,
    pub profile: Vec<ConceptProfile>,
}

/// Why two preferred worlds do not defeat each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairExplanation {
    pub left: usize,
    pub right: usize,
    pub explanation: Explanation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub query: String,
    pub status: Status,
    pub entailed: bool,
    pub candidates: usize,
    pub preferred: Vec<WorldReport>,
    pub counterexample: Option<usize>,
    pub explanations: Vec<PairExplanation>,
    pub warnings: Vec<String>,
}

fn profile_view(kb: &NormalizedKb, model: &PreferenceModel, p: &TypicalityProfile) -> Vec<ConceptProfile> {
    model
        .concepts()
        .iter()
        .enumerate()
        .map(|(j, c)| ConceptProfile {
            concept: kb.describe(c),
            member: p.member[j],
            ranks: model.ranks(j).to_vec(),
            counts: p.counts[j].clone(),
            satisfied: p.satisfied[j].iter().map(|d| kb.describe(d)).collect(),
        })
        .collect()
}

fn explanation_view(kb: &NormalizedKb, mut e: Explanation) -> Explanation {
    for c in &mut e.concepts {
        c.concept = kb.describe(&c.concept.as_str().into());
        if let crate::preference::Clause::Overridden { by } = &mut c.clause {
            *by = kb.describe(&by.as_str().into());
        }
    }
    e
}

fn world_view(problem: &Problem, index: usize, w: &CandidateWorld) -> WorldReport {
    let mut properties: Vec<String> = w.properties.iter().map(|s| problem.describe(*s)).collect();
    properties.sort();
    WorldReport {
        index,
        properties,
        satisfies_query: w.satisfies_query,
        profile: profile_view(problem.kb(), problem.model(), &w.profile),
    }
}

impl VerdictReport {
    /// `explain` adds a pairwise explanation for every two preferred worlds.
    pub fn new(problem: &Problem, verdict: &Verdict, explain: bool) -> Self {
        let preferred: Vec<WorldReport> =
            verdict.preferred.iter().map(|i| world_view(problem, *i, &verdict.candidates[*i])).collect();
        let mut explanations = Vec::new();
        if explain {
            for (a, i) in verdict.preferred.iter().enumerate() {
                for j in &verdict.preferred[a + 1..] {
                    let e = problem.model().explain(&verdict.candidates[*i].profile, &verdict.candidates[*j].profile);
                    explanations.push(PairExplanation { left: *i, right: *j, explanation: explanation_view(problem.kb(), e) });
                }
            }
        }
        Self {
            query: verdict.query.to_string(),
            status: verdict.status,
            entailed: verdict.entailed,
            candidates: verdict.candidates.len(),
            preferred,
            counterexample: verdict.counterexample,
            explanations,
            warnings: verdict.warnings.clone(),
        }
    }
}

/// Comparison of two named individuals of a KB.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndividualComparison {
    pub left: String,
    pub right: String,
    pub left_profile: Vec<ConceptProfile>,
    pub right_profile: Vec<ConceptProfile>,
    pub explanation: Explanation,
}

/// Compares the ABox individuals `left` and `right` in the strict closure of `kb`.
pub fn compare_individuals(kb: &RankedKb, left: &str, right: &str) -> Result<IndividualComparison> {
    let n = normalize(kb)?;
    let sub = Subsumption::new(&n);
    let model = PreferenceModel::new(&n, &sub);
    let base = translate(&n, None, Scope::Full);
    let closure = saturate(&base, &[]);
    let ind = |name: &str| {
        base.symbols().get(SymKind::Individual, name).ok_or_else(|| Error::UnknownIndividual(name.to_string()))
    };
    let (pl, pr) = (model.profile(&base, &closure, ind(left)?), model.profile(&base, &closure, ind(right)?));
    Ok(IndividualComparison {
        left: left.to_string(),
        right: right.to_string(),
        left_profile: profile_view(&n, &model, &pl),
        right_profile: profile_view(&n, &model, &pr),
        explanation: explanation_view(&n, model.explain(&pl, &pr)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::{parse_kb, parse_query};
    use crate::preference::{Clause, OrderResult};
    use crate::Options;

    #[test]
    fn spirit_against_buddy() {
        let kb = parse_kb(fixtures::HORSES).unwrap();
        let c = compare_individuals(&kb, "spirit", "buddy").unwrap();
        assert_eq!(c.explanation.result, OrderResult::StrictlyPreferred);
        let horse = &c.explanation.concepts[0];
        assert_eq!(horse.concept, "Horse");
        assert_eq!(horse.decided_at, Some(2));
        assert_eq!((horse.left_counts[0], horse.right_counts[0]), (1, 0));
        assert_eq!(horse.clause, Clause::Better);
        assert!(matches!(compare_individuals(&kb, "spirit", "nobody"), Err(Error::UnknownIndividual(_))));
    }

    #[test]
    fn employed_students_are_incomparable() {
        let kb = parse_kb(fixtures::STUDENTS).unwrap();
        let q = parse_query("T(Employee and Student) <= Young").unwrap();
        let p = Problem::new(&kb, &q).unwrap();
        let v = p.decide(&Options::default()).unwrap();
        let r = VerdictReport::new(&p, &v, true);
        assert_eq!(r.preferred.len(), 2);
        assert_eq!(r.explanations.len(), 1);
        assert_eq!(r.explanations[0].explanation.result, OrderResult::Incomparable);
        let young: Vec<bool> = r.preferred.iter().map(|w| w.properties.contains(&"Young".to_string())).collect();
        assert_eq!(young.iter().filter(|y| **y).count(), 1);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "NotEntailed");
    }
}
