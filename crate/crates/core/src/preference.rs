//! Concept-wise preferences under the # strategy, specificity, and their
//! combination into a global preference.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::materialize::{Closure, FactBase, Subsumption, Sym};
use crate::model::ConceptName;
use crate::normalize::{NormalTyp, NormalizedKb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderResult {
    StrictlyPreferred,
    Equivalent,
    StrictlyDispreferred,
    Incomparable,
}

impl OrderResult {
    pub fn flip(self) -> Self {
        match self {
            OrderResult::StrictlyPreferred => OrderResult::StrictlyDispreferred,
            OrderResult::StrictlyDispreferred => OrderResult::StrictlyPreferred,
            other => other,
        }
    }

    /// `≤`: strictly preferred or equivalent.
    pub fn at_least_as_good(self) -> bool {
        matches!(self, OrderResult::StrictlyPreferred | OrderResult::Equivalent)
    }
}

/// Membership bits and per-rank counts.
pub type ProfileKey = (Vec<bool>, Vec<Vec<u32>>);

/// Satisfied typicality inclusions of one term, per distinguished concept and rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypicalityProfile {
    /// Membership in each distinguished concept.
    pub member: Vec<bool>,
    /// `counts[j][k]`: satisfied inclusions of concept `j` at its `k`-th rank (descending).
    pub counts: Vec<Vec<u32>>,
    /// Properties satisfied, per concept; kept for explanations.
    pub satisfied: Vec<BTreeSet<ConceptName>>,
}

impl TypicalityProfile {
    /// Profile from membership bits and counts alone.
    pub fn from_counts(member: Vec<bool>, counts: Vec<Vec<u32>>) -> Self {
        let satisfied = vec![BTreeSet::new(); member.len()];
        Self { member, counts, satisfied }
    }

    /// Signature that preference comparisons depend on.
    pub fn key(&self) -> ProfileKey {
        (self.member.clone(), self.counts.clone())
    }
}

/// How one concept entered a global comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Clause {
    /// Strictly better wrt this concept.
    Better,
    /// Equivalent wrt this concept.
    NoWorse,
    /// Worse wrt this concept, overridden by a strictly better, more specific concept.
    Overridden { by: String },
    /// Worse and not overridden.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConceptComparison {
    pub concept: String,
    pub ranks: Vec<u32>,
    pub left_member: bool,
    pub right_member: bool,
    pub left_counts: Vec<u32>,
    pub right_counts: Vec<u32>,
    pub result: OrderResult,
    /// Highest rank at which the counts differ.
    pub decided_at: Option<u32>,
    pub clause: Clause,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub result: OrderResult,
    pub concepts: Vec<ConceptComparison>,
}

/// Ranked TBoxes and specificity relation over the distinguished concepts.
#[derive(Clone, Debug)]
pub struct PreferenceModel {
    concepts: Vec<ConceptName>,
    /// Distinct ranks per concept, descending.
    ranks: Vec<Vec<u32>>,
    tboxes: Vec<Vec<NormalTyp>>,
    /// `more_specific[h][j]`: `C_h ≻ C_j`.
    more_specific: Vec<Vec<bool>>,
}

impl PreferenceModel {
    pub fn new(kb: &NormalizedKb, sub: &Subsumption) -> Self {
        let concepts = kb.distinguished().to_vec();
        let tboxes: Vec<Vec<NormalTyp>> = concepts.iter().map(|c| kb.ranked_tbox(c).cloned().collect()).collect();
        let k = concepts.len();
        let mut more_specific = vec![vec![false; k]; k];
        for h in 0..k {
            for j in 0..k {
                more_specific[h][j] =
                    sub.subsumes(&concepts[h], &concepts[j]) && !sub.subsumes(&concepts[j], &concepts[h]);
            }
        }
        Self::from_parts(concepts, tboxes, more_specific)
    }

    pub fn from_parts(concepts: Vec<ConceptName>, tboxes: Vec<Vec<NormalTyp>>, more_specific: Vec<Vec<bool>>) -> Self {
        let ranks = tboxes
            .iter()
            .map(|t| {
                let set: BTreeSet<u32> = t.iter().map(|d| d.rank).collect();
                set.into_iter().rev().collect()
            })
            .collect();
        Self { concepts, ranks, tboxes, more_specific }
    }

    pub fn concepts(&self) -> &[ConceptName] {
        &self.concepts
    }

    /// Distinct ranks of concept `j`, highest first.
    pub fn ranks(&self, j: usize) -> &[u32] {
        &self.ranks[j]
    }

    pub fn tbox(&self, j: usize) -> &[NormalTyp] {
        &self.tboxes[j]
    }

    pub fn index_of(&self, c: &ConceptName) -> Result<usize> {
        self.concepts
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::UnknownConcept(c.to_string()))
    }

    /// `C_h ≻ C_j`.
    pub fn specificity(&self, h: usize, j: usize) -> bool {
        self.more_specific[h][j]
    }

    pub fn specificity_by_name(&self, h: &ConceptName, j: &ConceptName) -> Result<bool> {
        Ok(self.specificity(self.index_of(h)?, self.index_of(j)?))
    }

    /// Profile of `term` in `closure`. A non-member of `C_j` satisfies all of `T_Cj`.
    pub fn profile(&self, base: &FactBase, closure: &Closure, term: Sym) -> TypicalityProfile {
        let holds = |name: &ConceptName| base.concept(name.as_str()).is_some_and(|s| closure.has_inst(term, s));
        let mut member = Vec::with_capacity(self.concepts.len());
        let mut counts = Vec::with_capacity(self.concepts.len());
        let mut satisfied = Vec::with_capacity(self.concepts.len());
        for (j, c) in self.concepts.iter().enumerate() {
            let m = holds(c);
            let mut per_rank = vec![0u32; self.ranks[j].len()];
            let mut sat = BTreeSet::new();
            for d in &self.tboxes[j] {
                if !m || holds(&d.property) {
                    let k = self.ranks[j].iter().position(|r| *r == d.rank).expect("rank listed");
                    per_rank[k] += 1;
                    sat.insert(d.property.clone());
                }
            }
            member.push(m);
            counts.push(per_rank);
            satisfied.push(sat);
        }
        TypicalityProfile { member, counts, satisfied }
    }

    /// `≤_Cj` comparison (never `Incomparable`), with the deciding rank.
    fn compare_at(&self, px: &TypicalityProfile, py: &TypicalityProfile, j: usize) -> (OrderResult, Option<u32>) {
        for (k, rank) in self.ranks[j].iter().enumerate() {
            match px.counts[j][k].cmp(&py.counts[j][k]) {
                Ordering::Greater => return (OrderResult::StrictlyPreferred, Some(*rank)),
                Ordering::Less => return (OrderResult::StrictlyDispreferred, Some(*rank)),
                Ordering::Equal => {}
            }
        }
        (OrderResult::Equivalent, None)
    }

    pub fn compare_wrt(&self, px: &TypicalityProfile, py: &TypicalityProfile, j: usize) -> OrderResult {
        self.compare_at(px, py, j).0
    }

    pub fn compare_wrt_name(&self, px: &TypicalityProfile, py: &TypicalityProfile, c: &ConceptName) -> Result<OrderResult> {
        Ok(self.compare_wrt(px, py, self.index_of(c)?))
    }

    /// Global `x < y`: some concept strictly prefers `x`, and every concept
    /// either weakly prefers `x` or is overridden by a more specific concept
    /// that strictly prefers `x`.
    pub fn globally_less(&self, px: &TypicalityProfile, py: &TypicalityProfile) -> bool {
        let k = self.concepts.len();
        let per: Vec<OrderResult> = (0..k).map(|j| self.compare_wrt(px, py, j)).collect();
        if !per.contains(&OrderResult::StrictlyPreferred) {
            return false;
        }
        (0..k).all(|j| {
            per[j].at_least_as_good()
                || (0..k).any(|h| self.more_specific[h][j] && per[h] == OrderResult::StrictlyPreferred)
        })
    }

    /// The weak relation `x ≤ y` used to show `<` is a strict order.
    pub fn globally_leq(&self, px: &TypicalityProfile, py: &TypicalityProfile) -> bool {
        let k = self.concepts.len();
        let per: Vec<OrderResult> = (0..k).map(|j| self.compare_wrt(px, py, j)).collect();
        (0..k).all(|j| {
            per[j].at_least_as_good()
                || (0..k).any(|h| self.more_specific[h][j] && per[h] == OrderResult::StrictlyPreferred)
        })
    }

    /// `x < y` as `x ≤ y` and not `y ≤ x`.
    pub fn globally_less_via_leq(&self, px: &TypicalityProfile, py: &TypicalityProfile) -> bool {
        self.globally_leq(px, py) && !self.globally_leq(py, px)
    }

    pub fn global_compare(&self, px: &TypicalityProfile, py: &TypicalityProfile) -> OrderResult {
        if self.globally_less(px, py) {
            OrderResult::StrictlyPreferred
        } else if self.globally_less(py, px) {
            OrderResult::StrictlyDispreferred
        } else if (0..self.concepts.len()).all(|j| self.compare_wrt(px, py, j) == OrderResult::Equivalent) {
            OrderResult::Equivalent
        } else {
            OrderResult::Incomparable
        }
    }

    /// Per-concept counts and the clause each concept played in the verdict.
    pub fn explain(&self, px: &TypicalityProfile, py: &TypicalityProfile) -> Explanation {
        let result = self.global_compare(px, py);
        let (a, b) = match result {
            OrderResult::StrictlyDispreferred => (py, px),
            _ => (px, py),
        };
        let k = self.concepts.len();
        let per: Vec<(OrderResult, Option<u32>)> = (0..k).map(|j| self.compare_at(a, b, j)).collect();
        let concepts = (0..k)
            .map(|j| {
                let clause = match per[j].0 {
                    OrderResult::StrictlyPreferred => Clause::Better,
                    OrderResult::Equivalent => Clause::NoWorse,
                    _ => match (0..k).find(|&h| self.more_specific[h][j] && per[h].0 == OrderResult::StrictlyPreferred) {
                        Some(h) => Clause::Overridden { by: self.concepts[h].to_string() },
                        None => Clause::Violated,
                    },
                };
                let (result, decided_at) = self.compare_at(px, py, j);
                ConceptComparison {
                    concept: self.concepts[j].to_string(),
                    ranks: self.ranks[j].clone(),
                    left_member: px.member[j],
                    right_member: py.member[j],
                    left_counts: px.counts[j].clone(),
                    right_counts: py.counts[j].clone(),
                    result,
                    decided_at,
                    clause,
                }
            })
            .collect();
        Explanation { result, concepts }
    }
}
