//! Domain types for ranked EL+⊥ knowledge bases with typicality.
//!
//! A [`RankedKb`] holds a strict TBox, an ABox, and one ranked TBox of
//! defeasible inclusions `T(C) ⊑ D` per distinguished concept `C`. Typicality
//! never appears inside a [`ConceptExpr`]; it only lives on the left of a
//! [`DefeasibleInclusion`] (and of a [`Query`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

macro_rules! name_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                Self(name.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_string())
            }
        }
    };
}

name_type!(
    /// Atomic concept name.
    ConceptName
);
name_type!(
    /// Role (object property) name.
    RoleName
);
name_type!(
    /// Named individual.
    IndividualName
);

/// Typicality-free EL+⊥ concept expression.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptExpr {
    Atomic(ConceptName),
    Top,
    Bottom,
    Conjunction(Box<ConceptExpr>, Box<ConceptExpr>),
    Existential(RoleName, Box<ConceptExpr>),
    Nominal(IndividualName),
}

impl ConceptExpr {
    pub fn atomic(name: impl Into<String>) -> Self {
        ConceptExpr::Atomic(ConceptName::new(name))
    }

    pub fn nominal(name: impl Into<String>) -> Self {
        ConceptExpr::Nominal(IndividualName::new(name))
    }

    pub fn and(self, other: ConceptExpr) -> Self {
        ConceptExpr::Conjunction(Box::new(self), Box::new(other))
    }

    pub fn some(role: impl Into<String>, filler: ConceptExpr) -> Self {
        ConceptExpr::Existential(RoleName::new(role), Box::new(filler))
    }

    /// Left-folded conjunction of `parts`; `⊤` when empty.
    pub fn conjunction_of(parts: impl IntoIterator<Item = ConceptExpr>) -> Self {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => ConceptExpr::Top,
            Some(first) => iter.fold(first, ConceptExpr::and),
        }
    }

    pub fn as_atomic(&self) -> Option<&ConceptName> {
        match self {
            ConceptExpr::Atomic(name) => Some(name),
            _ => None,
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            ConceptExpr::Atomic(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => 1,
            ConceptExpr::Conjunction(l, r) => 1 + l.size() + r.size(),
            ConceptExpr::Existential(_, f) => 1 + f.size(),
        }
    }

    /// Flattened conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<&ConceptExpr> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a ConceptExpr, out: &mut Vec<&'a ConceptExpr>) {
            match e {
                ConceptExpr::Conjunction(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn concept_names(&self, out: &mut BTreeSet<ConceptName>) {
        match self {
            ConceptExpr::Atomic(n) => {
                out.insert(n.clone());
            }
            ConceptExpr::Conjunction(l, r) => {
                l.concept_names(out);
                r.concept_names(out);
            }
            ConceptExpr::Existential(_, f) => f.concept_names(out),
            _ => {}
        }
    }

    pub fn role_names(&self, out: &mut BTreeSet<RoleName>) {
        match self {
            ConceptExpr::Conjunction(l, r) => {
                l.role_names(out);
                r.role_names(out);
            }
            ConceptExpr::Existential(role, f) => {
                out.insert(role.clone());
                f.role_names(out);
            }
            _ => {}
        }
    }

    pub fn individual_names(&self, out: &mut BTreeSet<IndividualName>) {
        match self {
            ConceptExpr::Nominal(i) => {
                out.insert(i.clone());
            }
            ConceptExpr::Conjunction(l, r) => {
                l.individual_names(out);
                r.individual_names(out);
            }
            ConceptExpr::Existential(_, f) => f.individual_names(out),
            _ => {}
        }
    }

    fn is_unary(&self) -> bool {
        !matches!(self, ConceptExpr::Conjunction(..))
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unary() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

/// Renders in the KB text syntax (`and`, `some`, `top`, `bot`, `{a}`).
impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpr::Atomic(n) => write!(f, "{n}"),
            ConceptExpr::Top => f.write_str("top"),
            ConceptExpr::Bottom => f.write_str("bot"),
            ConceptExpr::Nominal(i) => write!(f, "{{{i}}}"),
            ConceptExpr::Conjunction(l, r) => {
                write!(f, "{l} and ")?;
                r.fmt_unary(f)
            }
            ConceptExpr::Existential(role, filler) => {
                write!(f, "{role} some ")?;
                filler.fmt_unary(f)
            }
        }
    }
}

/// Strict axiom. Assertions are kept in their own variants; the normalizer
/// rewrites them as nominal inclusions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrictAxiom {
    ConceptInclusion { sub: ConceptExpr, sup: ConceptExpr },
    /// `chain[0] ∘ … ∘ chain[n-1] ⊑ sup`, chain nonempty.
    RoleInclusion { chain: Vec<RoleName>, sup: RoleName },
    ConceptAssertion { concept: ConceptExpr, individual: IndividualName },
    RoleAssertion { role: RoleName, subject: IndividualName, object: IndividualName },
}

impl StrictAxiom {
    pub fn inclusion(sub: ConceptExpr, sup: ConceptExpr) -> Self {
        StrictAxiom::ConceptInclusion { sub, sup }
    }

    pub fn is_assertion(&self) -> bool {
        matches!(self, StrictAxiom::ConceptAssertion { .. } | StrictAxiom::RoleAssertion { .. })
    }

    pub fn size(&self) -> usize {
        match self {
            StrictAxiom::ConceptInclusion { sub, sup } => sub.size() + sup.size(),
            StrictAxiom::RoleInclusion { chain, .. } => chain.len() + 1,
            StrictAxiom::ConceptAssertion { concept, .. } => concept.size() + 1,
            StrictAxiom::RoleAssertion { .. } => 3,
        }
    }
}

impl fmt::Display for StrictAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrictAxiom::ConceptInclusion { sub, sup } => write!(f, "{sub} <= {sup}"),
            StrictAxiom::RoleInclusion { chain, sup } => {
                let parts: Vec<&str> = chain.iter().map(RoleName::as_str).collect();
                write!(f, "{} <= {sup}", parts.join(" o "))
            }
            StrictAxiom::ConceptAssertion { concept, individual } => match concept {
                ConceptExpr::Atomic(name) => write!(f, "{name}({individual})"),
                other => write!(f, "({other})({individual})"),
            },
            StrictAxiom::RoleAssertion { role, subject, object } => {
                write!(f, "{role}({subject}, {object})")
            }
        }
    }
}

/// `T(subject) ⊑ property` with a non-negative rank (higher is more important).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DefeasibleInclusion {
    pub subject: ConceptExpr,
    pub property: ConceptExpr,
    pub rank: u32,
}

impl DefeasibleInclusion {
    pub fn new(subject: ConceptExpr, property: ConceptExpr, rank: u32) -> Self {
        Self { subject, property, rank }
    }
}

impl fmt::Display for DefeasibleInclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}) <= {} [rank {}]", self.subject, self.property, self.rank)
    }
}

/// Defeasible query `T(subject) ⊑ predicate`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Query {
    pub subject: ConceptExpr,
    pub predicate: ConceptExpr,
}

impl Query {
    pub fn new(subject: ConceptExpr, predicate: ConceptExpr) -> Self {
        Self { subject, predicate }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}) <= {}", self.subject, self.predicate)
    }
}

/// Ranked knowledge base `⟨T_strict, T_C1, …, T_Ck, A⟩`.
///
/// Construction goes through the mutators, which enforce the invariants:
/// every defeasible inclusion belongs to a declared distinguished concept,
/// distinguished concepts are pairwise distinct and not nominals, and one
/// inclusion never carries two ranks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankedKb {
    strict: BTreeSet<StrictAxiom>,
    abox: BTreeSet<StrictAxiom>,
    distinguished: Vec<ConceptExpr>,
    ranked: BTreeMap<ConceptExpr, BTreeSet<DefeasibleInclusion>>,
}

impl RankedKb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a strict axiom; assertions are routed to the ABox.
    pub fn add_axiom(&mut self, axiom: StrictAxiom) -> Result<()> {
        if let StrictAxiom::RoleInclusion { chain, .. } = &axiom {
            if chain.is_empty() {
                return Err(Error::Malformed("role inclusion with an empty chain".into()));
            }
        }
        if axiom.is_assertion() {
            self.abox.insert(axiom);
        } else {
            self.strict.insert(axiom);
        }
        Ok(())
    }

    /// Declares a distinguished concept. Re-declaring is a no-op.
    pub fn declare_distinguished(&mut self, concept: ConceptExpr) -> Result<()> {
        if matches!(concept, ConceptExpr::Nominal(_)) {
            return Err(Error::Malformed(format!(
                "nominal {concept} cannot be a distinguished concept"
            )));
        }
        if !self.distinguished.contains(&concept) {
            self.ranked.entry(concept.clone()).or_default();
            self.distinguished.push(concept);
        }
        Ok(())
    }

    pub fn add_defeasible(&mut self, inclusion: DefeasibleInclusion) -> Result<()> {
        let Some(tbox) = self.ranked.get_mut(&inclusion.subject) else {
            return Err(Error::Malformed(format!(
                "typicality inclusion for {} which is not a distinguished concept",
                inclusion.subject
            )));
        };
        if let Some(existing) = tbox.iter().find(|d| d.property == inclusion.property) {
            if existing.rank != inclusion.rank {
                return Err(Error::Malformed(format!(
                    "T({}) <= {} given both rank {} and rank {}",
                    inclusion.subject, inclusion.property, existing.rank, inclusion.rank
                )));
            }
            return Ok(());
        }
        tbox.insert(inclusion);
        Ok(())
    }

    pub fn strict(&self) -> &BTreeSet<StrictAxiom> {
        &self.strict
    }

    pub fn abox(&self) -> &BTreeSet<StrictAxiom> {
        &self.abox
    }

    pub fn distinguished(&self) -> &[ConceptExpr] {
        &self.distinguished
    }

    /// Ranked TBox of `concept`, empty when it is not distinguished.
    pub fn ranked_tbox(&self, concept: &ConceptExpr) -> impl Iterator<Item = &DefeasibleInclusion> {
        self.ranked.get(concept).into_iter().flatten()
    }

    /// All defeasible inclusions, grouped by distinguished concept in declaration order.
    pub fn defeasible(&self) -> impl Iterator<Item = &DefeasibleInclusion> {
        self.distinguished.iter().flat_map(|c| self.ranked_tbox(c))
    }

    pub fn axiom_count(&self) -> usize {
        self.strict.len() + self.abox.len() + self.defeasible().count()
    }

    /// Total number of constructor nodes over all axioms.
    pub fn size(&self) -> usize {
        let strict: usize = self.strict.iter().chain(&self.abox).map(StrictAxiom::size).sum();
        let typ: usize = self.defeasible().map(|d| d.subject.size() + d.property.size()).sum();
        strict + typ
    }

    pub fn concept_names(&self) -> BTreeSet<ConceptName> {
        let mut out = BTreeSet::new();
        for ax in self.strict.iter().chain(&self.abox) {
            match ax {
                StrictAxiom::ConceptInclusion { sub, sup } => {
                    sub.concept_names(&mut out);
                    sup.concept_names(&mut out);
                }
                StrictAxiom::ConceptAssertion { concept, .. } => concept.concept_names(&mut out),
                _ => {}
            }
        }
        for c in &self.distinguished {
            c.concept_names(&mut out);
        }
        for d in self.defeasible() {
            d.property.concept_names(&mut out);
        }
        out
    }

    /// Same KB with the distinguished concepts listed in a different order.
    pub fn with_distinguished_order(&self, order: &[usize]) -> RankedKb {
        let mut kb = self.clone();
        kb.distinguished = order.iter().map(|&i| self.distinguished[i].clone()).collect();
        kb
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> ConceptExpr {
        ConceptExpr::atomic(n)
    }

    #[test]
    fn display_respects_precedence() {
        let e = ConceptExpr::some("r", a("A").and(a("B"))).and(a("C"));
        assert_eq!(e.to_string(), "r some (A and B) and C");
        let right_nested = a("A").and(a("B").and(a("C")));
        assert_eq!(right_nested.to_string(), "A and (B and C)");
        assert_eq!(ConceptExpr::some("r", ConceptExpr::some("s", ConceptExpr::Top)).to_string(), "r some s some top");
    }

    #[test]
    fn conflicting_ranks_are_rejected() {
        let mut kb = RankedKb::new();
        kb.declare_distinguished(a("Horse")).unwrap();
        kb.add_defeasible(DefeasibleInclusion::new(a("Horse"), a("RunFast"), 1)).unwrap();
        kb.add_defeasible(DefeasibleInclusion::new(a("Horse"), a("RunFast"), 1)).unwrap();
        assert_eq!(kb.defeasible().count(), 1);
        let err = kb.add_defeasible(DefeasibleInclusion::new(a("Horse"), a("RunFast"), 2));
        assert!(matches!(err, Err(Error::Malformed(_))));
    }

    #[test]
    fn undeclared_subject_and_nominal_distinguished_are_rejected() {
        let mut kb = RankedKb::new();
        assert!(kb.add_defeasible(DefeasibleInclusion::new(a("Bird"), a("Fly"), 0)).is_err());
        assert!(kb.declare_distinguished(ConceptExpr::nominal("tweety")).is_err());
        assert!(kb
            .add_axiom(StrictAxiom::RoleInclusion { chain: vec![], sup: RoleName::new("r") })
            .is_err());
    }

    #[test]
    fn assertions_go_to_the_abox() {
        let mut kb = RankedKb::new();
        kb.add_axiom(StrictAxiom::ConceptAssertion { concept: a("A"), individual: "x".into() }).unwrap();
        kb.add_axiom(StrictAxiom::inclusion(a("A"), a("B"))).unwrap();
        assert_eq!(kb.abox().len(), 1);
        assert_eq!(kb.strict().len(), 1);
    }
}
