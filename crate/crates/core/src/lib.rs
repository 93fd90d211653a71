//! Reasoning over ranked EL+⊥ knowledge bases with typicality inclusions.
//!
//! A knowledge base holds strict axioms, an ABox, and for each distinguished
//! concept a ranked set of typicality inclusions `T(C) ⊑ D`. A query
//! `T(C) ⊑ D` is entailed when the prototype of `C` belongs to `D` in every
//! preferred candidate world.

pub mod asp;
pub mod entailment;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod materialize;
pub mod model;
pub mod normalize;
pub mod parser;
pub mod pdlp;
pub mod preference;
pub mod report;
pub mod suites;

pub use entailment::{entails, entails_with, CandidateWorld, Options, Problem, Status, Verdict};
pub use error::{Error, Result, SyntaxError};
pub use model::{ConceptExpr, ConceptName, DefeasibleInclusion, IndividualName, Query, RankedKb, RoleName, StrictAxiom};
pub use normalize::{normalize, NormalizedKb};
pub use parser::{parse_concept, parse_kb, parse_query, render};
