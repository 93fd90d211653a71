//! Materialization calculus for EL+⊥: instance checking, subclass checking
//! and consistency.

mod facts;
mod saturate;
mod symbols;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

pub use facts::{prototype_name, translate, FactBase, InputFact, QuerySyms, Scope, QUERY_PROTOTYPE};
pub use saturate::{saturate, Closure};
pub use symbols::{Sym, SymKind, Symbols};

use crate::model::ConceptName;
use crate::normalize::NormalizedKb;

#[derive(Debug)]
struct Context {
    inconsistent: bool,
    classes: HashSet<Sym>,
}

/// Strict subclass checking: one saturation per context concept, seeded
/// with a fresh individual in that concept, and cached.
///
/// `a ⊑ b` holds iff the context of `a` derives `b` or is inconsistent.
#[derive(Debug)]
pub struct Subsumption {
    base: FactBase,
    root: Closure,
    ctx: Sym,
    cache: Mutex<HashMap<Sym, Arc<Context>>>,
}

impl Subsumption {
    pub fn new(kb: &NormalizedKb) -> Self {
        let mut base = translate(kb, None, Scope::Strict);
        let ctx = base.intern(SymKind::Aux, "ctx");
        let root = saturate(&base, &[]);
        Self { base, root, ctx, cache: Mutex::new(HashMap::new()) }
    }

    /// Whether the strict TBox and ABox together are consistent.
    pub fn strict_consistent(&self) -> bool {
        !self.root.is_inconsistent()
    }

    pub fn root(&self) -> &Closure {
        &self.root
    }

    pub fn base(&self) -> &FactBase {
        &self.base
    }

    fn context(&self, a: Sym) -> Arc<Context> {
        if let Some(c) = self.cache.lock().expect("cache poisoned").get(&a) {
            return c.clone();
        }
        let closure = self.root.extend(&self.base, &[(self.ctx, a)]);
        let ctx = Arc::new(Context {
            inconsistent: closure.is_inconsistent(),
            classes: closure.classes_of(self.ctx).collect(),
        });
        self.cache.lock().expect("cache poisoned").insert(a, ctx.clone());
        ctx
    }

    /// Strict `a ⊑ b`. Names outside the signature are only subsumed by themselves.
    pub fn subsumes(&self, a: &ConceptName, b: &ConceptName) -> bool {
        if a == b {
            return true;
        }
        let Some(sa) = self.base.concept(a.as_str()) else { return false };
        let ctx = self.context(sa);
        if ctx.inconsistent {
            return true;
        }
        self.base.concept(b.as_str()).is_some_and(|sb| ctx.classes.contains(&sb))
    }

    /// Atomic superclasses of `a` (including `a`); `None` if `a` is unsatisfiable.
    pub fn superclasses(&self, a: &ConceptName) -> Option<BTreeSet<ConceptName>> {
        let Some(sa) = self.base.concept(a.as_str()) else {
            return Some([a.clone()].into_iter().collect());
        };
        let ctx = self.context(sa);
        if ctx.inconsistent {
            return None;
        }
        Some(
            ctx.classes
                .iter()
                .filter(|s| self.base.symbols().kind(**s) == SymKind::Concept)
                .map(|s| ConceptName::new(self.base.render(*s)))
                .collect(),
        )
    }

    /// Whether one individual can belong to all of `concepts` at once.
    pub fn jointly_satisfiable(&self, concepts: &[ConceptName]) -> bool {
        let mut seeds = Vec::new();
        for c in concepts {
            match self.base.concept(c.as_str()) {
                Some(s) => seeds.push((self.ctx, s)),
                None => continue,
            }
        }
        !self.root.extend(&self.base, &seeds).is_inconsistent()
    }
}

/// Distinguished concept whose typical properties clash with the strict part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplianceWarning {
    pub concept: ConceptName,
    pub properties: Vec<ConceptName>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub warnings: Vec<ComplianceWarning>,
}

/// Strict consistency plus an advisory check, per distinguished `Ci`, that an
/// instance of `Ci` can carry all of `Ci`'s typical properties.
pub fn check_strict_consistency(kb: &NormalizedKb) -> ConsistencyReport {
    let sub = Subsumption::new(kb);
    let mut warnings = Vec::new();
    if sub.strict_consistent() {
        for c in kb.distinguished() {
            let mut concepts = vec![c.clone()];
            concepts.extend(kb.ranked_tbox(c).map(|t| t.property.clone()));
            if !sub.jointly_satisfiable(&concepts) {
                warnings.push(ComplianceWarning { concept: c.clone(), properties: concepts[1..].to_vec() });
            }
        }
    }
    ConsistencyReport { consistent: sub.strict_consistent(), warnings }
}

#[cfg(test)]
mod tests;
