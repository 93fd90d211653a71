//! Candidate worlds for the query prototype, preferred-world selection, and
//! the entailment verdict.
//!
//! A candidate world is a consistent closure reached by choosing typical
//! properties for the prototype one at a time, each only once its guard (the
//! prototype belongs to a distinguished concept owning that property) has
//! been derived. The leaves of that search are exactly the answer sets of the
//! choice program; two leaves with the same typical-property atoms have the
//! same closure and are merged.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::materialize::{saturate, translate, Closure, FactBase, QuerySyms, Scope, Subsumption, Sym};
use crate::model::{ConceptName, Query, RankedKb};
use crate::normalize::{normalize, NormalQuery, NormalizedKb};
use crate::preference::{PreferenceModel, ProfileKey, TypicalityProfile};

/// Default limit on search nodes.
pub const DEFAULT_MAX_NODES: u64 = 1 << 20;
/// Environment variable overriding [`DEFAULT_MAX_NODES`].
pub const MAX_NODES_ENV: &str = "CWM_MAX_CANDIDATES";

/// Depth up to which the two branches of a choice run in parallel.
const PARALLEL_DEPTH: usize = 10;

#[derive(Clone, Debug)]
pub struct Options {
    pub max_nodes: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { max_nodes: DEFAULT_MAX_NODES }
    }
}

impl Options {
    /// Defaults, with the node cap taken from the environment when set.
    pub fn from_env() -> Self {
        let max_nodes = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_NODES);
        Self { max_nodes }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Entailed,
    NotEntailed,
    StrictInconsistent,
    NoCandidateWorld,
}

/// One answer set, summarized by what preference reads from it.
#[derive(Clone, Debug)]
pub struct CandidateWorld {
    /// Atoms chosen for the prototype, in choice order.
    pub choices: Vec<Sym>,
    /// Typical-property targets the prototype belongs to.
    pub properties: BTreeSet<Sym>,
    /// Guard set derived in the final closure.
    pub guards: BTreeSet<Sym>,
    pub profile: TypicalityProfile,
    /// Whether the prototype belongs to the query predicate.
    pub satisfies_query: bool,
}

/// Normalized, translated query problem.
#[derive(Debug)]
pub struct Problem {
    kb: NormalizedKb,
    query: Query,
    normal_query: NormalQuery,
    base: FactBase,
    syms: QuerySyms,
    sub: Subsumption,
    model: PreferenceModel,
    /// `(C_i, D)` pairs of `tprop`.
    tprops: Vec<(Sym, Sym)>,
    root: Closure,
}

impl Problem {
    pub fn new(kb: &RankedKb, query: &Query) -> Result<Self> {
        Ok(Self::from_normalized(&normalize(kb)?, query))
    }

    pub fn from_normalized(kb: &NormalizedKb, query: &Query) -> Self {
        let (kb, normal_query) = kb.with_query(query);
        let base = translate(&kb, Some(&normal_query), Scope::Full);
        let syms = base.query().expect("query facts present");
        let sub = Subsumption::new(&kb);
        let model = PreferenceModel::new(&kb, &sub);
        let tprops = base.tprops().into_iter().collect();
        let root = saturate(&base, &[]);
        Self { kb, query: query.clone(), normal_query, base, syms, sub, model, tprops, root }
    }

    pub fn kb(&self) -> &NormalizedKb {
        &self.kb
    }

    pub fn query(&self) -> &Query {
        &self.query
    }

    pub fn normal_query(&self) -> &NormalQuery {
        &self.normal_query
    }

    pub fn base(&self) -> &FactBase {
        &self.base
    }

    pub fn prototype(&self) -> Sym {
        self.syms.prototype
    }

    pub fn model(&self) -> &PreferenceModel {
        &self.model
    }

    pub fn subsumption(&self) -> &Subsumption {
        &self.sub
    }

    /// Closure with no choices.
    pub fn root(&self) -> &Closure {
        &self.root
    }

    /// Typical properties whose guard holds for the prototype in `c`.
    pub fn guards(&self, c: &Closure) -> BTreeSet<Sym> {
        self.tprops
            .iter()
            .filter(|(ci, _)| c.has_inst(self.syms.prototype, *ci))
            .map(|(_, d)| *d)
            .collect()
    }

    /// Re-derives the closure of a world.
    pub fn closure_of(&self, world: &CandidateWorld) -> Closure {
        let p = self.syms.prototype;
        let choices: Vec<(Sym, Sym)> = world.choices.iter().map(|d| (p, *d)).collect();
        saturate(&self.base, &choices)
    }

    /// Readable name of a class symbol.
    pub fn describe(&self, s: Sym) -> String {
        self.kb.describe(&ConceptName::new(self.base.render(s)))
    }

    fn leaf(&self, c: &Closure, choices: Vec<Sym>) -> CandidateWorld {
        let p = self.syms.prototype;
        let properties = self.tprops.iter().map(|(_, d)| *d).filter(|d| c.has_inst(p, *d)).collect();
        CandidateWorld {
            choices,
            properties,
            guards: self.guards(c),
            profile: self.model.profile(&self.base, c, p),
            satisfies_query: c.has_inst(p, self.syms.predicate),
        }
    }

    /// All candidate worlds, deduplicated by their typical-property atoms.
    pub fn enumerate(&self, opts: &Options) -> Result<Vec<CandidateWorld>> {
        if self.root.is_inconsistent() {
            return Ok(Vec::new());
        }
        let nodes = AtomicU64::new(0);
        let search = Search { problem: self, nodes: &nodes, max: opts.max_nodes };
        let leaves = search.explore(&self.root, &BTreeSet::new(), Vec::new(), 0)?;
        let mut seen: BTreeMap<BTreeSet<Sym>, CandidateWorld> = BTreeMap::new();
        for w in leaves {
            seen.entry(w.properties.clone()).or_insert(w);
        }
        Ok(seen.into_values().collect())
    }

    /// Indices of the candidates no other candidate is globally preferred to.
    pub fn select_preferred(&self, cands: &[CandidateWorld]) -> Vec<usize> {
        // Concepts no candidate belongs to compare as equivalent everywhere.
        let k = self.model.concepts().len();
        let relevant: Vec<usize> = (0..k).filter(|j| cands.iter().any(|c| c.profile.member[*j])).collect();
        let model = restrict(&self.model, &relevant);
        let mut groups: HashMap<ProfileKey, Vec<usize>> = HashMap::new();
        for (i, c) in cands.iter().enumerate() {
            let p = restrict_profile(&c.profile, &relevant);
            groups.entry(p.key()).or_default().push(i);
        }
        let keys: Vec<TypicalityProfile> = groups
            .keys()
            .map(|(m, c)| TypicalityProfile::from_counts(m.clone(), c.clone()))
            .collect();
        let undominated: Vec<bool> = keys
            .par_iter()
            .map(|p| !keys.iter().any(|q| model.globally_less(q, p)))
            .collect();
        let mut out: Vec<usize> = keys
            .iter()
            .zip(undominated)
            .filter(|(_, keep)| *keep)
            .flat_map(|(p, _)| groups[&p.key()].clone())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn decide(&self, opts: &Options) -> Result<Verdict> {
        let mut warnings = Vec::new();
        if !self.sub.strict_consistent() {
            warnings.push("the strict TBox and ABox are inconsistent".to_string());
            return Ok(self.verdict(Status::StrictInconsistent, true, Vec::new(), Vec::new(), None, warnings));
        }
        let cands = self.enumerate(opts)?;
        if cands.is_empty() {
            warnings.push(
                "no consistent candidate world: the query concept is unsatisfiable or some typical properties \
                 conflict with the strict part; entailment holds vacuously"
                    .to_string(),
            );
            return Ok(self.verdict(Status::NoCandidateWorld, true, cands, Vec::new(), None, warnings));
        }
        let preferred = self.select_preferred(&cands);
        let counterexample = preferred.iter().copied().find(|i| !cands[*i].satisfies_query);
        let entailed = counterexample.is_none();
        let status = if entailed { Status::Entailed } else { Status::NotEntailed };
        Ok(self.verdict(status, entailed, cands, preferred, counterexample, warnings))
    }

    fn verdict(
        &self,
        status: Status,
        entailed: bool,
        candidates: Vec<CandidateWorld>,
        preferred: Vec<usize>,
        counterexample: Option<usize>,
        warnings: Vec<String>,
    ) -> Verdict {
        Verdict { query: self.query.clone(), status, entailed, candidates, preferred, counterexample, warnings }
    }
}

fn restrict(model: &PreferenceModel, keep: &[usize]) -> PreferenceModel {
    let concepts = keep.iter().map(|&j| model.concepts()[j].clone()).collect();
    let tboxes = keep.iter().map(|&j| model.tbox(j).to_vec()).collect();
    let spec = keep.iter().map(|&h| keep.iter().map(|&j| model.specificity(h, j)).collect()).collect();
    PreferenceModel::from_parts(concepts, tboxes, spec)
}

fn restrict_profile(p: &TypicalityProfile, keep: &[usize]) -> TypicalityProfile {
    TypicalityProfile::from_counts(
        keep.iter().map(|&j| p.member[j]).collect(),
        keep.iter().map(|&j| p.counts[j].clone()).collect(),
    )
}

struct Search<'a> {
    problem: &'a Problem,
    nodes: &'a AtomicU64,
    max: u64,
}

impl Search<'_> {
    fn explore(&self, c: &Closure, out: &BTreeSet<Sym>, chosen: Vec<Sym>, depth: usize) -> Result<Vec<CandidateWorld>> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max {
            return Err(Error::CapExceeded { what: "candidate search nodes".into(), limit: self.max });
        }
        let p = self.problem.syms.prototype;
        let next = self
            .problem
            .guards(c)
            .into_iter()
            .find(|d| !out.contains(d) && !c.has_inst(p, *d));
        let Some(d) = next else {
            return Ok(vec![self.problem.leaf(c, chosen)]);
        };
        let mut out_d = out.clone();
        out_d.insert(d);
        let take = || -> Result<Vec<CandidateWorld>> {
            let c2 = c.extend(&self.problem.base, &[(p, d)]);
            if c2.is_inconsistent() {
                return Ok(Vec::new());
            }
            let mut ch = chosen.clone();
            ch.push(d);
            self.explore(&c2, out, ch, depth + 1)
        };
        let skip = || self.explore(c, &out_d, chosen.clone(), depth + 1);
        let (a, b) = if depth < PARALLEL_DEPTH { rayon::join(take, skip) } else { (take(), skip()) };
        let mut v = a?;
        v.extend(b?);
        Ok(v)
    }
}

/// Outcome of an entailment check.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub query: Query,
    pub status: Status,
    /// True iff every preferred world satisfies the query (vacuously when there are none).
    pub entailed: bool,
    pub candidates: Vec<CandidateWorld>,
    /// Indices into `candidates`.
    pub preferred: Vec<usize>,
    /// Index of a preferred world violating the query.
    pub counterexample: Option<usize>,
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn preferred_worlds(&self) -> impl Iterator<Item = &CandidateWorld> {
        self.preferred.iter().map(|i| &self.candidates[*i])
    }

    pub fn counterexample_world(&self) -> Option<&CandidateWorld> {
        self.counterexample.map(|i| &self.candidates[i])
    }
}

/// Decides `kb ⊨ query` with default options.
pub fn entails(kb: &RankedKb, query: &Query) -> Result<Verdict> {
    entails_with(kb, query, &Options::default())
}

pub fn entails_with(kb: &RankedKb, query: &Query, opts: &Options) -> Result<Verdict> {
    Problem::new(kb, query)?.decide(opts)
}
