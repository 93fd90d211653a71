//! Positive disjunctive logic programs, their minimal-model entailment, and
//! the translation into a ranked KB whose cw^m-entailment of `T(H) ⊑ C_l`
//! coincides with minimal entailment of the literal `l`.
//!
//! Text format: a header `pdlp <nvars> <nclauses>`, then one clause per line
//! as signed variable indices (1-based), optionally terminated by `0`. Lines
//! starting with `c` are comments.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{ConceptExpr, DefeasibleInclusion, Query, RankedKb, StrictAxiom};

/// Default limit on the variables enumerated by [`min_entails_brute_force`].
pub const DEFAULT_VARIABLE_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    fn holds(self, model: u64) -> bool {
        (model >> self.var & 1 == 1) == self.positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pdlp {
    variables: Vec<String>,
    clauses: Vec<BTreeSet<Literal>>,
}

impl Pdlp {
    /// Every clause must be nonempty, mention known variables, and contain a
    /// positive literal.
    pub fn new(variables: Vec<String>, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let distinct: BTreeSet<&String> = variables.iter().collect();
        if distinct.len() != variables.len() {
            return Err(Error::MalformedPdlp("duplicate variable name".into()));
        }
        let mut out = Vec::new();
        for (j, c) in clauses.into_iter().enumerate() {
            if let Some(l) = c.iter().find(|l| l.var >= variables.len()) {
                return Err(Error::MalformedPdlp(format!("clause {}: unknown variable {}", j + 1, l.var + 1)));
            }
            if !c.iter().any(|l| l.positive) {
                return Err(Error::MalformedPdlp(format!("clause {} has no positive literal", j + 1)));
            }
            out.push(c.into_iter().collect());
        }
        Ok(Self { variables, clauses: out })
    }

    /// Variables named `p1`, ..., `pn`.
    pub fn numbered(n: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("p{i}")).collect(), clauses)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &[BTreeSet<Literal>] {
        &self.clauses
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..self.variables.len()).flat_map(|v| [Literal::pos(v), Literal::neg(v)])
    }

    pub fn is_model(&self, model: u64) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(model)))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
        let bad = |line: usize, msg: &str| Error::MalformedPdlp(format!("line {line}: {msg}"));
        let (hl, header) = lines.next().ok_or_else(|| Error::MalformedPdlp("missing header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match parts.as_slice() {
            ["pdlp", n, m] => (
                n.parse::<usize>().map_err(|_| bad(hl, "bad variable count"))?,
                m.parse::<usize>().map_err(|_| bad(hl, "bad clause count"))?,
            ),
            _ => return Err(bad(hl, "expected `pdlp <nvars> <nclauses>`")),
        };
        let mut clauses = Vec::new();
        for (ln, line) in lines {
            let mut clause = Vec::new();
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| bad(ln, &format!("bad literal `{tok}`")))?;
                if v == 0 {
                    break;
                }
                let var = v.unsigned_abs() as usize;
                if var > n {
                    return Err(bad(ln, &format!("variable {var} out of range")));
                }
                clause.push(Literal { var: var - 1, positive: v > 0 });
            }
            if clause.is_empty() {
                return Err(bad(ln, "empty clause"));
            }
            clauses.push(clause);
        }
        if clauses.len() != m {
            return Err(Error::MalformedPdlp(format!("header announces {m} clauses, found {}", clauses.len())));
        }
        Self::numbered(n, clauses)
    }

    pub fn literal_name(&self, l: Literal) -> String {
        let v = &self.variables[l.var];
        if l.positive { v.clone() } else { format!("-{v}") }
    }
}

impl fmt::Display for Pdlp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pdlp {} {}", self.variables.len(), self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64 + 1;
                write!(f, "{} ", if l.positive { v } else { -v })?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Minimal models as bit sets over the variables.
pub fn minimal_models(p: &Pdlp, cap: usize) -> Result<Vec<u64>> {
    let n = p.variables.len();
    if n > cap {
        return Err(Error::CapExceeded { what: format!("{n} PDLP variables"), limit: cap as u64 });
    }
    let mut models: Vec<u64> = (0..1u64 << n).filter(|m| p.is_model(*m)).collect();
    models.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for m in models {
        if !minimal.iter().any(|k| k & m == *k) {
            minimal.push(m);
        }
    }
    Ok(minimal)
}

/// Whether `l` holds in every minimal model of `p`.
pub fn min_entails_brute_force(p: &Pdlp, l: Literal) -> Result<bool> {
    min_entails_with_cap(p, l, DEFAULT_VARIABLE_CAP)
}

pub fn min_entails_with_cap(p: &Pdlp, l: Literal, cap: usize) -> Result<bool> {
    Ok(minimal_models(p, cap)?.into_iter().all(|m| l.holds(m)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Variant {
    /// `H ⊑ G ⊑ M_h` with `G` preferring decided valuations, `P̄_h` favoured
    /// over `P_h`, and clause constraints restricted to `H`.
    #[default]
    Repaired,
    /// No link from `H` to the `M_h`, `P_h` favoured over `P̄_h`, unguarded
    /// clause constraints. Does not compute minimal entailment.
    Unlinked,
}

/// Reduced KB and the query for each literal.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub kb: RankedKb,
    queries: Vec<(Literal, Query)>,
}

impl Reduction {
    pub fn query(&self, l: Literal) -> &Query {
        &self.queries.iter().find(|(k, _)| *k == l).expect("literal of the program").1
    }

    pub fn queries(&self) -> &[(Literal, Query)] {
        &self.queries
    }
}

fn atom(name: String) -> ConceptExpr {
    ConceptExpr::atomic(name)
}

/// Concept for a literal: `P_v` or `NotP_v`.
pub fn literal_concept(p: &Pdlp, l: Literal) -> ConceptExpr {
    let v = &p.variables[l.var];
    atom(if l.positive { format!("P_{v}") } else { format!("NotP_{v}") })
}

fn complement(l: Literal) -> Literal {
    Literal { var: l.var, positive: !l.positive }
}

pub fn reduce(p: &Pdlp) -> Reduction {
    reduce_with(p, Variant::Repaired)
}

pub fn reduce_with(p: &Pdlp, variant: Variant) -> Reduction {
    let mut kb = RankedKb::new();
    let strict = |kb: &mut RankedKb, sub: ConceptExpr, sup: ConceptExpr| {
        kb.add_axiom(StrictAxiom::inclusion(sub, sup)).expect("concept inclusion");
    };
    let h = atom("H".into());
    let ds = atom("D_S".into());
    let d = |j: usize| atom(format!("D{}", j + 1));
    for (j, c) in p.clauses.iter().enumerate() {
        for l in c {
            strict(&mut kb, literal_concept(p, *l), d(j));
        }
        let mut parts = Vec::new();
        if variant == Variant::Repaired {
            parts.push(h.clone());
        }
        parts.push(d(j));
        parts.extend(c.iter().map(|l| literal_concept(p, complement(*l))));
        strict(&mut kb, ConceptExpr::conjunction_of(parts), ConceptExpr::Bottom);
    }
    let all_d = ConceptExpr::conjunction_of((0..p.clauses.len()).map(d));
    strict(&mut kb, all_d.clone(), ds.clone());
    if !p.clauses.is_empty() {
        strict(&mut kb, ds.clone(), all_d);
    }
    for v in 0..p.variables.len() {
        let both = ConceptExpr::conjunction_of([
            h.clone(),
            literal_concept(p, Literal::pos(v)),
            literal_concept(p, Literal::neg(v)),
        ]);
        strict(&mut kb, both, ConceptExpr::Bottom);
    }
    strict(&mut kb, h.clone(), ds);

    let m = |v: usize| atom(format!("M_{}", p.variables[v]));
    let (neg_rank, pos_rank) = match variant {
        Variant::Repaired => (1, 0),
        Variant::Unlinked => (0, 1),
    };
    for v in 0..p.variables.len() {
        kb.declare_distinguished(m(v)).expect("atomic concept");
        let mut add = |l: Literal, rank| {
            kb.add_defeasible(DefeasibleInclusion::new(m(v), literal_concept(p, l), rank)).expect("declared");
        };
        add(Literal::neg(v), neg_rank);
        add(Literal::pos(v), pos_rank);
    }
    if variant == Variant::Repaired {
        let g = atom("G".into());
        strict(&mut kb, h.clone(), g.clone());
        kb.declare_distinguished(g.clone()).expect("atomic concept");
        for v in 0..p.variables.len() {
            strict(&mut kb, g.clone(), m(v));
            for l in [Literal::pos(v), Literal::neg(v)] {
                kb.add_defeasible(DefeasibleInclusion::new(g.clone(), literal_concept(p, l), 0)).expect("declared");
            }
        }
    }
    let queries = p.literals().map(|l| (l, Query::new(h.clone(), literal_concept(p, l)))).collect();
    Reduction { kb, queries }
}

/// Random program with at most `max_vars` variables, `max_clauses` clauses
/// and `max_lits` literals per clause.
pub fn random_pdlp(rng: &mut impl Rng, max_vars: usize, max_clauses: usize, max_lits: usize) -> Pdlp {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let k = rng.random_range(1..=max_lits);
            let mut c: Vec<Literal> =
                (0..k).map(|_| Literal { var: rng.random_range(0..n), positive: rng.random_bool(0.5) }).collect();
            if !c.iter().any(|l| l.positive) {
                c[0].positive = true;
            }
            c
        })
        .collect();
    Pdlp::numbered(n, clauses).expect("well-formed by construction")
}
