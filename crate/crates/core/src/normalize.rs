//! Normal form over an extended signature.
//!
//! Complex subexpressions get fresh names. A name introduced for a
//! subexpression on the left of an inclusion only needs `E ⊑ X`; on the right
//! only `X ⊑ E`. Distinguished concepts, typical properties and query concepts
//! get full definitions `X ≡ E`, so that membership in `X` is derivable from
//! the parts and vice versa. A structural cache maps equal expressions to the
//! same name, and names come from a counter over a fixed traversal order, so
//! the output is reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::Result;
use crate::model::{ConceptExpr, ConceptName, IndividualName, Query, RankedKb, RoleName, StrictAxiom};

/// Atomic concept or nominal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basic {
    Concept(ConceptName),
    Nominal(IndividualName),
}

impl Basic {
    pub fn concept(name: impl Into<String>) -> Self {
        Basic::Concept(ConceptName::new(name))
    }

    fn from_expr(e: &ConceptExpr) -> Option<Basic> {
        match e {
            ConceptExpr::Atomic(n) => Some(Basic::Concept(n.clone())),
            ConceptExpr::Nominal(i) => Some(Basic::Nominal(i.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Basic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basic::Concept(c) => write!(f, "{c}"),
            Basic::Nominal(i) => write!(f, "{{{i}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalAxiom {
    Subclass { sub: Basic, sup: Basic },
    Conjunction { left: Basic, right: Basic, sup: Basic },
    ExistsSub { role: RoleName, filler: Basic, sup: Basic },
    ExistsSup { sub: Basic, role: RoleName, filler: Basic },
    TopSub { sup: Basic },
    Bottom { sub: Basic },
    RoleSub { sub: RoleName, sup: RoleName },
    RoleChain { left: RoleName, right: RoleName, sup: RoleName },
}

impl fmt::Display for NormalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalAxiom::Subclass { sub, sup } => write!(f, "{sub} <= {sup}"),
            NormalAxiom::Conjunction { left, right, sup } => write!(f, "{left} and {right} <= {sup}"),
            NormalAxiom::ExistsSub { role, filler, sup } => write!(f, "{role} some {filler} <= {sup}"),
            NormalAxiom::ExistsSup { sub, role, filler } => write!(f, "{sub} <= {role} some {filler}"),
            NormalAxiom::TopSub { sup } => write!(f, "top <= {sup}"),
            NormalAxiom::Bottom { sub } => write!(f, "{sub} <= bot"),
            NormalAxiom::RoleSub { sub, sup } => write!(f, "{sub} <= {sup}"),
            NormalAxiom::RoleChain { left, right, sup } => write!(f, "{left} o {right} <= {sup}"),
        }
    }
}

/// `T(subject) ⊑ property` over atomic names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalTyp {
    pub subject: ConceptName,
    pub property: ConceptName,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalQuery {
    pub subject: ConceptName,
    pub predicate: ConceptName,
}

#[derive(Clone, Debug, Default)]
struct Namer {
    counter: usize,
    role_counter: usize,
    taken: BTreeSet<String>,
    lhs: HashMap<ConceptExpr, Basic>,
    rhs: HashMap<ConceptExpr, Basic>,
    def: HashMap<ConceptExpr, ConceptName>,
    top: Option<ConceptName>,
    bottom: Option<ConceptName>,
}

impl Namer {
    fn fresh(&mut self) -> ConceptName {
        loop {
            self.counter += 1;
            let name = format!("X{}", self.counter);
            if self.taken.insert(name.clone()) {
                return ConceptName(name);
            }
        }
    }

    fn fresh_role(&mut self) -> RoleName {
        loop {
            self.role_counter += 1;
            let name = format!("xr{}", self.role_counter);
            if self.taken.insert(name.clone()) {
                return RoleName(name);
            }
        }
    }
}

/// Ranked KB in normal form plus the bookkeeping for its fresh names.
#[derive(Clone, Debug)]
pub struct NormalizedKb {
    axioms: BTreeSet<NormalAxiom>,
    distinguished: Vec<ConceptName>,
    distinguished_source: Vec<ConceptExpr>,
    typicality: Vec<NormalTyp>,
    fresh_concepts: BTreeMap<ConceptName, ConceptExpr>,
    fresh_roles: BTreeMap<RoleName, Vec<RoleName>>,
    complements: BTreeMap<ConceptName, ConceptName>,
    concepts: BTreeSet<ConceptName>,
    roles: BTreeSet<RoleName>,
    individuals: BTreeSet<IndividualName>,
    namer: Namer,
}

impl NormalizedKb {
    pub fn axioms(&self) -> &BTreeSet<NormalAxiom> {
        &self.axioms
    }

    /// Atomic names of the distinguished concepts, in declaration order.
    pub fn distinguished(&self) -> &[ConceptName] {
        &self.distinguished
    }

    /// Source expression of each distinguished concept, aligned with [`Self::distinguished`].
    pub fn distinguished_source(&self) -> &[ConceptExpr] {
        &self.distinguished_source
    }

    pub fn typicality(&self) -> &[NormalTyp] {
        &self.typicality
    }

    pub fn ranked_tbox<'a>(&'a self, concept: &'a ConceptName) -> impl Iterator<Item = &'a NormalTyp> + 'a {
        self.typicality.iter().filter(move |t| &t.subject == concept)
    }

    /// Fresh concept names and the expressions they abbreviate.
    pub fn fresh_concepts(&self) -> &BTreeMap<ConceptName, ConceptExpr> {
        &self.fresh_concepts
    }

    /// Fresh roles introduced when splitting long chains.
    pub fn fresh_roles(&self) -> &BTreeMap<RoleName, Vec<RoleName>> {
        &self.fresh_roles
    }

    pub fn complements(&self) -> &BTreeMap<ConceptName, ConceptName> {
        &self.complements
    }

    pub fn concepts(&self) -> &BTreeSet<ConceptName> {
        &self.concepts
    }

    pub fn roles(&self) -> &BTreeSet<RoleName> {
        &self.roles
    }

    pub fn individuals(&self) -> &BTreeSet<IndividualName> {
        &self.individuals
    }

    pub fn is_distinguished(&self, name: &ConceptName) -> bool {
        self.distinguished.contains(name)
    }

    /// Readable form of a (possibly fresh) name.
    pub fn describe(&self, name: &ConceptName) -> String {
        match self.fresh_concepts.get(name) {
            Some(expr) => expr.to_string(),
            None => name.to_string(),
        }
    }

    /// Atomic name standing for `expr`, if it already has one.
    pub fn name_of(&self, expr: &ConceptExpr) -> Option<ConceptName> {
        match expr {
            ConceptExpr::Atomic(n) => Some(n.clone()),
            other => self.namer.def.get(other).cloned(),
        }
    }

    /// Extends the KB with definitions for the query concepts.
    pub fn with_query(&self, query: &Query) -> (NormalizedKb, NormalQuery) {
        let mut kb = self.clone();
        let mut b = Builder { kb: &mut kb };
        b.register_expr(&query.subject);
        b.register_expr(&query.predicate);
        let mut subject = b.define(&simplify(&query.subject));
        // A distinguished subject gets a fresh equivalent name; auxC is not aux_C.
        if b.kb.is_distinguished(&subject) {
            let e = ConceptExpr::Atomic(subject.clone());
            let x = b.new_name(e.clone());
            let xe = ConceptExpr::Atomic(x.clone());
            b.normalize(&xe, &e);
            b.normalize(&e, &xe);
            subject = x;
        }
        let predicate = b.define(&simplify(&query.predicate));
        (kb, NormalQuery { subject, predicate })
    }

    /// Adds complement names `NotXAux` with `X ⊓ NotXAux ⊑ ⊥` for each requested concept.
    /// Already scaffolded concepts are skipped, so the operation is idempotent.
    pub fn negation_scaffold(&self, concepts: &[ConceptName]) -> NormalizedKb {
        let mut kb = self.clone();
        for c in concepts {
            if kb.complements.contains_key(c) {
                continue;
            }
            let mut name = format!("Not{c}Aux");
            while kb.namer.taken.contains(&name) {
                name.push('_');
            }
            kb.namer.taken.insert(name.clone());
            let neg = ConceptName(name);
            let mut b = Builder { kb: &mut kb };
            let bot = b.bottom_name();
            b.kb.concepts.insert(neg.clone());
            b.kb.complements.insert(c.clone(), neg.clone());
            b.kb.axioms.insert(NormalAxiom::Conjunction {
                left: Basic::Concept(c.clone()),
                right: Basic::Concept(neg),
                sup: Basic::Concept(bot),
            });
        }
        kb
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len() + self.typicality.len()
    }
}

impl fmt::Display for NormalizedKb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strict:")?;
        for ax in &self.axioms {
            writeln!(f, "  {ax}")?;
        }
        for c in &self.distinguished {
            writeln!(f, "defeasible {c}:")?;
            for t in self.ranked_tbox(c) {
                writeln!(f, "  rank {}: T({}) <= {}", t.rank, t.subject, t.property)?;
            }
        }
        if !self.fresh_concepts.is_empty() || !self.fresh_roles.is_empty() {
            writeln!(f, "# fresh names")?;
            for (name, expr) in &self.fresh_concepts {
                writeln!(f, "#   {name} := {expr}")?;
            }
            for (name, chain) in &self.fresh_roles {
                let parts: Vec<&str> = chain.iter().map(RoleName::as_str).collect();
                writeln!(f, "#   {name} := {}", parts.join(" o "))?;
            }
        }
        Ok(())
    }
}

/// Removes `⊤` conjuncts and propagates `⊥` through conjunctions and existentials.
pub fn simplify(e: &ConceptExpr) -> ConceptExpr {
    match e {
        ConceptExpr::Conjunction(l, r) => match (simplify(l), simplify(r)) {
            (ConceptExpr::Bottom, _) | (_, ConceptExpr::Bottom) => ConceptExpr::Bottom,
            (ConceptExpr::Top, x) | (x, ConceptExpr::Top) => x,
            (l, r) => l.and(r),
        },
        ConceptExpr::Existential(role, filler) => match simplify(filler) {
            ConceptExpr::Bottom => ConceptExpr::Bottom,
            f => ConceptExpr::Existential(role.clone(), Box::new(f)),
        },
        other => other.clone(),
    }
}

struct Builder<'a> {
    kb: &'a mut NormalizedKb,
}

impl Builder<'_> {
    fn register_expr(&mut self, e: &ConceptExpr) {
        let mut cs = BTreeSet::new();
        e.concept_names(&mut cs);
        let mut rs = BTreeSet::new();
        e.role_names(&mut rs);
        let mut is = BTreeSet::new();
        e.individual_names(&mut is);
        for c in cs {
            self.kb.namer.taken.insert(c.0.clone());
            self.kb.concepts.insert(c);
        }
        for r in rs {
            self.kb.namer.taken.insert(r.0.clone());
            self.kb.roles.insert(r);
        }
        for i in is {
            self.kb.namer.taken.insert(i.0.clone());
            self.kb.individuals.insert(i);
        }
    }

    fn new_name(&mut self, source: ConceptExpr) -> ConceptName {
        let n = self.kb.namer.fresh();
        self.kb.fresh_concepts.insert(n.clone(), source);
        self.kb.concepts.insert(n.clone());
        n
    }

    fn top_name(&mut self) -> ConceptName {
        if let Some(n) = &self.kb.namer.top {
            return n.clone();
        }
        let n = self.new_name(ConceptExpr::Top);
        self.kb.namer.top = Some(n.clone());
        self.kb.axioms.insert(NormalAxiom::TopSub { sup: Basic::Concept(n.clone()) });
        n
    }

    fn bottom_name(&mut self) -> ConceptName {
        if let Some(n) = &self.kb.namer.bottom {
            return n.clone();
        }
        let n = self.new_name(ConceptExpr::Bottom);
        self.kb.namer.bottom = Some(n.clone());
        self.kb.axioms.insert(NormalAxiom::Bottom { sub: Basic::Concept(n.clone()) });
        n
    }

    /// Basic `X` with `e ⊑ X`.
    fn name_lhs(&mut self, e: &ConceptExpr) -> Basic {
        if let Some(b) = Basic::from_expr(e) {
            return b;
        }
        match e {
            ConceptExpr::Top => return Basic::Concept(self.top_name()),
            ConceptExpr::Bottom => return Basic::Concept(self.bottom_name()),
            _ => {}
        }
        if let Some(b) = self.kb.namer.lhs.get(e) {
            return b.clone();
        }
        let x = Basic::Concept(self.new_name(e.clone()));
        self.kb.namer.lhs.insert(e.clone(), x.clone());
        self.inclusion(e, &x);
        x
    }

    /// Basic `X` with `X ⊑ e`.
    fn name_rhs(&mut self, e: &ConceptExpr) -> Basic {
        if let Some(b) = Basic::from_expr(e) {
            return b;
        }
        match e {
            ConceptExpr::Top => return Basic::Concept(self.top_name()),
            ConceptExpr::Bottom => return Basic::Concept(self.bottom_name()),
            _ => {}
        }
        if let Some(b) = self.kb.namer.rhs.get(e) {
            return b.clone();
        }
        let x = Basic::Concept(self.new_name(e.clone()));
        self.kb.namer.rhs.insert(e.clone(), x.clone());
        self.normalize(&basic_expr(&x), e);
        x
    }

    /// Atomic `X ≡ e`.
    fn define(&mut self, e: &ConceptExpr) -> ConceptName {
        match e {
            ConceptExpr::Atomic(n) => return n.clone(),
            ConceptExpr::Top => return self.top_name(),
            ConceptExpr::Bottom => return self.bottom_name(),
            _ => {}
        }
        if let Some(n) = self.kb.namer.def.get(e) {
            return n.clone();
        }
        let x = self.new_name(e.clone());
        self.kb.namer.def.insert(e.clone(), x.clone());
        let xe = ConceptExpr::Atomic(x.clone());
        self.normalize(&xe, e);
        self.normalize(e, &xe);
        x
    }

    /// `sub ⊑ sup` for a basic right side.
    fn inclusion(&mut self, sub: &ConceptExpr, sup: &Basic) {
        let ax = match sub {
            ConceptExpr::Atomic(_) | ConceptExpr::Nominal(_) => {
                NormalAxiom::Subclass { sub: self.name_lhs(sub), sup: sup.clone() }
            }
            ConceptExpr::Top => NormalAxiom::TopSub { sup: sup.clone() },
            ConceptExpr::Bottom => return,
            ConceptExpr::Conjunction(l, r) => {
                let left = self.name_lhs(l);
                let right = self.name_lhs(r);
                NormalAxiom::Conjunction { left, right, sup: sup.clone() }
            }
            ConceptExpr::Existential(role, filler) => {
                let filler = self.name_lhs(filler);
                NormalAxiom::ExistsSub { role: role.clone(), filler, sup: sup.clone() }
            }
        };
        self.kb.axioms.insert(ax);
    }

    /// Normalizes a simplified inclusion `sub ⊑ sup`.
    fn normalize(&mut self, sub: &ConceptExpr, sup: &ConceptExpr) {
        if matches!(sub, ConceptExpr::Bottom) || matches!(sup, ConceptExpr::Top) {
            return;
        }
        match sup {
            ConceptExpr::Conjunction(l, r) => {
                self.normalize(sub, l);
                self.normalize(sub, r);
            }
            ConceptExpr::Bottom => match Basic::from_expr(sub) {
                Some(b) => {
                    self.kb.axioms.insert(NormalAxiom::Bottom { sub: b });
                }
                None => {
                    let bot = Basic::Concept(self.bottom_name());
                    self.inclusion(sub, &bot);
                }
            },
            ConceptExpr::Existential(role, filler) if Basic::from_expr(sub).is_some() => {
                let filler = self.name_rhs(filler);
                let sub = Basic::from_expr(sub).unwrap();
                self.kb.axioms.insert(NormalAxiom::ExistsSup { sub, role: role.clone(), filler });
            }
            _ => {
                let s = self.name_rhs(sup);
                self.inclusion(sub, &s);
            }
        }
    }

    fn role_inclusion(&mut self, chain: &[RoleName], sup: &RoleName) {
        match chain {
            [single] => {
                self.kb.axioms.insert(NormalAxiom::RoleSub { sub: single.clone(), sup: sup.clone() });
            }
            [left, right] => {
                self.kb.axioms.insert(NormalAxiom::RoleChain {
                    left: left.clone(),
                    right: right.clone(),
                    sup: sup.clone(),
                });
            }
            _ => {
                let mut acc = chain[0].clone();
                for (i, r) in chain.iter().enumerate().skip(1) {
                    let target = if i == chain.len() - 1 {
                        sup.clone()
                    } else {
                        let f = self.kb.namer.fresh_role();
                        self.kb.fresh_roles.insert(f.clone(), chain[..=i].to_vec());
                        self.kb.roles.insert(f.clone());
                        f
                    };
                    self.kb.axioms.insert(NormalAxiom::RoleChain {
                        left: acc,
                        right: r.clone(),
                        sup: target.clone(),
                    });
                    acc = target;
                }
            }
        }
    }
}

fn basic_expr(b: &Basic) -> ConceptExpr {
    match b {
        Basic::Concept(c) => ConceptExpr::Atomic(c.clone()),
        Basic::Nominal(i) => ConceptExpr::Nominal(i.clone()),
    }
}

fn register_signature(b: &mut Builder<'_>, kb: &RankedKb) {
    for ax in kb.strict().iter().chain(kb.abox()) {
        match ax {
            StrictAxiom::ConceptInclusion { sub, sup } => {
                b.register_expr(sub);
                b.register_expr(sup);
            }
            StrictAxiom::RoleInclusion { chain, sup } => {
                for r in chain.iter().chain(std::iter::once(sup)) {
                    b.kb.namer.taken.insert(r.0.clone());
                    b.kb.roles.insert(r.clone());
                }
            }
            StrictAxiom::ConceptAssertion { concept, individual } => {
                b.register_expr(concept);
                b.kb.namer.taken.insert(individual.0.clone());
                b.kb.individuals.insert(individual.clone());
            }
            StrictAxiom::RoleAssertion { role, subject, object } => {
                b.kb.namer.taken.insert(role.0.clone());
                b.kb.roles.insert(role.clone());
                for i in [subject, object] {
                    b.kb.namer.taken.insert(i.0.clone());
                    b.kb.individuals.insert(i.clone());
                }
            }
        }
    }
    for c in kb.distinguished() {
        b.register_expr(c);
    }
    for d in kb.defeasible() {
        b.register_expr(&d.property);
    }
}

/// Rewrites `kb` into normal form.
///
/// Errors only for inputs that bypassed the [`RankedKb`] invariants.
pub fn normalize(kb: &RankedKb) -> Result<NormalizedKb> {
    let mut out = NormalizedKb {
        axioms: BTreeSet::new(),
        distinguished: Vec::new(),
        distinguished_source: Vec::new(),
        typicality: Vec::new(),
        fresh_concepts: BTreeMap::new(),
        fresh_roles: BTreeMap::new(),
        complements: BTreeMap::new(),
        concepts: BTreeSet::new(),
        roles: BTreeSet::new(),
        individuals: BTreeSet::new(),
        namer: Namer::default(),
    };
    let mut b = Builder { kb: &mut out };
    register_signature(&mut b, kb);

    for ax in kb.strict() {
        match ax {
            StrictAxiom::ConceptInclusion { sub, sup } => b.normalize(&simplify(sub), &simplify(sup)),
            StrictAxiom::RoleInclusion { chain, sup } => b.role_inclusion(chain, sup),
            _ => unreachable!("assertions live in the ABox"),
        }
    }
    for c in kb.distinguished() {
        let name = b.define(&simplify(c));
        if b.kb.distinguished.contains(&name) {
            return Err(crate::error::Error::Malformed(format!(
                "distinguished concept {c} collapses onto another distinguished concept"
            )));
        }
        b.kb.distinguished.push(name.clone());
        b.kb.distinguished_source.push(c.clone());
        for d in kb.ranked_tbox(c) {
            let property = b.define(&simplify(&d.property));
            b.kb.typicality.push(NormalTyp { subject: name.clone(), property, rank: d.rank });
        }
    }
    for ax in kb.abox() {
        match ax {
            StrictAxiom::ConceptAssertion { concept, individual } => {
                b.normalize(&ConceptExpr::Nominal(individual.clone()), &simplify(concept))
            }
            StrictAxiom::RoleAssertion { role, subject, object } => {
                b.kb.axioms.insert(NormalAxiom::ExistsSup {
                    sub: Basic::Nominal(subject.clone()),
                    role: role.clone(),
                    filler: Basic::Nominal(object.clone()),
                });
            }
            _ => unreachable!("inclusions live in the strict TBox"),
        }
    }
    let mut seen = BTreeSet::new();
    out.typicality.retain(|t| seen.insert((t.subject.clone(), t.property.clone())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DefeasibleInclusion;
    use crate::parser::parse_kb;

    fn c(n: &str) -> Basic {
        Basic::concept(n)
    }

    #[test]
    fn complex_typicality_subject_gets_a_definition() {
        let mut kb = RankedKb::new();
        let es = ConceptExpr::atomic("Employee").and(ConceptExpr::atomic("Student"));
        kb.declare_distinguished(es.clone()).unwrap();
        kb.add_defeasible(DefeasibleInclusion::new(es, ConceptExpr::atomic("Young"), 0)).unwrap();
        let n = normalize(&kb).unwrap();
        let a = n.distinguished()[0].clone();
        let ab = Basic::Concept(a.clone());
        let expected: BTreeSet<NormalAxiom> = [
            NormalAxiom::Subclass { sub: ab.clone(), sup: c("Employee") },
            NormalAxiom::Subclass { sub: ab.clone(), sup: c("Student") },
            NormalAxiom::Conjunction { left: c("Employee"), right: c("Student"), sup: ab },
        ]
        .into_iter()
        .collect();
        assert_eq!(n.axioms(), &expected);
        assert_eq!(n.typicality(), &[NormalTyp { subject: a, property: "Young".into(), rank: 0 }]);
        assert_eq!(n.fresh_concepts().len(), 1);
    }

    #[test]
    fn normal_form_is_a_fixed_point() {
        let kb = parse_kb(
            "strict:\n A <= B\n A and B <= C\n r some A <= C\n A <= r some B\n top <= D\n E <= bot\n\
             r <= s\n r o s <= t\n {a} <= A\n\
             defeasible A:\n rank 0: T(A) <= B\nabox:\n C(b)\n r(a, b)\n",
        )
        .unwrap();
        let n = normalize(&kb).unwrap();
        assert!(n.fresh_concepts().is_empty());
        assert!(n.fresh_roles().is_empty());
        assert_eq!(n.axioms().len(), kb.strict().len() + kb.abox().len());
    }

    #[test]
    fn conjunctive_right_side_splits() {
        let kb = parse_kb("strict:\n Horse <= Mammal and Animal\n").unwrap();
        let n = normalize(&kb).unwrap();
        let expected: BTreeSet<NormalAxiom> = [
            NormalAxiom::Subclass { sub: c("Horse"), sup: c("Mammal") },
            NormalAxiom::Subclass { sub: c("Horse"), sup: c("Animal") },
        ]
        .into_iter()
        .collect();
        assert_eq!(n.axioms(), &expected);
    }

    #[test]
    fn long_chains_and_conjunctions_fold_left() {
        let kb = parse_kb("strict:\n p o q o r o s <= t\n A and B and C and D <= E\n").unwrap();
        let n = normalize(&kb).unwrap();
        assert_eq!(n.fresh_roles().len(), 2);
        let chains = n.axioms().iter().filter(|a| matches!(a, NormalAxiom::RoleChain { .. })).count();
        assert_eq!(chains, 3);
        let conj = n.axioms().iter().filter(|a| matches!(a, NormalAxiom::Conjunction { .. })).count();
        assert_eq!(conj, 3);
    }

    #[test]
    fn top_and_bottom_are_simplified() {
        assert_eq!(simplify(&ConceptExpr::atomic("A").and(ConceptExpr::Top)), ConceptExpr::atomic("A"));
        assert_eq!(
            simplify(&ConceptExpr::some("r", ConceptExpr::atomic("A").and(ConceptExpr::Bottom))),
            ConceptExpr::Bottom
        );
        let kb = parse_kb("strict:\n bot <= A\n A <= top\n A <= r some top\n").unwrap();
        let n = normalize(&kb).unwrap();
        assert_eq!(n.axioms().len(), 2);
        assert_eq!(n.fresh_concepts().values().next(), Some(&ConceptExpr::Top));
    }

    #[test]
    fn equal_subexpressions_share_names() {
        let kb = parse_kb("strict:\n A <= r some (B and C)\n D <= r some (B and C)\n").unwrap();
        let n = normalize(&kb).unwrap();
        assert_eq!(n.fresh_concepts().len(), 1);
    }

    #[test]
    fn scaffold_is_idempotent() {
        let kb = parse_kb("strict:\n Young and NotYoung <= bot\n").unwrap();
        let n = normalize(&kb).unwrap();
        let s1 = n.negation_scaffold(&["Young".into()]);
        assert_eq!(s1.complements().get(&ConceptName::from("Young")).unwrap().as_str(), "NotYoungAux");
        let s2 = s1.negation_scaffold(&["Young".into()]);
        assert_eq!(s1.axioms(), s2.axioms());
        let none = n.negation_scaffold(&[]);
        assert_eq!(none.axioms(), n.axioms());
    }

    #[test]
    fn distinguished_query_subject_gets_a_fresh_name() {
        let kb = parse_kb(
            "defeasible Employee and Student:\n rank 0: T(Employee and Student) <= Young\n",
        )
        .unwrap();
        let n = normalize(&kb).unwrap();
        let q = crate::parser::parse_query("T(Employee and Student) <= has_boss some Employee").unwrap();
        let (nq, query) = n.with_query(&q);
        assert_ne!(query.subject, n.distinguished()[0]);
        assert!(!nq.is_distinguished(&query.subject));
        assert!(nq.fresh_concepts().contains_key(&query.subject));
        assert!(nq.fresh_concepts().contains_key(&query.predicate));
        assert!(nq.concepts().contains(&query.predicate));
    }
}
