use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::symbols::{Sym, SymKind, Symbols};
use crate::normalize::{Basic, NormalAxiom, NormalQuery, NormalizedKb};

/// Input-translation fact. Class positions hold either a concept or an
/// individual (a nominal class).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InputFact {
    Nom(Sym),
    Cls(Sym),
    Rol(Sym),
    SubClass(Sym, Sym),
    SubConj(Sym, Sym, Sym),
    SubEx(Sym, Sym, Sym),
    SupEx(Sym, Sym, Sym, Sym),
    Top(Sym),
    Bot(Sym),
    SubRole(Sym, Sym),
    SubRChain(Sym, Sym, Sym),
    SubTyp(Sym, Sym, u32),
    AuxTc(Sym, Sym),
    Inst(Sym, Sym),
    Triple(Sym, Sym, Sym),
}

/// Per-rule lookup tables over the input facts.
#[derive(Clone, Debug, Default)]
pub(crate) struct RuleIndex {
    pub noms: HashSet<Sym>,
    pub sub_class: HashMap<Sym, Vec<Sym>>,
    pub conj: HashMap<Sym, Vec<(Sym, Sym)>>,
    pub subex_by_role: HashMap<Sym, Vec<(Sym, Sym)>>,
    pub subex_by_filler: HashMap<Sym, Vec<(Sym, Sym)>>,
    pub supex: HashMap<Sym, Vec<(Sym, Sym, Sym)>>,
    pub tops: Vec<Sym>,
    pub bots: HashSet<Sym>,
    pub sub_role: HashMap<Sym, Vec<Sym>>,
    pub chain_left: HashMap<Sym, Vec<(Sym, Sym)>>,
    pub chain_right: HashMap<Sym, Vec<(Sym, Sym)>>,
    pub sub_typ: HashMap<Sym, Vec<Sym>>,
    pub auxtc: HashMap<Sym, Vec<Sym>>,
    pub auxtc_pairs: HashSet<(Sym, Sym)>,
}

/// Query constants added to a fact base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuerySyms {
    pub prototype: Sym,
    pub subject: Sym,
    pub predicate: Sym,
}

#[derive(Clone, Debug, Default)]
pub struct FactBase {
    symbols: Symbols,
    facts: BTreeSet<InputFact>,
    pub(crate) index: RuleIndex,
    query: Option<QuerySyms>,
    prototypes: BTreeMap<Sym, Sym>,
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn intern(&mut self, kind: SymKind, name: &str) -> Sym {
        self.symbols.intern(kind, name)
    }

    pub fn concept(&self, name: &str) -> Option<Sym> {
        self.symbols.get(SymKind::Concept, name)
    }

    pub fn facts(&self) -> &BTreeSet<InputFact> {
        &self.facts
    }

    pub fn query(&self) -> Option<QuerySyms> {
        self.query
    }

    /// `aux_Ci` constant of each distinguished concept.
    pub fn prototypes(&self) -> &BTreeMap<Sym, Sym> {
        &self.prototypes
    }

    pub fn contains(&self, fact: &InputFact) -> bool {
        self.facts.contains(fact)
    }

    pub fn insert(&mut self, fact: InputFact) -> bool {
        if !self.facts.insert(fact) {
            return false;
        }
        let ix = &mut self.index;
        match fact {
            InputFact::Nom(a) => {
                ix.noms.insert(a);
            }
            InputFact::SubClass(y, z) => ix.sub_class.entry(y).or_default().push(z),
            InputFact::SubConj(a, b, z) => {
                ix.conj.entry(a).or_default().push((b, z));
                if a != b {
                    ix.conj.entry(b).or_default().push((a, z));
                }
            }
            InputFact::SubEx(v, y, z) => {
                ix.subex_by_role.entry(v).or_default().push((y, z));
                ix.subex_by_filler.entry(y).or_default().push((v, z));
            }
            InputFact::SupEx(y, v, z, aux) => ix.supex.entry(y).or_default().push((v, z, aux)),
            InputFact::Top(z) => ix.tops.push(z),
            InputFact::Bot(z) => {
                ix.bots.insert(z);
            }
            InputFact::SubRole(v, w) => ix.sub_role.entry(v).or_default().push(w),
            InputFact::SubRChain(u, v, w) => {
                ix.chain_left.entry(u).or_default().push((v, w));
                ix.chain_right.entry(v).or_default().push((u, w));
            }
            InputFact::SubTyp(c, d, _) => ix.sub_typ.entry(c).or_default().push(d),
            InputFact::AuxTc(y, c) => {
                ix.auxtc.entry(c).or_default().push(y);
                ix.auxtc_pairs.insert((y, c));
            }
            InputFact::Cls(_) | InputFact::Rol(_) | InputFact::Inst(..) | InputFact::Triple(..) => {}
        }
        true
    }

    /// `dcls(C)`: concepts with at least one `subTyp` fact.
    pub fn dcls(&self) -> BTreeSet<Sym> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                InputFact::SubTyp(c, _, _) => Some(*c),
                _ => None,
            })
            .collect()
    }

    /// `tprop(C, D)` pairs.
    pub fn tprops(&self) -> BTreeSet<(Sym, Sym)> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                InputFact::SubTyp(c, d, _) => Some((*c, *d)),
                _ => None,
            })
            .collect()
    }

    /// Renders a class or individual position.
    pub fn render(&self, s: Sym) -> &str {
        self.symbols.name(s)
    }
}

/// Which parts of the KB to translate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Strict TBox and ABox only (subclass checking).
    Strict,
    /// Everything, including `subTyp` and `auxtc` facts.
    Full,
}

fn basic_sym(fb: &mut FactBase, b: &Basic) -> Sym {
    match b {
        Basic::Concept(c) => fb.intern(SymKind::Concept, c.as_str()),
        Basic::Nominal(i) => fb.intern(SymKind::Individual, i.as_str()),
    }
}

/// Name of the prototype constant of distinguished concept `c`.
pub fn prototype_name(c: &str) -> String {
    format!("aux_{c}")
}

/// Name of the query prototype.
pub const QUERY_PROTOTYPE: &str = "auxC";

/// Input translation of a normalized KB and an optional query.
pub fn translate(kb: &NormalizedKb, query: Option<&NormalQuery>, scope: Scope) -> FactBase {
    let mut fb = FactBase::new();
    for c in kb.concepts() {
        let s = fb.intern(SymKind::Concept, c.as_str());
        fb.insert(InputFact::Cls(s));
    }
    for r in kb.roles() {
        let s = fb.intern(SymKind::Role, r.as_str());
        fb.insert(InputFact::Rol(s));
    }
    for i in kb.individuals() {
        let s = fb.intern(SymKind::Individual, i.as_str());
        fb.insert(InputFact::Nom(s));
    }
    let mut aux_counter = 0usize;
    for ax in kb.axioms() {
        let fact = match ax {
            NormalAxiom::Subclass { sub, sup } => InputFact::SubClass(basic_sym(&mut fb, sub), basic_sym(&mut fb, sup)),
            NormalAxiom::Conjunction { left, right, sup } => {
                InputFact::SubConj(basic_sym(&mut fb, left), basic_sym(&mut fb, right), basic_sym(&mut fb, sup))
            }
            NormalAxiom::ExistsSub { role, filler, sup } => {
                let r = fb.intern(SymKind::Role, role.as_str());
                InputFact::SubEx(r, basic_sym(&mut fb, filler), basic_sym(&mut fb, sup))
            }
            NormalAxiom::ExistsSup { sub, role, filler } => {
                let r = fb.intern(SymKind::Role, role.as_str());
                let y = basic_sym(&mut fb, sub);
                let z = basic_sym(&mut fb, filler);
                let aux = match filler {
                    Basic::Nominal(_) => z,
                    Basic::Concept(_) => {
                        aux_counter += 1;
                        fb.intern(SymKind::Aux, &format!("aux{aux_counter}"))
                    }
                };
                InputFact::SupEx(y, r, z, aux)
            }
            NormalAxiom::TopSub { sup } => InputFact::Top(basic_sym(&mut fb, sup)),
            NormalAxiom::Bottom { sub } => InputFact::Bot(basic_sym(&mut fb, sub)),
            NormalAxiom::RoleSub { sub, sup } => {
                InputFact::SubRole(fb.intern(SymKind::Role, sub.as_str()), fb.intern(SymKind::Role, sup.as_str()))
            }
            NormalAxiom::RoleChain { left, right, sup } => InputFact::SubRChain(
                fb.intern(SymKind::Role, left.as_str()),
                fb.intern(SymKind::Role, right.as_str()),
                fb.intern(SymKind::Role, sup.as_str()),
            ),
        };
        fb.insert(fact);
    }
    if scope == Scope::Strict {
        return fb;
    }
    for t in kb.typicality() {
        let c = fb.intern(SymKind::Concept, t.subject.as_str());
        let d = fb.intern(SymKind::Concept, t.property.as_str());
        fb.insert(InputFact::SubTyp(c, d, t.rank));
    }
    for c in kb.distinguished() {
        let cs = fb.intern(SymKind::Concept, c.as_str());
        let aux = fb.intern(SymKind::Aux, &prototype_name(c.as_str()));
        fb.insert(InputFact::AuxTc(aux, cs));
        fb.prototypes.insert(cs, aux);
    }
    if let Some(q) = query {
        let subject = fb.intern(SymKind::Concept, q.subject.as_str());
        let predicate = fb.intern(SymKind::Concept, q.predicate.as_str());
        let prototype = fb.intern(SymKind::Aux, QUERY_PROTOTYPE);
        fb.insert(InputFact::AuxTc(prototype, subject));
        fb.insert(InputFact::Nom(prototype));
        fb.insert(InputFact::Inst(prototype, subject));
        fb.query = Some(QuerySyms { prototype, subject, predicate });
    }
    fb
}
