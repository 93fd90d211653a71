//! Emission of the ASP program for a query and of the asprin preference
//! program, in clingo syntax.
//!
//! ASP constants must start with a lowercase letter, so every constant is
//! mangled:
//!
//! | name                    | constant                          |
//! |-------------------------|-----------------------------------|
//! | starts with `A`..`Z`    | first letter lowercased           |
//! | starts with `a`..`z`    | unchanged                         |
//! | anything else           | prefixed with `c_`                |
//! | clash with a previous   | suffix `_1`, `_2`, ... until free |
//!
//! Names are assigned in (name, kind) order; `auxC` and `not` are reserved.
//! The table of changed names is appended to the program as comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::materialize::{translate, FactBase, InputFact, Scope, Sym, SymKind, QUERY_PROTOTYPE};
use crate::model::Query;
use crate::normalize::NormalizedKb;

/// Reversible constant naming.
#[derive(Clone, Debug)]
pub struct Mangler {
    to: BTreeMap<Sym, String>,
    from: BTreeMap<String, (SymKind, String)>,
}

fn base_constant(name: &str) -> String {
    match name.chars().next() {
        Some(c) if c.is_ascii_uppercase() => {
            let mut s = c.to_ascii_lowercase().to_string();
            s.push_str(&name[1..]);
            s
        }
        Some(c) if c.is_ascii_lowercase() => name.to_string(),
        _ => format!("c_{name}"),
    }
}

impl Mangler {
    pub fn new(base: &FactBase) -> Self {
        let mut entries: Vec<(&str, SymKind, Sym)> = base.symbols().iter().map(|(s, k, n)| (n, k, s)).collect();
        entries.sort();
        let mut taken: BTreeSet<String> = ["not".to_string()].into();
        let mut to = BTreeMap::new();
        let mut from = BTreeMap::new();
        let proto = base.symbols().get(SymKind::Aux, QUERY_PROTOTYPE);
        if let Some(p) = proto {
            taken.insert(QUERY_PROTOTYPE.to_string());
            to.insert(p, QUERY_PROTOTYPE.to_string());
            from.insert(QUERY_PROTOTYPE.to_string(), (SymKind::Aux, QUERY_PROTOTYPE.to_string()));
        } else {
            taken.insert(QUERY_PROTOTYPE.to_string());
        }
        for (name, kind, sym) in entries {
            if Some(sym) == proto {
                continue;
            }
            let base = base_constant(name);
            let mut c = base.clone();
            let mut k = 0;
            while taken.contains(&c) {
                k += 1;
                c = format!("{base}_{k}");
            }
            taken.insert(c.clone());
            from.insert(c.clone(), (kind, name.to_string()));
            to.insert(sym, c);
        }
        Self { to, from }
    }

    pub fn constant(&self, s: Sym) -> &str {
        &self.to[&s]
    }

    /// Original name and kind of an emitted constant.
    pub fn original(&self, constant: &str) -> Option<(SymKind, &str)> {
        self.from.get(constant).map(|(k, n)| (*k, n.as_str()))
    }

    /// Constants whose name differs from the original, sorted.
    pub fn changed(&self) -> impl Iterator<Item = (&str, &str)> {
        self.from.iter().filter(|(c, (_, n))| *c != n).map(|(c, (_, n))| (c.as_str(), n.as_str()))
    }
}

fn render_fact(m: &Mangler, f: &InputFact) -> (u8, String) {
    let c = |s: &Sym| m.constant(*s);
    match f {
        InputFact::Nom(a) => (0, format!("nom({})", c(a))),
        InputFact::Cls(a) => (1, format!("cls({})", c(a))),
        InputFact::Rol(a) => (2, format!("rol({})", c(a))),
        InputFact::SubClass(a, b) => (3, format!("subClass({}, {})", c(a), c(b))),
        InputFact::SubConj(a, b, z) => (4, format!("subConj({}, {}, {})", c(a), c(b), c(z))),
        InputFact::SubEx(r, a, z) => (5, format!("subEx({}, {}, {})", c(r), c(a), c(z))),
        InputFact::SupEx(a, r, b, x) => (6, format!("supEx({}, {}, {}, {})", c(a), c(r), c(b), c(x))),
        InputFact::Top(a) => (7, format!("top({})", c(a))),
        InputFact::Bot(a) => (8, format!("bot({})", c(a))),
        InputFact::SubRole(r, s) => (9, format!("subRole({}, {})", c(r), c(s))),
        InputFact::SubRChain(r, s, t) => (10, format!("subRChain({}, {}, {})", c(r), c(s), c(t))),
        InputFact::SubTyp(a, d, n) => (11, format!("subTyp({}, {}, {n})", c(a), c(d))),
        InputFact::AuxTc(y, a) => (12, format!("auxtc({}, {})", c(y), c(a))),
        InputFact::Inst(x, a) => (13, format!("inst({}, {})", c(x), c(a))),
        InputFact::Triple(x, r, y) => (14, format!("triple({}, {}, {})", c(x), c(r), c(y))),
    }
}

/// Definitions of distinguished concepts, typical properties and valid ranks.
pub const TYPICALITY_DEFS: &str = "\
dcls(C) :- subTyp(C,D,N).
tprop(C,D) :- subTyp(C,D,N).
validrank(C,N) :- subTyp(C,D,N).
";

/// Instance checking rules.
pub const INSTANCE_RULES: &str = "\
inst(X,X) :- nom(X).                                                  % (1)
inst(X,Z) :- top(Z), inst(X,Z1).                                      % (3)
inst(X,Y) :- bot(Z), inst(U,Z), inst(X,Z1), cls(Y).                   % (4)
:- bot(Z), inst(U,Z).                                                 % (4b)
inst(X,Z) :- subClass(Y,Z), inst(X,Y).                                % (5)
inst(X,Z) :- subConj(Y1,Y2,Z), inst(X,Y1), inst(X,Y2).                % (6)
inst(X,Z) :- subEx(V,Y,Z), triple(X,V,X1), inst(X1,Y).                % (7)
triple(X,V,X1) :- supEx(Y,V,Z,X1), inst(X,Y).                         % (9)
inst(X1,Z) :- supEx(Y,V,Z,X1), inst(X,Y).                             % (10)
triple(X,W,X1) :- subRole(V,W), triple(X,V,X1).                       % (13)
triple(X,W,X2) :- subRChain(U,V,W), triple(X,U,X1), triple(X1,V,X2).  % (15)
inst(Y,Z) :- inst(X,Y), nom(Y), inst(X,Z).                            % (27)
inst(X,Z) :- inst(X,Y), nom(Y), inst(Y,Z).                            % (28)
triple(Z,U,Y) :- inst(X,Y), nom(Y), triple(Z,U,X).                    % (29)
";

/// Subclass checking rules: `inst_sc(A,B,A)` stands for `A ⊑ B`.
pub const SUBCLASS_RULES: &str = "\
inst_sc(A,A,A) :- cls(A).
inst_sc(X,X,C) :- nom(X), cls(C).
inst_sc(X,Z,C) :- top(Z), inst_sc(X,Z1,C).
inst_sc(X,Y,C) :- bot(Z), inst_sc(U,Z,C), inst_sc(X,Z1,C), cls(Y).
inst_sc(X,Z,C) :- subClass(Y,Z), inst_sc(X,Y,C).
inst_sc(X,Z,C) :- subConj(Y1,Y2,Z), inst_sc(X,Y1,C), inst_sc(X,Y2,C).
inst_sc(X,Z,C) :- subEx(V,Y,Z), triple_sc(X,V,X1,C), inst_sc(X1,Y,C).
triple_sc(X,V,X1,C) :- supEx(Y,V,Z,X1), inst_sc(X,Y,C).
inst_sc(X1,Z,C) :- supEx(Y,V,Z,X1), inst_sc(X,Y,C).
triple_sc(X,W,X1,C) :- subRole(V,W), triple_sc(X,V,X1,C).
triple_sc(X,W,X2,C) :- subRChain(U,V,W), triple_sc(X,U,X1,C), triple_sc(X1,V,X2,C).
inst_sc(Y,Z,C) :- inst_sc(X,Y,C), nom(Y), inst_sc(X,Z,C).
inst_sc(X,Z,C) :- inst_sc(X,Y,C), nom(Y), inst_sc(Y,Z,C).
triple_sc(Z,U,Y,C) :- inst_sc(X,Y,C), nom(Y), triple_sc(Z,U,X,C).
";

/// Specificity between distinguished concepts.
pub const MORESPEC_RULE: &str = "morespec(Ch,Cj) :- dcls(Ch),dcls(Cj),inst_sc(Ch,Cj,Ch), not inst_sc(Cj,Ch,Cj).\n";

/// Choice of typical properties for the prototype, and typicality of `aux_Ci`.
pub const TYPICALITY_RULES: &str = "\
{inst(auxC,D)} :- dcls(Ci),inst(auxC,Ci),tprop(Ci,D).   % (a)
inst(Y,Ci) :- auxtc(Y,Ci), inst(X,Ci).                  % (b)
typ(Y,Ci) :- auxtc(Y,Ci),inst(Y,Ci).                    % (c)
inst(Y,D) :- subTyp(Ci,D,N),typ(Y,Ci).                  % (d)
";

/// The program for `kb` and `query`.
pub fn emit_program(kb: &NormalizedKb, query: &Query) -> String {
    let (kb, nq) = kb.with_query(query);
    let base = translate(&kb, Some(&nq), Scope::Full);
    let m = Mangler::new(&base);
    let q = base.query().expect("query facts present");
    let query_facts =
        [InputFact::AuxTc(q.prototype, q.subject), InputFact::Nom(q.prototype), InputFact::Inst(q.prototype, q.subject)];
    let mut facts: Vec<(u8, String)> =
        base.facts().iter().filter(|f| !query_facts.contains(f)).map(|f| render_fact(&m, f)).collect();
    facts.sort();

    let mut out = String::new();
    let _ = writeln!(out, "% query: {query}");
    let _ = writeln!(out, "% query subject: {}, predicate: {}", m.constant(q.subject), m.constant(q.predicate));
    out.push_str("\n% input translation\n");
    for (_, f) in &facts {
        let _ = writeln!(out, "{f}.");
    }
    out.push_str("\n% distinguished concepts, typical properties, valid ranks\n");
    out.push_str(TYPICALITY_DEFS);
    out.push_str("\n% instance checking\n");
    out.push_str(INSTANCE_RULES);
    out.push_str("\n% subclass checking\n");
    out.push_str(SUBCLASS_RULES);
    out.push_str(MORESPEC_RULE);
    out.push_str("\n% typicality\n");
    out.push_str(TYPICALITY_RULES);
    out.push_str("\n% query prototype\n");
    for f in &query_facts {
        let _ = writeln!(out, "{}.", render_fact(&m, f).1);
    }
    let changed: Vec<(&str, &str)> = m.changed().collect();
    if !changed.is_empty() {
        out.push_str("\n% constants\n");
        for (c, n) in changed {
            let _ = writeln!(out, "% {c} = {n}");
        }
    }
    out
}

/// The `#preference` statement and the `multipref` preference program, for
/// asprin 1.1.1.
pub const PREFERENCE_PROGRAM: &str = "\
% Preference statement and multipref preference program for asprin 1.1.1.
% The #preference and #optimize directives end with the period asprin requires.

#preference(p,multipref){ dcls(Ci) : dcls(Ci) ; morespec(Ci,Cj) : dcls(Ci),dcls(Cj) ;
        inst(auxC,E) : tprop(Ci,E), dcls(Ci) ; subTyp(Ci,E,R) : subTyp(Ci,E,R) ;
        validrank(Ci,R) : validrank(Ci,R) }.
#optimize(p).

#program preference(multipref).

better(P) :- preference(P,multipref), holds(dcls(Ci)),
        betterwrt(Ci), noattack(Cj) : holds(dcls(Cj)).

noattack(Cj) :- holds(dcls(Cj)), bettereqwrt(Cj).

noattack(Cj) :- holds(dcls(Cj)), holds(dcls(Ch)), holds(morespec(Ch,Cj)), betterwrt(Ch).

bettereqwrt(Ci) :- betterwrt(Ci).

bettereqwrt(Ci) :- holds(dcls(Ci)), samenumprop(Ci,R) : holds(validrank(Ci,R)).

betterwrt(Ci) :- holds(dcls(Ci)), moreprop(Ci,R),
        samenumprop(Ci,R1) : holds(validrank(Ci,R1)),R1>R.

moreprop(Ci,R) :- holds(validrank(Ci,R)),
        #sum { -1,E : sat(auxC,Ci,E), holds(subTyp(Ci,E,R));
               1,E : sat1(auxC,Ci,E), holds(subTyp(Ci,E,R)) } -1.

sat(auxC,Ci,E) :- holds(X), X=inst(auxC,E),holds(subTyp(Ci,E,R)).

sat(auxC,Ci,E) :- not holds(X), X=inst(auxC,Ci),holds(subTyp(Ci,E,R)).

sat1(auxC,Ci,E) :- holds'(X), X=inst(auxC,E),holds(subTyp(Ci,E,R)).

sat1(auxC,Ci,E) :- not holds'(X), X=inst(auxC,Ci),holds(subTyp(Ci,E,R)).

samenumprop(Ci,R) :- holds(validrank(Ci,R)),
        0 #sum { -1,E : sat(auxC,Ci,E), holds(subTyp(Ci,E,R));
                 1,E : sat1(auxC,Ci,E), holds(subTyp(Ci,E,R)) } 0.
";

pub fn emit_preference_program() -> &'static str {
    PREFERENCE_PROGRAM
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::normalize::normalize;
    use crate::parser::{parse_kb, parse_query};

    fn emit(kb: &str, q: &str) -> String {
        emit_program(&normalize(&parse_kb(kb).unwrap()).unwrap(), &parse_query(q).unwrap())
    }

    #[test]
    fn example2_typicality_fact() {
        let p = emit(fixtures::STUDENTS, "T(Employee and Student) <= Young");
        assert!(p.lines().any(|l| l == "subTyp(employee, notYoung, 0)."));
        assert!(p.contains("% employee = Employee\n"));
    }

    #[test]
    fn empty_kb_emits_rules_and_query_facts() {
        let p = emit(fixtures::EMPTY, "T(C) <= D");
        let facts: Vec<&str> =
            p.lines().filter(|l| !l.starts_with('%') && !l.contains(":-") && !l.trim().is_empty()).collect();
        assert_eq!(facts, vec!["cls(c).", "cls(d).", "auxtc(auxC, c).", "nom(auxC).", "inst(auxC, c)."]);
    }

    #[test]
    fn mangling_is_reversible() {
        let n = normalize(&parse_kb("strict:\n A <= a\n Not <= A\nabox:\n A(x)\n").unwrap()).unwrap();
        let base = translate(&n, None, Scope::Full);
        let m = Mangler::new(&base);
        let mut seen = BTreeSet::new();
        for (s, k, name) in base.symbols().iter() {
            let c = m.constant(s);
            assert!(c.starts_with(|ch: char| ch.is_ascii_lowercase()));
            assert!(seen.insert(c.to_string()));
            assert_eq!(m.original(c), Some((k, name)));
        }
        assert!(!seen.contains("not"));
    }

    #[test]
    fn preference_program_lines() {
        let p = emit_preference_program();
        assert!(p.lines().any(|l| l.starts_with("#preference(p,multipref)")));
        assert!(p.contains("holds(morespec(Ch,Cj)), betterwrt(Ch)"));
        assert!(p.contains("better(P) :- preference(P,multipref)"));
    }

    #[test]
    fn emission_is_deterministic() {
        for (_, kb) in fixtures::ALL {
            assert_eq!(emit(kb, "T(Student) <= Young"), emit(kb, "T(Student) <= Young"));
        }
    }
}
