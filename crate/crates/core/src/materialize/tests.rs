use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::normalize::normalize;
use crate::parser::{parse_kb, parse_query};

fn full(kb_text: &str, query: &str) -> FactBase {
    let n = normalize(&parse_kb(kb_text).unwrap()).unwrap();
    let (n, q) = n.with_query(&parse_query(query).unwrap());
    translate(&n, Some(&q), Scope::Full)
}

/// Checks that a derived atom has a rule instance whose body holds in `c`.
fn supported_inst(base: &FactBase, c: &Closure, x: Sym, z: Sym) -> bool {
    let facts = base.facts();
    if facts.contains(&InputFact::Inst(x, z)) || (x == z && facts.contains(&InputFact::Nom(x))) {
        return true;
    }
    let classes: Vec<Sym> = c.classes_of(x).collect();
    facts.iter().any(|f| match *f {
        InputFact::Top(t) => t == z && !classes.is_empty(),
        InputFact::SubClass(y, t) => t == z && c.has_inst(x, y),
        InputFact::SubConj(a, b, t) => t == z && c.has_inst(x, a) && c.has_inst(x, b),
        InputFact::SubEx(v, y, t) => {
            t == z && c.triple_atoms().any(|(s, r, o)| s == x && r == v && c.has_inst(o, y))
        }
        InputFact::SupEx(y, _, t, aux) => aux == x && t == z && c.instances_of(y).next().is_some(),
        InputFact::Nom(n) => {
            (n != x && c.has_inst(x, n) && c.has_inst(n, z))
                || (n == x && c.instances_of(x).any(|w| w != x && c.has_inst(w, z)))
        }
        InputFact::AuxTc(y, t) => y == x && t == z && c.has_instance(t),
        InputFact::SubTyp(t, d, _) => d == z && c.has_typ(x, t),
        _ => false,
    })
}

fn supported_triple(base: &FactBase, c: &Closure, x: Sym, w: Sym, o: Sym) -> bool {
    let facts = base.facts();
    if facts.contains(&InputFact::Triple(x, w, o)) {
        return true;
    }
    facts.iter().any(|f| match *f {
        InputFact::SupEx(y, v, _, aux) => v == w && aux == o && c.has_inst(x, y),
        InputFact::SubRole(v, t) => t == w && c.has_triple(x, v, o),
        InputFact::SubRChain(u, v, t) => {
            t == w && c.triple_atoms().any(|(s, r, m)| s == x && r == u && c.has_triple(m, v, o))
        }
        InputFact::Nom(n) => n == o && c.triple_atoms().any(|(s, r, m)| s == x && r == w && c.has_inst(m, o)),
        _ => false,
    })
}

fn assert_supported(base: &FactBase, c: &Closure) {
    assert!(!c.is_inconsistent());
    for (x, z) in c.inst_atoms() {
        assert!(supported_inst(base, c, x, z), "unsupported inst({}, {})", base.render(x), base.render(z));
    }
    for (x, w, o) in c.triple_atoms() {
        assert!(supported_triple(base, c, x, w, o), "unsupported triple({}, {}, {})", base.render(x), base.render(w), base.render(o));
    }
    for (y, t) in c.typ_atoms() {
        assert!(base.contains(&InputFact::AuxTc(y, t)) && c.has_inst(y, t));
    }
}

#[test]
fn subclass_rule_fires() {
    let mut fb = FactBase::new();
    let a = fb.intern(SymKind::Concept, "A");
    let cc = fb.intern(SymKind::Concept, "C");
    let x = fb.intern(SymKind::Individual, "x");
    fb.insert(InputFact::SubClass(a, cc));
    fb.insert(InputFact::Inst(x, a));
    let c = saturate(&fb, &[]);
    assert!(c.has_inst(x, cc));
}

#[test]
fn saturation_is_idempotent() {
    let base = full(fixtures::STUDENTS, "T(Employee and Student) <= Young");
    let first = saturate(&base, &[]);
    let mut again = base.clone();
    for f in first.as_input_facts() {
        again.insert(f);
    }
    let second = saturate(&again, &[]);
    assert_eq!(first.atoms(&base), second.atoms(&again));
}

#[test]
fn strict_chain_reaches_the_prototype() {
    let base = full(fixtures::STUDENTS, "T(Employee and Student) <= Young");
    let c = saturate(&base, &[]);
    let q = base.query().unwrap();
    let adult = base.concept("Adult").unwrap();
    assert!(c.has_inst(q.prototype, adult));
    let ssn = base.symbols().get(SymKind::Role, "has_SSN").unwrap();
    let witness = c
        .triple_atoms()
        .find(|(s, r, _)| *s == q.prototype && *r == ssn)
        .map(|(_, _, o)| o)
        .expect("has_SSN successor");
    assert!(c.classes_of(witness).next().is_some());
    assert_supported(&base, &c);
}

#[test]
fn derived_atoms_are_supported_on_fixtures() {
    for (kb, q) in [
        (fixtures::HORSES, "T(Horse) <= RunFast"),
        (fixtures::STUDENTS, "T(PhDStudent) <= Young"),
        (fixtures::CHAINS, "T(C3 and C5) <= Q1"),
        (fixtures::STAFF, "T(Teacher) <= Busy"),
    ] {
        let base = full(kb, q);
        assert_supported(&base, &saturate(&base, &[]));
    }
}

#[test]
fn nominal_merging_rules() {
    let kb = "strict:\n A <= {a}\nabox:\n B(a)\n A(b)\n r(c, b)\n";
    let n = normalize(&parse_kb(kb).unwrap()).unwrap();
    let base = translate(&n, None, Scope::Full);
    let c = saturate(&base, &[]);
    let s = |k, n| base.symbols().get(k, n).unwrap();
    let (a, b, cc) = (s(SymKind::Individual, "a"), s(SymKind::Individual, "b"), s(SymKind::Individual, "c"));
    let (ca, cb, r) = (s(SymKind::Concept, "A"), s(SymKind::Concept, "B"), s(SymKind::Role, "r"));
    assert!(c.has_inst(b, a));
    assert!(c.has_inst(a, ca), "rule 27");
    assert!(c.has_inst(b, cb), "rule 28");
    assert!(c.has_triple(cc, r, a), "rule 29");
    assert_supported(&base, &c);
}

#[test]
fn role_inclusions_and_chains() {
    let kb = "strict:\n r o s <= t\n r <= u\n t some top <= T\n u some top <= U\nabox:\n r(a, b)\n s(b, c)\n";
    let n = normalize(&parse_kb(kb).unwrap()).unwrap();
    let base = translate(&n, None, Scope::Full);
    let c = saturate(&base, &[]);
    let a = base.symbols().get(SymKind::Individual, "a").unwrap();
    assert!(c.has_inst(a, base.concept("T").unwrap()));
    assert!(c.has_inst(a, base.concept("U").unwrap()));
    assert_supported(&base, &c);
}

#[test]
fn subsumption_examples() {
    let n = normalize(&parse_kb(fixtures::STUDENTS).unwrap()).unwrap();
    let s = Subsumption::new(&n);
    assert!(s.subsumes(&"PhDStudent".into(), &"Student".into()));
    assert!(!s.subsumes(&"Student".into(), &"PhDStudent".into()));
    for c in n.concepts() {
        assert!(s.subsumes(c, c));
    }
    let young_notyoung = s.jointly_satisfiable(&["Young".into(), "NotYoung".into()]);
    assert!(!young_notyoung);
}

#[test]
fn consistency_reports() {
    let n = normalize(&parse_kb("strict:\n A <= bot\n {a} <= A\n").unwrap()).unwrap();
    assert!(!check_strict_consistency(&n).consistent);
    let n = normalize(&parse_kb(fixtures::STUDENTS).unwrap()).unwrap();
    let r = check_strict_consistency(&n);
    assert!(r.consistent && r.warnings.is_empty());
    let kb = "strict:\n Cj and D <= bot\ndefeasible Cj:\n rank 0: T(Cj) <= D\nabox:\n Cj(a)\n";
    let r = check_strict_consistency(&normalize(&parse_kb(kb).unwrap()).unwrap());
    assert!(r.consistent);
    assert_eq!(r.warnings.len(), 1);
    assert_eq!(r.warnings[0].concept.as_str(), "Cj");
}

#[test]
fn debug_dump_is_sorted() {
    let base = full(fixtures::EMPTY, "T(C) <= D");
    let atoms = saturate(&base, &[]).atoms(&base);
    assert_eq!(atoms, ["inst(auxC, C)", "inst(auxC, auxC)", "typ(auxC, C)"]);
}

/// Reachability over atomic edges, the oracle for conjunction-free hierarchies.
fn reachable(edges: &[(usize, usize)], n: usize) -> Vec<BTreeSet<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
    }
    (0..n)
        .map(|s| {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in adj.get(&v).into_iter().flatten() {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

proptest! {
    #[test]
    fn subsumption_matches_reachability(n in 2usize..9, raw in prop::collection::vec((0usize..9, 0usize..9), 0..20)) {
        let edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a < b)
            .collect();
        let mut text = String::from("strict:\n");
        for i in 0..n {
            text.push_str(&format!("  A{i} <= A{i}\n"));
        }
        for (a, b) in &edges {
            text.push_str(&format!("  A{a} <= A{b}\n"));
        }
        let nkb = normalize(&parse_kb(&text).unwrap()).unwrap();
        let s = Subsumption::new(&nkb);
        let oracle = reachable(&edges, n);
        for (a, reach) in oracle.iter().enumerate() {
            for b in 0..n {
                let got = s.subsumes(&format!("A{a}").as_str().into(), &format!("A{b}").as_str().into());
                prop_assert_eq!(got, reach.contains(&b), "A{} <= A{}", a, b);
            }
        }
    }

    #[test]
    fn saturation_is_monotone(
        small in prop::collection::vec((0u8..6, 0usize..5, 0usize..5, 0usize..5), 0..12),
        extra in prop::collection::vec((0u8..6, 0usize..5, 0usize..5, 0usize..5), 0..6),
    ) {
        fn build(facts: &[(u8, usize, usize, usize)]) -> FactBase {
            let mut fb = FactBase::new();
            let cs: Vec<Sym> = (0..5).map(|i| fb.intern(SymKind::Concept, &format!("K{i}"))).collect();
            let rs: Vec<Sym> = (0..5).map(|i| fb.intern(SymKind::Role, &format!("r{i}"))).collect();
            let xs: Vec<Sym> = (0..5).map(|i| fb.intern(SymKind::Individual, &format!("x{i}"))).collect();
            fb.insert(InputFact::Nom(xs[0]));
            for &(kind, a, b, c) in facts {
                let f = match kind {
                    0 => InputFact::SubClass(cs[a], cs[b]),
                    1 => InputFact::SubConj(cs[a], cs[b], cs[c]),
                    2 => InputFact::SubEx(rs[a], cs[b], cs[c]),
                    3 => InputFact::SupEx(cs[a], rs[b], cs[c], xs[(a + b) % 5]),
                    4 => InputFact::Inst(xs[a], cs[b]),
                    _ => InputFact::SubRChain(rs[a], rs[b], rs[c]),
                };
                fb.insert(f);
            }
            fb
        }
        let mut all = small.clone();
        all.extend(extra);
        let f = build(&small);
        let g = build(&all);
        let cf: BTreeSet<String> = saturate(&f, &[]).atoms(&f).into_iter().collect();
        let cg: BTreeSet<String> = saturate(&g, &[]).atoms(&g).into_iter().collect();
        prop_assert!(cf.is_subset(&cg));
    }
}
