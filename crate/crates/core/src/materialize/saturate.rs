//! Semi-naive forward chaining. Every new atom is pushed on a worklist once
//! and joined against the atoms already present, so each rule instance fires
//! once per new body atom.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::facts::{FactBase, InputFact};
use super::symbols::Sym;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Atom {
    Inst(Sym, Sym),
    Triple(Sym, Sym, Sym),
    Typ(Sym, Sym),
}

/// Least fixpoint of the rules over a fact base plus chosen atoms.
#[derive(Clone, Debug, Default)]
pub struct Closure {
    by_subject: HashMap<Sym, HashSet<Sym>>,
    by_class: HashMap<Sym, HashSet<Sym>>,
    out: HashMap<Sym, HashMap<Sym, HashSet<Sym>>>,
    inn: HashMap<Sym, HashMap<Sym, HashSet<Sym>>>,
    typ: HashSet<(Sym, Sym)>,
    inconsistent: bool,
    size: usize,
}

impl Closure {
    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn has_inst(&self, x: Sym, c: Sym) -> bool {
        self.by_subject.get(&x).is_some_and(|s| s.contains(&c))
    }

    pub fn has_triple(&self, x: Sym, r: Sym, y: Sym) -> bool {
        self.out.get(&x).and_then(|m| m.get(&r)).is_some_and(|s| s.contains(&y))
    }

    pub fn has_typ(&self, y: Sym, c: Sym) -> bool {
        self.typ.contains(&(y, c))
    }

    pub fn classes_of(&self, x: Sym) -> impl Iterator<Item = Sym> + '_ {
        self.by_subject.get(&x).into_iter().flatten().copied()
    }

    pub fn instances_of(&self, c: Sym) -> impl Iterator<Item = Sym> + '_ {
        self.by_class.get(&c).into_iter().flatten().copied()
    }

    pub fn has_instance(&self, c: Sym) -> bool {
        self.by_class.get(&c).is_some_and(|s| !s.is_empty())
    }

    /// Number of derived `inst`, `triple` and `typ` atoms.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn inst_atoms(&self) -> impl Iterator<Item = (Sym, Sym)> + '_ {
        self.by_subject.iter().flat_map(|(x, cs)| cs.iter().map(move |c| (*x, *c)))
    }

    pub fn triple_atoms(&self) -> impl Iterator<Item = (Sym, Sym, Sym)> + '_ {
        self.out
            .iter()
            .flat_map(|(x, m)| m.iter().flat_map(move |(r, ys)| ys.iter().map(move |y| (*x, *r, *y))))
    }

    pub fn typ_atoms(&self) -> impl Iterator<Item = (Sym, Sym)> + '_ {
        self.typ.iter().copied()
    }

    /// Sorted textual atoms, for dumps and golden comparisons.
    pub fn atoms(&self, base: &FactBase) -> Vec<String> {
        let n = |s: Sym| base.render(s);
        let mut v: Vec<String> = self
            .inst_atoms()
            .map(|(x, c)| format!("inst({}, {})", n(x), n(c)))
            .chain(self.triple_atoms().map(|(x, r, y)| format!("triple({}, {}, {})", n(x), n(r), n(y))))
            .chain(self.typ_atoms().map(|(y, c)| format!("typ({}, {})", n(y), n(c))))
            .collect();
        if self.inconsistent {
            v.push("bot".to_string());
        }
        v.sort();
        v
    }

    /// Facts of this closure as input facts, for re-saturation.
    pub fn as_input_facts(&self) -> BTreeSet<InputFact> {
        self.inst_atoms()
            .map(|(x, c)| InputFact::Inst(x, c))
            .chain(self.triple_atoms().map(|(x, r, y)| InputFact::Triple(x, r, y)))
            .collect()
    }

    /// Saturation continued with extra `inst` atoms.
    pub fn extend(&self, base: &FactBase, extra: &[(Sym, Sym)]) -> Closure {
        let mut c = self.clone();
        if c.inconsistent {
            return c;
        }
        let mut eng = Engine { base, c: &mut c, queue: Vec::new() };
        for &(x, d) in extra {
            eng.add(Atom::Inst(x, d));
        }
        eng.run();
        c
    }

    fn insert(&mut self, atom: Atom) -> bool {
        let fresh = match atom {
            Atom::Inst(x, c) => {
                let new = self.by_subject.entry(x).or_default().insert(c);
                if new {
                    self.by_class.entry(c).or_default().insert(x);
                }
                new
            }
            Atom::Triple(x, r, y) => {
                let new = self.out.entry(x).or_default().entry(r).or_default().insert(y);
                if new {
                    self.inn.entry(y).or_default().entry(r).or_default().insert(x);
                }
                new
            }
            Atom::Typ(y, c) => self.typ.insert((y, c)),
        };
        if fresh {
            self.size += 1;
        }
        fresh
    }
}

struct Engine<'a> {
    base: &'a FactBase,
    c: &'a mut Closure,
    queue: Vec<Atom>,
}

impl Engine<'_> {
    fn add(&mut self, atom: Atom) {
        if self.c.inconsistent {
            return;
        }
        let first_class = matches!(atom, Atom::Inst(x, _) if !self.c.by_subject.contains_key(&x));
        if self.c.insert(atom) {
            self.queue.push(atom);
            // (3)
            if let (true, Atom::Inst(x, _)) = (first_class, atom) {
                let base = self.base;
                for &z in &base.index.tops {
                    self.add(Atom::Inst(x, z));
                }
            }
        }
    }

    fn run(&mut self) {
        while let Some(atom) = self.queue.pop() {
            if self.c.inconsistent {
                self.queue.clear();
                return;
            }
            match atom {
                Atom::Inst(x, c) => self.on_inst(x, c),
                Atom::Triple(x, r, y) => self.on_triple(x, r, y),
                Atom::Typ(y, c) => self.on_typ(y, c),
            }
        }
    }

    fn on_inst(&mut self, x: Sym, c: Sym) {
        let base = self.base;
        let ix = &base.index;
        // (4b)
        if ix.bots.contains(&c) {
            self.c.inconsistent = true;
            return;
        }
        // (5)
        if let Some(zs) = ix.sub_class.get(&c) {
            for &z in zs {
                self.add(Atom::Inst(x, z));
            }
        }
        // (6)
        if let Some(pairs) = ix.conj.get(&c) {
            for &(other, z) in pairs {
                if self.c.has_inst(x, other) {
                    self.add(Atom::Inst(x, z));
                }
            }
        }
        // (7), x in filler position
        if let Some(pairs) = ix.subex_by_filler.get(&c) {
            let mut hits = Vec::new();
            if let Some(incoming) = self.c.inn.get(&x) {
                for &(v, z) in pairs {
                    if let Some(subjects) = incoming.get(&v) {
                        hits.extend(subjects.iter().map(|&s| (s, z)));
                    }
                }
            }
            for (s, z) in hits {
                self.add(Atom::Inst(s, z));
            }
        }
        // (9), (10)
        if let Some(sups) = ix.supex.get(&c) {
            for &(v, z, aux) in sups {
                self.add(Atom::Triple(x, v, aux));
                self.add(Atom::Inst(aux, z));
            }
        }
        if ix.noms.contains(&c) {
            let classes: Vec<Sym> = self.c.classes_of(x).collect();
            // (27) with c as the nominal
            for &z in &classes {
                self.add(Atom::Inst(c, z));
            }
            // (28) with c as the nominal
            let nominal_classes: Vec<Sym> = self.c.classes_of(c).collect();
            for z in nominal_classes {
                self.add(Atom::Inst(x, z));
            }
            // (29)
            let incoming: Vec<(Sym, Sym)> = self
                .c
                .inn
                .get(&x)
                .map(|m| m.iter().flat_map(|(r, ss)| ss.iter().map(move |s| (*s, *r))).collect())
                .unwrap_or_default();
            for (s, r) in incoming {
                self.add(Atom::Triple(s, r, c));
            }
        }
        // (27) with c as the new class of x and some nominal y already in x
        let noms_of_x: Vec<Sym> = self.c.classes_of(x).filter(|y| ix.noms.contains(y) && *y != c).collect();
        for y in noms_of_x {
            self.add(Atom::Inst(y, c));
        }
        // (28) with x as the nominal
        if ix.noms.contains(&x) {
            let members: Vec<Sym> = self.c.instances_of(x).filter(|m| *m != x).collect();
            for m in members {
                self.add(Atom::Inst(m, c));
            }
        }
        // (b)
        if let Some(protos) = ix.auxtc.get(&c) {
            for &y in protos {
                self.add(Atom::Inst(y, c));
            }
        }
        // (c)
        if ix.auxtc_pairs.contains(&(x, c)) {
            self.add(Atom::Typ(x, c));
        }
    }

    fn on_triple(&mut self, x: Sym, r: Sym, y: Sym) {
        let base = self.base;
        let ix = &base.index;
        // (7), triple position
        if let Some(pairs) = ix.subex_by_role.get(&r) {
            for &(f, z) in pairs {
                if self.c.has_inst(y, f) {
                    self.add(Atom::Inst(x, z));
                }
            }
        }
        // (13)
        if let Some(ws) = ix.sub_role.get(&r) {
            for &w in ws {
                self.add(Atom::Triple(x, w, y));
            }
        }
        // (15), r as the left link
        if let Some(pairs) = ix.chain_left.get(&r) {
            let mut hits = Vec::new();
            if let Some(next) = self.c.out.get(&y) {
                for &(v, w) in pairs {
                    if let Some(targets) = next.get(&v) {
                        hits.extend(targets.iter().map(|&t| (w, t)));
                    }
                }
            }
            for (w, t) in hits {
                self.add(Atom::Triple(x, w, t));
            }
        }
        // (15), r as the right link
        if let Some(pairs) = ix.chain_right.get(&r) {
            let mut hits = Vec::new();
            if let Some(prev) = self.c.inn.get(&x) {
                for &(u, w) in pairs {
                    if let Some(sources) = prev.get(&u) {
                        hits.extend(sources.iter().map(|&s| (s, w)));
                    }
                }
            }
            for (s, w) in hits {
                self.add(Atom::Triple(s, w, y));
            }
        }
        // (29), triple position
        let noms: Vec<Sym> = self.c.classes_of(y).filter(|n| ix.noms.contains(n) && *n != y).collect();
        for n in noms {
            self.add(Atom::Triple(x, r, n));
        }
    }

    fn on_typ(&mut self, y: Sym, c: Sym) {
        // (d)
        let base = self.base;
        if let Some(ds) = base.index.sub_typ.get(&c) {
            for &d in ds {
                self.add(Atom::Inst(y, d));
            }
        }
    }
}

/// Least fixpoint of the rules over `base` plus the chosen `inst` atoms.
///
/// The choice rule is not applied here; `choices` stand in for it.
pub fn saturate(base: &FactBase, choices: &[(Sym, Sym)]) -> Closure {
    let mut c = Closure::default();
    let mut eng = Engine { base, c: &mut c, queue: Vec::new() };
    for f in base.facts() {
        match *f {
            InputFact::Nom(x) => eng.add(Atom::Inst(x, x)),
            InputFact::Inst(x, y) => eng.add(Atom::Inst(x, y)),
            InputFact::Triple(x, r, y) => eng.add(Atom::Triple(x, r, y)),
            _ => {}
        }
    }
    for &(x, d) in choices {
        eng.add(Atom::Inst(x, d));
    }
    eng.run();
    c
}
