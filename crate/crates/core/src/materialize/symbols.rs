use std::collections::HashMap;

/// Interned constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymKind {
    Concept,
    Role,
    Individual,
    /// Anonymous or prototype constant (existential witnesses, `aux_Ci`, the query prototype).
    Aux,
}

#[derive(Clone, Debug, Default)]
pub struct Symbols {
    names: Vec<(SymKind, String)>,
    index: HashMap<(SymKind, String), Sym>,
}

impl Symbols {
    pub fn intern(&mut self, kind: SymKind, name: &str) -> Sym {
        if let Some(&s) = self.index.get(&(kind, name.to_string())) {
            return s;
        }
        let s = Sym(self.names.len() as u32);
        self.names.push((kind, name.to_string()));
        self.index.insert((kind, name.to_string()), s);
        s
    }

    pub fn get(&self, kind: SymKind, name: &str) -> Option<Sym> {
        self.index.get(&(kind, name.to_string())).copied()
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.0 as usize].1
    }

    pub fn kind(&self, s: Sym) -> SymKind {
        self.names[s.0 as usize].0
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, SymKind, &str)> {
        self.names.iter().enumerate().map(|(i, (k, n))| (Sym(i as u32), *k, n.as_str()))
    }
}
