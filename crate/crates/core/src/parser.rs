//! Text format for ranked knowledge bases and queries.
//!
//! ```text
//! strict:
//!   Employee <= Adult
//!   Young and NotYoung <= bot
//!   r o s <= t
//! defeasible Employee:
//!   rank 0: T(Employee) <= has_boss some Employee
//! abox:
//!   Employee(alice)
//!   knows(alice, bob)
//! ```
//!
//! `#` starts a comment. Layout is free; items are separated by the grammar
//! alone. `r some A and B` reads as `(r some A) and B`. A single-role line
//! `r <= s` is a role inclusion when either side is used as a role elsewhere
//! or listed in a `roles:` section.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result, SyntaxError};
use crate::model::{
    ConceptExpr, DefeasibleInclusion, IndividualName, Query, RankedKb, RoleName, StrictAxiom,
};

const KEYWORDS: &[&str] = &["strict", "abox", "defeasible", "roles", "rank", "and", "some", "top", "bot", "o"];
const SECTIONS: &[&str] = &["strict", "abox", "defeasible", "roles"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u32),
    Colon,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Sub,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Sub => "`<=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self, Tok::Ident(s) if s == kw)
    }

    fn name(&self) -> Option<&str> {
        match self {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, expected: &[&str], found: String) -> Error {
    Error::Syntax(SyntaxError {
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    })
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: start_line, column: start_col });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            push(Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let digits: String = chars[start..i].iter().collect();
            let n = digits
                .parse::<u32>()
                .map_err(|_| syntax(start_line, start_col, &["rank below 2^32"], format!("`{digits}`")))?;
            push(Tok::Int(n));
            continue;
        }
        let tok = match c {
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '<' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                col += 1;
                Tok::Sub
            }
            other => return Err(syntax(line, col, &["a token"], format!("character `{other}`"))),
        };
        i += 1;
        col += 1;
        push(tok);
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    roles: BTreeSet<String>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = lex(text)?;
        let roles = collect_roles(&toks);
        Ok(Self { toks, pos: 0, roles })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let s = &self.toks[self.pos];
        syntax(s.line, s.column, expected, s.tok.describe())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek().name() {
            Some(n) => {
                let n = n.to_string();
                self.bump();
                Ok(n)
            }
            None => Err(self.error(&[what])),
        }
    }

    fn at_section(&self) -> bool {
        SECTIONS.iter().any(|kw| self.peek().is_kw(kw))
    }

    fn concept(&mut self) -> Result<ConceptExpr> {
        let mut acc = self.unary()?;
        while self.peek().is_kw("and") {
            self.bump();
            let rhs = self.unary()?;
            acc = acc.and(rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ConceptExpr> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            Tok::LBrace => {
                self.bump();
                let ind = self.name("individual name")?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(ConceptExpr::nominal(ind))
            }
            t if t.is_kw("top") => {
                self.bump();
                Ok(ConceptExpr::Top)
            }
            t if t.is_kw("bot") => {
                self.bump();
                Ok(ConceptExpr::Bottom)
            }
            t if t.name().is_some() => {
                let n = self.name("concept")?;
                if self.peek().is_kw("some") {
                    self.bump();
                    let filler = self.unary()?;
                    Ok(ConceptExpr::some(n, filler))
                } else {
                    Ok(ConceptExpr::atomic(n))
                }
            }
            _ => Err(self.error(&["concept name", "`top`", "`bot`", "`{`", "`(`"])),
        }
    }

    fn is_role_line(&self) -> bool {
        let (Some(a), Tok::Sub, Some(b)) = (self.peek().name(), self.peek_at(1), self.peek_at(2).name()) else {
            return self.peek().name().is_some() && self.peek_at(1).is_kw("o");
        };
        let next = self.peek_at(3);
        !next.is_kw("some") && !next.is_kw("and") && (self.roles.contains(a) || self.roles.contains(b))
    }

    fn strict_line(&mut self, kb: &mut RankedKb) -> Result<()> {
        if self.is_role_line() {
            let mut chain = vec![RoleName::new(self.name("role")?)];
            while self.peek().is_kw("o") {
                self.bump();
                chain.push(RoleName::new(self.name("role")?));
            }
            self.expect(Tok::Sub, "`<=` or `o`")?;
            let sup = RoleName::new(self.name("role")?);
            return kb.add_axiom(StrictAxiom::RoleInclusion { chain, sup });
        }
        let sub = self.concept()?;
        self.expect(Tok::Sub, "`<=`")?;
        let sup = self.concept()?;
        kb.add_axiom(StrictAxiom::inclusion(sub, sup))
    }

    fn abox_line(&mut self, kb: &mut RankedKb) -> Result<()> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let concept = self.concept()?;
            self.expect(Tok::RParen, "`)`")?;
            self.expect(Tok::LParen, "`(`")?;
            let individual = IndividualName::new(self.name("individual name")?);
            self.expect(Tok::RParen, "`)`")?;
            return kb.add_axiom(StrictAxiom::ConceptAssertion { concept, individual });
        }
        let pred = self.name("assertion")?;
        self.expect(Tok::LParen, "`(`")?;
        let first = IndividualName::new(self.name("individual name")?);
        match self.bump() {
            Tok::RParen => kb.add_axiom(StrictAxiom::ConceptAssertion {
                concept: ConceptExpr::atomic(pred),
                individual: first,
            }),
            Tok::Comma => {
                let object = IndividualName::new(self.name("individual name")?);
                self.expect(Tok::RParen, "`)`")?;
                kb.add_axiom(StrictAxiom::RoleAssertion { role: RoleName::new(pred), subject: first, object })
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&["`)`", "`,`"]))
            }
        }
    }

    fn typicality_subject(&mut self) -> Result<ConceptExpr> {
        match self.peek() {
            Tok::Ident(t) if t == "T" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            _ => Err(self.error(&["`T(`"])),
        }
    }

    fn defeasible_section(&mut self, kb: &mut RankedKb) -> Result<()> {
        let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
        let owner = self.concept()?;
        self.expect(Tok::Colon, "`:`")?;
        kb.declare_distinguished(owner.clone())
            .map_err(|e| located(e, line, column))?;
        while self.peek().is_kw("rank") {
            self.bump();
            let rank = match self.bump() {
                Tok::Int(n) => n,
                _ => {
                    self.pos -= 1;
                    return Err(self.error(&["rank number"]));
                }
            };
            self.expect(Tok::Colon, "`:`")?;
            let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
            let subject = self.typicality_subject()?;
            self.expect(Tok::Sub, "`<=`")?;
            let property = self.concept()?;
            if subject != owner {
                return Err(Error::Malformed(format!(
                    "{line}:{column}: T({subject}) inside the block of {owner}"
                )));
            }
            kb.add_defeasible(DefeasibleInclusion::new(subject, property, rank))
                .map_err(|e| located(e, line, column))?;
        }
        Ok(())
    }

    fn kb(&mut self) -> Result<RankedKb> {
        let mut kb = RankedKb::new();
        loop {
            match self.bump() {
                Tok::Eof => return Ok(kb),
                Tok::Ident(s) if s == "strict" => {
                    self.expect(Tok::Colon, "`:`")?;
                    while !self.at_section() && *self.peek() != Tok::Eof {
                        self.strict_line(&mut kb)?;
                    }
                }
                Tok::Ident(s) if s == "abox" => {
                    self.expect(Tok::Colon, "`:`")?;
                    while !self.at_section() && *self.peek() != Tok::Eof {
                        self.abox_line(&mut kb)?;
                    }
                }
                Tok::Ident(s) if s == "roles" => {
                    self.expect(Tok::Colon, "`:`")?;
                    while self.peek().name().is_some() {
                        self.bump();
                    }
                }
                Tok::Ident(s) if s == "defeasible" => self.defeasible_section(&mut kb)?,
                _ => {
                    self.pos -= 1;
                    return Err(self.error(&["`strict:`", "`defeasible`", "`abox:`", "`roles:`"]));
                }
            }
        }
    }
}

fn located(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Malformed(msg) => Error::Malformed(format!("{line}:{column}: {msg}")),
        other => other,
    }
}

/// Names that are syntactically roles anywhere in the token stream.
fn collect_roles(toks: &[Spanned]) -> BTreeSet<String> {
    let mut roles = BTreeSet::new();
    let mut in_roles_section = false;
    for (i, t) in toks.iter().enumerate() {
        let next = toks.get(i + 1).map(|s| &s.tok);
        let prev = i.checked_sub(1).map(|j| &toks[j].tok);
        if SECTIONS.iter().any(|kw| t.tok.is_kw(kw)) {
            in_roles_section = t.tok.is_kw("roles");
            continue;
        }
        let Some(name) = t.tok.name() else { continue };
        let role_like = in_roles_section
            || next.is_some_and(|n| n.is_kw("some") || n.is_kw("o"))
            || prev.is_some_and(|p| p.is_kw("o"))
            || (next == Some(&Tok::LParen)
                && toks.get(i + 2).is_some_and(|s| s.tok.name().is_some())
                && toks.get(i + 3).map(|s| &s.tok) == Some(&Tok::Comma));
        if role_like {
            roles.insert(name.to_string());
        }
    }
    roles
}

pub fn parse_kb(text: &str) -> Result<RankedKb> {
    Parser::new(text)?.kb()
}

pub fn parse_concept(text: &str) -> Result<ConceptExpr> {
    let mut p = Parser::new(text)?;
    let c = p.concept()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(c)
}

/// Parses `T(C) <= D`.
pub fn parse_query(text: &str) -> Result<Query> {
    let mut p = Parser::new(text)?;
    let subject = p.typicality_subject()?;
    p.expect(Tok::Sub, "`<=`")?;
    let predicate = p.concept()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(Query::new(subject, predicate))
}

/// Canonical text form; `parse_kb(&render(kb))` reproduces `kb`.
pub fn render(kb: &RankedKb) -> String {
    let mut out = String::new();
    let single_roles: BTreeSet<&RoleName> = kb
        .strict()
        .iter()
        .filter_map(|ax| match ax {
            StrictAxiom::RoleInclusion { chain, sup } if chain.len() == 1 => Some([&chain[0], sup]),
            _ => None,
        })
        .flatten()
        .collect();
    if !single_roles.is_empty() {
        let names: Vec<&str> = single_roles.iter().map(|r| r.as_str()).collect();
        let _ = writeln!(out, "roles: {}", names.join(" "));
    }
    out.push_str("strict:\n");
    for ax in kb.strict() {
        let _ = writeln!(out, "  {ax}");
    }
    for c in kb.distinguished() {
        let _ = writeln!(out, "defeasible {c}:");
        for d in kb.ranked_tbox(c) {
            let _ = writeln!(out, "  rank {}: T({}) <= {}", d.rank, d.subject, d.property);
        }
    }
    out.push_str("abox:\n");
    for ax in kb.abox() {
        let _ = writeln!(out, "  {ax}");
    }
    out
}
