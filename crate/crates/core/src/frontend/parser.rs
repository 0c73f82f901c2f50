//! Line-oriented ontology syntax.
//!
//! ```text
//! axiom := conj "SubClassOf" disj
//!        | IDENT "SubClassOf" "AtLeast" INT role filler
//!        | IDENT "SubClassOf" "Exists" role filler
//!        | "Exists" role filler "SubClassOf" (IDENT | "Bottom")
//!        | IDENT "SubClassOf" "AtMost" INT role filler
//!        | IDENT "SubRoleOf" IDENT
//!        | IDENT "SubRoleOf" "Inv" IDENT
//! role   := IDENT | "Inv" IDENT
//! filler := IDENT | "Top"
//! conj   := "Top" | IDENT ("And" IDENT)*
//! disj   := "Bottom" | IDENT ("Or" IDENT)*
//! ```
//!
//! A line containing `->` is a raw DL-clause instead, e.g.
//! `B1(x), S(x,z1), S(x,z2) -> z1 = z2, f1(x) != f2(x)`, with `Top` for an
//! empty body and `Bottom` for an empty head.

use std::collections::BTreeMap;

use crate::clause::{validate_dl_clause, DlClause};
use crate::error::{ParseError, SymbolError};
use crate::symbols::{ConceptName, RoleName, SymbolTable};
use crate::terms::{DlAtom, DlLiteral, DlTerm, Render};

/// A role, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoleRef {
    pub role: RoleName,
    pub inverse: bool,
}

impl RoleRef {
    pub fn plain(role: RoleName) -> Self {
        Self { role, inverse: false }
    }
}

/// One normalized axiom. A filler of `None` is `Top`; a right-hand side of
/// `None` is `Bottom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizedAxiom {
    /// `B1 ⊓ … ⊓ Bn ⊑ Bn+1 ⊔ … ⊔ Bm`
    Conjunction { conjuncts: Vec<ConceptName>, disjuncts: Vec<ConceptName> },
    /// `B1 ⊑ ≥n S.B2`
    AtLeast { sub: ConceptName, n: u32, role: RoleRef, filler: Option<ConceptName> },
    /// `∃S.B1 ⊑ B2`
    Exists { role: RoleRef, filler: Option<ConceptName>, sup: Option<ConceptName> },
    /// `B1 ⊑ ≤n S.B2`
    AtMost { sub: ConceptName, n: u32, role: RoleRef, filler: Option<ConceptName> },
    /// `S1 ⊑ S2`
    SubRole { sub: RoleName, sup: RoleName },
    /// `S1 ⊑ S2⁻`
    InverseSubRole { sub: RoleName, sup: RoleName },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Axiom(NormalizedAxiom),
    Clause(DlClause),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub symbols: SymbolTable,
    /// Statements with the 1-based line they came from.
    pub statements: Vec<(usize, Statement)>,
}

const KEYWORDS: &[&str] =
    &["SubClassOf", "SubRoleOf", "AtLeast", "AtMost", "Exists", "Inv", "And", "Or", "Top", "Bottom"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u32),
    LParen,
    RParen,
    Comma,
    Arrow,
    Eq,
    Neq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
        }
    }
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (byte, c) = chars[i];
        let col = line[..byte].chars().count() + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '#' => break,
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((col, Tok::Comma));
                i += 1;
            }
            '=' => {
                out.push((col, Tok::Eq));
                i += 1;
            }
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                out.push((col, Tok::Arrow));
                i += 2;
            }
            '!' if chars.get(i + 1).map(|p| p.1) == Some('=') => {
                out.push((col, Tok::Neq));
                i += 2;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|p| p.1).collect();
                let n = text
                    .parse::<u32>()
                    .map_err(|_| ParseError::new(lineno, col, format!("number `{text}` is too large")))?;
                out.push((col, Tok::Int(n)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || matches!(chars[i].1, '_' | '.' | ':' | '\''))
                {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
            }
            other => return Err(ParseError::new(lineno, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct LineParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
    end_col: usize,
    symbols: &'a mut SymbolTable,
}

impl<'a> LineParser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end_col)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.1)
    }

    fn found(&self) -> String {
        self.peek().map(Tok::describe).unwrap_or_else(|| "end of line".into())
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        ParseError::expected(self.line, self.col(), &self.found(), expected)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.at_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&[kw]))
        }
    }

    fn punct(&mut self, tok: Tok, shown: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&[shown]))
        }
    }

    fn name(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let out = (self.col(), s.clone());
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.fail(&[what])),
        }
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.fail(&["INT"])),
        }
    }

    fn symbol_error(&self, col: usize, e: SymbolError) -> ParseError {
        ParseError::new(self.line, col, e.to_string())
    }

    fn concept(&mut self) -> Result<ConceptName, ParseError> {
        let (col, name) = self.name("concept name")?;
        self.symbols.concept(&name).map_err(|e| self.symbol_error(col, e))
    }

    fn role(&mut self) -> Result<RoleName, ParseError> {
        let (col, name) = self.name("role name")?;
        self.symbols.role(&name).map_err(|e| self.symbol_error(col, e))
    }

    fn role_ref(&mut self) -> Result<RoleRef, ParseError> {
        let inverse = if self.at_keyword("Inv") {
            self.pos += 1;
            true
        } else {
            false
        };
        Ok(RoleRef { role: self.role()?, inverse })
    }

    fn filler(&mut self) -> Result<Option<ConceptName>, ParseError> {
        if self.at_keyword("Top") {
            self.pos += 1;
            Ok(None)
        } else {
            self.concept().map(Some)
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(ParseError::expected(self.line, self.col(), &self.found(), &["end of line"]))
        }
    }

    fn axiom(&mut self) -> Result<NormalizedAxiom, ParseError> {
        if self.at_keyword("Exists") {
            self.pos += 1;
            let role = self.role_ref()?;
            let filler = self.filler()?;
            self.keyword("SubClassOf")?;
            let sup = if self.at_keyword("Bottom") {
                self.pos += 1;
                None
            } else {
                Some(self.concept()?)
            };
            return Ok(NormalizedAxiom::Exists { role, filler, sup });
        }
        if matches!(self.peek_at(1), Some(Tok::Ident(s)) if s == "SubRoleOf") {
            let sub = self.role()?;
            self.pos += 1;
            if self.at_keyword("Inv") {
                self.pos += 1;
                return Ok(NormalizedAxiom::InverseSubRole { sub, sup: self.role()? });
            }
            return Ok(NormalizedAxiom::SubRole { sub, sup: self.role()? });
        }
        let conjuncts = if self.at_keyword("Top") {
            self.pos += 1;
            Vec::new()
        } else {
            let mut v = vec![self.concept()?];
            while self.at_keyword("And") {
                self.pos += 1;
                v.push(self.concept()?);
            }
            v
        };
        self.keyword("SubClassOf")?;
        let restriction = if self.at_keyword("AtLeast") {
            Some(true)
        } else if self.at_keyword("AtMost") {
            Some(false)
        } else {
            None
        };
        if restriction.is_some() || self.at_keyword("Exists") {
            let col = self.col();
            let exists = self.at_keyword("Exists");
            self.pos += 1;
            let sub = match conjuncts.as_slice() {
                [b] => *b,
                _ => {
                    return Err(ParseError::new(
                        self.line,
                        col,
                        "a number or existential restriction needs a single concept name on the left",
                    ))
                }
            };
            let n = if exists { 1 } else { self.int()? };
            let role = self.role_ref()?;
            let filler = self.filler()?;
            return match restriction {
                Some(false) => Ok(NormalizedAxiom::AtMost { sub, n, role, filler }),
                _ if n == 0 => Err(ParseError::new(self.line, col, "AtLeast needs a positive number")),
                _ => Ok(NormalizedAxiom::AtLeast { sub, n, role, filler }),
            };
        }
        let disjuncts = if self.at_keyword("Bottom") {
            self.pos += 1;
            Vec::new()
        } else {
            let mut v = vec![self.concept()?];
            while self.at_keyword("Or") {
                self.pos += 1;
                v.push(self.concept()?);
            }
            v
        };
        Ok(NormalizedAxiom::Conjunction { conjuncts, disjuncts })
    }

    // --- raw clauses ---

    fn dl_term(&mut self) -> Result<DlTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "x" => {
                self.pos += 1;
                Ok(DlTerm::X)
            }
            Some(Tok::Ident(s)) if is_z_variable(&s) => {
                self.pos += 1;
                Ok(DlTerm::Z(s[1..].parse::<u32>().unwrap() - 1))
            }
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) && matches!(self.peek_at(1), Some(Tok::LParen)) => {
                self.pos += 2;
                self.keyword("x")?;
                self.punct(Tok::RParen, ")")?;
                Ok(DlTerm::Fn(self.symbols.function(&s)))
            }
            _ => Err(self.fail(&["x", "z<k>", "f(x)"])),
        }
    }

    /// Atom or (in)equality.
    fn dl_literal(&mut self) -> Result<DlLiteral, ParseError> {
        let start = self.col();
        let is_atom = match (self.peek(), self.peek_at(1)) {
            (Some(Tok::Ident(s)), Some(Tok::LParen)) if !KEYWORDS.contains(&s.as_str()) => {
                // `f(x) = …` is a term; `B(x)` followed by `,`/`->`/end is an atom
                !(matches!(self.peek_at(2), Some(Tok::Ident(v)) if v == "x")
                    && self.peek_at(3) == Some(&Tok::RParen)
                    && matches!(self.peek_at(4), Some(Tok::Eq | Tok::Neq)))
            }
            _ => false,
        };
        if is_atom {
            let (col, name) = self.name("predicate")?;
            self.punct(Tok::LParen, "(")?;
            let first = self.dl_term()?;
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                let second = self.dl_term()?;
                self.punct(Tok::RParen, ")")?;
                let s = self.symbols.role(&name).map_err(|e| self.symbol_error(col, e))?;
                let atom = DlAtom::Role(s, first, second);
                if !atom.is_well_shaped() {
                    return Err(ParseError::new(
                        self.line,
                        start,
                        format!("illegal role atom shape `{}`", atom.render(self.symbols)),
                    ));
                }
                return Ok(DlLiteral::Atom(atom));
            }
            self.punct(Tok::RParen, ")")?;
            let b = self.symbols.concept(&name).map_err(|e| self.symbol_error(col, e))?;
            return Ok(DlLiteral::Atom(DlAtom::Concept(b, first)));
        }
        let l = self.dl_term()?;
        let neq = match self.peek() {
            Some(Tok::Eq) => false,
            Some(Tok::Neq) => true,
            _ => return Err(self.fail(&["=", "!="])),
        };
        self.pos += 1;
        let r = self.dl_term()?;
        let lit = if neq { DlLiteral::Neq(l, r) } else { DlLiteral::Eq(l, r) };
        if !lit.is_well_shaped() {
            return Err(ParseError::new(self.line, start, "x cannot occur in an (in)equality"));
        }
        Ok(lit)
    }

    fn raw_clause(&mut self) -> Result<DlClause, ParseError> {
        let mut body = Vec::new();
        if self.at_keyword("Top") {
            self.pos += 1;
        } else {
            loop {
                let col = self.col();
                match self.dl_literal()? {
                    DlLiteral::Atom(a) => body.push(a),
                    _ => return Err(ParseError::new(self.line, col, "clause bodies contain atoms only")),
                }
                if self.peek() != Some(&Tok::Comma) {
                    break;
                }
                self.pos += 1;
            }
        }
        self.punct(Tok::Arrow, "->")?;
        let mut head = Vec::new();
        if self.at_keyword("Bottom") {
            self.pos += 1;
        } else {
            loop {
                head.push(self.dl_literal()?);
                if self.peek() != Some(&Tok::Comma) {
                    break;
                }
                self.pos += 1;
            }
        }
        let clause = renumber(DlClause::new(body, head));
        if let Err(violations) = validate_dl_clause(&clause) {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(ParseError::new(self.line, 1, msgs.join("; ")));
        }
        Ok(clause)
    }
}

fn is_z_variable(s: &str) -> bool {
    s.len() > 1
        && s.starts_with('z')
        && s[1..].bytes().all(|b| b.is_ascii_digit())
        && s[1..].parse::<u32>().is_ok_and(|k| k >= 1)
}

/// Renames the `z` variables of a clause to `0..k` in order of index.
fn renumber(c: DlClause) -> DlClause {
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    for a in &c.body {
        for z in a.variables() {
            seen.insert(z, 0);
        }
    }
    for l in &c.head {
        for z in l.variables() {
            seen.insert(z, 0);
        }
    }
    for (i, v) in seen.values_mut().enumerate() {
        *v = i as u32;
    }
    let t = |t: DlTerm| match t {
        DlTerm::Z(z) => DlTerm::Z(seen[&z]),
        other => other,
    };
    let a = |a: DlAtom| match a {
        DlAtom::Concept(b, s) => DlAtom::Concept(b, t(s)),
        DlAtom::Role(r, s, u) => DlAtom::Role(r, t(s), t(u)),
    };
    let body = c.body.iter().map(|&x| a(x)).collect();
    let head = c
        .head
        .iter()
        .map(|&l| match l {
            DlLiteral::Atom(x) => DlLiteral::Atom(a(x)),
            DlLiteral::Eq(l, r) => DlLiteral::Eq(t(l), t(r)),
            DlLiteral::Neq(l, r) => DlLiteral::Neq(t(l), t(r)),
        })
        .collect();
    DlClause::new(body, head)
}

/// Parses a whole document: one axiom or raw clause per non-blank,
/// non-comment line. Names are interned on first use.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parse_document_with(text, SymbolTable::new())
}

/// Same as [`parse_document`], continuing an existing symbol table.
pub fn parse_document_with(text: &str, mut symbols: SymbolTable) -> Result<Document, ParseError> {
    let mut statements = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let raw = toks.iter().any(|t| t.1 == Tok::Arrow);
        let mut p = LineParser { toks, pos: 0, line: lineno, end_col: line.chars().count() + 1, symbols: &mut symbols };
        let stmt = if raw { Statement::Clause(p.raw_clause()?) } else { Statement::Axiom(p.axiom()?) };
        p.finish()?;
        statements.push((lineno, stmt));
    }
    Ok(Document { symbols, statements })
}

/// Parses only axioms; raw clause lines are rejected.
pub fn parse_ontology(text: &str) -> Result<(SymbolTable, Vec<NormalizedAxiom>), ParseError> {
    let doc = parse_document(text)?;
    let mut axioms = Vec::with_capacity(doc.statements.len());
    for (line, s) in doc.statements {
        match s {
            Statement::Axiom(a) => axioms.push(a),
            Statement::Clause(_) => return Err(ParseError::new(line, 1, "raw clauses are not axioms")),
        }
    }
    Ok((doc.symbols, axioms))
}

/// A query `A SubClassOf B` or `A SubClassOf Bottom`, with conjunctions and
/// disjunctions of names allowed on either side.
pub fn parse_query(text: &str, symbols: &mut SymbolTable) -> Result<(Vec<ConceptName>, Vec<ConceptName>), ParseError> {
    let toks = tokenize(text, 1)?;
    let mut p = LineParser { toks, pos: 0, line: 1, end_col: text.chars().count() + 1, symbols };
    let ax = p.axiom()?;
    p.finish()?;
    match ax {
        NormalizedAxiom::Conjunction { conjuncts, disjuncts } => Ok((conjuncts, disjuncts)),
        _ => Err(ParseError::new(1, 1, "a query relates concept names only")),
    }
}
