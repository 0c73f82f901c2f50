//! DL-clauses, context clauses and query clauses, plus the redundancy test
//! that gates every inference.

use std::collections::BTreeSet;
use std::fmt;

use crate::symbols::{ConceptName, SymbolTable};
use crate::terms::{Atom, DlAtom, DlLiteral, DlTerm, FTerm, Literal, Render};

/// An ontology clause over `x` and `z_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DlClause {
    pub body: Vec<DlAtom>,
    pub head: Vec<DlLiteral>,
}

/// One reason a DL-clause is malformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DlClauseViolation {
    BodyShape(DlAtom),
    HeadShape(DlLiteral),
    UnsafeVariable(u32),
}

impl fmt::Display for DlClauseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DlClauseViolation::BodyShape(a) => write!(f, "body atom {a:?} is not of the form B(x), S(x,z), S(z,x)"),
            DlClauseViolation::HeadShape(l) => write!(f, "head literal {l:?} is not a DL-literal"),
            DlClauseViolation::UnsafeVariable(z) => write!(f, "z{} occurs in the head but not in the body", z + 1),
        }
    }
}

impl DlClause {
    pub fn new(body: Vec<DlAtom>, head: Vec<DlLiteral>) -> Self {
        let mut clause = Self { body, head };
        clause.body.sort();
        clause.body.dedup();
        clause.head.sort();
        clause.head.dedup();
        clause
    }

    /// Number of distinct `z` variables (indices are dense from 0).
    pub fn variable_count(&self) -> usize {
        self.body.iter().flat_map(|a| a.variables()).map(|z| z as usize + 1).max().unwrap_or(0)
    }

    pub fn functions(&self) -> impl Iterator<Item = crate::symbols::Func> + '_ {
        let from_atom = |a: &DlAtom| -> Vec<crate::symbols::Func> {
            let terms = match *a {
                DlAtom::Concept(_, t) => vec![t],
                DlAtom::Role(_, s, t) => vec![s, t],
            };
            terms.into_iter().filter_map(|t| if let DlTerm::Fn(f) = t { Some(f) } else { None }).collect()
        };
        self.head.iter().flat_map(move |l| match l {
            DlLiteral::Atom(a) => from_atom(a),
            DlLiteral::Eq(s, t) | DlLiteral::Neq(s, t) => {
                [*s, *t].into_iter().filter_map(|t| if let DlTerm::Fn(f) = t { Some(f) } else { None }).collect()
            }
        })
    }

    pub fn concepts(&self) -> impl Iterator<Item = ConceptName> + '_ {
        let body = self.body.iter().filter_map(|a| match a {
            DlAtom::Concept(b, _) => Some(*b),
            _ => None,
        });
        let head = self.head.iter().filter_map(|l| match l {
            DlLiteral::Atom(DlAtom::Concept(b, _)) => Some(*b),
            _ => None,
        });
        body.chain(head)
    }
}

/// Checks body shapes, head shapes and that every head `z_i` occurs in the body.
pub fn validate_dl_clause(c: &DlClause) -> Result<(), Vec<DlClauseViolation>> {
    let mut violations = Vec::new();
    let mut bound = BTreeSet::new();
    for &a in &c.body {
        if !a.is_body_shaped() {
            violations.push(DlClauseViolation::BodyShape(a));
        }
        bound.extend(a.variables());
    }
    let mut unsafe_vars = BTreeSet::new();
    for &l in &c.head {
        if !l.is_well_shaped() {
            violations.push(DlClauseViolation::HeadShape(l));
        }
        unsafe_vars.extend(l.variables().into_iter().filter(|z| !bound.contains(z)));
    }
    violations.extend(unsafe_vars.into_iter().map(DlClauseViolation::UnsafeVariable));
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A clause over `x`, `y` and `f(x)`: function-free atoms in the body,
/// context literals in the head. Both sides are kept sorted and
/// duplicate-free, so structural equality is clause identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextClause {
    body: Vec<Atom>,
    head: Vec<Literal>,
}

impl ContextClause {
    pub fn new(body: impl IntoIterator<Item = Atom>, head: impl IntoIterator<Item = Literal>) -> Self {
        let mut body: Vec<Atom> = body.into_iter().collect();
        body.sort_unstable();
        body.dedup();
        let mut head: Vec<Literal> = head.into_iter().collect();
        head.sort_unstable();
        head.dedup();
        Self { body, head }
    }

    /// `⊤ → A`
    pub fn fact(a: Atom) -> Self {
        Self { body: Vec::new(), head: vec![Literal::Atom(a)] }
    }

    /// `A → A`
    pub fn identity(a: Atom) -> Self {
        Self { body: vec![a], head: vec![Literal::Atom(a)] }
    }

    pub fn body(&self) -> &[Atom] {
        &self.body
    }

    pub fn head(&self) -> &[Literal] {
        &self.head
    }

    pub fn len(&self) -> usize {
        self.body.len() + self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty() && self.head.is_empty()
    }

    /// Body atoms function-free and every head literal of a legal shape.
    pub fn is_well_formed(&self) -> bool {
        self.body.iter().all(|a| a.is_function_free()) && self.head.iter().all(|l| l.is_well_formed())
    }

    /// `s ≈ s ∈ Δ`, or `{s ≈ t, s ≉ t} ⊆ Δ`.
    pub fn is_head_tautology(&self) -> bool {
        self.head.iter().any(|l| match *l {
            Literal::Eq(s, t) => s == t || self.head.binary_search(&Literal::Neq(s, t)).is_ok(),
            _ => false,
        })
    }

    /// `self.body ⊆ other.body` and `self.head ⊆ other.head`.
    pub fn subsumes(&self, other: &ContextClause) -> bool {
        is_sorted_subset(&self.body, &other.body) && is_sorted_subset(&self.head, &other.head)
    }
}

fn is_sorted_subset<T: Ord>(small: &[T], large: &[T]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for s in small {
        for l in it.by_ref() {
            match l.cmp(s) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// `C ⪦ U`: `C` is a head tautology, or some clause of `U` subsumes it.
pub fn contains_up_to_redundancy<'a>(u: impl IntoIterator<Item = &'a ContextClause>, c: &ContextClause) -> bool {
    c.is_head_tautology() || u.into_iter().any(|d| d.subsumes(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplified {
    Clause(ContextClause),
    Tombstone,
}

/// Deduplication is already done by construction; tautologies are dropped.
pub fn simplify_head(c: ContextClause) -> Simplified {
    if c.is_head_tautology() {
        Simplified::Tombstone
    } else {
        Simplified::Clause(c)
    }
}

/// A question `B1(x) ∧ … → C1(x) ∨ …`; an empty head is `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QueryClause {
    pub body: Vec<ConceptName>,
    pub head: Vec<ConceptName>,
}

impl QueryClause {
    pub fn new(body: impl IntoIterator<Item = ConceptName>, head: impl IntoIterator<Item = ConceptName>) -> Self {
        let mut body: Vec<_> = body.into_iter().collect();
        body.sort();
        body.dedup();
        let mut head: Vec<_> = head.into_iter().collect();
        head.sort();
        head.dedup();
        Self { body, head }
    }

    pub fn subsumption(sub: ConceptName, sup: ConceptName) -> Self {
        Self::new([sub], [sup])
    }

    pub fn unsatisfiability(c: ConceptName) -> Self {
        Self::new([c], [])
    }

    pub fn body_atoms(&self) -> Vec<Atom> {
        self.body.iter().map(|&b| Atom::Concept(b, FTerm::X)).collect()
    }

    pub fn head_atoms(&self) -> Vec<Atom> {
        self.head.iter().map(|&b| Atom::Concept(b, FTerm::X)).collect()
    }

    pub fn as_context_clause(&self) -> ContextClause {
        ContextClause::new(self.body_atoms(), self.head_atoms().into_iter().map(Literal::Atom))
    }
}

impl Render for ContextClause {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        if self.body.is_empty() {
            out.push('⊤');
        }
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                out.push_str(" ∧ ");
            }
            a.render_into(symbols, out);
        }
        out.push_str(" → ");
        if self.head.is_empty() {
            out.push('⊥');
        }
        for (i, l) in self.head.iter().enumerate() {
            if i > 0 {
                out.push_str(" ∨ ");
            }
            l.render_into(symbols, out);
        }
    }
}

impl Render for DlClause {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        if self.body.is_empty() {
            out.push_str("Top");
        }
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            a.render_into(symbols, out);
        }
        out.push_str(" -> ");
        if self.head.is_empty() {
            out.push_str("Bottom");
        }
        for (i, l) in self.head.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            l.render_into(symbols, out);
        }
    }
}
