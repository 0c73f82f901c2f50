//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod model;
pub mod props;
pub mod runs;

use alchiq_core::clause::{ContextClause, QueryClause};
use alchiq_core::symbols::SymbolTable;
use alchiq_core::terms::{Atom, FTerm, Literal};

fn term(t: &SymbolTable, s: &str) -> FTerm {
    match s.trim() {
        "x" => FTerm::X,
        "y" => FTerm::Y,
        other => {
            let name = other.strip_suffix("(x)").unwrap_or_else(|| panic!("bad term {other}"));
            FTerm::Fn(t.lookup_function(name).unwrap_or_else(|| panic!("unknown function {name}")))
        }
    }
}

fn atom(t: &SymbolTable, s: &str) -> Atom {
    let s = s.trim();
    let open = s.find('(').unwrap_or_else(|| panic!("bad atom {s}"));
    let name = &s[..open];
    let inner = &s[open + 1..s.len() - 1];
    let depth_split = inner
        .char_indices()
        .scan(0i32, |d, (i, c)| {
            match c {
                '(' => *d += 1,
                ')' => *d -= 1,
                _ => {}
            }
            Some((i, c, *d))
        })
        .find(|&(_, c, d)| c == ',' && d == 0)
        .map(|(i, _, _)| i);
    match depth_split {
        None => {
            Atom::Concept(t.lookup_concept(name).unwrap_or_else(|| panic!("unknown concept {name}")), term(t, inner))
        }
        Some(i) => Atom::role(
            t.lookup_role(name).unwrap_or_else(|| panic!("unknown role {name}")),
            term(t, &inner[..i]),
            term(t, &inner[i + 1..]),
        )
        .unwrap_or_else(|| panic!("bad role atom {s}")),
    }
}

fn literal(t: &SymbolTable, s: &str) -> Literal {
    if let Some((a, b)) = s.split_once("!=") {
        Literal::inequality(term(t, a), term(t, b)).expect("inequality shape")
    } else if let Some((a, b)) = s.split_once('=') {
        Literal::equality(term(t, a), term(t, b)).expect("equality shape")
    } else {
        Literal::Atom(atom(t, s))
    }
}

/// Splits on top-level commas.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

/// Parses `B(x), S(x,y) -> f(x) = y, C(f(x))`; `Top` and `Bottom` mark
/// empty sides.
pub fn clause(t: &SymbolTable, s: &str) -> ContextClause {
    let (body, head) = s.split_once("->").expect("clause needs ->");
    let body: Vec<Atom> =
        if body.trim() == "Top" { vec![] } else { split_top(body).into_iter().map(|a| atom(t, a)).collect() };
    let head: Vec<Literal> =
        if head.trim() == "Bottom" { vec![] } else { split_top(head).into_iter().map(|l| literal(t, l)).collect() };
    ContextClause::new(body, head)
}

pub fn subsumption(t: &SymbolTable, sub: &str, sup: &str) -> QueryClause {
    QueryClause::subsumption(t.lookup_concept(sub).unwrap(), t.lookup_concept(sup).unwrap())
}

/// The two-role chain family: `B_i ⊑ ∃S_j.B_{i+1}` for two roles,
/// `B_n ⊑ C_n`, `∃S_j.C_{i+1} ⊑ C_i`.
pub fn chain_family(n: usize) -> String {
    let mut s = String::new();
    for i in 0..n {
        for j in 1..=2 {
            s.push_str(&format!("B{i} SubClassOf Exists S{j} B{}\n", i + 1));
            s.push_str(&format!("Exists S{j} C{} SubClassOf C{i}\n", i + 1));
        }
    }
    s.push_str(&format!("B{n} SubClassOf C{n}\n"));
    s
}

pub const ONTO2: &str = include_str!("../data/onto2.dl");
