//! Normalized axioms to DL-clauses.

use crate::clause::DlClause;
use crate::symbols::{ConceptName, RoleName, SymbolTable};
use crate::terms::{DlAtom, DlLiteral, DlTerm};

use super::parser::{Document, NormalizedAxiom, RoleRef, Statement};

/// An ontology: DL-clauses over an interned signature.
#[derive(Clone, Debug, Default)]
pub struct Ontology {
    pub symbols: SymbolTable,
    pub clauses: Vec<DlClause>,
}

impl Ontology {
    pub fn new(symbols: SymbolTable, clauses: Vec<DlClause>) -> Self {
        Self { symbols, clauses }
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

/// `S(a,b)`, or `S(b,a)` for an inverse role.
fn role_atom(r: RoleRef, a: DlTerm, b: DlTerm) -> DlAtom {
    if r.inverse {
        DlAtom::Role(r.role, b, a)
    } else {
        DlAtom::Role(r.role, a, b)
    }
}

fn cx(b: ConceptName) -> DlAtom {
    DlAtom::Concept(b, DlTerm::X)
}

/// Clauses for one axiom. `index` names the fresh symbols it introduces.
pub fn clausify_axiom(axiom: &NormalizedAxiom, index: usize, symbols: &mut SymbolTable) -> Vec<DlClause> {
    let mut out = Vec::new();
    match *axiom {
        NormalizedAxiom::Conjunction { ref conjuncts, ref disjuncts } => {
            out.push(DlClause::new(
                conjuncts.iter().map(|&b| cx(b)).collect(),
                disjuncts.iter().map(|&b| DlLiteral::Atom(cx(b))).collect(),
            ));
        }
        NormalizedAxiom::AtLeast { sub, n, role, filler } => {
            let fs: Vec<_> = (1..=n).map(|i| symbols.fresh_function(&format!("f#{index}.{i}"))).collect();
            for &f in &fs {
                out.push(DlClause::new(
                    vec![cx(sub)],
                    vec![DlLiteral::Atom(role_atom(role, DlTerm::X, DlTerm::Fn(f)))],
                ));
                if let Some(b2) = filler {
                    out.push(DlClause::new(vec![cx(sub)], vec![DlLiteral::Atom(DlAtom::Concept(b2, DlTerm::Fn(f)))]));
                }
            }
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    out.push(DlClause::new(vec![cx(sub)], vec![DlLiteral::Neq(DlTerm::Fn(fs[i]), DlTerm::Fn(fs[j]))]));
                }
            }
        }
        NormalizedAxiom::Exists { role, filler, sup } => {
            let mut body = vec![role_atom(role, DlTerm::Z(0), DlTerm::X)];
            body.extend(filler.map(cx));
            let head = sup.map(|b| DlLiteral::Atom(DlAtom::Concept(b, DlTerm::Z(0)))).into_iter().collect();
            out.push(DlClause::new(body, head));
        }
        NormalizedAxiom::AtMost { sub, n, role, filler } => {
            let counted: RoleName = match filler {
                Some(b2) => {
                    let name = format!("{}_{}#{index}", symbols.role_name(role.role), symbols.concept_name(b2));
                    let fresh = symbols.fresh_role(&name);
                    let body = vec![role_atom(role, DlTerm::Z(0), DlTerm::X), cx(b2)];
                    out.push(DlClause::new(body, vec![DlLiteral::Atom(DlAtom::Role(fresh, DlTerm::Z(0), DlTerm::X))]));
                    fresh
                }
                None if !role.inverse => role.role,
                None => {
                    let name = format!("{}_inv#{index}", symbols.role_name(role.role));
                    let fresh = symbols.fresh_role(&name);
                    let body = vec![role_atom(role, DlTerm::Z(0), DlTerm::X)];
                    out.push(DlClause::new(body, vec![DlLiteral::Atom(DlAtom::Role(fresh, DlTerm::Z(0), DlTerm::X))]));
                    fresh
                }
            };
            let k = n + 1;
            let mut body = vec![cx(sub)];
            body.extend((0..k).map(|i| DlAtom::Role(counted, DlTerm::X, DlTerm::Z(i))));
            let mut head = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    head.push(DlLiteral::Eq(DlTerm::Z(i), DlTerm::Z(j)));
                }
            }
            out.push(DlClause::new(body, head));
        }
        NormalizedAxiom::SubRole { sub, sup } => {
            out.push(DlClause::new(
                vec![DlAtom::Role(sub, DlTerm::Z(0), DlTerm::X)],
                vec![DlLiteral::Atom(DlAtom::Role(sup, DlTerm::Z(0), DlTerm::X))],
            ));
        }
        NormalizedAxiom::InverseSubRole { sub, sup } => {
            out.push(DlClause::new(
                vec![DlAtom::Role(sub, DlTerm::Z(0), DlTerm::X)],
                vec![DlLiteral::Atom(DlAtom::Role(sup, DlTerm::X, DlTerm::Z(0)))],
            ));
        }
    }
    out
}

/// Clausifies every statement of a document, keeping raw clauses as they are.
pub fn clausify(doc: Document) -> Ontology {
    let Document { mut symbols, statements } = doc;
    let mut clauses = Vec::new();
    for (i, (_, stmt)) in statements.iter().enumerate() {
        match stmt {
            Statement::Axiom(ax) => clauses.extend(clausify_axiom(ax, i + 1, &mut symbols)),
            Statement::Clause(c) => clauses.push(c.clone()),
        }
    }
    Ontology { symbols, clauses }
}

/// Parses and clausifies.
pub fn load_ontology(text: &str) -> Result<Ontology, crate::error::ParseError> {
    super::parser::parse_document(text).map(clausify)
}
