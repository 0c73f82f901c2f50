//! Successor and predecessor trigger sets.

use std::collections::BTreeSet;

use crate::clause::DlClause;
use crate::symbols::ConceptName;
use crate::terms::{Atom, DlAtom, DlTerm, FTerm, RoleArgs};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriggerSets {
    /// Atoms of shape `B(x)`, `S(x,y)`, `S(y,x)`.
    pub su: BTreeSet<Atom>,
    /// Atoms of shape `B(y)`, `S(y,x)`, `S(x,y)`.
    pub pr: BTreeSet<Atom>,
}

impl TriggerSets {
    /// Adds `B(y)` to `Pr` for extra concepts, e.g. query predicates that
    /// do not occur in the ontology.
    pub fn extend_predecessor_concepts(&mut self, concepts: impl IntoIterator<Item = ConceptName>) {
        self.pr.extend(concepts.into_iter().map(|b| Atom::Concept(b, FTerm::Y)));
    }
}

pub fn compute_triggers<'a>(clauses: impl IntoIterator<Item = &'a DlClause>) -> TriggerSets {
    let mut t = TriggerSets::default();
    let mut concepts = BTreeSet::new();
    for c in clauses {
        for a in &c.body {
            match *a {
                DlAtom::Concept(b, DlTerm::X) => {
                    t.su.insert(Atom::Concept(b, FTerm::X));
                }
                DlAtom::Role(s, DlTerm::X, DlTerm::Z(_)) => {
                    t.su.insert(Atom::Role(s, RoleArgs::XY));
                }
                DlAtom::Role(s, DlTerm::Z(_), DlTerm::X) => {
                    t.su.insert(Atom::Role(s, RoleArgs::YX));
                }
                _ => {}
            }
        }
        concepts.extend(c.concepts());
    }
    t.pr = t.su.iter().filter_map(|a| a.swap_xy()).collect();
    t.extend_predecessor_concepts(concepts);
    t
}
