//! Ontology input: parsing, clausification and trigger computation.

mod clausify;
mod parser;
mod triggers;

pub use clausify::{clausify, clausify_axiom, load_ontology, Ontology};
pub use parser::{
    parse_document, parse_document_with, parse_ontology, parse_query, Document, NormalizedAxiom, RoleRef, Statement,
};
pub use triggers::{compute_triggers, TriggerSets};

pub use crate::clause::validate_dl_clause;
