//! A consequence-based reasoner for the description logic ALCHIQ.
//!
//! Ontologies are parsed from a small line syntax, translated into
//! DL-clauses, and saturated over a graph of contexts whose clauses talk
//! about a term `x`, its predecessor `y` and its successors `f(x)`.

pub mod clause;
pub mod elh;
pub mod engine;
pub mod error;
pub mod frontend;
pub mod order;
pub mod random;
pub mod reasoner;
pub mod structure;
pub mod symbols;
pub mod terms;
