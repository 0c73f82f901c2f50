//! Plain-text and DOT renderings of a context structure.

use std::fmt::Write;

use crate::symbols::SymbolTable;
use crate::terms::{Atom, Render};

use super::ContextStructure;

fn core_label(core: &[Atom], symbols: &SymbolTable) -> String {
    if core.is_empty() {
        return "⊤".to_string();
    }
    core.iter().map(|a| a.render(symbols)).collect::<Vec<_>>().join(", ")
}

/// One line per context (`context <id> core <atoms> clauses <n>`), then one
/// line per edge (`edge <from> <label> <to>`).
pub fn to_text(d: &ContextStructure, symbols: &SymbolTable) -> String {
    let mut out = format!("# contexts {} edges {}\n", d.len(), d.edges().len());
    for c in d.contexts() {
        let kind = if c.is_query { " query" } else { "" };
        let _ =
            writeln!(out, "context {}{} core [{}] clauses {}", c.id, kind, core_label(&c.core, symbols), c.store.len());
    }
    for e in d.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.from, symbols.function_name(e.label), e.to);
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(d: &ContextStructure, symbols: &SymbolTable) -> String {
    let mut out = String::from("digraph contexts {\n  node [shape=box];\n");
    for c in d.contexts() {
        let shape = if c.is_query { ", peripheries=2" } else { "" };
        let _ = writeln!(
            out,
            "  {} [label=\"{}: {}\\n{} clauses\"{}];",
            c.id,
            c.id,
            escape(&core_label(&c.core, symbols)),
            c.store.len(),
            shape
        );
    }
    for e in d.edges() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, escape(symbols.function_name(e.label)));
    }
    out.push_str("}\n");
    out
}
