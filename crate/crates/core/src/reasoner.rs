//! Entailment, satisfiability and classification on top of the engine.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::clause::{ContextClause, QueryClause};
use crate::engine::{Engine, EngineConfig, EngineStats};
use crate::error::ReasonerError;
use crate::frontend::{compute_triggers, Ontology, TriggerSets};
use crate::structure::ContextId;
use crate::symbols::{ConceptName, SymbolTable};
use crate::terms::{Atom, FTerm};

fn triggers_for(o: &Ontology, extra: impl IntoIterator<Item = ConceptName>) -> TriggerSets {
    let mut t = compute_triggers(&o.clauses);
    t.extend_predecessor_concepts(extra);
    t
}

fn cx(b: ConceptName) -> Atom {
    Atom::Concept(b, FTerm::X)
}

/// A finished entailment run, kept around for inspection.
pub struct EntailmentRun<'o> {
    pub engine: Engine<'o>,
    pub query_context: ContextId,
    pub entailed: bool,
}

/// Saturates a structure with a single query context for `q` and reads
/// off the answer.
pub fn run_entailment<'o>(
    o: &'o Ontology,
    q: &QueryClause,
    config: EngineConfig,
) -> Result<EntailmentRun<'o>, ReasonerError> {
    let triggers = triggers_for(o, q.body.iter().chain(&q.head).copied());
    let mut engine = Engine::new(&o.clauses, &triggers, config);
    let query_context = engine.add_query_context(q.body_atoms(), q.head_atoms());
    engine.run()?;
    let entailed = engine.structure().contains_up_to_redundancy(query_context, &q.as_context_clause());
    Ok(EntailmentRun { engine, query_context, entailed })
}

/// `O ⊨ Γ_Q → Δ_Q`
pub fn entails(o: &Ontology, q: &QueryClause, config: &EngineConfig) -> Result<bool, ReasonerError> {
    run_entailment(o, q, config.clone()).map(|r| r.entailed)
}

pub fn satisfiable(o: &Ontology, b: ConceptName, config: &EngineConfig) -> Result<bool, ReasonerError> {
    entails(o, &QueryClause::unsatisfiability(b), config).map(|e| !e)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassificationResult {
    /// Non-trivial `(sub, sup)` pairs between satisfiable concepts.
    pub subsumptions: BTreeSet<(ConceptName, ConceptName)>,
    pub unsatisfiable: BTreeSet<ConceptName>,
    pub stats: EngineStats,
}

impl ClassificationResult {
    pub fn is_subsumed(&self, sub: ConceptName, sup: ConceptName) -> bool {
        sub == sup || self.unsatisfiable.contains(&sub) || self.subsumptions.contains(&(sub, sup))
    }

    /// `A SubClassOf B` lines sorted lexicographically, then
    /// `A SubClassOf Bottom` lines, then a comment block with counts.
    pub fn render(&self, symbols: &SymbolTable) -> String {
        let mut subs: Vec<String> = self
            .subsumptions
            .iter()
            .map(|&(a, b)| format!("{} SubClassOf {}", symbols.concept_name(a), symbols.concept_name(b)))
            .collect();
        subs.sort();
        let mut unsat: Vec<String> =
            self.unsatisfiable.iter().map(|&a| format!("{} SubClassOf Bottom", symbols.concept_name(a))).collect();
        unsat.sort();
        let mut out = String::new();
        for line in subs.iter().chain(&unsat) {
            out.push_str(line);
            out.push('\n');
        }
        let s = &self.stats;
        let _ = writeln!(out, "# subsumptions {}", self.subsumptions.len());
        let _ = writeln!(out, "# unsatisfiable {}", self.unsatisfiable.len());
        let _ = writeln!(out, "# contexts {}", s.contexts);
        let _ = writeln!(out, "# edges {}", s.edges);
        let _ = writeln!(out, "# clauses {}", s.clauses);
        let _ = writeln!(out, "# inferences {}", s.inferences);
        out
    }
}

fn read_off(
    engine: &Engine<'_>,
    queries: &[(ConceptName, ContextId)],
    concepts: &[ConceptName],
    result: &mut ClassificationResult,
) {
    let d = engine.structure();
    for &(b, q) in queries {
        if d.contains_up_to_redundancy(q, &ContextClause::new([cx(b)], [])) {
            result.unsatisfiable.insert(b);
            continue;
        }
        for &c in concepts {
            if c != b && d.contains_up_to_redundancy(q, &ContextClause::new([cx(b)], [cx(c).into()])) {
                result.subsumptions.insert((b, c));
            }
        }
    }
}

fn add_stats(total: &mut EngineStats, s: EngineStats) {
    total.contexts += s.contexts;
    total.edges += s.edges;
    total.clauses += s.clauses;
    total.derived += s.derived;
    total.inferences += s.inferences;
}

/// A finished classification together with the saturated engine.
pub struct ClassificationRun<'o> {
    pub engine: Engine<'o>,
    pub result: ClassificationResult,
}

/// One saturation in which every concept has its own query context.
pub fn run_classification<'o>(o: &'o Ontology, config: EngineConfig) -> Result<ClassificationRun<'o>, ReasonerError> {
    let concepts: Vec<ConceptName> = o.symbols.concepts().collect();
    let triggers = triggers_for(o, concepts.iter().copied());
    let mut engine = Engine::new(&o.clauses, &triggers, config);
    let queries: Vec<(ConceptName, ContextId)> =
        concepts.iter().map(|&b| (b, engine.add_query_context([cx(b)], concepts.iter().map(|&c| cx(c))))).collect();
    engine.run()?;
    let mut result = ClassificationResult { stats: engine.stats(), ..Default::default() };
    read_off(&engine, &queries, &concepts, &mut result);
    Ok(ClassificationRun { engine, result })
}

/// All subsumptions between concept names of `o`.
pub fn classify(o: &Ontology, config: &EngineConfig) -> Result<ClassificationResult, ReasonerError> {
    run_classification(o, config.clone()).map(|r| r.result)
}

/// Like [`classify`], but each concept gets its own structure and the
/// concepts are spread over `threads` worker threads.
pub fn classify_sharded(
    o: &Ontology,
    config: &EngineConfig,
    threads: usize,
) -> Result<ClassificationResult, ReasonerError> {
    let concepts: Vec<ConceptName> = o.symbols.concepts().collect();
    let triggers = triggers_for(o, concepts.iter().copied());
    let threads = threads.max(1);
    let chunk = concepts.len().div_ceil(threads).max(1);
    let parts: Vec<Result<ClassificationResult, ReasonerError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = concepts
            .chunks(chunk)
            .map(|mine| {
                let (concepts, triggers) = (&concepts, &triggers);
                scope.spawn(move || {
                    let mut part = ClassificationResult::default();
                    for &b in mine {
                        let mut engine = Engine::new(&o.clauses, triggers, config.clone());
                        let q = engine.add_query_context([cx(b)], concepts.iter().map(|&c| cx(c)));
                        engine.run()?;
                        add_stats(&mut part.stats, engine.stats());
                        read_off(&engine, &[(b, q)], concepts, &mut part);
                    }
                    Ok(part)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("classification worker panicked")).collect()
    });
    let mut result = ClassificationResult::default();
    for part in parts {
        let part = part?;
        result.subsumptions.extend(part.subsumptions);
        result.unsatisfiable.extend(part.unsatisfiable);
        add_stats(&mut result.stats, part.stats);
    }
    Ok(result)
}
