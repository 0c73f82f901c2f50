mod common;

use std::time::{Duration, Instant};

use alchiq_core::engine::{replay, EngineConfig};
use alchiq_core::frontend::load_ontology;
use alchiq_core::reasoner::{entails, run_entailment};
use alchiq_core::structure::{ContextId, ContextStructure, StrategyKind};
use alchiq_core::terms::{Atom, FTerm, RoleArgs};
use common::{chain_family, clause, subsumption, ONTO2};

const ONTO2_CLAUSES: &str = include_str!("data/onto2_clauses.dl");

fn cfg(strategy: StrategyKind) -> EngineConfig {
    EngineConfig { strategy, record: true, ..EngineConfig::default() }
}

fn find_context(d: &ContextStructure, core: &[Atom]) -> ContextId {
    let mut core = core.to_vec();
    core.sort();
    d.contexts().iter().find(|c| c.core == core).unwrap_or_else(|| panic!("no context with core {core:?}")).id
}

#[test]
fn second_example_derivation() {
    let started = Instant::now();
    let o = load_ontology(ONTO2_CLAUSES).unwrap();
    let q = subsumption(&o.symbols, "B0", "B4");
    let t = &o.symbols;
    let run = run_entailment(&o, &q, cfg(StrategyKind::Eager)).unwrap();
    assert!(run.entailed);
    let d = run.engine.structure();
    let c = |s: &str| clause(t, s);
    let v0 = run.query_context;
    for s in ["Top -> B0(x)", "Top -> S(f1(x),x)", "Top -> B1(f1(x))", "Top -> B2(x), B3(x)", "Top -> B4(x)"] {
        assert!(d.contains_up_to_redundancy(v0, &c(s)), "v0 lacks {s}");
    }
    let concept = |n: &str| Atom::Concept(t.lookup_concept(n).unwrap(), FTerm::X);
    let s_xy = Atom::Role(t.lookup_role("S").unwrap(), RoleArgs::XY);
    let v1 = find_context(d, &[s_xy, concept("B1")]);
    for s in [
        "Top -> S(x,y)",
        "Top -> B1(x)",
        "Top -> S(x,f2(x))",
        "Top -> B2(f2(x))",
        "Top -> S(x,f3(x))",
        "Top -> B3(f3(x))",
        "Top -> f2(x) = y, f3(x) = y, f3(x) = f2(x)",
        "Top -> f2(x) = y, f3(x) = y, B3(f2(x))",
        "Top -> f2(x) = y, f3(x) = y",
        "Top -> B3(y), f2(x) = y",
        "Top -> B2(y), B3(y)",
    ] {
        assert!(d.contains_up_to_redundancy(v1, &c(s)), "v1 lacks {s}");
    }
    let v2 = find_context(d, &[concept("B2")]);
    for s in ["Top -> B2(x)", "B3(x) -> B3(x)", "B3(x) -> Bottom"] {
        assert!(d.contains_up_to_redundancy(v2, &c(s)), "v2 lacks {s}");
    }
    let v3 = find_context(d, &[concept("B3")]);
    assert!(d.contains_up_to_redundancy(v3, &c("Top -> B3(x)")));
    assert!(!d.contains_up_to_redundancy(v3, &c("Top -> Bottom")));
    assert_eq!(d.len(), 4);
    let mut labels: Vec<&str> = d.edges().iter().map(|e| t.function_name(e.label)).collect();
    labels.sort();
    assert_eq!(labels, vec!["f1", "f2", "f3"]);
    for r in run.engine.records() {
        replay(r, d, &o.clauses).unwrap();
    }
    assert!(!d.contains_up_to_redundancy(v0, &c("Top -> Bottom")));
    assert!(started.elapsed() < Duration::from_secs(1));
}

#[test]
fn second_example_from_axioms() {
    let o = load_ontology(ONTO2).unwrap();
    for k in StrategyKind::ALL {
        let run = run_entailment(&o, &subsumption(&o.symbols, "B0", "B4"), cfg(k)).unwrap();
        assert!(run.entailed, "{k}");
        for r in run.engine.records() {
            replay(r, run.engine.structure(), &o.clauses).unwrap();
        }
        for other in ["B2", "B3"] {
            assert!(!entails(&o, &subsumption(&o.symbols, "B0", other), &cfg(k)).unwrap(), "{k} B0 ⊑ {other}");
        }
    }
}

#[test]
fn first_example_family() {
    for n in [2, 5] {
        let o = load_ontology(&chain_family(n)).unwrap();
        for k in [StrategyKind::Cautious, StrategyKind::Eager] {
            for i in 0..=n {
                let q = subsumption(&o.symbols, &format!("B{i}"), &format!("C{i}"));
                let run = run_entailment(&o, &q, cfg(k)).unwrap();
                assert!(run.entailed, "n={n} i={i} {k}");
                for r in run.engine.records() {
                    replay(r, run.engine.structure(), &o.clauses).unwrap();
                }
            }
        }
    }
}

#[test]
fn first_example_context_shape() {
    let n = 2;
    let o = load_ontology(&chain_family(n)).unwrap();
    let t = &o.symbols;
    let run = run_entailment(&o, &subsumption(t, "B0", "C0"), cfg(StrategyKind::Cautious)).unwrap();
    let d = run.engine.structure();
    assert_eq!(d.len(), n + 1);
    assert_eq!(d.edges().len(), 2 * n);
    for i in 1..=n {
        let core = [Atom::Concept(t.lookup_concept(&format!("B{i}")).unwrap(), FTerm::X)];
        let v = find_context(d, &core);
        assert_eq!(d.context(v).in_edges.len(), 2);
        assert!(d.contains_up_to_redundancy(v, &clause(t, &format!("Top -> C{i}(x)"))));
    }
    assert!(d.contains_up_to_redundancy(run.query_context, &clause(t, "Top -> C0(x)")));
}
