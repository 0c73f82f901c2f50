//! Engine-level checks shared by the integration tests and the acceptance
//! target.

use std::collections::BTreeSet;

use alchiq_core::clause::{ContextClause, QueryClause};
use alchiq_core::engine::{Engine, EngineConfig};
use alchiq_core::frontend::{compute_triggers, load_ontology, Ontology};
use alchiq_core::random::{random_alchiq, random_elh, GeneratorParams};
use alchiq_core::reasoner::classify;
use alchiq_core::structure::StrategyKind;
use alchiq_core::symbols::ConceptName;
use alchiq_core::terms::{Atom, FTerm, Literal, RoleArgs};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The clause forms a cautious run on an ELH ontology may derive:
/// `⊤ → B(x)`, `⊤ → S(x,f(x))`, `⊤ → B(f(x))`, `S(y,x) → B(y)` and
/// `S1(y,x) → S2(y,x)`.
pub fn is_elh_form(c: &ContextClause) -> bool {
    use Atom::{Concept, Role};
    matches!(
        (c.body(), c.head()),
        ([], [Literal::Atom(Concept(_, FTerm::X | FTerm::Fn(_)) | Role(_, RoleArgs::XF(_)))])
            | ([Role(_, RoleArgs::YX)], [Literal::Atom(Concept(_, FTerm::Y) | Role(_, RoleArgs::YX))])
    )
}

/// Runs cautious entailment checks `B1 → B2` with recording on random ELH
/// ontologies and returns `(clauses checked, violations)`.
pub fn elh_shape_violations(seeds: std::ops::Range<u64>) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut violations = Vec::new();
    for seed in seeds {
        let o = load_ontology(&random_elh(seed, GeneratorParams::default())).unwrap();
        let concepts: Vec<_> = o.symbols.concepts().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut triggers = compute_triggers(&o.clauses);
        triggers.extend_predecessor_concepts(concepts.iter().copied());
        for _ in 0..3 {
            let (b1, b2) = (*concepts.choose(&mut rng).unwrap(), *concepts.choose(&mut rng).unwrap());
            let q = QueryClause::subsumption(b1, b2);
            let config = EngineConfig { strategy: StrategyKind::Cautious, record: true, ..EngineConfig::default() };
            let mut engine = Engine::new(&o.clauses, &triggers, config);
            engine.add_query_context(q.body_atoms(), q.head_atoms());
            engine.run().unwrap();
            for r in engine.records() {
                checked += 1;
                if !is_elh_form(&r.clause) {
                    violations.push(format!("seed {seed}: {} {:?}", r.trace_line(), r.clause));
                }
            }
            for ctx in engine.structure().contexts() {
                if ctx.core.len() > 1 {
                    violations.push(format!("seed {seed}: core {:?} of {} has more than one atom", ctx.core, ctx.id));
                }
            }
        }
    }
    (checked, violations)
}

/// Hand-written ontologies plus the two worked examples.
pub fn fixed_corpus() -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = [
        ("disjunction", include_str!("../data/corpus/disjunction.dl")),
        ("counting", include_str!("../data/corpus/counting.dl")),
        ("inverse", include_str!("../data/corpus/inverse.dl")),
        ("hierarchy", include_str!("../data/corpus/hierarchy.dl")),
        ("bottom", include_str!("../data/corpus/bottom.dl")),
        ("qualified", include_str!("../data/corpus/qualified.dl")),
        ("onto2", super::ONTO2),
    ]
    .iter()
    .map(|&(n, t)| (n.to_string(), t.to_string()))
    .collect();
    v.push(("family3".to_string(), super::chain_family(3)));
    v
}

/// The fixed corpus plus `random` seeded ALCHIQ ontologies.
pub fn corpus(random: u64) -> Vec<(String, String)> {
    let mut v = fixed_corpus();
    v.extend((0..random).map(|s| (format!("random{s}"), random_alchiq(s, GeneratorParams::default()))));
    v
}

/// Classification answers for one configuration.
pub type Answers = (BTreeSet<(ConceptName, ConceptName)>, BTreeSet<ConceptName>);

pub fn answers(o: &Ontology, config: &EngineConfig) -> Result<Answers, String> {
    classify(o, config).map(|r| (r.subsumptions, r.unsatisfiable)).map_err(|e| e.to_string())
}

/// Classifies every corpus ontology with every strategy, in FIFO order and
/// under `shuffles` seeded work-queue orders, and reports runs whose
/// answers differ from the cautious FIFO run.
pub fn robustness_divergences(corpus: &[(String, String)], shuffles: u64) -> (usize, Vec<String>) {
    let mut runs = 0;
    let mut divergences = Vec::new();
    for (name, text) in corpus {
        let o = load_ontology(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let base = answers(&o, &EngineConfig::default());
        for strategy in StrategyKind::ALL {
            for seed in std::iter::once(None).chain((0..shuffles).map(Some)) {
                let config = EngineConfig { strategy, shuffle_seed: seed, ..EngineConfig::default() };
                runs += 1;
                let got = answers(&o, &config);
                if got != base {
                    divergences.push(format!("{name}: {strategy} with shuffle {seed:?} differs"));
                }
            }
        }
    }
    (runs, divergences)
}

/// A ladder of binary choices: `L_i` has an `f_i`-successor in `X_{i+1}`
/// and a `g_i`-successor in `Y_{i+1}`, and every earlier choice is copied
/// to both successors. With the eager strategy each combination of choices
/// is a separate context, so level `i` holds `2^i` contexts. The leaves
/// close a disjunction, and `Done` flows back to the root.
pub fn choice_ladder(n: usize) -> String {
    let mut s = String::new();
    for i in 0..n {
        let j = i + 1;
        for (f, c) in [("f", "X"), ("g", "Y")] {
            s.push_str(&format!("L{i}(x) -> R(x,{f}{i}(x))\n"));
            s.push_str(&format!("L{i}(x) -> L{j}({f}{i}(x))\n"));
            s.push_str(&format!("L{i}(x) -> {c}{j}({f}{i}(x))\n"));
            for k in 1..=i {
                for c2 in ["X", "Y"] {
                    s.push_str(&format!("L{i}(x), {c2}{k}(x) -> {c2}{k}({f}{i}(x))\n"));
                }
            }
        }
    }
    s.push_str(&format!(
        "L{n} And X{n} SubClassOf P Or Q\nL{n} And Y{n} SubClassOf P Or Q\nP SubClassOf Done\nQ SubClassOf Done\n"
    ));
    s.push_str("R(z1,x), Done(x) -> Done(z1)\n");
    s
}
