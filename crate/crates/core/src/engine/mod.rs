//! The saturation loop.
//!
//! Work items are processed from a FIFO queue (or in a seeded random order).
//! Successor checks wait in a second queue that is only drained when the
//! main queue is empty, so everything derivable locally is known before a
//! successor context is chosen.

mod record;
mod rules;

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clause::{ContextClause, DlClause};
use crate::error::{ReasonerError, ResourceKind};
use crate::frontend::TriggerSets;
use crate::order::ContextTermOrder;
use crate::structure::{AddOutcome, ContextId, ContextStructure, Seq, Strategy, StrategyKind};
use crate::symbols::Func;
use crate::terms::{Atom, Literal};

pub use record::{replay, DerivationRecord, Premise, Rule};
pub use rules::match_body_atom;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub strategy: StrategyKind,
    pub max_clauses: usize,
    pub timeout: Duration,
    /// Pop work items in a random order drawn from this seed.
    pub shuffle_seed: Option<u64>,
    /// Keep a [`DerivationRecord`] for every added clause.
    pub record: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            strategy: StrategyKind::default(),
            max_clauses: 10_000_000,
            timeout: Duration::from_secs(300),
            shuffle_seed: None,
            record: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub contexts: usize,
    pub edges: usize,
    /// Live clauses at the end of the run.
    pub clauses: usize,
    /// Clauses ever added, including ones later removed by subsumption.
    pub derived: usize,
    /// Conclusions produced by rules, including redundant ones.
    pub inferences: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Work {
    Clause(ContextId, Seq),
    Edge(usize),
    Context(ContextId),
}

/// A conclusion waiting to be added.
#[derive(Clone, Debug)]
pub(crate) struct Pending {
    pub ctx: ContextId,
    pub clause: ContextClause,
    pub rule: Rule,
    pub premises: Vec<Premise>,
    pub ontology_clause: Option<usize>,
    pub via: Option<Func>,
}

/// One saturation run over an ontology.
pub struct Engine<'o> {
    ontology: &'o [DlClause],
    /// Predicate id to `(clause index, body position)`.
    body_index: HashMap<u32, Vec<(usize, usize)>>,
    empty_body: Vec<usize>,
    su: Vec<Atom>,
    strategy: Strategy,
    config: EngineConfig,
    d: ContextStructure,
    queue: VecDeque<Work>,
    succ_queue: VecDeque<(ContextId, Func)>,
    succ_pending: HashSet<(ContextId, Func)>,
    rng: Option<ChaCha8Rng>,
    records: Vec<DerivationRecord>,
    derived: usize,
    inferences: usize,
    started: Option<Instant>,
}

impl<'o> Engine<'o> {
    pub fn new(ontology: &'o [DlClause], triggers: &TriggerSets, config: EngineConfig) -> Self {
        let mut body_index: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        let mut empty_body = Vec::new();
        for (k, c) in ontology.iter().enumerate() {
            if c.body.is_empty() {
                empty_body.push(k);
            }
            for (p, a) in c.body.iter().enumerate() {
                let pred = match *a {
                    crate::terms::DlAtom::Concept(b, _) => b.index(),
                    crate::terms::DlAtom::Role(s, _, _) => s.index(),
                };
                body_index.entry(pred).or_default().push((k, p));
            }
        }
        Self {
            ontology,
            body_index,
            empty_body,
            su: triggers.su.iter().copied().collect(),
            strategy: Strategy::new(config.strategy, ontology),
            rng: config.shuffle_seed.map(ChaCha8Rng::seed_from_u64),
            config,
            d: ContextStructure::new(triggers.pr.iter().copied()),
            queue: VecDeque::new(),
            succ_queue: VecDeque::new(),
            succ_pending: HashSet::new(),
            records: Vec::new(),
            derived: 0,
            inferences: 0,
            started: None,
        }
    }

    /// Introduces a query context with core `core`; `goals` are the head
    /// atoms of the queries it answers.
    pub fn add_query_context(
        &mut self,
        core: impl IntoIterator<Item = Atom>,
        goals: impl IntoIterator<Item = Atom>,
    ) -> ContextId {
        let order = self.d.base_order().with_goals(goals);
        let id = self.d.add_context(core, order, true);
        self.queue.push_back(Work::Context(id));
        id
    }

    pub fn structure(&self) -> &ContextStructure {
        &self.d
    }

    pub fn into_structure(self) -> ContextStructure {
        self.d
    }

    pub fn ontology(&self) -> &'o [DlClause] {
        self.ontology
    }

    pub fn records(&self) -> &[DerivationRecord] {
        &self.records
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            contexts: self.d.len(),
            edges: self.d.edges().len(),
            clauses: self.d.clause_count(),
            derived: self.derived,
            inferences: self.inferences,
        }
    }

    fn pop(&mut self) -> Option<Work> {
        match self.rng.as_mut() {
            Some(rng) if !self.queue.is_empty() => {
                let i = rng.gen_range(0..self.queue.len());
                self.queue.swap_remove_back(i)
            }
            _ => self.queue.pop_front(),
        }
    }

    fn pop_succ(&mut self) -> Option<(ContextId, Func)> {
        let item = match self.rng.as_mut() {
            Some(rng) if !self.succ_queue.is_empty() => {
                let i = rng.gen_range(0..self.succ_queue.len());
                self.succ_queue.swap_remove_back(i)
            }
            _ => self.succ_queue.pop_front(),
        }?;
        self.succ_pending.remove(&item);
        Some(item)
    }

    pub(crate) fn schedule_succ(&mut self, u: ContextId, f: Func) {
        if self.succ_pending.insert((u, f)) {
            self.succ_queue.push_back((u, f));
        }
    }

    /// Runs to a fixpoint.
    pub fn run(&mut self) -> Result<(), ReasonerError> {
        let started = *self.started.get_or_insert_with(Instant::now);
        let mut steps: u64 = 0;
        loop {
            steps += 1;
            if steps.is_multiple_of(256) && started.elapsed() > self.config.timeout {
                return Err(ReasonerError::ResourceLimit(ResourceKind::WallClock(self.config.timeout)));
            }
            if let Some(w) = self.pop() {
                let mut out = Vec::new();
                match w {
                    Work::Clause(v, seq) => {
                        if !self.d.context(v).store.is_live(seq) {
                            continue;
                        }
                        self.process_clause(v, seq, &mut out)?;
                    }
                    Work::Edge(e) => self.process_edge(e, &mut out)?,
                    Work::Context(v) => self.process_context(v, &mut out),
                }
                for p in out {
                    self.commit(p)?;
                }
            } else if let Some((u, f)) = self.pop_succ() {
                self.succ(u, f)?;
            } else {
                return Ok(());
            }
        }
    }

    /// Adds a conclusion to its context and schedules it.
    pub(crate) fn commit(&mut self, p: Pending) -> Result<Option<Seq>, ReasonerError> {
        self.inferences += 1;
        if !p.clause.is_well_formed() {
            return Err(ReasonerError::Invariant(format!("{} produced a malformed clause {:?}", p.rule, p.clause)));
        }
        if self.d.contains_up_to_redundancy(p.ctx, &p.clause) {
            return Ok(None);
        }
        if self.derived >= self.config.max_clauses {
            return Err(ReasonerError::ResourceLimit(ResourceKind::Clauses(self.config.max_clauses)));
        }
        let clause = p.clause;
        match self.d.add_clause(p.ctx, clause) {
            AddOutcome::Redundant => Ok(None),
            AddOutcome::Added { seq, .. } => {
                self.derived += 1;
                self.queue.push_back(Work::Clause(p.ctx, seq));
                if self.config.record {
                    let stored = self.d.context(p.ctx).store.get(seq).expect("just added");
                    self.records.push(DerivationRecord {
                        rule: p.rule,
                        ctx: p.ctx,
                        seq,
                        clause: stored.clause.clone(),
                        premises: p.premises,
                        ontology_clause: p.ontology_clause,
                        via: p.via,
                    });
                }
                Ok(Some(seq))
            }
        }
    }

    fn process_context(&mut self, v: ContextId, out: &mut Vec<Pending>) {
        for &a in &self.d.context(v).core {
            out.push(Pending {
                ctx: v,
                clause: ContextClause::fact(a),
                rule: Rule::Core,
                premises: Vec::new(),
                ontology_clause: None,
                via: None,
            });
        }
        for &k in &self.empty_body {
            let sigma = crate::terms::HyperSubstitution::new();
            let head: Result<Vec<Literal>, _> =
                self.ontology[k].head.iter().map(|&l| crate::terms::apply_hyper_subst(l, &sigma)).collect();
            if let Ok(head) = head {
                out.push(Pending {
                    ctx: v,
                    clause: ContextClause::new([], head),
                    rule: Rule::Hyper,
                    premises: Vec::new(),
                    ontology_clause: Some(k),
                    via: None,
                });
            }
        }
    }

    /// The context the strategy picks for `core`, created if needed.
    pub(crate) fn context_for(&mut self, core: Vec<Atom>) -> (ContextId, bool) {
        let order: ContextTermOrder = self.d.base_order();
        match self.d.context_for_core(&core) {
            Some(v) => {
                if self.d.intersect_order(v, &order) {
                    let seqs: Vec<Seq> = self.d.context(v).store.iter().map(|s| s.seq).collect();
                    self.queue.extend(seqs.into_iter().map(|s| Work::Clause(v, s)));
                }
                (v, false)
            }
            None => {
                let v = self.d.add_context(core, order, false);
                self.queue.push_back(Work::Context(v));
                (v, true)
            }
        }
    }

    pub(crate) fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub(crate) fn su(&self) -> &[Atom] {
        &self.su
    }

    pub(crate) fn structure_mut(&mut self) -> &mut ContextStructure {
        &mut self.d
    }

    pub(crate) fn push_edge(&mut self, e: usize) {
        self.queue.push_back(Work::Edge(e));
    }
}
