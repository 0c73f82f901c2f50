//! The context structure: contexts with cores, orders and clause sets,
//! connected by edges labelled with function symbols.

mod export;
mod store;
mod strategy;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::clause::ContextClause;
use crate::order::ContextTermOrder;
use crate::symbols::Func;
use crate::terms::Atom;

pub use export::{to_dot, to_text};
pub use store::{AddOutcome, ClauseStore, Seq, StoredClause};
pub use strategy::{Strategy, StrategyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextId(pub u32);

impl ContextId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ContextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: ContextId,
    pub to: ContextId,
    pub label: Func,
}

#[derive(Clone, Debug)]
pub struct Context {
    pub id: ContextId,
    /// Sorted, duplicate-free.
    pub core: Vec<Atom>,
    pub order: ContextTermOrder,
    pub store: ClauseStore,
    pub out_edges: Vec<usize>,
    pub in_edges: Vec<usize>,
    pub is_query: bool,
}

impl Context {
    pub fn clauses(&self) -> impl Iterator<Item = &ContextClause> {
        self.store.clauses()
    }
}

#[derive(Clone, Debug)]
pub struct ContextStructure {
    contexts: Vec<Context>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    by_core: HashMap<Vec<Atom>, ContextId>,
    pr: Arc<HashSet<Atom>>,
}

impl ContextStructure {
    /// An empty structure whose base order treats `pr` as minimal.
    pub fn new(pr: impl IntoIterator<Item = Atom>) -> Self {
        Self {
            contexts: Vec::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            by_core: HashMap::new(),
            pr: Arc::new(pr.into_iter().collect()),
        }
    }

    pub fn predecessor_triggers(&self) -> &Arc<HashSet<Atom>> {
        &self.pr
    }

    /// The order every strategy hands out.
    pub fn base_order(&self) -> ContextTermOrder {
        ContextTermOrder::new(self.pr.clone())
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, id: ContextId) -> &Context {
        &self.contexts[id.index()]
    }

    pub fn context_mut(&mut self, id: ContextId) -> &mut Context {
        &mut self.contexts[id.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn clause_count(&self) -> usize {
        self.contexts.iter().map(|c| c.store.len()).sum()
    }

    /// Adds a context. Non-query contexts are registered under their core
    /// for later reuse; a query context is registered only if no context
    /// with that core exists yet.
    pub fn add_context(
        &mut self,
        core: impl IntoIterator<Item = Atom>,
        order: ContextTermOrder,
        is_query: bool,
    ) -> ContextId {
        let mut core: Vec<Atom> = core.into_iter().collect();
        core.sort_unstable();
        core.dedup();
        let id = ContextId(self.contexts.len() as u32);
        self.by_core.entry(core.clone()).or_insert(id);
        self.contexts.push(Context {
            id,
            core,
            order,
            store: ClauseStore::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
            is_query,
        });
        id
    }

    /// The context registered for `core` (sorted, duplicate-free).
    pub fn context_for_core(&self, core: &[Atom]) -> Option<ContextId> {
        self.by_core.get(core).copied()
    }

    /// `≻_v := ≻_v ∩ order`. Returns true if the order of `v` changed, in
    /// which case eligibility in `S(v)` has been recomputed.
    pub fn intersect_order(&mut self, v: ContextId, order: &ContextTermOrder) -> bool {
        let ctx = &mut self.contexts[v.index()];
        let (merged, changed) = ctx.order.intersect(order);
        if changed {
            ctx.order = merged;
            ctx.store.rebuild(&ctx.order, &self.pr);
        }
        changed
    }

    /// Adds `⟨u,v,f⟩`; `None` if it already exists.
    pub fn add_edge(&mut self, from: ContextId, to: ContextId, label: Func) -> Option<usize> {
        let e = Edge { from, to, label };
        if self.edge_index.contains_key(&e) {
            return None;
        }
        let idx = self.edges.len();
        self.edges.push(e);
        self.edge_index.insert(e, idx);
        self.contexts[from.index()].out_edges.push(idx);
        self.contexts[to.index()].in_edges.push(idx);
        Some(idx)
    }

    /// All `f`-labelled out-edges of `u` with their targets.
    pub fn find_existing_edge(&self, u: ContextId, f: Func) -> Vec<(Edge, ContextId)> {
        self.contexts[u.index()]
            .out_edges
            .iter()
            .map(|&i| self.edges[i])
            .filter(|e| e.label == f)
            .map(|e| (e, e.to))
            .collect()
    }

    pub fn add_clause(&mut self, v: ContextId, c: ContextClause) -> AddOutcome {
        let ctx = &mut self.contexts[v.index()];
        ctx.store.add(c, &ctx.order, &self.pr)
    }

    pub fn contains_up_to_redundancy(&self, v: ContextId, c: &ContextClause) -> bool {
        self.contexts[v.index()].store.contains_up_to_redundancy(c)
    }

    /// Clauses of `S(v)` in which `atom` is an eligible head literal.
    pub fn clauses_with_eligible_atom(&self, v: ContextId, atom: Atom) -> impl Iterator<Item = &StoredClause> {
        self.contexts[v.index()].store.eligible_with_atom(atom)
    }
}
