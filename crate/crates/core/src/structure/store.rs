//! Per-context clause storage with subsumption and rule-retrieval indexes.
//!
//! Slots are never reused, so a sequence number identifies a clause for the
//! lifetime of a run. Posting lists are append-only; entries for removed
//! clauses are skipped on lookup.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::clause::ContextClause;
use crate::order::ContextTermOrder;
use crate::symbols::Func;
use crate::terms::{Atom, AtomShape, FTerm, Literal};

pub type Seq = u32;

#[derive(Clone, Debug)]
pub struct StoredClause {
    pub seq: Seq,
    pub clause: Arc<ContextClause>,
    /// Head literals `L` with `head \ {L} ⋡ L`.
    pub eligible: Vec<Literal>,
    /// All head atoms are predecessor triggers and there are no (in)equalities.
    pub pred_eligible: bool,
}

impl StoredClause {
    pub fn is_eligible(&self, l: Literal) -> bool {
        self.eligible.contains(&l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Body(Atom),
    Head(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AddOutcome {
    Added { seq: Seq, removed: Vec<Seq> },
    Redundant,
}

#[derive(Clone, Debug, Default)]
pub struct ClauseStore {
    slots: Vec<Option<StoredClause>>,
    exact: HashMap<Arc<ContextClause>, Seq>,
    occurrences: HashMap<Key, Vec<Seq>>,
    empty: Option<Seq>,
    eligible_atoms: HashMap<Atom, Vec<Seq>>,
    eligible_shapes: HashMap<(u32, AtomShape), Vec<Seq>>,
    equalities: HashMap<Func, Vec<Seq>>,
    rewritable: HashMap<Func, Vec<Seq>>,
    pred: Vec<Seq>,
    pred_by_body: HashMap<Atom, Vec<Seq>>,
    live: usize,
}

/// `f(x)` occurs in the larger side of `l`, which is strictly larger than
/// the other side.
fn rewritable_func(l: Literal) -> Option<Func> {
    match l {
        Literal::Atom(a) => a.func(),
        Literal::Eq(FTerm::Fn(f), r) | Literal::Neq(FTerm::Fn(f), r) if r != FTerm::Fn(f) => Some(f),
        _ => None,
    }
}

/// `f(x) ≈ t` with `f(x) ≻ t`.
fn equality_func(l: Literal) -> Option<Func> {
    match l {
        Literal::Eq(FTerm::Fn(f), r) if r != FTerm::Fn(f) => Some(f),
        _ => None,
    }
}

fn push<K: std::hash::Hash + Eq>(map: &mut HashMap<K, Vec<Seq>>, key: K, seq: Seq) {
    map.entry(key).or_default().push(seq);
}

impl ClauseStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Number of slots ever allocated, including removed clauses.
    pub fn allocated(&self) -> usize {
        self.slots.len()
    }

    pub fn get(&self, seq: Seq) -> Option<&StoredClause> {
        self.slots.get(seq as usize).and_then(Option::as_ref)
    }

    pub fn is_live(&self, seq: Seq) -> bool {
        self.get(seq).is_some()
    }

    /// Live clauses in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &StoredClause> {
        self.slots.iter().flatten()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &ContextClause> {
        self.iter().map(|s| &*s.clause)
    }

    pub fn contains_exact(&self, c: &ContextClause) -> bool {
        self.exact.contains_key(c)
    }

    fn live_in<'a>(&'a self, list: Option<&'a Vec<Seq>>) -> impl Iterator<Item = &'a StoredClause> + 'a {
        list.into_iter().flatten().filter_map(move |&s| self.get(s))
    }

    /// `C ⪦ S(v)`.
    pub fn contains_up_to_redundancy(&self, c: &ContextClause) -> bool {
        if c.is_head_tautology() || self.empty.is_some() || self.exact.contains_key(c) {
            return true;
        }
        let mut hits: HashMap<Seq, usize> = HashMap::new();
        let keys = c.body().iter().map(|&a| Key::Body(a)).chain(c.head().iter().map(|&l| Key::Head(l)));
        for key in keys {
            for d in self.live_in(self.occurrences.get(&key)) {
                let n = hits.entry(d.seq).or_insert(0);
                *n += 1;
                if *n == d.clause.len() {
                    return true;
                }
            }
        }
        false
    }

    /// Live clauses `D` with `c ⊆ D`.
    fn subsumed_by(&self, c: &ContextClause) -> Vec<Seq> {
        if c.is_empty() {
            return self.iter().map(|s| s.seq).collect();
        }
        let keys = c.body().iter().map(|&a| Key::Body(a)).chain(c.head().iter().map(|&l| Key::Head(l)));
        let shortest = keys
            .map(|k| self.occurrences.get(&k).map_or(0, Vec::len))
            .enumerate()
            .min_by_key(|&(_, n)| n)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let key = if shortest < c.body().len() {
            Key::Body(c.body()[shortest])
        } else {
            Key::Head(c.head()[shortest - c.body().len()])
        };
        self.live_in(self.occurrences.get(&key)).filter(|d| c.subsumes(&d.clause)).map(|d| d.seq).collect()
    }

    /// Inserts `c` unless it is contained up to redundancy, then removes
    /// every clause that `c` subsumes.
    pub fn add(&mut self, c: ContextClause, order: &ContextTermOrder, pr: &HashSet<Atom>) -> AddOutcome {
        if self.contains_up_to_redundancy(&c) {
            return AddOutcome::Redundant;
        }
        let removed = self.subsumed_by(&c);
        for &seq in &removed {
            self.remove(seq);
        }
        let seq = self.slots.len() as Seq;
        let stored = Self::make_stored(seq, Arc::new(c), order, pr);
        self.index(&stored);
        self.exact.insert(stored.clause.clone(), seq);
        self.slots.push(Some(stored));
        self.live += 1;
        AddOutcome::Added { seq, removed }
    }

    fn make_stored(seq: Seq, clause: Arc<ContextClause>, order: &ContextTermOrder, pr: &HashSet<Atom>) -> StoredClause {
        let head = clause.head();
        let eligible = head.iter().copied().filter(|&l| order.is_maximal_in(head, l)).collect();
        let pred_eligible = head.iter().all(|l| matches!(l, Literal::Atom(a) if pr.contains(a)));
        StoredClause { seq, clause, eligible, pred_eligible }
    }

    fn index(&mut self, s: &StoredClause) {
        let seq = s.seq;
        let c = &s.clause;
        if c.is_empty() {
            self.empty = Some(seq);
        }
        for &a in c.body() {
            push(&mut self.occurrences, Key::Body(a), seq);
        }
        for &l in c.head() {
            push(&mut self.occurrences, Key::Head(l), seq);
        }
        let mut funcs_eq: Vec<Func> = Vec::new();
        let mut funcs_rw: Vec<Func> = Vec::new();
        for &l in &s.eligible {
            if let Literal::Atom(a) = l {
                push(&mut self.eligible_atoms, a, seq);
                let key = (a.predicate_index(), a.shape());
                if self.eligible_shapes.get(&key).and_then(|v| v.last()) != Some(&seq) {
                    push(&mut self.eligible_shapes, key, seq);
                }
            }
            if let Some(f) = equality_func(l) {
                funcs_eq.push(f);
            }
            if let Some(f) = rewritable_func(l) {
                funcs_rw.push(f);
            }
        }
        funcs_eq.sort_unstable();
        funcs_eq.dedup();
        funcs_rw.sort_unstable();
        funcs_rw.dedup();
        for f in funcs_eq {
            push(&mut self.equalities, f, seq);
        }
        for f in funcs_rw {
            push(&mut self.rewritable, f, seq);
        }
        if s.pred_eligible {
            self.pred.push(seq);
            for &a in c.body() {
                push(&mut self.pred_by_body, a, seq);
            }
        }
    }

    fn remove(&mut self, seq: Seq) {
        if let Some(s) = self.slots[seq as usize].take() {
            self.exact.remove(&s.clause);
            if self.empty == Some(seq) {
                self.empty = None;
            }
            self.live -= 1;
        }
    }

    /// Recomputes eligibility after the context order changed.
    pub fn rebuild(&mut self, order: &ContextTermOrder, pr: &HashSet<Atom>) {
        let slots = std::mem::take(&mut self.slots);
        let fresh = ClauseStore { live: self.live, ..ClauseStore::default() };
        *self = fresh;
        for slot in slots {
            match slot {
                Some(s) => {
                    let stored = Self::make_stored(s.seq, s.clause, order, pr);
                    self.index(&stored);
                    self.exact.insert(stored.clause.clone(), stored.seq);
                    self.slots.push(Some(stored));
                }
                None => self.slots.push(None),
            }
        }
    }

    /// Clauses in which `atom` is an eligible head literal.
    pub fn eligible_with_atom(&self, atom: Atom) -> impl Iterator<Item = &StoredClause> {
        self.live_in(self.eligible_atoms.get(&atom))
    }

    /// Clauses with an eligible head atom of the given predicate and shape,
    /// paired with each such atom.
    pub fn eligible_with_shape(&self, predicate: u32, shape: AtomShape) -> impl Iterator<Item = (&StoredClause, Atom)> {
        self.live_in(self.eligible_shapes.get(&(predicate, shape))).flat_map(move |s| {
            s.eligible.iter().filter_map(move |l| match *l {
                Literal::Atom(a) if a.predicate_index() == predicate && a.shape() == shape => Some((s, a)),
                _ => None,
            })
        })
    }

    /// Clauses with an eligible `f(x) ≈ t`, `f(x) ≻ t`, paired with that literal.
    pub fn equalities_on(&self, f: Func) -> impl Iterator<Item = (&StoredClause, Literal)> {
        self.live_in(self.equalities.get(&f))
            .flat_map(move |s| s.eligible.iter().filter(move |&&l| equality_func(l) == Some(f)).map(move |&l| (s, l)))
    }

    /// Clauses with an eligible literal whose larger side contains `f(x)`.
    pub fn rewritable_on(&self, f: Func) -> impl Iterator<Item = (&StoredClause, Literal)> {
        self.live_in(self.rewritable.get(&f))
            .flat_map(move |s| s.eligible.iter().filter(move |&&l| rewritable_func(l) == Some(f)).map(move |&l| (s, l)))
    }

    /// Clauses usable as the successor-side premise of `Pred`.
    pub fn pred_clauses(&self) -> impl Iterator<Item = &StoredClause> {
        self.live_in(Some(&self.pred))
    }

    pub fn pred_clauses_with_body_atom(&self, a: Atom) -> impl Iterator<Item = &StoredClause> {
        self.live_in(self.pred_by_body.get(&a))
    }
}
