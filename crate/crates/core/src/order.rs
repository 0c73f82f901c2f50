//! Context term orders.
//!
//! The base order is a lexicographic path order over context terms in which
//! `x` and `y` are constants with `x ≻ y`. Precedence, from the top:
//! predicate symbols (by id), function symbols (by id), `x`, `y`, `⊤`.
//! `⊤` is below every term, so an atom `A ≈ ⊤` is compared essentially by `A`.
//!
//! Two atom sets relax the LPO:
//!
//! * `minimal` atoms (the predecessor triggers) are never greater than any
//!   term other than `x`, `y` and `⊤`;
//! * `goal` atoms (query heads) may only be greater than `x`, `y`, `⊤` and
//!   minimal atoms.
//!
//! Relaxing only removes pairs from the LPO, and the removed pairs are
//! closed under the conditions the calculus needs from a context order.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::terms::{Atom, FTerm, Literal};

/// A context term, or `⊤`, which only ever appears as the right-hand side of
/// an atom literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Top,
    F(FTerm),
    P(Atom),
}

impl Term {
    fn args(self) -> ([FTerm; 2], usize) {
        match self {
            Term::Top | Term::F(FTerm::X) | Term::F(FTerm::Y) => ([FTerm::X, FTerm::X], 0),
            Term::F(FTerm::Fn(_)) => ([FTerm::X, FTerm::X], 1),
            Term::P(a) => a.args(),
        }
    }

    fn is_variable_constant(self) -> bool {
        matches!(self, Term::Top | Term::F(FTerm::X) | Term::F(FTerm::Y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl OrderResult {
    pub fn reverse(self) -> OrderResult {
        match self {
            OrderResult::Greater => OrderResult::Less,
            OrderResult::Less => OrderResult::Greater,
            other => other,
        }
    }
}

/// Symbol precedence for the LPO. Ranks follow interning order, later
/// symbols being larger.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Precedence;

impl Precedence {
    const FUNCTION_BASE: u64 = 3;
    const PREDICATE_BASE: u64 = 1 << 32;

    pub fn rank(self, t: Term) -> u64 {
        match t {
            Term::Top => 0,
            Term::F(FTerm::Y) => 1,
            Term::F(FTerm::X) => 2,
            Term::F(FTerm::Fn(f)) => Self::FUNCTION_BASE + u64::from(f.index()),
            Term::P(a) => Self::PREDICATE_BASE + u64::from(a.predicate_index()),
        }
    }

    /// Unrelaxed LPO: `s ≻_lpo t`.
    pub fn lpo_greater(self, s: Term, t: Term) -> bool {
        if s == t {
            return false;
        }
        let (s_args, s_n) = s.args();
        for &si in &s_args[..s_n] {
            let si = Term::F(si);
            if si == t || self.lpo_greater(si, t) {
                return true;
            }
        }
        let (t_args, t_n) = t.args();
        let (rs, rt) = (self.rank(s), self.rank(t));
        if rs > rt {
            return t_args[..t_n].iter().all(|&tj| self.lpo_greater(s, Term::F(tj)));
        }
        if rs == rt {
            // Same symbol, hence same arity.
            if !t_args[..t_n].iter().all(|&tj| self.lpo_greater(s, Term::F(tj))) {
                return false;
            }
            for i in 0..s_n {
                if s_args[i] != t_args[i] {
                    return self.lpo_greater(Term::F(s_args[i]), Term::F(t_args[i]));
                }
            }
        }
        false
    }
}

/// A context term order: the LPO relaxed for `minimal` and `goal` atoms.
/// Values are immutable; [`ContextTermOrder::intersect`] builds a new one.
#[derive(Clone, Debug, Default)]
pub struct ContextTermOrder {
    precedence: Precedence,
    minimal: Arc<HashSet<Atom>>,
    goals: Arc<BTreeSet<Atom>>,
}

impl PartialEq for ContextTermOrder {
    fn eq(&self, other: &Self) -> bool {
        self.minimal == other.minimal && self.goals == other.goals
    }
}

impl Eq for ContextTermOrder {}

impl ContextTermOrder {
    pub fn new(minimal: Arc<HashSet<Atom>>) -> Self {
        Self { precedence: Precedence, minimal, goals: Arc::default() }
    }

    pub fn with_goals(mut self, goals: impl IntoIterator<Item = Atom>) -> Self {
        let mut set: BTreeSet<Atom> = (*self.goals).clone();
        set.extend(goals);
        self.goals = Arc::new(set);
        self
    }

    pub fn minimal_atoms(&self) -> &HashSet<Atom> {
        &self.minimal
    }

    pub fn goal_atoms(&self) -> &BTreeSet<Atom> {
        &self.goals
    }

    pub fn is_minimal(&self, a: Atom) -> bool {
        self.minimal.contains(&a)
    }

    /// `≻ ∩ ≻'`. For two orders of this family the intersection relaxes
    /// the union of both atom sets. The flag reports whether `self` changed.
    pub fn intersect(&self, other: &ContextTermOrder) -> (ContextTermOrder, bool) {
        let new_minimal: Vec<Atom> = other.minimal.iter().filter(|a| !self.minimal.contains(a)).copied().collect();
        let new_goals: Vec<Atom> = other.goals.iter().filter(|a| !self.goals.contains(a)).copied().collect();
        if new_minimal.is_empty() && new_goals.is_empty() {
            return (self.clone(), false);
        }
        let mut minimal = (*self.minimal).clone();
        minimal.extend(new_minimal);
        let mut goals = (*self.goals).clone();
        goals.extend(new_goals);
        (ContextTermOrder { precedence: self.precedence, minimal: Arc::new(minimal), goals: Arc::new(goals) }, true)
    }

    pub fn greater(&self, s: Term, t: Term) -> bool {
        if !self.precedence.lpo_greater(s, t) {
            return false;
        }
        match s {
            Term::P(a) if self.minimal.contains(&a) => t.is_variable_constant(),
            Term::P(a) if self.goals.contains(&a) => {
                t.is_variable_constant() || matches!(t, Term::P(b) if self.minimal.contains(&b))
            }
            _ => true,
        }
    }

    pub fn compare_terms(&self, s: Term, t: Term) -> OrderResult {
        if s == t {
            OrderResult::Equal
        } else if self.greater(s, t) {
            OrderResult::Greater
        } else if self.greater(t, s) {
            OrderResult::Less
        } else {
            OrderResult::Incomparable
        }
    }

    pub fn literal_greater(&self, l1: Literal, l2: Literal) -> bool {
        if l1 == l2 {
            return false;
        }
        let (m, mn) = literal_multiset(l1);
        let (n, nn) = literal_multiset(l2);
        multiset_greater(|a, b| self.greater(*a, *b), &m[..mn], &n[..nn])
    }

    pub fn compare_literals(&self, l1: Literal, l2: Literal) -> OrderResult {
        if l1 == l2 {
            OrderResult::Equal
        } else if self.literal_greater(l1, l2) {
            OrderResult::Greater
        } else if self.literal_greater(l2, l1) {
            OrderResult::Less
        } else {
            OrderResult::Incomparable
        }
    }

    /// `D ⋡ L`: no literal of `D` is greater than or equal to `L`.
    pub fn no_literal_geq<'a>(&self, d: impl IntoIterator<Item = &'a Literal>, l: Literal) -> bool {
        d.into_iter().all(|&other| other != l && !self.literal_greater(other, l))
    }

    /// `L` is maximal in `head`, i.e. `head \ {L} ⋡ L`.
    pub fn is_maximal_in(&self, head: &[Literal], l: Literal) -> bool {
        head.iter().filter(|&&o| o != l).all(|&o| !self.literal_greater(o, l))
    }
}

/// The multiset associated with a literal: `{A, ⊤}`, `{s, t}` or `{s, s, t, t}`.
pub fn literal_multiset(l: Literal) -> ([Term; 4], usize) {
    match l {
        Literal::Atom(a) => ([Term::P(a), Term::Top, Term::Top, Term::Top], 2),
        Literal::Eq(s, t) => ([Term::F(s), Term::F(t), Term::Top, Term::Top], 2),
        Literal::Neq(s, t) => ([Term::F(s), Term::F(s), Term::F(t), Term::F(t)], 4),
    }
}

/// Multiset extension: `M ≻mul N` iff `M ≠ N` and every element of `N \ M`
/// is dominated by some element of `M \ N` (multiset differences).
pub fn multiset_greater<T: PartialEq + Clone>(gt: impl Fn(&T, &T) -> bool, m: &[T], n: &[T]) -> bool {
    let mut m_rest: Vec<T> = m.to_vec();
    let mut n_rest: Vec<T> = Vec::with_capacity(n.len());
    for x in n {
        if let Some(i) = m_rest.iter().position(|y| y == x) {
            m_rest.swap_remove(i);
        } else {
            n_rest.push(x.clone());
        }
    }
    if m_rest.is_empty() && n_rest.is_empty() {
        return false;
    }
    n_rest.iter().all(|x| m_rest.iter().any(|y| gt(y, x)))
}
