//! The inference rules.

use crate::clause::ContextClause;
use crate::error::ReasonerError;
use crate::structure::{ClauseStore, ContextId, Seq, StoredClause};
use crate::symbols::Func;
use crate::terms::{
    apply_hyper_subst, replace_in_atom, shift_to_predecessor, shift_to_successor, Atom, AtomShape, DlAtom, DlTerm,
    FTerm, HyperSubstitution, Literal, RoleArgs,
};

use super::{Engine, Pending, Premise, Rule};

/// Matches a DL body atom against a context atom, extending `sigma`.
/// `None` if they do not match; `Some(Some(z))` if `z` was newly bound.
pub fn match_body_atom(dl: DlAtom, a: Atom, sigma: &mut HyperSubstitution) -> Option<Option<u32>> {
    let (z, value) = match (dl, a) {
        (DlAtom::Concept(b, DlTerm::X), Atom::Concept(c, FTerm::X)) if b == c => return Some(None),
        (DlAtom::Role(s, DlTerm::X, DlTerm::Z(z)), Atom::Role(r, args)) if s == r => match args.terms() {
            (FTerm::X, t @ (FTerm::Y | FTerm::Fn(_))) => (z, t),
            _ => return None,
        },
        (DlAtom::Role(s, DlTerm::Z(z), DlTerm::X), Atom::Role(r, args)) if s == r => match args.terms() {
            (t @ (FTerm::Y | FTerm::Fn(_)), FTerm::X) => (z, t),
            _ => return None,
        },
        _ => return None,
    };
    let fresh = sigma.get(z).is_none();
    sigma.bind(z, value).then_some(fresh.then_some(z))
}

/// Clauses of `store` whose eligible atoms can match `dl` under `sigma`.
fn hyper_candidates<'s>(
    store: &'s ClauseStore,
    dl: DlAtom,
    sigma: &HyperSubstitution,
) -> Vec<(&'s StoredClause, Atom)> {
    let exact = |a: Atom| store.eligible_with_atom(a).map(move |s| (s, a)).collect::<Vec<_>>();
    match dl {
        DlAtom::Concept(b, DlTerm::X) => exact(Atom::Concept(b, FTerm::X)),
        DlAtom::Role(s, DlTerm::X, DlTerm::Z(z)) => match sigma.get(z) {
            Some(t) => Atom::role(s, FTerm::X, t).map(exact).unwrap_or_default(),
            None => {
                let mut v = exact(Atom::Role(s, RoleArgs::XY));
                v.extend(store.eligible_with_shape(s.index(), AtomShape::RoleXF));
                v
            }
        },
        DlAtom::Role(s, DlTerm::Z(z), DlTerm::X) => match sigma.get(z) {
            Some(t) => Atom::role(s, t, FTerm::X).map(exact).unwrap_or_default(),
            None => {
                let mut v = exact(Atom::Role(s, RoleArgs::YX));
                v.extend(store.eligible_with_shape(s.index(), AtomShape::RoleFX));
                v
            }
        },
        _ => Vec::new(),
    }
}

fn premise(ctx: ContextId, s: &StoredClause, literal: Literal) -> Premise {
    Premise { ctx, seq: s.seq, clause: s.clause.clone(), literal: Some(literal) }
}

/// A premise chosen for one body position, if any yet.
type Picked<'s> = (&'s StoredClause, Atom);
type Slot<'s> = Option<Picked<'s>>;

fn head_without(c: &ContextClause, l: Literal) -> impl Iterator<Item = Literal> + '_ {
    c.head().iter().copied().filter(move |&m| m != l)
}

/// Enumerates premise tuples position by position, skipping the ones
/// already fixed, and calls `emit` on each complete tuple.
fn enumerate_tuples<'s>(
    chosen: &mut Vec<Slot<'s>>,
    pos: usize,
    candidates: &dyn Fn(usize, &[Slot<'s>]) -> Vec<Picked<'s>>,
    emit: &mut dyn FnMut(&[Slot<'s>]),
) {
    if pos == chosen.len() {
        emit(chosen);
        return;
    }
    if chosen[pos].is_some() {
        enumerate_tuples(chosen, pos + 1, candidates, emit);
        return;
    }
    for cand in candidates(pos, chosen) {
        chosen[pos] = Some(cand);
        enumerate_tuples(chosen, pos + 1, candidates, emit);
    }
    chosen[pos] = None;
}

impl<'o> Engine<'o> {
    pub(super) fn process_clause(
        &mut self,
        v: ContextId,
        seq: Seq,
        out: &mut Vec<Pending>,
    ) -> Result<(), ReasonerError> {
        let stored = self.d.context(v).store.get(seq).expect("live clause").clone();
        self.ineq(v, &stored, out);
        self.factor(v, &stored, out);
        self.eq(v, &stored, out);
        self.hyper(v, &stored, out)?;
        self.pred_from_successor(v, &stored, out)?;
        self.pred_from_predecessor(v, &stored, out)?;
        for l in &stored.eligible {
            if let Literal::Atom(a) = *l {
                if let Some(f) = a.func() {
                    self.schedule_succ(v, f);
                }
            }
        }
        Ok(())
    }

    pub(super) fn process_edge(&mut self, e: usize, out: &mut Vec<Pending>) -> Result<(), ReasonerError> {
        let edge = self.d.edge(e);
        let succ: Vec<StoredClause> = self.d.context(edge.to).store.pred_clauses().cloned().collect();
        for p in &succ {
            self.pred(edge.from, edge.to, edge.label, p, None, out)?;
        }
        Ok(())
    }

    fn ineq(&self, v: ContextId, c: &StoredClause, out: &mut Vec<Pending>) {
        for &l in c.clause.head() {
            if let Literal::Neq(s, t) = l {
                if s == t {
                    out.push(Pending {
                        ctx: v,
                        clause: ContextClause::new(
                            c.clause.body().to_vec(),
                            head_without(&c.clause, l).collect::<Vec<_>>(),
                        ),
                        rule: Rule::Ineq,
                        premises: vec![premise(v, c, l)],
                        ontology_clause: None,
                        via: None,
                    });
                }
            }
        }
    }

    fn factor(&self, v: ContextId, c: &StoredClause, out: &mut Vec<Pending>) {
        for &l in &c.eligible {
            let Literal::Eq(s @ FTerm::Fn(_), t2) = l else { continue };
            if t2 == s {
                continue;
            }
            for &other in c.clause.head() {
                let Literal::Eq(a, b) = other else { continue };
                if other == l {
                    continue;
                }
                let t = if a == s {
                    b
                } else if b == s {
                    a
                } else {
                    continue;
                };
                let Some(neq) = Literal::inequality(t, t2) else { continue };
                let head = c.clause.head().iter().copied().filter(|&m| m != other).chain([neq]);
                out.push(Pending {
                    ctx: v,
                    clause: ContextClause::new(c.clause.body().to_vec(), head.collect::<Vec<_>>()),
                    rule: Rule::Factor,
                    premises: vec![premise(v, c, l), premise(v, c, other)],
                    ontology_clause: None,
                    via: None,
                });
            }
        }
    }

    fn eq(&self, v: ContextId, c: &StoredClause, out: &mut Vec<Pending>) {
        let store = &self.d.context(v).store;
        let mut emit = |(p1, l1): (&StoredClause, Literal), (p2, l2): (&StoredClause, Literal)| {
            let Literal::Eq(FTerm::Fn(f), t1) = l1 else { return };
            let new = match l2 {
                Literal::Atom(a) => replace_in_atom(a, f, t1).map(Literal::Atom),
                Literal::Eq(_, t2) => Literal::equality(t1, t2),
                Literal::Neq(_, t2) => Literal::inequality(t1, t2),
            };
            let Some(new) = new else { return };
            let body = p1.clause.body().iter().chain(p2.clause.body()).copied();
            let head = head_without(&p1.clause, l1).chain(head_without(&p2.clause, l2)).chain([new]);
            out.push(Pending {
                ctx: v,
                clause: ContextClause::new(body, head.collect::<Vec<_>>()),
                rule: Rule::Eq,
                premises: vec![premise(v, p1, l1), premise(v, p2, l2)],
                ontology_clause: None,
                via: None,
            });
        };
        for &l in &c.eligible {
            if let Literal::Eq(FTerm::Fn(f), t1) = l {
                if t1 != FTerm::Fn(f) {
                    for (d, l2) in store.rewritable_on(f) {
                        emit((c, l), (d, l2));
                    }
                }
            }
            let f = match l {
                Literal::Atom(a) => a.func(),
                Literal::Eq(FTerm::Fn(f), t) | Literal::Neq(FTerm::Fn(f), t) if t != FTerm::Fn(f) => Some(f),
                _ => None,
            };
            if let Some(f) = f {
                for (d, l1) in store.equalities_on(f) {
                    if d.seq != c.seq {
                        emit((d, l1), (c, l));
                    }
                }
            }
        }
    }

    fn hyper(&self, v: ContextId, c: &StoredClause, out: &mut Vec<Pending>) -> Result<(), ReasonerError> {
        let store = &self.d.context(v).store;
        for &l in &c.eligible {
            let Literal::Atom(a) = l else { continue };
            let Some(entries) = self.body_index.get(&a.predicate_index()) else { continue };
            for &(k, p) in entries {
                let oc = &self.ontology[k];
                let mut sigma = HyperSubstitution::with_capacity(oc.variable_count());
                if match_body_atom(oc.body[p], a, &mut sigma).is_none() {
                    continue;
                }
                let mut chosen: Vec<Option<(&StoredClause, Atom)>> = vec![None; oc.body.len()];
                chosen[p] = Some((c, a));
                let mut err = None;
                self.hyper_rec(store, k, 0, &mut sigma, &mut chosen, &mut |chosen, sigma| match self
                    .hyper_conclusion(v, k, chosen, sigma)
                {
                    Ok(pending) => out.push(pending),
                    Err(e) => err = Some(e),
                });
                if let Some(e) = err {
                    return Err(e);
                }
            }
        }
        Ok(())
    }

    fn hyper_rec<'s>(
        &self,
        store: &'s ClauseStore,
        k: usize,
        pos: usize,
        sigma: &mut HyperSubstitution,
        chosen: &mut Vec<Slot<'s>>,
        emit: &mut dyn FnMut(&[Slot<'s>], &HyperSubstitution),
    ) {
        let body = &self.ontology[k].body;
        if pos == body.len() {
            emit(chosen, sigma);
            return;
        }
        if chosen[pos].is_some() {
            self.hyper_rec(store, k, pos + 1, sigma, chosen, emit);
            return;
        }
        for (s, a) in hyper_candidates(store, body[pos], sigma) {
            let Some(bound) = match_body_atom(body[pos], a, sigma) else { continue };
            chosen[pos] = Some((s, a));
            self.hyper_rec(store, k, pos + 1, sigma, chosen, emit);
            if let Some(z) = bound {
                sigma.unbind(z);
            }
        }
        chosen[pos] = None;
    }

    fn hyper_conclusion(
        &self,
        v: ContextId,
        k: usize,
        chosen: &[Option<(&StoredClause, Atom)>],
        sigma: &HyperSubstitution,
    ) -> Result<Pending, ReasonerError> {
        let mut body = Vec::new();
        let mut head = Vec::new();
        let mut premises = Vec::with_capacity(chosen.len());
        for &(s, a) in chosen.iter().flatten() {
            body.extend_from_slice(s.clause.body());
            head.extend(head_without(&s.clause, Literal::Atom(a)));
            premises.push(premise(v, s, Literal::Atom(a)));
        }
        for &l in &self.ontology[k].head {
            head.push(apply_hyper_subst(l, sigma).map_err(|e| ReasonerError::Invariant(format!("hyper: {e}")))?);
        }
        Ok(Pending {
            ctx: v,
            clause: ContextClause::new(body, head),
            rule: Rule::Hyper,
            premises,
            ontology_clause: Some(k),
            via: None,
        })
    }

    /// `Pred` with the new clause on the successor side.
    fn pred_from_successor(&self, v: ContextId, c: &StoredClause, out: &mut Vec<Pending>) -> Result<(), ReasonerError> {
        if !c.pred_eligible {
            return Ok(());
        }
        for &e in &self.d.context(v).in_edges {
            let edge = self.d.edge(e);
            self.pred(edge.from, v, edge.label, c, None, out)?;
        }
        Ok(())
    }

    /// `Pred` with the new clause as one of the predecessor-side premises.
    fn pred_from_predecessor(
        &self,
        u: ContextId,
        c: &StoredClause,
        out: &mut Vec<Pending>,
    ) -> Result<(), ReasonerError> {
        for &l in &c.eligible {
            let Literal::Atom(a) = l else { continue };
            for &e in &self.d.context(u).out_edges {
                let edge = self.d.edge(e);
                let Some(target) = shift_to_predecessor(a, edge.label) else { continue };
                for p in self.d.context(edge.to).store.pred_clauses_with_body_atom(target) {
                    let pos = p.clause.body().iter().position(|&b| b == target).expect("indexed body atom");
                    self.pred(u, edge.to, edge.label, p, Some((pos, c, a)), out)?;
                }
            }
        }
        Ok(())
    }

    /// All `Pred` conclusions in `u` from successor clause `p` in `v`, with
    /// an optional fixed premise for one body position.
    fn pred(
        &self,
        u: ContextId,
        v: ContextId,
        f: Func,
        p: &StoredClause,
        fixed: Option<(usize, &StoredClause, Atom)>,
        out: &mut Vec<Pending>,
    ) -> Result<(), ReasonerError> {
        let shift = |a: Atom| shift_to_successor(a, f).map_err(|e| ReasonerError::Invariant(format!("pred: {e}")));
        let targets: Vec<Atom> = p.clause.body().iter().map(|&b| shift(b)).collect::<Result<_, _>>()?;
        let shifted_head: Vec<Literal> = p
            .clause
            .head()
            .iter()
            .map(|l| match *l {
                Literal::Atom(a) => shift(a).map(Literal::Atom),
                other => Err(ReasonerError::Invariant(format!("pred: non-atom head {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let store = &self.d.context(u).store;
        let mut chosen: Vec<Option<(&StoredClause, Atom)>> = vec![None; targets.len()];
        if let Some((pos, c, a)) = fixed {
            if targets[pos] != a {
                return Ok(());
            }
            chosen[pos] = Some((c, a));
        }
        let candidates = |pos: usize, _: &[Option<(&StoredClause, Atom)>]| {
            store.eligible_with_atom(targets[pos]).map(|s| (s, targets[pos])).collect::<Vec<_>>()
        };
        let succ_premise = Premise { ctx: v, seq: p.seq, clause: p.clause.clone(), literal: None };
        enumerate_tuples(&mut chosen, 0, &candidates, &mut |tuple| {
            let mut body = Vec::new();
            let mut head = shifted_head.clone();
            let mut premises = vec![succ_premise.clone()];
            for &(s, a) in tuple.iter().flatten() {
                body.extend_from_slice(s.clause.body());
                head.extend(head_without(&s.clause, Literal::Atom(a)));
                premises.push(premise(u, s, Literal::Atom(a)));
            }
            out.push(Pending {
                ctx: u,
                clause: ContextClause::new(body, head),
                rule: Rule::Pred,
                premises,
                ontology_clause: None,
                via: Some(f),
            });
        });
        Ok(())
    }

    /// The `Succ` rule for `u` and `f`.
    pub(super) fn succ(&mut self, u: ContextId, f: Func) -> Result<(), ReasonerError> {
        let store = &self.d.context(u).store;
        let mut k1 = Vec::new();
        let mut k2: Vec<(Atom, Premise)> = Vec::new();
        for &a in self.su() {
            let shifted = shift_to_successor(a, f).map_err(|e| ReasonerError::Invariant(format!("succ: {e}")))?;
            if let Some(s) = store.eligible_with_atom(shifted).next() {
                k2.push((a, premise(u, s, Literal::Atom(shifted))));
                if store.contains_exact(&ContextClause::fact(shifted)) {
                    k1.push(a);
                }
            }
        }
        let covered = self.d.find_existing_edge(u, f).into_iter().any(|(_, v)| {
            let ctx = self.d.context(v);
            k2.iter()
                .filter(|(a, _)| !ctx.core.contains(a))
                .all(|(a, _)| ctx.store.contains_up_to_redundancy(&ContextClause::identity(*a)))
        });
        if covered {
            return Ok(());
        }
        let core = self.strategy().select_core(f, &k1);
        let (v, _) = self.context_for(core);
        if let Some(e) = self.structure_mut().add_edge(u, v, f) {
            self.push_edge(e);
        }
        let core = self.d.context(v).core.clone();
        for (a, prem) in k2 {
            if core.contains(&a) {
                continue;
            }
            self.commit(Pending {
                ctx: v,
                clause: ContextClause::identity(a),
                rule: Rule::Succ,
                premises: vec![prem],
                ontology_clause: None,
                via: Some(f),
            })?;
        }
        Ok(())
    }
}
