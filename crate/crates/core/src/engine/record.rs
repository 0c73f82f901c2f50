//! Derivation records, their trace rendering, and after-the-fact replay of
//! order side conditions.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::clause::{ContextClause, DlClause};
use crate::structure::{ContextId, ContextStructure, Seq};
use crate::symbols::{Func, SymbolTable};
use crate::terms::{
    apply_hyper_subst, replace_in_atom, shift_to_successor, Atom, FTerm, HyperSubstitution, Literal, Render,
};

use super::rules::match_body_atom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Core,
    Hyper,
    Eq,
    Ineq,
    Factor,
    Pred,
    Succ,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Core => "CORE",
            Rule::Hyper => "HYPER",
            Rule::Eq => "EQ",
            Rule::Ineq => "INEQ",
            Rule::Factor => "FACTOR",
            Rule::Pred => "PRED",
            Rule::Succ => "SUCC",
        })
    }
}

/// A premise clause, with the literal the inference used (if any).
#[derive(Clone, Debug)]
pub struct Premise {
    pub ctx: ContextId,
    pub seq: Seq,
    pub clause: Arc<ContextClause>,
    pub literal: Option<Literal>,
}

#[derive(Clone, Debug)]
pub struct DerivationRecord {
    pub rule: Rule,
    pub ctx: ContextId,
    pub seq: Seq,
    pub clause: Arc<ContextClause>,
    pub premises: Vec<Premise>,
    /// Index of the ontology clause used by `Hyper`.
    pub ontology_clause: Option<usize>,
    /// Edge label for `Pred` and `Succ`.
    pub via: Option<Func>,
}

impl DerivationRecord {
    /// `RULE ctx#seq <- [premises]`
    pub fn trace_line(&self) -> String {
        let mut refs: Vec<String> = Vec::new();
        if let Some(k) = self.ontology_clause {
            refs.push(format!("O{}", k + 1));
        }
        for p in &self.premises {
            let r = format!("{}#{}", p.ctx, p.seq);
            if refs.last() != Some(&r) {
                refs.push(r);
            }
        }
        format!("{} {}#{} <- [{}]", self.rule, self.ctx, self.seq, refs.join(", "))
    }

    pub fn trace_line_verbose(&self, symbols: &SymbolTable) -> String {
        let mut s = self.trace_line();
        let _ = write!(s, "  {}", self.clause.render(symbols));
        s
    }
}

fn eligible(d: &ContextStructure, p: &Premise) -> Result<Literal, String> {
    let l = p.literal.ok_or_else(|| format!("premise {}#{} has no literal", p.ctx, p.seq))?;
    if !p.clause.head().contains(&l) {
        return Err(format!("literal not in premise {}#{}", p.ctx, p.seq));
    }
    if !d.context(p.ctx).order.is_maximal_in(p.clause.head(), l) {
        return Err(format!("literal {l:?} of {}#{} is not maximal", p.ctx, p.seq));
    }
    Ok(l)
}

fn rest(c: &ContextClause, l: Literal) -> impl Iterator<Item = Literal> + '_ {
    c.head().iter().copied().filter(move |&m| m != l)
}

fn expect(record: &DerivationRecord, rebuilt: ContextClause) -> Result<(), String> {
    if rebuilt == *record.clause {
        Ok(())
    } else {
        Err(format!("{}: conclusion {:?} does not follow; expected {:?}", record.trace_line(), record.clause, rebuilt))
    }
}

/// Re-checks the side conditions of a recorded inference against the final
/// structure. Orders only ever get weaker, so a literal that was maximal
/// when the inference ran is still maximal.
pub fn replay(record: &DerivationRecord, d: &ContextStructure, ontology: &[DlClause]) -> Result<(), String> {
    match record.rule {
        Rule::Core => {
            let core = &d.context(record.ctx).core;
            match (record.clause.body(), record.clause.head()) {
                ([], [Literal::Atom(a)]) if core.contains(a) => Ok(()),
                _ => Err(format!("{}: not a core fact", record.trace_line())),
            }
        }
        Rule::Succ => match (record.clause.body(), record.clause.head()) {
            ([a], [Literal::Atom(b)]) if a == b => Ok(()),
            _ => Err(format!("{}: not an identity seed", record.trace_line())),
        },
        Rule::Hyper => {
            let k = record.ontology_clause.ok_or("hyper without ontology clause")?;
            let oc = &ontology[k];
            if oc.body.len() != record.premises.len() {
                return Err(format!("{}: premise count mismatch", record.trace_line()));
            }
            let mut sigma = HyperSubstitution::with_capacity(oc.variable_count());
            let mut body = Vec::new();
            let mut head = Vec::new();
            for (dl, p) in oc.body.iter().zip(&record.premises) {
                let l = eligible(d, p)?;
                let a = l.as_atom().ok_or("hyper premise literal is not an atom")?;
                if match_body_atom(*dl, a, &mut sigma).is_none() {
                    return Err(format!("{}: premise does not match body atom", record.trace_line()));
                }
                body.extend_from_slice(p.clause.body());
                head.extend(rest(&p.clause, l));
            }
            for &l in &oc.head {
                head.push(apply_hyper_subst(l, &sigma).map_err(|e| e.to_string())?);
            }
            expect(record, ContextClause::new(body, head))
        }
        Rule::Eq => {
            let [p1, p2] = &record.premises[..] else {
                return Err("eq needs two premises".into());
            };
            let (l1, l2) = (eligible(d, p1)?, eligible(d, p2)?);
            let Literal::Eq(FTerm::Fn(f), t1) = l1 else {
                return Err("eq premise is not f(x) = t".into());
            };
            if t1 == FTerm::Fn(f) {
                return Err("eq premise is not oriented".into());
            }
            let new = match l2 {
                Literal::Atom(a) => replace_in_atom(a, f, t1).map(Literal::Atom),
                Literal::Eq(s, t2) if s == FTerm::Fn(f) && t2 != s => Literal::equality(t1, t2),
                Literal::Neq(s, t2) if s == FTerm::Fn(f) && t2 != s => Literal::inequality(t1, t2),
                _ => None,
            }
            .ok_or("eq target does not contain the rewritten term")?;
            let body = p1.clause.body().iter().chain(p2.clause.body()).copied();
            let head = rest(&p1.clause, l1).chain(rest(&p2.clause, l2)).chain([new]);
            expect(record, ContextClause::new(body, head.collect::<Vec<_>>()))
        }
        Rule::Ineq => {
            let p = record.premises.first().ok_or("ineq without premise")?;
            match p.literal {
                Some(l @ Literal::Neq(s, t)) if s == t => {
                    expect(record, ContextClause::new(p.clause.body().to_vec(), rest(&p.clause, l).collect::<Vec<_>>()))
                }
                _ => Err("ineq literal is not t != t".into()),
            }
        }
        Rule::Factor => {
            let [p, q] = &record.premises[..] else {
                return Err("factor needs the clause twice".into());
            };
            let l = eligible(d, p)?;
            let other = q.literal.ok_or("factor without second literal")?;
            let (Literal::Eq(s, t2), Literal::Eq(a, b)) = (l, other) else {
                return Err("factor literals are not equalities".into());
            };
            let t = if a == s {
                b
            } else if b == s {
                a
            } else {
                return Err("factor literals do not share a side".into());
            };
            if other == l || !p.clause.head().contains(&other) || t2 == s {
                return Err("factor side conditions fail".into());
            }
            let neq = Literal::inequality(t, t2).ok_or("factor produced an illegal inequality")?;
            let head = p.clause.head().iter().copied().filter(|&m| m != other).chain([neq]);
            expect(record, ContextClause::new(p.clause.body().to_vec(), head.collect::<Vec<_>>()))
        }
        Rule::Pred => {
            let f = record.via.ok_or("pred without edge label")?;
            let (first, rest_premises) = record.premises.split_first().ok_or("pred without premises")?;
            let pr = d.predecessor_triggers();
            let succ = &first.clause;
            if !succ.head().iter().all(|l| matches!(l, Literal::Atom(a) if pr.contains(a))) {
                return Err(format!("{}: successor clause has a non-trigger head", record.trace_line()));
            }
            if succ.body().len() != rest_premises.len() {
                return Err(format!("{}: premise count mismatch", record.trace_line()));
            }
            if !d.edges().iter().any(|e| e.from == record.ctx && e.to == first.ctx && e.label == f) {
                return Err(format!("{}: missing edge", record.trace_line()));
            }
            let mut body = Vec::new();
            let mut head = Vec::new();
            for (&b, p) in succ.body().iter().zip(rest_premises) {
                let l = eligible(d, p)?;
                let target = shift_to_successor(b, f).map_err(|e| e.to_string())?;
                if l != Literal::Atom(target) {
                    return Err(format!("{}: premise literal does not match", record.trace_line()));
                }
                body.extend_from_slice(p.clause.body());
                head.extend(rest(&p.clause, l));
            }
            for l in succ.head() {
                let a: Atom = l.as_atom().ok_or("pred head is not an atom")?;
                head.push(Literal::Atom(shift_to_successor(a, f).map_err(|e| e.to_string())?));
            }
            expect(record, ContextClause::new(body, head))
        }
    }
}
