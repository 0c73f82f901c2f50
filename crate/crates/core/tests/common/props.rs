//! Randomized checks of the term order and of redundancy, shared by the
//! property tests and the acceptance target.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use alchiq_core::clause::{contains_up_to_redundancy, ContextClause};
use alchiq_core::order::{literal_multiset, multiset_greater, ContextTermOrder, Term};
use alchiq_core::symbols::{ConceptName, Func, RoleName, SymbolTable};
use alchiq_core::terms::{Atom, FTerm, Literal, RoleArgs};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A small signature for random terms.
pub struct Sig {
    pub concepts: Vec<ConceptName>,
    pub roles: Vec<RoleName>,
    pub funcs: Vec<Func>,
}

impl Sig {
    pub fn new() -> Self {
        let mut t = SymbolTable::new();
        let concepts = (0..3).map(|i| t.concept(&format!("B{i}")).unwrap()).collect();
        let roles = (0..2).map(|i| t.role(&format!("S{i}")).unwrap()).collect();
        let funcs = (0..3).map(|i| t.function(&format!("f{i}"))).collect();
        Sig { concepts, roles, funcs }
    }

    pub fn fterm(&self, rng: &mut ChaCha8Rng) -> FTerm {
        match rng.gen_range(0..3) {
            0 => FTerm::X,
            1 => FTerm::Y,
            _ => FTerm::Fn(*self.funcs.choose(rng).unwrap()),
        }
    }

    pub fn atom(&self, rng: &mut ChaCha8Rng) -> Atom {
        if rng.gen_bool(0.5) {
            Atom::Concept(*self.concepts.choose(rng).unwrap(), self.fterm(rng))
        } else {
            let s = *self.roles.choose(rng).unwrap();
            let f = *self.funcs.choose(rng).unwrap();
            let args = [RoleArgs::XY, RoleArgs::YX, RoleArgs::XF(f), RoleArgs::FX(f)];
            Atom::Role(s, *args.choose(rng).unwrap())
        }
    }

    /// A context term (no `⊤`).
    pub fn term(&self, rng: &mut ChaCha8Rng) -> Term {
        if rng.gen_bool(0.4) {
            Term::F(self.fterm(rng))
        } else {
            Term::P(self.atom(rng))
        }
    }

    pub fn literal(&self, rng: &mut ChaCha8Rng) -> Literal {
        loop {
            let l = match rng.gen_range(0..4) {
                0 | 1 => Some(Literal::Atom(self.atom(rng))),
                2 => Literal::equality(self.fterm(rng), self.fterm(rng)),
                _ => Literal::inequality(self.fterm(rng), self.fterm(rng)),
            };
            if let Some(l) = l.filter(|l| l.is_well_formed()) {
                return l;
            }
        }
    }

    /// An order as the reasoner builds them: minimal atoms of predecessor
    /// trigger shape, and goals `B(x)` only where `B(y)` is minimal.
    pub fn order(&self, rng: &mut ChaCha8Rng) -> ContextTermOrder {
        let mut minimal = HashSet::new();
        for &b in &self.concepts {
            if rng.gen_bool(0.8) {
                minimal.insert(Atom::Concept(b, FTerm::Y));
            }
        }
        for &s in &self.roles {
            for args in [RoleArgs::XY, RoleArgs::YX] {
                if rng.gen_bool(0.5) {
                    minimal.insert(Atom::Role(s, args));
                }
            }
        }
        let goals: Vec<Atom> = self
            .concepts
            .iter()
            .filter(|&&b| minimal.contains(&Atom::Concept(b, FTerm::Y)) && rng.gen_bool(0.5))
            .map(|&b| Atom::Concept(b, FTerm::X))
            .collect();
        ContextTermOrder::new(Arc::new(minimal)).with_goals(goals)
    }
}

/// Multiset extension by counting: `M ≠ N` and every element whose count
/// grows from `M` to `N` is dominated by one whose count shrinks.
pub fn brute_multiset_greater<T: std::hash::Hash + Eq + Copy>(gt: impl Fn(&T, &T) -> bool, m: &[T], n: &[T]) -> bool {
    let count = |xs: &[T]| {
        let mut c: HashMap<T, usize> = HashMap::new();
        for &x in xs {
            *c.entry(x).or_default() += 1;
        }
        c
    };
    let (cm, cn) = (count(m), count(n));
    if cm == cn {
        return false;
    }
    let get = |c: &HashMap<T, usize>, x: &T| c.get(x).copied().unwrap_or(0);
    cn.keys().filter(|y| get(&cn, y) > get(&cm, y)).all(|y| cm.keys().any(|x| get(&cm, x) > get(&cn, x) && gt(x, y)))
}

fn show(t: Term) -> String {
    format!("{t:?}")
}

/// Positions of an atom holding a function-free term that can be replaced.
fn replace_at(a: Atom, pos: usize, s: FTerm) -> Option<Atom> {
    match a {
        Atom::Concept(b, _) if pos == 0 => Some(Atom::Concept(b, s)),
        Atom::Role(r, args) if pos < 2 => {
            let (t0, t1) = args.terms();
            if pos == 0 {
                Atom::role(r, s, t1)
            } else {
                Atom::role(r, t0, s)
            }
        }
        _ => None,
    }
}

/// Checks the five order conditions, strictness and transitivity, and
/// agreement of the multiset extension with [`brute_multiset_greater`] on
/// `samples` random instances. Returns the number of checked instances and
/// the violations found.
pub fn order_axiom_violations(samples: usize, seed: u64) -> (usize, Vec<String>) {
    let sig = Sig::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut checked = 0;
    let (x, y) = (Term::F(FTerm::X), Term::F(FTerm::Y));
    for _ in 0..samples {
        let ord = sig.order(&mut rng);
        let gt = |s: Term, t: Term| ord.greater(s, t);

        // 1: f(x) ≻ x ≻ y
        let f = *sig.funcs.choose(&mut rng).unwrap();
        if !gt(Term::F(FTerm::Fn(f)), x) || !gt(x, y) {
            violations.push(format!("condition 1 fails for {f:?}"));
        }

        // 2: f ≻ g in the precedence implies f(x) ≻ g(x)
        let g = *sig.funcs.choose(&mut rng).unwrap();
        if f.index() > g.index() && !gt(Term::F(FTerm::Fn(f)), Term::F(FTerm::Fn(g))) {
            violations.push(format!("condition 2 fails for {f:?} {g:?}"));
        }

        // 3: monotonicity under replacement at a position
        let a = sig.atom(&mut rng);
        let (s1, s2) = (sig.fterm(&mut rng), sig.fterm(&mut rng));
        let pos = rng.gen_range(0..2);
        if let (Some(a1), Some(a2)) = (replace_at(a, pos, s1), replace_at(a, pos, s2)) {
            if gt(Term::F(s1), Term::F(s2)) && !gt(Term::P(a1), Term::P(a2)) {
                violations.push(format!("condition 3 fails: {s1:?} > {s2:?} but not {a1:?} > {a2:?}"));
            }
        }

        // 4: subterm property
        let t = sig.term(&mut rng);
        let subterms: Vec<FTerm> = match t {
            Term::F(FTerm::Fn(_)) => vec![FTerm::X],
            Term::P(a) => {
                let (args, n) = a.args();
                let mut v = args[..n].to_vec();
                if a.func().is_some() {
                    v.push(FTerm::X);
                }
                v
            }
            _ => vec![],
        };
        for sub in subterms {
            if Term::F(sub) != t && !gt(t, Term::F(sub)) {
                violations.push(format!("condition 4 fails: {} not above subterm {sub:?}", show(t)));
            }
        }

        // 5: predecessor-trigger atoms are above nothing but x and y
        let u = sig.term(&mut rng);
        let mut minimal: Vec<Atom> = ord.minimal_atoms().iter().copied().collect();
        minimal.sort();
        if let Some(&m) = minimal.choose(&mut rng) {
            if u != x && u != y && gt(Term::P(m), u) {
                violations.push(format!("condition 5 fails: {m:?} > {}", show(u)));
            }
        }

        // strict partial order
        let (p, q, r) = (sig.term(&mut rng), sig.term(&mut rng), sig.term(&mut rng));
        if gt(p, p) {
            violations.push(format!("reflexive at {}", show(p)));
        }
        if gt(p, q) && gt(q, p) {
            violations.push(format!("symmetric at {} {}", show(p), show(q)));
        }
        if gt(p, q) && gt(q, r) && !gt(p, r) {
            violations.push(format!("not transitive at {} {} {}", show(p), show(q), show(r)));
        }

        // multiset extension, on raw multisets and on literals
        let pick = |rng: &mut ChaCha8Rng| -> Vec<Term> {
            let pool = [p, q, r, Term::Top, x, y];
            (0..rng.gen_range(0..5)).map(|_| *pool.choose(rng).unwrap()).collect()
        };
        let (m, n) = (pick(&mut rng), pick(&mut rng));
        let gtr = |a: &Term, b: &Term| ord.greater(*a, *b);
        if multiset_greater(gtr, &m, &n) != brute_multiset_greater(gtr, &m, &n) {
            violations.push(format!("multiset disagreement on {m:?} vs {n:?}"));
        }
        let (l1, l2) = (sig.literal(&mut rng), sig.literal(&mut rng));
        let (lm, lmn) = literal_multiset(l1);
        let (ln, lnn) = literal_multiset(l2);
        if ord.literal_greater(l1, l2) != brute_multiset_greater(gtr, &lm[..lmn], &ln[..lnn]) {
            violations.push(format!("literal order disagreement on {l1:?} vs {l2:?}"));
        }
        checked += 1;
    }
    (checked, violations)
}

/// A random clause over a deliberately small atom pool, so that
/// subsumption between random clauses is common.
pub fn small_clause(sig: &Sig, rng: &mut ChaCha8Rng) -> ContextClause {
    let body_pool: Vec<Atom> = sig
        .concepts
        .iter()
        .map(|&b| Atom::Concept(b, FTerm::X))
        .chain([Atom::Role(sig.roles[0], RoleArgs::YX)])
        .collect();
    let f = sig.funcs[0];
    let head_pool: Vec<Literal> = vec![
        Literal::Atom(Atom::Concept(sig.concepts[0], FTerm::X)),
        Literal::Atom(Atom::Concept(sig.concepts[1], FTerm::Y)),
        Literal::Atom(Atom::Role(sig.roles[0], RoleArgs::XF(f))),
        Literal::equality(FTerm::Fn(f), FTerm::Y).unwrap(),
        Literal::inequality(FTerm::Fn(f), FTerm::Y).unwrap(),
    ];
    let body: Vec<Atom> = body_pool.iter().filter(|_| rng.gen_bool(0.3)).copied().collect();
    let head: Vec<Literal> = head_pool.iter().filter(|_| rng.gen_bool(0.35)).copied().collect();
    ContextClause::new(body, head)
}

/// Removal safety: if `C ⪦ U \ {C}` and `C′ ⪦ U` then `C′ ⪦ U \ {C}`.
/// Returns how many triples satisfied both premises, and the violations.
pub fn redundancy_violations(triples: usize, seed: u64) -> (usize, Vec<String>) {
    let sig = Sig::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut checked = 0;
    while checked < triples {
        let mut u: Vec<ContextClause> = (0..rng.gen_range(1..6)).map(|_| small_clause(&sig, &mut rng)).collect();
        // Bias towards C being redundant: sometimes C is a weakening of a member.
        let c = if rng.gen_bool(0.5) {
            let base = u.choose(&mut rng).unwrap().clone();
            let extra = small_clause(&sig, &mut rng);
            ContextClause::new(
                base.body().iter().chain(extra.body()).copied(),
                base.head().iter().chain(extra.head()).copied(),
            )
        } else {
            small_clause(&sig, &mut rng)
        };
        u.push(c.clone());
        let c2 = if rng.gen_bool(0.5) { c.clone() } else { small_clause(&sig, &mut rng) };
        let rest: Vec<ContextClause> = u.iter().filter(|d| **d != c).cloned().collect();
        if !contains_up_to_redundancy(&rest, &c) || !contains_up_to_redundancy(&u, &c2) {
            continue;
        }
        checked += 1;
        if !contains_up_to_redundancy(&rest, &c2) {
            violations.push(format!("U = {u:?}, C = {c:?}, C' = {c2:?}"));
        }
    }
    (checked, violations)
}
