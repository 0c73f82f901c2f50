//! A finite-interpretation checker for DL-clauses, used to certify
//! non-entailments independently of the engine.

use std::collections::{BTreeMap, BTreeSet};

use alchiq_core::clause::DlClause;
use alchiq_core::frontend::Ontology;
use alchiq_core::symbols::{ConceptName, Func, RoleName};
use alchiq_core::terms::{DlAtom, DlLiteral, DlTerm};

/// Domain elements are `0..size`; every function symbol is total, mapping
/// unlisted elements to themselves.
#[derive(Clone, Debug, Default)]
pub struct Interpretation {
    pub size: usize,
    pub concepts: BTreeSet<(ConceptName, usize)>,
    pub roles: BTreeSet<(RoleName, usize, usize)>,
    pub functions: BTreeMap<(Func, usize), usize>,
}

impl Interpretation {
    fn term(&self, t: DlTerm, x: usize, z: &[usize]) -> usize {
        match t {
            DlTerm::X => x,
            DlTerm::Z(i) => z[i as usize],
            DlTerm::Fn(f) => self.functions.get(&(f, x)).copied().unwrap_or(x),
        }
    }

    fn atom(&self, a: DlAtom, x: usize, z: &[usize]) -> bool {
        match a {
            DlAtom::Concept(b, t) => self.concepts.contains(&(b, self.term(t, x, z))),
            DlAtom::Role(s, t1, t2) => self.roles.contains(&(s, self.term(t1, x, z), self.term(t2, x, z))),
        }
    }

    fn literal(&self, l: DlLiteral, x: usize, z: &[usize]) -> bool {
        match l {
            DlLiteral::Atom(a) => self.atom(a, x, z),
            DlLiteral::Eq(s, t) => self.term(s, x, z) == self.term(t, x, z),
            DlLiteral::Neq(s, t) => self.term(s, x, z) != self.term(t, x, z),
        }
    }

    /// The first variable assignment falsifying `c`, if any.
    pub fn counterexample(&self, c: &DlClause) -> Option<(usize, Vec<usize>)> {
        let n = c.variable_count();
        let mut z = vec![0; n];
        for x in 0..self.size {
            loop {
                let body = c.body.iter().all(|&a| self.atom(a, x, &z));
                if body && !c.head.iter().any(|&l| self.literal(l, x, &z)) {
                    return Some((x, z));
                }
                // Next assignment of the z variables, odometer style.
                let mut i = 0;
                while i < n {
                    z[i] += 1;
                    if z[i] < self.size {
                        break;
                    }
                    z[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        None
    }

    /// Descriptions of all falsified clauses.
    pub fn violations(&self, o: &Ontology) -> Vec<String> {
        o.clauses
            .iter()
            .enumerate()
            .filter_map(|(k, c)| {
                self.counterexample(c).map(|(x, z)| format!("clause {} fails at x={x}, z={z:?}", k + 1))
            })
            .collect()
    }

    pub fn holds(&self, b: ConceptName, e: usize) -> bool {
        self.concepts.contains(&(b, e))
    }
}

/// Three elements `a, b, c` for the two-successor example written with
/// `f1, f2, f3`: `b = f1(a)` and `b` has successors `f2(b)` and
/// `f3(b)`. The successor in `B2` (or `B3` when `swap`) is folded back onto
/// `a`, so `a` gets `B3` (or `B2`) but not the other one.
pub fn onto2_countermodel(o: &Ontology, swap: bool) -> Interpretation {
    let c = |s: &str| o.symbols.lookup_concept(s).unwrap();
    let f = |s: &str| o.symbols.lookup_function(s).unwrap();
    let s = o.symbols.lookup_role("S").unwrap();
    let (a, b, other) = (0, 1, 2);
    let (back, fresh) = if swap { ("f2", "f3") } else { ("f3", "f2") };
    let (back_concept, fresh_concept) = if swap { ("B2", "B3") } else { ("B3", "B2") };
    let mut m = Interpretation { size: 3, ..Default::default() };
    m.functions.insert((f("f1"), a), b);
    m.functions.insert((f(back), b), a);
    m.functions.insert((f(fresh), b), other);
    m.concepts.extend([(c("B0"), a), (c("B1"), b), (c(back_concept), a), (c("B4"), a)]);
    m.concepts.extend([(c(fresh_concept), other), (c("B4"), other)]);
    m.roles.extend([(s, b, a), (s, b, other)]);
    m
}
