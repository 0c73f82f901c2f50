//! Expansion strategies: which context satisfies a new successor.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::clause::DlClause;
use crate::symbols::{ConceptName, Func};
use crate::terms::{Atom, DlAtom, DlLiteral, DlTerm, FTerm};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// One context per distinct set of certain successor triggers.
    Eager,
    /// `v_{B(x)}` when `f` has a unique filler `B`, otherwise `v_⊤`.
    #[default]
    Cautious,
    /// Everything goes to `v_⊤`.
    Trivial,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] = [StrategyKind::Eager, StrategyKind::Cautious, StrategyKind::Trivial];
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::Eager => "eager",
            StrategyKind::Cautious => "cautious",
            StrategyKind::Trivial => "trivial",
        })
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eager" => Ok(StrategyKind::Eager),
            "cautious" => Ok(StrategyKind::Cautious),
            "trivial" => Ok(StrategyKind::Trivial),
            other => Err(format!("unknown strategy `{other}` (expected eager, cautious or trivial)")),
        }
    }
}

/// A strategy with the ontology facts it depends on precomputed.
#[derive(Clone, Debug)]
pub struct Strategy {
    kind: StrategyKind,
    /// For each `f`, the `B` of its only `B(f(x))` atom, if there is exactly one.
    unique_filler: HashMap<Func, Option<ConceptName>>,
}

impl Strategy {
    pub fn new<'a>(kind: StrategyKind, clauses: impl IntoIterator<Item = &'a DlClause>) -> Self {
        let mut unique_filler: HashMap<Func, Option<ConceptName>> = HashMap::new();
        let mut seen = std::collections::HashSet::new();
        for c in clauses {
            for l in &c.head {
                if let DlLiteral::Atom(DlAtom::Concept(b, DlTerm::Fn(f))) = *l {
                    if !seen.insert((b, f)) {
                        continue;
                    }
                    unique_filler.entry(f).and_modify(|e| *e = None).or_insert(Some(b));
                }
            }
        }
        Self { kind, unique_filler }
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    /// The core for a successor reached over `f` whose certain triggers are `k1`.
    pub fn select_core(&self, f: Func, k1: &[Atom]) -> Vec<Atom> {
        match self.kind {
            StrategyKind::Eager => {
                let mut core = k1.to_vec();
                core.sort_unstable();
                core.dedup();
                core
            }
            StrategyKind::Cautious => match self.unique_filler.get(&f) {
                Some(&Some(b)) if k1.contains(&Atom::Concept(b, FTerm::X)) => vec![Atom::Concept(b, FTerm::X)],
                _ => Vec::new(),
            },
            StrategyKind::Trivial => Vec::new(),
        }
    }
}
