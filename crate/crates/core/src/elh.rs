//! An independent classifier for ELH ontologies based on completion rules,
//! used to cross-check the consequence-based engine.
//!
//! Completion works on the clausified ontology. Concept names are nodes; a
//! successor `f(C)` is represented by an auxiliary node keyed by the set of
//! concepts it is asserted to belong to, which is enough in ELH because a
//! node's subsumers depend only on its initial labels.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::clause::DlClause;
use crate::frontend::Ontology;
use crate::symbols::{ConceptName, Func, RoleName};
use crate::terms::{DlAtom, DlLiteral, DlTerm};

/// True iff every clause is one of `B1(x) ∧ … → B(x)`, `B(x) → S(x,f(x))`,
/// `B(x) → B'(f(x))`, `S(z,x) [∧ B1(x)] → B2(z)` or `S1(z,x) → S2(z,x)`.
pub fn is_elh(o: &Ontology) -> bool {
    o.clauses.iter().all(clause_is_elh)
}

fn clause_is_elh(c: &DlClause) -> bool {
    use DlTerm::{Fn, X, Z};
    let concepts_over_x = |body: &[DlAtom]| body.iter().all(|a| matches!(a, DlAtom::Concept(_, X)));
    match (&c.body[..], &c.head[..]) {
        (body, [DlLiteral::Atom(DlAtom::Concept(_, X))]) => concepts_over_x(body),
        ([DlAtom::Concept(_, X)], [DlLiteral::Atom(DlAtom::Role(_, X, Fn(_)) | DlAtom::Concept(_, Fn(_)))]) => true,
        (body, [DlLiteral::Atom(DlAtom::Concept(_, Z(0)))]) => {
            let roles = body.iter().filter(|a| matches!(a, DlAtom::Role(_, Z(0), X))).count();
            let fillers = body.iter().filter(|a| matches!(a, DlAtom::Concept(_, X))).count();
            roles == 1 && fillers <= 1 && body.len() == roles + fillers
        }
        ([DlAtom::Role(_, Z(0), X)], [DlLiteral::Atom(DlAtom::Role(_, Z(0), X))]) => true,
        _ => false,
    }
}

type Node = usize;

/// Subsumer sets, existential edges and the role hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionState {
    /// `S(n)` for every node; the first nodes are the concept names.
    pub subsumers: Vec<BTreeSet<ConceptName>>,
    /// `(C, r, D)` edges.
    pub edges: BTreeSet<(Node, RoleName, Node)>,
    /// Reflexive-transitive closure of the declared role inclusions.
    pub role_hierarchy: BTreeMap<RoleName, BTreeSet<RoleName>>,
    node_of_labels: BTreeMap<BTreeSet<ConceptName>, Node>,
    concept_nodes: Vec<ConceptName>,
    conjunctions: Vec<(Vec<ConceptName>, ConceptName)>,
    /// Per function symbol, `(body concept, role)` and `(body concept, filler)`.
    successor_roles: BTreeMap<Func, Vec<(ConceptName, RoleName)>>,
    successor_fillers: BTreeMap<Func, Vec<(ConceptName, ConceptName)>>,
    /// `∃r.B1 ⊑ B2`, with `None` for `⊤` fillers.
    existentials: Vec<(RoleName, Option<ConceptName>, ConceptName)>,
}

impl CompletionState {
    /// Panics on clauses outside the ELH shapes.
    pub fn new(o: &Ontology) -> Self {
        assert!(is_elh(o), "completion needs an ELH ontology");
        let concept_nodes: Vec<ConceptName> = o.symbols.concepts().collect();
        let mut st = CompletionState {
            subsumers: concept_nodes.iter().map(|&c| BTreeSet::from([c])).collect(),
            edges: BTreeSet::new(),
            role_hierarchy: BTreeMap::new(),
            node_of_labels: BTreeMap::new(),
            concept_nodes,
            conjunctions: Vec::new(),
            successor_roles: BTreeMap::new(),
            successor_fillers: BTreeMap::new(),
            existentials: Vec::new(),
        };
        let mut inclusions: HashMap<RoleName, HashSet<RoleName>> = HashMap::new();
        for r in o.symbols.roles() {
            inclusions.entry(r).or_default().insert(r);
        }
        for c in &o.clauses {
            use DlTerm::{Fn, X, Z};
            match (&c.body[..], &c.head[..]) {
                ([DlAtom::Role(s1, Z(0), X)], [DlLiteral::Atom(DlAtom::Role(s2, Z(0), X))]) => {
                    inclusions.entry(*s1).or_default().insert(*s2);
                }
                ([DlAtom::Concept(b, X)], [DlLiteral::Atom(DlAtom::Role(s, X, Fn(f)))]) => {
                    st.successor_roles.entry(*f).or_default().push((*b, *s));
                }
                ([DlAtom::Concept(b, X)], [DlLiteral::Atom(DlAtom::Concept(b2, Fn(f)))]) => {
                    st.successor_fillers.entry(*f).or_default().push((*b, *b2));
                }
                (body, [DlLiteral::Atom(DlAtom::Concept(b2, Z(0)))]) => {
                    let mut role = None;
                    let mut filler = None;
                    for a in body {
                        match *a {
                            DlAtom::Role(s, Z(0), X) => role = Some(s),
                            DlAtom::Concept(b, X) => filler = Some(b),
                            _ => unreachable!("checked by is_elh"),
                        }
                    }
                    st.existentials.push((role.expect("checked by is_elh"), filler, *b2));
                }
                (body, [DlLiteral::Atom(DlAtom::Concept(b, X))]) => {
                    let conj = body
                        .iter()
                        .map(|a| match *a {
                            DlAtom::Concept(c, _) => c,
                            _ => unreachable!("checked by is_elh"),
                        })
                        .collect();
                    st.conjunctions.push((conj, *b));
                }
                _ => unreachable!("checked by is_elh"),
            }
        }
        // Closure of the role inclusions by repeated expansion.
        loop {
            let mut changed = false;
            let snapshot = inclusions.clone();
            for sups in inclusions.values_mut() {
                let extra: Vec<RoleName> =
                    sups.iter().flat_map(|s| snapshot.get(s).into_iter().flatten()).copied().collect();
                for r in extra {
                    changed |= sups.insert(r);
                }
            }
            if !changed {
                break;
            }
        }
        st.role_hierarchy = inclusions.into_iter().map(|(r, s)| (r, s.into_iter().collect())).collect();
        st
    }

    fn node_for(&mut self, labels: BTreeSet<ConceptName>) -> Node {
        if let Some(&n) = self.node_of_labels.get(&labels) {
            return n;
        }
        let n = self.subsumers.len();
        self.subsumers.push(labels.clone());
        self.node_of_labels.insert(labels, n);
        n
    }

    /// One pass over all rules; returns whether anything was added.
    pub fn step(&mut self) -> bool {
        let mut changed = false;
        for n in 0..self.subsumers.len() {
            // Conjunctions and atomic inclusions.
            for (conj, b) in &self.conjunctions {
                if conj.iter().all(|c| self.subsumers[n].contains(c)) && !self.subsumers[n].contains(b) {
                    self.subsumers[n].insert(*b);
                    changed = true;
                }
            }
            // Existential introduction: one successor per function symbol.
            let mut new_edges = Vec::new();
            for (f, roles) in &self.successor_roles {
                let roles: BTreeSet<RoleName> =
                    roles.iter().filter(|(b, _)| self.subsumers[n].contains(b)).map(|&(_, r)| r).collect();
                if roles.is_empty() {
                    continue;
                }
                let labels: BTreeSet<ConceptName> = self
                    .successor_fillers
                    .get(f)
                    .into_iter()
                    .flatten()
                    .filter(|(b, _)| self.subsumers[n].contains(b))
                    .map(|&(_, c)| c)
                    .collect();
                new_edges.push((roles, labels));
            }
            for (roles, labels) in new_edges {
                let d = self.node_for(labels);
                for r in roles {
                    changed |= self.edges.insert((n, r, d));
                }
            }
        }
        // Role hierarchy on edges.
        let edges: Vec<_> = self.edges.iter().copied().collect();
        for (c, r, d) in edges {
            if let Some(sups) = self.role_hierarchy.get(&r) {
                for &s in sups {
                    changed |= self.edges.insert((c, s, d));
                }
            }
        }
        // Existential restrictions on the left.
        for &(c, r, d) in &self.edges {
            for &(s, filler, b2) in &self.existentials {
                if s == r && filler.is_none_or(|b1| self.subsumers[d].contains(&b1)) && !self.subsumers[c].contains(&b2)
                {
                    self.subsumers[c].insert(b2);
                    changed = true;
                }
            }
        }
        changed
    }

    pub fn run(&mut self) {
        while self.step() {}
    }

    /// Non-reflexive `(A, B)` with `B ∈ S(A)` for concept names.
    pub fn subsumptions(&self) -> BTreeSet<(ConceptName, ConceptName)> {
        self.concept_nodes
            .iter()
            .enumerate()
            .flat_map(|(n, &a)| self.subsumers[n].iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
            .collect()
    }
}

/// Classifies an ELH ontology by completion.
pub fn elh_classify(o: &Ontology) -> BTreeSet<(ConceptName, ConceptName)> {
    let mut st = CompletionState::new(o);
    st.run();
    st.subsumptions()
}
