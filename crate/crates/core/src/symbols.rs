//! Interned signature: unary predicates (concepts), binary predicates (roles)
//! and unary function symbols.
//!
//! Concepts and roles share one id space. An id doubles as the predicate's
//! rank in the term-order precedence, so declaration order fixes the order.

use std::collections::HashMap;
use std::fmt;

use crate::error::SymbolError;

/// A unary predicate symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptName(pub(crate) u32);

/// A binary predicate symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleName(pub(crate) u32);

/// A unary function symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func(pub(crate) u32);

impl ConceptName {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl RoleName {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl Func {
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Unary,
    Binary,
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Unary => f.write_str("concept"),
            Arity::Binary => f.write_str("role"),
        }
    }
}

#[derive(Clone, Debug)]
struct PredicateEntry {
    name: String,
    arity: Arity,
}

/// Reserved spellings that can never be interned as user predicates.
pub const RESERVED: &[&str] = &["Top", "Bottom", "⊤", "⊥"];

#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    predicates: Vec<PredicateEntry>,
    predicate_ids: HashMap<String, u32>,
    functions: Vec<String>,
    function_ids: HashMap<String, u32>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern_predicate(&mut self, name: &str, arity: Arity) -> Result<u32, SymbolError> {
        if RESERVED.contains(&name) {
            return Err(SymbolError::Reserved(name.to_string()));
        }
        if let Some(&id) = self.predicate_ids.get(name) {
            let existing = self.predicates[id as usize].arity;
            if existing != arity {
                return Err(SymbolError::ArityMismatch { name: name.to_string(), declared: existing, used: arity });
            }
            return Ok(id);
        }
        let id = self.predicates.len() as u32;
        self.predicates.push(PredicateEntry { name: name.to_string(), arity });
        self.predicate_ids.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn concept(&mut self, name: &str) -> Result<ConceptName, SymbolError> {
        self.intern_predicate(name, Arity::Unary).map(ConceptName)
    }

    pub fn role(&mut self, name: &str) -> Result<RoleName, SymbolError> {
        self.intern_predicate(name, Arity::Binary).map(RoleName)
    }

    pub fn function(&mut self, name: &str) -> Func {
        if let Some(&id) = self.function_ids.get(name) {
            return Func(id);
        }
        let id = self.functions.len() as u32;
        self.functions.push(name.to_string());
        self.function_ids.insert(name.to_string(), id);
        Func(id)
    }

    /// Interns a function symbol that cannot clash with anything already
    /// present. `hint` is used verbatim when free, otherwise suffixed.
    pub fn fresh_function(&mut self, hint: &str) -> Func {
        let mut name = hint.to_string();
        let mut k = 1;
        while self.function_ids.contains_key(&name) {
            name = format!("{hint}~{k}");
            k += 1;
        }
        self.function(&name)
    }

    pub fn fresh_role(&mut self, hint: &str) -> RoleName {
        let mut name = hint.to_string();
        let mut k = 1;
        while self.predicate_ids.contains_key(&name) {
            name = format!("{hint}~{k}");
            k += 1;
        }
        self.role(&name).expect("fresh role name is unused")
    }

    pub fn lookup_concept(&self, name: &str) -> Option<ConceptName> {
        let &id = self.predicate_ids.get(name)?;
        (self.predicates[id as usize].arity == Arity::Unary).then_some(ConceptName(id))
    }

    pub fn lookup_role(&self, name: &str) -> Option<RoleName> {
        let &id = self.predicate_ids.get(name)?;
        (self.predicates[id as usize].arity == Arity::Binary).then_some(RoleName(id))
    }

    pub fn lookup_function(&self, name: &str) -> Option<Func> {
        self.function_ids.get(name).map(|&id| Func(id))
    }

    pub fn arity_of(&self, name: &str) -> Option<Arity> {
        self.predicate_ids.get(name).map(|&id| self.predicates[id as usize].arity)
    }

    pub fn concept_name(&self, c: ConceptName) -> &str {
        &self.predicates[c.0 as usize].name
    }

    pub fn role_name(&self, r: RoleName) -> &str {
        &self.predicates[r.0 as usize].name
    }

    pub fn function_name(&self, f: Func) -> &str {
        &self.functions[f.0 as usize]
    }

    pub fn concepts(&self) -> impl Iterator<Item = ConceptName> + '_ {
        self.predicates.iter().enumerate().filter(|(_, p)| p.arity == Arity::Unary).map(|(i, _)| ConceptName(i as u32))
    }

    pub fn roles(&self) -> impl Iterator<Item = RoleName> + '_ {
        self.predicates.iter().enumerate().filter(|(_, p)| p.arity == Arity::Binary).map(|(i, _)| RoleName(i as u32))
    }

    pub fn functions(&self) -> impl Iterator<Item = Func> + '_ {
        (0..self.functions.len() as u32).map(Func)
    }

    pub fn predicate_count(&self) -> usize {
        self.predicates.len()
    }

    pub fn function_count(&self) -> usize {
        self.functions.len()
    }
}
