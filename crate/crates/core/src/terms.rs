//! Context terms and DL terms.
//!
//! Every term the calculus can derive has one of a handful of fixed shapes,
//! so terms are closed enums rather than trees. Context F-terms are `x`, `y`
//! and `f(x)`; context P-terms are `B(y)`, `B(x)`, `B(f(x))`, `S(x,y)`,
//! `S(y,x)`, `S(x,f(x))` and `S(f(x),x)`. DL terms additionally use the
//! variables `z_i`, which a [`HyperSubstitution`] maps to `y` or `f(x)`.

use std::fmt::Write as _;

use crate::error::TermError;
use crate::symbols::{ConceptName, Func, RoleName, SymbolTable};

/// Context F-term. The derived order (`y < x < f(x)`, function symbols by
/// id) is exactly the term order restricted to F-terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FTerm {
    Y,
    X,
    Fn(Func),
}

impl FTerm {
    pub fn func(self) -> Option<Func> {
        match self {
            FTerm::Fn(f) => Some(f),
            _ => None,
        }
    }
}

/// Argument pattern of a binary context atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleArgs {
    /// `S(x,y)`
    XY,
    /// `S(y,x)`
    YX,
    /// `S(x,f(x))`
    XF(Func),
    /// `S(f(x),x)`
    FX(Func),
}

impl RoleArgs {
    pub fn from_terms(first: FTerm, second: FTerm) -> Option<RoleArgs> {
        match (first, second) {
            (FTerm::X, FTerm::Y) => Some(RoleArgs::XY),
            (FTerm::Y, FTerm::X) => Some(RoleArgs::YX),
            (FTerm::X, FTerm::Fn(f)) => Some(RoleArgs::XF(f)),
            (FTerm::Fn(f), FTerm::X) => Some(RoleArgs::FX(f)),
            _ => None,
        }
    }

    pub fn terms(self) -> (FTerm, FTerm) {
        match self {
            RoleArgs::XY => (FTerm::X, FTerm::Y),
            RoleArgs::YX => (FTerm::Y, FTerm::X),
            RoleArgs::XF(f) => (FTerm::X, FTerm::Fn(f)),
            RoleArgs::FX(f) => (FTerm::Fn(f), FTerm::X),
        }
    }
}

/// Context P-term; as a literal it stands for `A ≈ ⊤`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Concept(ConceptName, FTerm),
    Role(RoleName, RoleArgs),
}

/// Shape class of an atom, ignoring which predicate or function it uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomShape {
    ConceptX,
    ConceptY,
    ConceptF,
    RoleXY,
    RoleYX,
    RoleXF,
    RoleFX,
}

impl Atom {
    pub fn concept(b: ConceptName, t: FTerm) -> Atom {
        Atom::Concept(b, t)
    }

    pub fn role(s: RoleName, first: FTerm, second: FTerm) -> Option<Atom> {
        RoleArgs::from_terms(first, second).map(|a| Atom::Role(s, a))
    }

    pub fn shape(self) -> AtomShape {
        match self {
            Atom::Concept(_, FTerm::X) => AtomShape::ConceptX,
            Atom::Concept(_, FTerm::Y) => AtomShape::ConceptY,
            Atom::Concept(_, FTerm::Fn(_)) => AtomShape::ConceptF,
            Atom::Role(_, RoleArgs::XY) => AtomShape::RoleXY,
            Atom::Role(_, RoleArgs::YX) => AtomShape::RoleYX,
            Atom::Role(_, RoleArgs::XF(_)) => AtomShape::RoleXF,
            Atom::Role(_, RoleArgs::FX(_)) => AtomShape::RoleFX,
        }
    }

    /// Id of the predicate symbol; concepts and roles share the id space.
    pub fn predicate_index(self) -> u32 {
        match self {
            Atom::Concept(b, _) => b.0,
            Atom::Role(s, _) => s.0,
        }
    }

    /// The function symbol occurring in the atom, if any.
    pub fn func(self) -> Option<Func> {
        match self {
            Atom::Concept(_, t) => t.func(),
            Atom::Role(_, RoleArgs::XF(f) | RoleArgs::FX(f)) => Some(f),
            Atom::Role(_, _) => None,
        }
    }

    pub fn is_function_free(self) -> bool {
        self.func().is_none()
    }

    /// The argument terms, in order.
    pub fn args(self) -> ([FTerm; 2], usize) {
        match self {
            Atom::Concept(_, t) => ([t, FTerm::Y], 1),
            Atom::Role(_, a) => {
                let (s, t) = a.terms();
                ([s, t], 2)
            }
        }
    }

    /// `A{x ↦ y, y ↦ x}`, used to build predecessor triggers. Only defined
    /// for function-free atoms.
    pub fn swap_xy(self) -> Option<Atom> {
        match self {
            Atom::Concept(b, FTerm::X) => Some(Atom::Concept(b, FTerm::Y)),
            Atom::Concept(b, FTerm::Y) => Some(Atom::Concept(b, FTerm::X)),
            Atom::Role(s, RoleArgs::XY) => Some(Atom::Role(s, RoleArgs::YX)),
            Atom::Role(s, RoleArgs::YX) => Some(Atom::Role(s, RoleArgs::XY)),
            _ => None,
        }
    }
}

/// Applies `σ = {x ↦ f(x), y ↦ x}` to a function-free atom.
pub fn shift_to_successor(atom: Atom, f: Func) -> Result<Atom, TermError> {
    match atom {
        Atom::Concept(b, FTerm::X) => Ok(Atom::Concept(b, FTerm::Fn(f))),
        Atom::Concept(b, FTerm::Y) => Ok(Atom::Concept(b, FTerm::X)),
        Atom::Role(s, RoleArgs::XY) => Ok(Atom::Role(s, RoleArgs::FX(f))),
        Atom::Role(s, RoleArgs::YX) => Ok(Atom::Role(s, RoleArgs::XF(f))),
        other => Err(TermError::IllegalShape(format!("{other:?} is not a trigger shape"))),
    }
}

/// Inverse of [`shift_to_successor`] for a fixed `f`: the function-free
/// atom `A` with `Aσ = atom`, if one exists.
pub fn shift_to_predecessor(atom: Atom, f: Func) -> Option<Atom> {
    match atom {
        Atom::Concept(b, FTerm::Fn(g)) if g == f => Some(Atom::Concept(b, FTerm::X)),
        Atom::Concept(b, FTerm::X) => Some(Atom::Concept(b, FTerm::Y)),
        Atom::Role(s, RoleArgs::FX(g)) if g == f => Some(Atom::Role(s, RoleArgs::XY)),
        Atom::Role(s, RoleArgs::XF(g)) if g == f => Some(Atom::Role(s, RoleArgs::YX)),
        _ => None,
    }
}

/// Replaces the occurrence of `f(x)` inside `atom` by `new`. Returns `None`
/// when `f(x)` does not occur or the result would leave the context shapes.
pub fn replace_in_atom(atom: Atom, f: Func, new: FTerm) -> Option<Atom> {
    match atom {
        Atom::Concept(b, FTerm::Fn(g)) if g == f => Some(Atom::Concept(b, new)),
        Atom::Role(s, RoleArgs::XF(g)) if g == f => Atom::role(s, FTerm::X, new),
        Atom::Role(s, RoleArgs::FX(g)) if g == f => Atom::role(s, new, FTerm::X),
        _ => None,
    }
}

/// Root replacement on F-terms: `f(x)` becomes `new`, anything else is
/// untouched (`None`).
pub fn replace_in_fterm(term: FTerm, f: Func, new: FTerm) -> Option<FTerm> {
    (term == FTerm::Fn(f)).then_some(new)
}

/// Context literal. Equalities and inequalities keep their larger argument
/// first, so `s ≈ t` and `t ≈ s` are the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Atom(Atom),
    Eq(FTerm, FTerm),
    Neq(FTerm, FTerm),
}

fn orient(a: FTerm, b: FTerm) -> Option<(FTerm, FTerm)> {
    let (l, r) = if a >= b { (a, b) } else { (b, a) };
    match (l, r) {
        (FTerm::Fn(_), FTerm::Fn(_)) | (FTerm::Fn(_), FTerm::Y) | (FTerm::Y, FTerm::Y) => Some((l, r)),
        _ => None,
    }
}

impl Literal {
    /// `a ≈ b`; `None` if the pair is not one of `f(x)≈g(x)`, `f(x)≈y`, `y≈y`.
    pub fn equality(a: FTerm, b: FTerm) -> Option<Literal> {
        orient(a, b).map(|(l, r)| Literal::Eq(l, r))
    }

    pub fn inequality(a: FTerm, b: FTerm) -> Option<Literal> {
        orient(a, b).map(|(l, r)| Literal::Neq(l, r))
    }

    /// True for values built outside the constructors that break the shape rules.
    pub fn is_well_formed(self) -> bool {
        match self {
            Literal::Atom(_) => true,
            Literal::Eq(l, r) | Literal::Neq(l, r) => orient(l, r) == Some((l, r)),
        }
    }

    pub fn as_atom(self) -> Option<Atom> {
        match self {
            Literal::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_equality(self) -> bool {
        matches!(self, Literal::Eq(..))
    }
}

impl From<Atom> for Literal {
    fn from(a: Atom) -> Literal {
        Literal::Atom(a)
    }
}

/// DL-F-term: `x`, `z_i` or `f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlTerm {
    X,
    Z(u32),
    Fn(Func),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlAtom {
    Concept(ConceptName, DlTerm),
    Role(RoleName, DlTerm, DlTerm),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlLiteral {
    Atom(DlAtom),
    Eq(DlTerm, DlTerm),
    Neq(DlTerm, DlTerm),
}

impl DlAtom {
    /// Legal DL-P-term shapes: `B(z)`, `B(x)`, `B(f(x))`, `S(x,z)`, `S(z,x)`,
    /// `S(x,f(x))`, `S(f(x),x)`.
    pub fn is_well_shaped(self) -> bool {
        match self {
            DlAtom::Concept(..) => true,
            DlAtom::Role(_, DlTerm::X, DlTerm::Z(_) | DlTerm::Fn(_)) => true,
            DlAtom::Role(_, DlTerm::Z(_) | DlTerm::Fn(_), DlTerm::X) => true,
            DlAtom::Role(..) => false,
        }
    }

    /// Shapes allowed in DL-clause bodies: `B(x)`, `S(x,z)`, `S(z,x)`.
    pub fn is_body_shaped(self) -> bool {
        matches!(
            self,
            DlAtom::Concept(_, DlTerm::X)
                | DlAtom::Role(_, DlTerm::X, DlTerm::Z(_))
                | DlAtom::Role(_, DlTerm::Z(_), DlTerm::X)
        )
    }

    pub fn variables(self) -> impl Iterator<Item = u32> {
        let terms: [Option<DlTerm>; 2] = match self {
            DlAtom::Concept(_, t) => [Some(t), None],
            DlAtom::Role(_, s, t) => [Some(s), Some(t)],
        };
        terms.into_iter().flatten().filter_map(|t| match t {
            DlTerm::Z(i) => Some(i),
            _ => None,
        })
    }
}

impl DlLiteral {
    pub fn is_well_shaped(self) -> bool {
        match self {
            DlLiteral::Atom(a) => a.is_well_shaped(),
            DlLiteral::Eq(l, r) | DlLiteral::Neq(l, r) => matches!(
                (l, r),
                (DlTerm::Fn(_), DlTerm::Fn(_))
                    | (DlTerm::Fn(_), DlTerm::Z(_))
                    | (DlTerm::Z(_), DlTerm::Fn(_))
                    | (DlTerm::Z(_), DlTerm::Z(_))
            ),
        }
    }

    pub fn variables(self) -> Vec<u32> {
        match self {
            DlLiteral::Atom(a) => a.variables().collect(),
            DlLiteral::Eq(l, r) | DlLiteral::Neq(l, r) => [l, r]
                .into_iter()
                .filter_map(|t| match t {
                    DlTerm::Z(i) => Some(i),
                    _ => None,
                })
                .collect(),
        }
    }
}

/// Substitution used by hyperresolution: `x ↦ x`, each `z_i ↦ y` or `f(x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HyperSubstitution {
    zmap: Vec<Option<FTerm>>,
}

impl HyperSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(vars: usize) -> Self {
        Self { zmap: vec![None; vars] }
    }

    pub fn get(&self, z: u32) -> Option<FTerm> {
        self.zmap.get(z as usize).copied().flatten()
    }

    /// Binds `z`, or checks consistency with an existing binding.
    pub fn bind(&mut self, z: u32, value: FTerm) -> bool {
        debug_assert!(value != FTerm::X, "z variables never map to x");
        let i = z as usize;
        if self.zmap.len() <= i {
            self.zmap.resize(i + 1, None);
        }
        match self.zmap[i] {
            Some(v) => v == value,
            None => {
                self.zmap[i] = Some(value);
                true
            }
        }
    }

    pub fn unbind(&mut self, z: u32) {
        if let Some(slot) = self.zmap.get_mut(z as usize) {
            *slot = None;
        }
    }

    fn term(&self, t: DlTerm) -> Result<FTerm, TermError> {
        match t {
            DlTerm::X => Ok(FTerm::X),
            DlTerm::Fn(f) => Ok(FTerm::Fn(f)),
            DlTerm::Z(i) => self.get(i).ok_or(TermError::UnboundVariable(i)),
        }
    }

    pub fn apply_atom(&self, atom: DlAtom) -> Result<Atom, TermError> {
        match atom {
            DlAtom::Concept(b, t) => Ok(Atom::Concept(b, self.term(t)?)),
            DlAtom::Role(s, a, b) => {
                let (a, b) = (self.term(a)?, self.term(b)?);
                Atom::role(s, a, b).ok_or_else(|| TermError::IllegalShape(format!("{s:?}({a:?},{b:?})")))
            }
        }
    }
}

/// Instantiates a DL-literal into a context literal.
pub fn apply_hyper_subst(lit: DlLiteral, sigma: &HyperSubstitution) -> Result<Literal, TermError> {
    match lit {
        DlLiteral::Atom(a) => sigma.apply_atom(a).map(Literal::Atom),
        DlLiteral::Eq(l, r) => {
            let (l, r) = (sigma.term(l)?, sigma.term(r)?);
            Literal::equality(l, r).ok_or_else(|| TermError::IllegalShape(format!("{l:?} = {r:?}")))
        }
        DlLiteral::Neq(l, r) => {
            let (l, r) = (sigma.term(l)?, sigma.term(r)?);
            Literal::inequality(l, r).ok_or_else(|| TermError::IllegalShape(format!("{l:?} != {r:?}")))
        }
    }
}

/// Textual rendering against a symbol table.
pub trait Render {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String);

    fn render(&self, symbols: &SymbolTable) -> String {
        let mut s = String::new();
        self.render_into(symbols, &mut s);
        s
    }
}

impl Render for FTerm {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match self {
            FTerm::X => out.push('x'),
            FTerm::Y => out.push('y'),
            FTerm::Fn(f) => {
                let _ = write!(out, "{}(x)", symbols.function_name(*f));
            }
        }
    }
}

impl Render for Atom {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match *self {
            Atom::Concept(b, t) => {
                out.push_str(symbols.concept_name(b));
                out.push('(');
                t.render_into(symbols, out);
                out.push(')');
            }
            Atom::Role(s, args) => {
                let (a, b) = args.terms();
                out.push_str(symbols.role_name(s));
                out.push('(');
                a.render_into(symbols, out);
                out.push(',');
                b.render_into(symbols, out);
                out.push(')');
            }
        }
    }
}

impl Render for Literal {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match self {
            Literal::Atom(a) => a.render_into(symbols, out),
            Literal::Eq(l, r) | Literal::Neq(l, r) => {
                l.render_into(symbols, out);
                out.push_str(if matches!(self, Literal::Eq(..)) { " = " } else { " != " });
                r.render_into(symbols, out);
            }
        }
    }
}

impl Render for DlTerm {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match self {
            DlTerm::X => out.push('x'),
            DlTerm::Z(i) => {
                let _ = write!(out, "z{}", i + 1);
            }
            DlTerm::Fn(f) => {
                let _ = write!(out, "{}(x)", symbols.function_name(*f));
            }
        }
    }
}

impl Render for DlAtom {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match *self {
            DlAtom::Concept(b, t) => {
                out.push_str(symbols.concept_name(b));
                out.push('(');
                t.render_into(symbols, out);
                out.push(')');
            }
            DlAtom::Role(s, a, b) => {
                out.push_str(symbols.role_name(s));
                out.push('(');
                a.render_into(symbols, out);
                out.push(',');
                b.render_into(symbols, out);
                out.push(')');
            }
        }
    }
}

impl Render for DlLiteral {
    fn render_into(&self, symbols: &SymbolTable, out: &mut String) {
        match self {
            DlLiteral::Atom(a) => a.render_into(symbols, out),
            DlLiteral::Eq(l, r) | DlLiteral::Neq(l, r) => {
                l.render_into(symbols, out);
                out.push_str(if matches!(self, DlLiteral::Eq(..)) { " = " } else { " != " });
                r.render_into(symbols, out);
            }
        }
    }
}
