//! Sorts, types, signatures and the unified term language.
//!
//! Formulas are not a separate category: a formula is any [`Term`] of the
//! boolean sort. Logical connectives and `true`/`false` are ordinary
//! applications of reserved symbols (see [`Connective`]).

mod occurrence;
pub(crate) mod print;
mod rename;

use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

pub use occurrence::{
    classify_occurrence, free_fns, free_vars, free_vars_ordered, is_formula_node,
    is_syntactically_first_order, Binding, FoViolation, FoWitness, OccurrenceClass,
    OccurrenceContext, PathError,
};
pub use print::{quote_name, PrintStyle, TermDisplay};
pub use rename::{alpha_eq, rename_apart};

/// An interned identifier for variables, function symbols and sorts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// A sort. `Bool` is the distinguished boolean sort; every other sort is
/// uninterpreted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sort {
    Bool,
    Named(Symbol),
}

impl Sort {
    pub fn named(name: &str) -> Self {
        Sort::Named(Symbol::new(name))
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, Sort::Bool)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("$o"),
            Sort::Named(name) => f.write_str(&quote_name(name.as_str())),
        }
    }
}

/// `σ1 × … × σn → σ`; a nullary type is its result sort alone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TypeSig {
    pub args: Vec<Sort>,
    pub result: Sort,
}

impl TypeSig {
    pub fn new(args: Vec<Sort>, result: Sort) -> Self {
        TypeSig { args, result }
    }

    pub fn constant(result: Sort) -> Self {
        TypeSig { args: Vec::new(), result }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Display for TypeSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.args.as_slice() {
            [] => write!(f, "{}", self.result),
            [single] => write!(f, "{} > {}", single, self.result),
            many => {
                f.write_str("(")?;
                for (i, s) in many.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ") > {}", self.result)
            }
        }
    }
}

/// The reserved symbols every signature contains.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Connective {
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    /// Always-true nullary predicate. Only produced by FOL emission.
    Top,
    /// Always-false nullary predicate. Only produced by FOL emission.
    Bottom,
}

impl Connective {
    pub const ALL: [Connective; 9] = [
        Connective::True,
        Connective::False,
        Connective::Not,
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
        Connective::Top,
        Connective::Bottom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Connective::True => "$true",
            Connective::False => "$false",
            Connective::Not => "$not",
            Connective::And => "$and",
            Connective::Or => "$or",
            Connective::Implies => "$implies",
            Connective::Iff => "$iff",
            Connective::Top => "$top",
            Connective::Bottom => "$bot",
        }
    }

    pub fn from_name(name: &str) -> Option<Connective> {
        Connective::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::True | Connective::False | Connective::Top | Connective::Bottom => 0,
            Connective::Not => 1,
            Connective::And | Connective::Or | Connective::Implies | Connective::Iff => 2,
        }
    }

    /// Connectives whose arguments are in formula context.
    pub fn is_logical_operator(self) -> bool {
        self.arity() > 0
    }

    pub fn type_sig(self) -> TypeSig {
        TypeSig::new(vec![Sort::Bool; self.arity()], Sort::Bool)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is already declared")]
    Duplicate(Symbol),
    #[error("symbol `{0}` is reserved and cannot be redeclared")]
    Reserved(Symbol),
    #[error("sort `{0}` is not declared")]
    UnknownSort(Sort),
}

/// Sorts plus function symbols with their types. Connectives are always
/// present; user symbols keep declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    sorts: IndexSet<Sort>,
    functions: IndexMap<Symbol, TypeSig>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let mut sorts = IndexSet::new();
        sorts.insert(Sort::Bool);
        let functions = Connective::ALL
            .iter()
            .map(|c| (Symbol::new(c.name()), c.type_sig()))
            .collect();
        Signature { sorts, functions }
    }

    pub fn declare_sort(&mut self, sort: Sort) -> Result<(), SignatureError> {
        if self.sorts.contains(&sort) {
            return match sort {
                Sort::Bool => Err(SignatureError::Reserved(Symbol::new("$o"))),
                Sort::Named(name) => Err(SignatureError::Duplicate(name)),
            };
        }
        self.sorts.insert(sort);
        Ok(())
    }

    /// Declares the sort unless it is already known.
    pub fn ensure_sort(&mut self, sort: Sort) {
        self.sorts.insert(sort);
    }

    pub fn has_sort(&self, sort: &Sort) -> bool {
        self.sorts.contains(sort)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.iter()
    }

    pub fn declare_function(&mut self, name: Symbol, ty: TypeSig) -> Result<(), SignatureError> {
        if Connective::from_name(name.as_str()).is_some() {
            return Err(SignatureError::Reserved(name));
        }
        if self.functions.contains_key(&name) {
            return Err(SignatureError::Duplicate(name));
        }
        for s in ty.args.iter().chain(std::iter::once(&ty.result)) {
            if !self.sorts.contains(s) {
                return Err(SignatureError::UnknownSort(s.clone()));
            }
        }
        self.functions.insert(name, ty);
        Ok(())
    }

    pub fn function(&self, name: &str) -> Option<&TypeSig> {
        self.functions.get(name)
    }

    /// User-declared function symbols in declaration order.
    pub fn user_functions(&self) -> impl Iterator<Item = (&Symbol, &TypeSig)> {
        self.functions
            .iter()
            .filter(|(name, _)| Connective::from_name(name.as_str()).is_none())
    }
}

/// A type assignment: a signature extended by variable and function bindings.
/// Extensions shadow earlier bindings; lookup resolves the innermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeContext {
    signature: Signature,
    vars: Vec<(Symbol, Sort)>,
    fns: Vec<(Symbol, TypeSig)>,
}

impl TypeContext {
    pub fn new(signature: Signature) -> Self {
        TypeContext { signature, vars: Vec::new(), fns: Vec::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_mut(&mut self) -> &mut Signature {
        &mut self.signature
    }

    /// `η, x:σ`
    pub fn with_var(&self, x: impl Into<Symbol>, sort: Sort) -> TypeContext {
        let mut out = self.clone();
        out.vars.push((x.into(), sort));
        out
    }

    /// `η, f:τ`
    pub fn with_fn(&self, f: impl Into<Symbol>, ty: TypeSig) -> TypeContext {
        let mut out = self.clone();
        out.fns.push((f.into(), ty));
        out
    }

    pub fn push_var(&mut self, x: Symbol, sort: Sort) {
        self.vars.push((x, sort));
    }

    pub fn var(&self, x: &str) -> Option<&Sort> {
        self.vars.iter().rev().find(|(v, _)| v.as_str() == x).map(|(_, s)| s)
    }

    pub fn function(&self, f: &str) -> Option<&TypeSig> {
        self.fns
            .iter()
            .rev()
            .find(|(g, _)| g.as_str() == f)
            .map(|(_, t)| t)
            .or_else(|| self.signature.function(f))
    }

    pub fn var_bindings(&self) -> &[(Symbol, Sort)] {
        &self.vars
    }

    pub fn fn_bindings(&self) -> &[(Symbol, TypeSig)] {
        &self.fns
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// `let f(x1:σ1, …, xn:σn) = body in scope`. `sort` is the result sort of
/// `f`; the loader fills it in when the concrete syntax leaves it implicit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LetIn {
    pub name: Symbol,
    pub params: Vec<(Symbol, Sort)>,
    pub sort: Option<Sort>,
    pub body: Term,
    pub scope: Term,
}

/// A FOOL term. Children are addressed by index: `App` arguments in order,
/// `Ite` as `[condition, then, else]`, `Let` as `[body, scope]`, `Eq` as
/// `[left, right]` and a quantifier as `[body]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Symbol),
    App(Symbol, Vec<Term>),
    Ite(Box<Term>, Box<Term>, Box<Term>),
    Let(Box<LetIn>),
    Eq(Box<Term>, Box<Term>),
    Quant(Quantifier, Symbol, Sort, Box<Term>),
}

/// A sequence of child indices from the root.
pub type Path = Vec<usize>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::new(name))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name), args)
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name), Vec::new())
    }

    pub fn connective(c: Connective, args: Vec<Term>) -> Term {
        debug_assert_eq!(c.arity(), args.len());
        Term::App(Symbol::new(c.name()), args)
    }

    pub fn tt() -> Term {
        Term::connective(Connective::True, Vec::new())
    }

    pub fn ff() -> Term {
        Term::connective(Connective::False, Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Term) -> Term {
        Term::connective(Connective::Not, vec![a])
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::connective(Connective::And, vec![a, b])
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::connective(Connective::Or, vec![a, b])
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::connective(Connective::Implies, vec![a, b])
    }

    pub fn iff(a: Term, b: Term) -> Term {
        Term::connective(Connective::Iff, vec![a, b])
    }

    /// Right-nested conjunction; `true` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Term>) -> Term {
        let mut items: Vec<Term> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Term::tt();
        };
        while let Some(prev) = items.pop() {
            acc = Term::and(prev, acc);
        }
        acc
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::Eq(Box::new(a), Box::new(b))
    }

    pub fn ite(c: Term, a: Term, b: Term) -> Term {
        Term::Ite(Box::new(c), Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, sort: Sort, body: Term) -> Term {
        Term::Quant(Quantifier::Forall, Symbol::new(x), sort, Box::new(body))
    }

    pub fn exists(x: &str, sort: Sort, body: Term) -> Term {
        Term::Quant(Quantifier::Exists, Symbol::new(x), sort, Box::new(body))
    }

    /// Universal closure over `vars`, outermost first.
    pub fn forall_many(vars: &[(Symbol, Sort)], body: Term) -> Term {
        vars.iter().rev().fold(body, |acc, (x, s)| {
            Term::Quant(Quantifier::Forall, x.clone(), s.clone(), Box::new(acc))
        })
    }

    pub fn let_in(name: &str, params: Vec<(&str, Sort)>, sort: Sort, body: Term, scope: Term) -> Term {
        Term::Let(Box::new(LetIn {
            name: Symbol::new(name),
            params: params.into_iter().map(|(x, s)| (Symbol::new(x), s)).collect(),
            sort: Some(sort),
            body,
            scope,
        }))
    }

    /// The connective this node applies, if any.
    pub fn as_connective(&self) -> Option<Connective> {
        match self {
            Term::App(f, _) => Connective::from_name(f.as_str()),
            _ => None,
        }
    }

    pub fn is_connective(&self, c: Connective) -> bool {
        self.as_connective() == Some(c)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) => Vec::new(),
            Term::App(_, args) => args.iter().collect(),
            Term::Ite(c, a, b) => vec![c, a, b],
            Term::Let(l) => vec![&l.body, &l.scope],
            Term::Eq(a, b) => vec![a, b],
            Term::Quant(_, _, _, body) => vec![body],
        }
    }

    pub fn child_mut(&mut self, index: usize) -> Option<&mut Term> {
        match self {
            Term::Var(_) => None,
            Term::App(_, args) => args.get_mut(index),
            Term::Ite(c, a, b) => match index {
                0 => Some(c),
                1 => Some(a),
                2 => Some(b),
                _ => None,
            },
            Term::Let(l) => match index {
                0 => Some(&mut l.body),
                1 => Some(&mut l.scope),
                _ => None,
            },
            Term::Eq(a, b) => match index {
                0 => Some(a),
                1 => Some(b),
                _ => None,
            },
            Term::Quant(_, _, _, body) => (index == 0).then_some(&mut **body),
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn subterm_mut(&mut self, path: &[usize]) -> Option<&mut Term> {
        let mut cur = self;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        Some(cur)
    }

    /// Every position in pre-order, root first.
    pub fn positions(&self) -> Vec<Path> {
        fn go(t: &Term, path: &mut Path, out: &mut Vec<Path>) {
            out.push(path.clone());
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                go(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Term)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    pub fn display(&self, style: PrintStyle) -> TermDisplay<'_> {
        TermDisplay { term: self, style }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(PrintStyle::Dialect).fmt(f)
    }
}
