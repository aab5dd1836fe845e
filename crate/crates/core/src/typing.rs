//! The sort-assignment relation `η ⊢ t : σ`, computed bottom-up.
//!
//! Every binder carries its sort, so synthesis alone decides the relation.
//! The first error aborts the judgement.

use std::fmt;

use thiserror::Error;

use crate::ast::{Path, Signature, Sort, Symbol, Term, TypeContext, TypeSig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeErrorKind {
    UnboundVariable,
    UnboundFunction,
    ArityMismatch,
    ArgumentSortMismatch,
    IteBranchMismatch,
    IteConditionNotBool,
    EqualitySortMismatch,
    DuplicateLetFormal,
    QuantifierBodyNotBool,
    LetSortMismatch,
    ReservedLetSymbol,
    UnknownSort,
    NotAFormula,
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeErrorKind::UnboundVariable => "unbound-variable",
            TypeErrorKind::UnboundFunction => "unbound-function",
            TypeErrorKind::ArityMismatch => "arity-mismatch",
            TypeErrorKind::ArgumentSortMismatch => "argument-sort-mismatch",
            TypeErrorKind::IteBranchMismatch => "ite-branch-mismatch",
            TypeErrorKind::IteConditionNotBool => "ite-condition-not-bool",
            TypeErrorKind::EqualitySortMismatch => "equality-sort-mismatch",
            TypeErrorKind::DuplicateLetFormal => "duplicate-let-formal",
            TypeErrorKind::QuantifierBodyNotBool => "quantifier-body-not-bool",
            TypeErrorKind::LetSortMismatch => "let-sort-mismatch",
            TypeErrorKind::ReservedLetSymbol => "reserved-let-symbol",
            TypeErrorKind::UnknownSort => "unknown-sort",
            TypeErrorKind::NotAFormula => "not-a-formula",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {path:?}{}", self.details())]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub path: Path,
    /// The symbol involved, when there is one.
    pub symbol: Option<Symbol>,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl TypeError {
    fn new(kind: TypeErrorKind, path: &Path) -> Self {
        TypeError { kind, path: path.clone(), symbol: None, expected: None, actual: None }
    }

    fn symbol(mut self, s: &Symbol) -> Self {
        self.symbol = Some(s.clone());
        self
    }

    fn mismatch(mut self, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        self.expected = Some(expected.to_string());
        self.actual = Some(actual.to_string());
        self
    }

    fn details(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.symbol {
            out.push_str(&format!(" (`{s}`)"));
        }
        if let (Some(e), Some(a)) = (&self.expected, &self.actual) {
            out.push_str(&format!(": expected {e}, found {a}"));
        }
        out
    }
}

struct Checker<'a> {
    ctx: &'a TypeContext,
    vars: Vec<(Symbol, Sort)>,
    fns: Vec<(Symbol, TypeSig)>,
    path: Path,
    /// Result sorts synthesised for unannotated lets, by position.
    inferred_lets: Vec<(Path, Sort)>,
}

impl<'a> Checker<'a> {
    fn new(ctx: &'a TypeContext) -> Self {
        Checker { ctx, vars: Vec::new(), fns: Vec::new(), path: Vec::new(), inferred_lets: Vec::new() }
    }

    fn var(&self, x: &Symbol) -> Option<Sort> {
        self.vars
            .iter()
            .rev()
            .find(|(v, _)| v == x)
            .map(|(_, s)| s.clone())
            .or_else(|| self.ctx.var(x.as_str()).cloned())
    }

    fn function(&self, f: &Symbol) -> Option<TypeSig> {
        self.fns
            .iter()
            .rev()
            .find(|(g, _)| g == f)
            .map(|(_, t)| t.clone())
            .or_else(|| self.ctx.function(f.as_str()).cloned())
    }

    fn child(&mut self, index: usize, t: &Term) -> Result<Sort, TypeError> {
        self.path.push(index);
        let out = self.infer(t);
        self.path.pop();
        out
    }

    fn known_sort(&self, sort: &Sort) -> Result<(), TypeError> {
        if self.ctx.signature().has_sort(sort) {
            Ok(())
        } else {
            Err(TypeError::new(TypeErrorKind::UnknownSort, &self.path).mismatch("a declared sort", sort))
        }
    }

    fn infer(&mut self, t: &Term) -> Result<Sort, TypeError> {
        match t {
            Term::Var(x) => self
                .var(x)
                .ok_or_else(|| TypeError::new(TypeErrorKind::UnboundVariable, &self.path).symbol(x)),
            Term::App(f, args) => {
                let ty = self
                    .function(f)
                    .ok_or_else(|| TypeError::new(TypeErrorKind::UnboundFunction, &self.path).symbol(f))?;
                if ty.arity() != args.len() {
                    return Err(TypeError::new(TypeErrorKind::ArityMismatch, &self.path)
                        .symbol(f)
                        .mismatch(ty.arity(), args.len()));
                }
                for (i, (arg, expected)) in args.iter().zip(&ty.args).enumerate() {
                    let actual = self.child(i, arg)?;
                    if &actual != expected {
                        self.path.push(i);
                        let err = TypeError::new(TypeErrorKind::ArgumentSortMismatch, &self.path)
                            .symbol(f)
                            .mismatch(expected, &actual);
                        self.path.pop();
                        return Err(err);
                    }
                }
                Ok(ty.result)
            }
            Term::Ite(c, a, b) => {
                let cond = self.child(0, c)?;
                if !cond.is_bool() {
                    self.path.push(0);
                    let err = TypeError::new(TypeErrorKind::IteConditionNotBool, &self.path)
                        .mismatch(Sort::Bool, &cond);
                    self.path.pop();
                    return Err(err);
                }
                let left = self.child(1, a)?;
                let right = self.child(2, b)?;
                if left != right {
                    return Err(TypeError::new(TypeErrorKind::IteBranchMismatch, &self.path)
                        .mismatch(&left, &right));
                }
                Ok(left)
            }
            Term::Let(l) => {
                if crate::ast::Connective::from_name(l.name.as_str()).is_some() {
                    return Err(TypeError::new(TypeErrorKind::ReservedLetSymbol, &self.path).symbol(&l.name));
                }
                for (i, (x, s)) in l.params.iter().enumerate() {
                    if l.params[..i].iter().any(|(y, _)| y == x) {
                        return Err(TypeError::new(TypeErrorKind::DuplicateLetFormal, &self.path).symbol(x));
                    }
                    self.known_sort(s)?;
                }
                let n = self.vars.len();
                self.vars.extend(l.params.iter().cloned());
                let body = self.child(0, &l.body);
                self.vars.truncate(n);
                let body = body?;
                match &l.sort {
                    Some(annotated) if annotated != &body => {
                        return Err(TypeError::new(TypeErrorKind::LetSortMismatch, &self.path)
                            .symbol(&l.name)
                            .mismatch(annotated, &body));
                    }
                    Some(_) => {}
                    None => self.inferred_lets.push((self.path.clone(), body.clone())),
                }
                let ty = TypeSig::new(l.params.iter().map(|(_, s)| s.clone()).collect(), body);
                self.fns.push((l.name.clone(), ty));
                let scope = self.child(1, &l.scope);
                self.fns.pop();
                scope
            }
            Term::Eq(a, b) => {
                let left = self.child(0, a)?;
                let right = self.child(1, b)?;
                if left != right {
                    return Err(TypeError::new(TypeErrorKind::EqualitySortMismatch, &self.path)
                        .mismatch(&left, &right));
                }
                Ok(Sort::Bool)
            }
            Term::Quant(_, x, s, body) => {
                self.known_sort(s)?;
                self.vars.push((x.clone(), s.clone()));
                let inner = self.child(0, body);
                self.vars.pop();
                let inner = inner?;
                if !inner.is_bool() {
                    return Err(TypeError::new(TypeErrorKind::QuantifierBodyNotBool, &self.path)
                        .mismatch(Sort::Bool, &inner));
                }
                Ok(Sort::Bool)
            }
        }
    }
}

/// The unique sort `σ` with `ctx ⊢ t : σ`.
pub fn infer_sort(ctx: &TypeContext, t: &Term) -> Result<Sort, TypeError> {
    Checker::new(ctx).infer(t)
}

/// Accepts `t` iff it is a formula, i.e. a term of the boolean sort.
pub fn check_formula(ctx: &TypeContext, t: &Term) -> Result<(), TypeError> {
    let sort = infer_sort(ctx, t)?;
    if sort.is_bool() {
        Ok(())
    } else {
        Err(TypeError::new(TypeErrorKind::NotAFormula, &Vec::new()).mismatch(Sort::Bool, sort))
    }
}

/// True iff `f` is declared with the boolean result sort.
pub fn is_predicate_symbol(sig: &Signature, f: &str) -> Result<bool, TypeError> {
    sig.function(f)
        .map(|ty| ty.result.is_bool())
        .ok_or_else(|| TypeError::new(TypeErrorKind::UnboundFunction, &Vec::new()).symbol(&Symbol::new(f)))
}

/// Type-checks `t` and records the synthesised result sort on every let
/// whose annotation is missing.
pub fn annotate_lets(ctx: &TypeContext, t: &mut Term) -> Result<Sort, TypeError> {
    let mut checker = Checker::new(ctx);
    let sort = checker.infer(t)?;
    for (path, inferred) in checker.inferred_lets {
        if let Some(Term::Let(l)) = t.subterm_mut(&path) {
            l.sort = Some(inferred);
        }
    }
    Ok(sort)
}

/// Let-bound function symbols in scope, outermost first.
pub type LetScope = Vec<(Symbol, TypeSig)>;

/// Sorts of the variables bound along `path`, outermost first, plus the
/// let-bound function symbols in scope there.
pub fn binders_along(t: &Term, path: &[usize]) -> (Vec<(Symbol, Sort)>, LetScope) {
    let mut vars = Vec::new();
    let mut fns = Vec::new();
    let mut cur = t;
    for &i in path {
        match cur {
            Term::Quant(_, x, s, _) => vars.push((x.clone(), s.clone())),
            Term::Let(l) if i == 0 => vars.extend(l.params.iter().cloned()),
            Term::Let(l) => {
                if let Some(sort) = &l.sort {
                    fns.push((
                        l.name.clone(),
                        TypeSig::new(l.params.iter().map(|(_, s)| s.clone()).collect(), sort.clone()),
                    ));
                }
            }
            _ => {}
        }
        match cur.children().get(i) {
            Some(next) => cur = next,
            None => break,
        }
    }
    (vars, fns)
}

/// `ctx` extended with the binders enclosing `path` in `t`.
pub fn context_at(ctx: &TypeContext, t: &Term, path: &[usize]) -> TypeContext {
    let (vars, fns) = binders_along(t, path);
    let mut out = ctx.clone();
    for (x, s) in vars {
        out = out.with_var(x, s);
    }
    for (f, ty) in fns {
        out = out.with_fn(f, ty);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list_ctx() -> TypeContext {
        let mut sig = Signature::new();
        for s in ["int", "a", "b", "list"] {
            sig.declare_sort(Sort::named(s)).unwrap();
        }
        let int = Sort::named("int");
        sig.declare_function("p".into(), TypeSig::new(vec![int.clone()], Sort::Bool)).unwrap();
        sig.declare_function("q".into(), TypeSig::new(vec![int.clone()], int.clone())).unwrap();
        sig.declare_function("c".into(), TypeSig::constant(int)).unwrap();
        sig.declare_function(
            "contains".into(),
            TypeSig::new(vec![Sort::named("list"), Sort::named("a")], Sort::Bool),
        )
        .unwrap();
        TypeContext::new(sig)
    }

    #[test]
    fn predicate_application_is_bool() {
        let ctx = list_ctx();
        assert_eq!(infer_sort(&ctx, &Term::app("p", vec![Term::constant("c")])), Ok(Sort::Bool));
    }

    #[test]
    fn ite_takes_branch_sort() {
        let ctx = list_ctx()
            .with_var("p", Sort::Bool)
            .with_var("x", Sort::named("a"))
            .with_var("y", Sort::named("a"));
        let t = Term::ite(Term::var("p"), Term::var("x"), Term::var("y"));
        assert_eq!(infer_sort(&ctx, &t), Ok(Sort::named("a")));
    }

    #[test]
    fn ite_branch_mismatch() {
        let ctx = list_ctx()
            .with_var("p", Sort::Bool)
            .with_var("x", Sort::named("a"))
            .with_var("y", Sort::named("b"));
        let t = Term::ite(Term::var("p"), Term::var("x"), Term::var("y"));
        let err = infer_sort(&ctx, &t).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::IteBranchMismatch);
        assert_eq!(err.path, Vec::<usize>::new());
    }

    #[test]
    fn ite_condition_must_be_bool() {
        let ctx = list_ctx().with_var("x", Sort::named("a"));
        let t = Term::ite(Term::constant("c"), Term::var("x"), Term::var("x"));
        let err = infer_sort(&ctx, &t).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::IteConditionNotBool);
        assert_eq!(err.path, vec![0]);
    }

    #[test]
    fn error_kinds_and_locations() {
        let ctx = list_ctx();
        let err = infer_sort(&ctx, &Term::var("z")).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnboundVariable);
        let err = infer_sort(&ctx, &Term::constant("nope")).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnboundFunction);
        let err = infer_sort(&ctx, &Term::app("p", vec![])).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::ArityMismatch);
        let err = infer_sort(&ctx, &Term::not(Term::app("q", vec![Term::constant("c")]))).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::ArgumentSortMismatch);
        assert_eq!(err.path, vec![0]);
        let err = infer_sort(&ctx, &Term::eq(Term::constant("c"), Term::tt())).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::EqualitySortMismatch);
        let err = infer_sort(&ctx, &Term::forall("x", Sort::named("int"), Term::var("x"))).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::QuantifierBodyNotBool);
        let err = infer_sort(&ctx, &Term::forall("x", Sort::named("zzz"), Term::tt())).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnknownSort);
        let dup = Term::let_in(
            "f",
            vec![("x", Sort::named("int")), ("x", Sort::named("int"))],
            Sort::named("int"),
            Term::var("x"),
            Term::constant("c"),
        );
        assert_eq!(infer_sort(&ctx, &dup).unwrap_err().kind, TypeErrorKind::DuplicateLetFormal);
    }

    #[test]
    fn let_extends_context_for_body_and_scope() {
        let ctx = list_ctx();
        let int = Sort::named("int");
        // let f(x:int) = p(x) in f(c) ∧ f(q(c))
        let t = Term::let_in(
            "f",
            vec![("x", int.clone())],
            Sort::Bool,
            Term::app("p", vec![Term::var("x")]),
            Term::and(
                Term::app("f", vec![Term::constant("c")]),
                Term::app("f", vec![Term::app("q", vec![Term::constant("c")])]),
            ),
        );
        assert_eq!(infer_sort(&ctx, &t), Ok(Sort::Bool));
        // nullary let rebinding an existing constant at a new sort
        let t = Term::let_in("c", vec![], Sort::Bool, Term::tt(), Term::not(Term::constant("c")));
        assert_eq!(infer_sort(&ctx, &t), Ok(Sort::Bool));
    }

    #[test]
    fn annotate_fills_missing_let_sorts() {
        let ctx = list_ctx();
        let mut t = Term::let_in(
            "k",
            vec![],
            Sort::Bool,
            Term::app("q", vec![Term::constant("c")]),
            Term::app("p", vec![Term::constant("k")]),
        );
        if let Term::Let(l) = &mut t {
            l.sort = None;
        }
        assert_eq!(annotate_lets(&ctx, &mut t), Ok(Sort::Bool));
        let Term::Let(l) = &t else { panic!() };
        assert_eq!(l.sort, Some(Sort::named("int")));
    }

    #[test]
    fn check_formula_and_predicates() {
        let ctx = list_ctx();
        assert!(check_formula(&ctx, &Term::app("p", vec![Term::constant("c")])).is_ok());
        assert_eq!(
            check_formula(&ctx, &Term::constant("c")).unwrap_err().kind,
            TypeErrorKind::NotAFormula
        );
        let sig = ctx.signature();
        assert_eq!(is_predicate_symbol(sig, "contains"), Ok(true));
        assert_eq!(is_predicate_symbol(sig, "q"), Ok(false));
        assert_eq!(is_predicate_symbol(sig, "$true"), Ok(true));
        assert_eq!(is_predicate_symbol(sig, "zz").unwrap_err().kind, TypeErrorKind::UnboundFunction);
    }

    #[test]
    fn quantified_boolean_formulas_are_terms() {
        let ctx = TypeContext::default();
        let qbf = Term::forall(
            "x",
            Sort::Bool,
            Term::exists("y", Sort::Bool, Term::iff(Term::var("x"), Term::not(Term::var("y")))),
        );
        assert_eq!(infer_sort(&ctx, &qbf), Ok(Sort::Bool));
    }
}
