use std::collections::BTreeSet;

use thiserror::Error;

use super::{Connective, Path, Symbol, Term};

/// Whether a variable or function-symbol occurrence is bound or free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    Bound,
    Free,
}

/// The syntactic position kind of an occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OccurrenceContext {
    /// Argument of a logical connective, body of a quantifier, or the
    /// condition of an if-then-else.
    Formula,
    /// Argument of a non-connective function symbol or of equality.
    Term,
    /// The root, if-then-else branches, and let bodies/scopes.
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OccurrenceClass {
    /// `None` when the addressed node is not a variable or an application.
    pub binding: Option<Binding>,
    pub context: OccurrenceContext,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("path {path:?} does not address a subterm")]
pub struct PathError {
    pub path: Path,
}

/// The context of child `index` of `parent`.
pub(crate) fn child_context(parent: &Term, index: usize) -> OccurrenceContext {
    match parent {
        Term::App(..) => match parent.as_connective() {
            Some(c) if c.is_logical_operator() => OccurrenceContext::Formula,
            _ => OccurrenceContext::Term,
        },
        Term::Eq(..) => OccurrenceContext::Term,
        Term::Quant(..) => OccurrenceContext::Formula,
        Term::Ite(..) if index == 0 => OccurrenceContext::Formula,
        Term::Ite(..) | Term::Let(..) | Term::Var(_) => OccurrenceContext::NotApplicable,
    }
}

/// True for nodes that are formulas in the sense relevant to first-order
/// emission: connective applications other than the nullary constants,
/// equalities and quantified formulas.
pub fn is_formula_node(t: &Term) -> bool {
    match t {
        Term::Eq(..) | Term::Quant(..) => true,
        Term::App(..) => t.as_connective().is_some_and(Connective::is_logical_operator),
        _ => false,
    }
}

pub fn classify_occurrence(t: &Term, path: &[usize]) -> Result<OccurrenceClass, PathError> {
    let mut bound_vars: Vec<&Symbol> = Vec::new();
    let mut bound_fns: Vec<&Symbol> = Vec::new();
    let mut context = OccurrenceContext::NotApplicable;
    let mut cur = t;
    for &i in path {
        let err = || PathError { path: path.to_vec() };
        let next = *cur.children().get(i).ok_or_else(err)?;
        context = child_context(cur, i);
        match cur {
            Term::Quant(_, x, _, _) => bound_vars.push(x),
            Term::Let(l) if i == 0 => bound_vars.extend(l.params.iter().map(|(x, _)| x)),
            Term::Let(l) => bound_fns.push(&l.name),
            _ => {}
        }
        cur = next;
    }
    let binding = match cur {
        Term::Var(x) => Some(if bound_vars.contains(&x) { Binding::Bound } else { Binding::Free }),
        Term::App(f, _) => Some(if bound_fns.contains(&f) { Binding::Bound } else { Binding::Free }),
        _ => None,
    };
    Ok(OccurrenceClass { binding, context })
}

fn collect_free_vars<'a>(t: &'a Term, bound: &mut Vec<&'a Symbol>, out: &mut Vec<Symbol>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(&x) && !out.contains(x) {
                out.push(x.clone());
            }
        }
        Term::Let(l) => {
            let n = bound.len();
            bound.extend(l.params.iter().map(|(x, _)| x));
            collect_free_vars(&l.body, bound, out);
            bound.truncate(n);
            collect_free_vars(&l.scope, bound, out);
        }
        Term::Quant(_, x, _, body) => {
            bound.push(x);
            collect_free_vars(body, bound, out);
            bound.pop();
        }
        _ => {
            for c in t.children() {
                collect_free_vars(c, bound, out);
            }
        }
    }
}

/// Free variables in order of first (left-to-right, pre-order) occurrence.
pub fn free_vars_ordered(t: &Term) -> Vec<Symbol> {
    let mut out = Vec::new();
    collect_free_vars(t, &mut Vec::new(), &mut out);
    out
}

pub fn free_vars(t: &Term) -> BTreeSet<Symbol> {
    free_vars_ordered(t).into_iter().collect()
}

fn collect_free_fns<'a>(t: &'a Term, bound: &mut Vec<&'a Symbol>, out: &mut BTreeSet<Symbol>) {
    match t {
        Term::App(f, args) => {
            if t.as_connective().is_none() && !bound.contains(&f) {
                out.insert(f.clone());
            }
            for a in args {
                collect_free_fns(a, bound, out);
            }
        }
        Term::Let(l) => {
            // the definition body is outside the binding
            collect_free_fns(&l.body, bound, out);
            bound.push(&l.name);
            collect_free_fns(&l.scope, bound, out);
            bound.pop();
        }
        _ => {
            for c in t.children() {
                collect_free_fns(c, bound, out);
            }
        }
    }
}

/// Function symbols with a free occurrence. Connectives and the boolean
/// constants belong to every signature and are not reported.
pub fn free_fns(t: &Term) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    collect_free_fns(t, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoViolation {
    IfThenElse,
    LetIn,
    VariableInFormulaContext,
    FormulaInTermContext,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoWitness {
    pub path: Path,
    pub violation: FoViolation,
}

/// Checks the syntactically-first-order fragment and returns the first
/// offending occurrence in pre-order otherwise. A bare boolean variable in
/// term context is accepted.
pub fn is_syntactically_first_order(t: &Term) -> Result<(), FoWitness> {
    fn go(t: &Term, ctx: OccurrenceContext, path: &mut Path) -> Result<(), FoWitness> {
        let violation = match t {
            Term::Ite(..) => Some(FoViolation::IfThenElse),
            Term::Let(..) => Some(FoViolation::LetIn),
            Term::Var(_) if ctx == OccurrenceContext::Formula => {
                Some(FoViolation::VariableInFormulaContext)
            }
            _ if ctx == OccurrenceContext::Term && is_formula_node(t) => {
                Some(FoViolation::FormulaInTermContext)
            }
            _ => None,
        };
        if let Some(violation) = violation {
            return Err(FoWitness { path: path.clone(), violation });
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            go(c, child_context(t, i), path)?;
            path.pop();
        }
        Ok(())
    }
    go(t, OccurrenceContext::NotApplicable, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Sort;

    fn s() -> Sort {
        Sort::named("s")
    }

    fn set(names: &[&str]) -> BTreeSet<Symbol> {
        names.iter().map(|n| Symbol::new(n)).collect()
    }

    #[test]
    fn quantifier_binds_its_variable() {
        let t = Term::forall("x", s(), Term::app("p", vec![Term::var("x")]));
        assert!(free_vars(&t).is_empty());
    }

    #[test]
    fn let_formals_bind_in_body_only() {
        // let f(x:s) = g(x, y) in f(z)
        let t = Term::let_in(
            "f",
            vec![("x", s())],
            s(),
            Term::app("g", vec![Term::var("x"), Term::var("y")]),
            Term::app("f", vec![Term::var("z")]),
        );
        assert_eq!(free_vars(&t), set(&["y", "z"]));
        assert_eq!(free_vars_ordered(&t), vec![Symbol::new("y"), Symbol::new("z")]);
    }

    #[test]
    fn let_formal_is_free_in_scope() {
        // let f(x:s) = c in p(x): the scope occurrence of x is free
        let t = Term::let_in(
            "f",
            vec![("x", s())],
            s(),
            Term::constant("c"),
            Term::app("p", vec![Term::var("x")]),
        );
        assert_eq!(free_vars(&t), set(&["x"]));
    }

    #[test]
    fn let_bound_symbol_free_fns() {
        let t = Term::let_in(
            "f",
            vec![("x", s())],
            s(),
            Term::constant("c"),
            Term::app("f", vec![Term::constant("d")]),
        );
        assert_eq!(free_fns(&t), set(&["c", "d"]));

        // non-recursive: f inside its own definition body is free
        let t = Term::let_in(
            "f",
            vec![("x", s())],
            s(),
            Term::app("f", vec![Term::var("x")]),
            Term::app("f", vec![Term::constant("c")]),
        );
        assert_eq!(free_fns(&t), set(&["f", "c"]));

        let t = Term::app("p", vec![Term::constant("a")]);
        assert_eq!(free_fns(&t), set(&["p", "a"]));
    }

    #[test]
    fn connectives_are_not_reported_as_free_symbols() {
        let t = Term::and(Term::tt(), Term::not(Term::constant("p")));
        assert_eq!(free_fns(&t), set(&["p"]));
    }

    #[test]
    fn contexts() {
        let neg = Term::not(Term::constant("s"));
        assert_eq!(classify_occurrence(&neg, &[0]).unwrap().context, OccurrenceContext::Formula);
        let app = Term::app("f", vec![Term::constant("s")]);
        assert_eq!(classify_occurrence(&app, &[0]).unwrap().context, OccurrenceContext::Term);
        let eq = Term::eq(Term::constant("s"), Term::constant("t"));
        assert_eq!(classify_occurrence(&eq, &[0]).unwrap().context, OccurrenceContext::Term);
        assert_eq!(classify_occurrence(&eq, &[1]).unwrap().context, OccurrenceContext::Term);
        let q = Term::forall("x", Sort::Bool, Term::var("x"));
        let class = classify_occurrence(&q, &[0]).unwrap();
        assert_eq!(class.context, OccurrenceContext::Formula);
        assert_eq!(class.binding, Some(Binding::Bound));
        let ite = Term::ite(Term::var("p"), Term::var("x"), Term::var("y"));
        assert_eq!(classify_occurrence(&ite, &[0]).unwrap().context, OccurrenceContext::Formula);
        assert_eq!(
            classify_occurrence(&ite, &[1]).unwrap().context,
            OccurrenceContext::NotApplicable
        );
        assert_eq!(classify_occurrence(&ite, &[]).unwrap().context, OccurrenceContext::NotApplicable);
        assert!(classify_occurrence(&ite, &[5]).is_err());
        assert!(classify_occurrence(&ite, &[0, 0]).is_err());
    }

    #[test]
    fn let_bound_function_occurrence_is_bound_in_scope_free_in_body() {
        let t = Term::let_in(
            "f",
            vec![("x", s())],
            s(),
            Term::app("f", vec![Term::var("x")]),
            Term::app("f", vec![Term::constant("c")]),
        );
        assert_eq!(classify_occurrence(&t, &[0]).unwrap().binding, Some(Binding::Free));
        assert_eq!(classify_occurrence(&t, &[0, 0]).unwrap().binding, Some(Binding::Bound));
        assert_eq!(classify_occurrence(&t, &[1]).unwrap().binding, Some(Binding::Bound));
        assert_eq!(classify_occurrence(&t, &[1, 0]).unwrap().binding, Some(Binding::Free));
    }

    #[test]
    fn first_order_fragment() {
        let fo = Term::and(
            Term::app("p", vec![Term::constant("a")]),
            Term::app("q", vec![Term::constant("b")]),
        );
        assert_eq!(is_syntactically_first_order(&fo), Ok(()));

        let bad = Term::app(
            "f",
            vec![Term::or(
                Term::app("p", vec![Term::constant("a")]),
                Term::app("q", vec![Term::constant("b")]),
            )],
        );
        assert_eq!(
            is_syntactically_first_order(&bad),
            Err(FoWitness { path: vec![0], violation: FoViolation::FormulaInTermContext })
        );

        let var = Term::forall("x", Sort::Bool, Term::or(Term::var("x"), Term::constant("p")));
        assert_eq!(
            is_syntactically_first_order(&var),
            Err(FoWitness { path: vec![0, 0], violation: FoViolation::VariableInFormulaContext })
        );

        // bool variable in term context is accepted
        let ok = Term::forall("x", Sort::Bool, Term::app("p", vec![Term::var("x")]));
        assert_eq!(is_syntactically_first_order(&ok), Ok(()));
        // true/false in formula context are accepted
        assert_eq!(is_syntactically_first_order(&Term::not(Term::tt())), Ok(()));
        // equality under a function symbol is a formula in term context
        let eq = Term::app("f", vec![Term::eq(Term::constant("a"), Term::constant("b"))]);
        assert!(is_syntactically_first_order(&eq).is_err());
    }
}
