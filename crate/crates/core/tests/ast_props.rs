mod common;

use std::collections::BTreeSet;

use common::{s, signature, Features, TermGen};
use fool_core::ast::{
    alpha_eq, classify_occurrence, free_fns, free_vars, rename_apart, Binding, OccurrenceContext, Sort, Symbol, Term,
};
use fool_core::semantics::eval;
use proptest::prelude::*;

fn sample(seed: u64) -> (Term, TermGen) {
    let mut g = TermGen::new(seed, signature(), Features::all()).with_free_vars(&[("u", s()), ("x", Sort::Bool)]);
    let t = g.term(&Sort::Bool, 5);
    (t, g)
}

fn paths(t: &Term, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    for (i, c) in t.children().into_iter().enumerate() {
        prefix.push(i);
        paths(c, prefix, out);
        prefix.pop();
    }
}

fn binder_names(t: &Term, out: &mut Vec<Symbol>) {
    t.walk(&mut |node| match node {
        Term::Quant(_, x, _, _) => out.push(x.clone()),
        Term::Let(l) => {
            out.push(l.name.clone());
            out.extend(l.params.iter().map(|(x, _)| x.clone()));
        }
        _ => {}
    });
}

fn avoid(seed: u64) -> BTreeSet<Symbol> {
    ["x", "y", "g0", "c"].iter().enumerate().filter(|(i, _)| seed >> i & 1 == 1).map(|(_, n)| Symbol::new(n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn renaming_apart_keeps_free_names_and_meaning(seed in any::<u64>()) {
        let (t, mut g) = sample(seed);
        let a = avoid(seed);
        let r = rename_apart(&t, &a);
        prop_assert_eq!(free_vars(&r), free_vars(&t));
        prop_assert_eq!(free_fns(&r), free_fns(&t));
        prop_assert!(alpha_eq(&r, &t), "{} vs {}", r, t);
        prop_assert!(alpha_eq(&rename_apart(&r, &a), &r));
        let interp = g.interpretation(3, &[(Symbol::new("u"), s()), (Symbol::new("x"), Sort::Bool)]);
        prop_assert_eq!(eval(&interp, &r).unwrap(), eval(&interp, &t).unwrap());
    }

    #[test]
    fn renamed_binders_are_distinct_and_avoid_the_set(seed in any::<u64>()) {
        let (t, _) = sample(seed);
        let a = avoid(seed);
        let r = rename_apart(&t, &a);
        let mut names = Vec::new();
        binder_names(&r, &mut names);
        let distinct: BTreeSet<_> = names.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), names.len(), "{}", r);
        prop_assert!(distinct.is_disjoint(&a), "{}", r);
        prop_assert!(distinct.is_disjoint(&free_vars(&t)), "{}", r);
        prop_assert!(distinct.is_disjoint(&free_fns(&t)), "{}", r);
    }

    #[test]
    fn occurrences_are_bound_or_free(seed in any::<u64>()) {
        let (t, _) = sample(seed);
        let (fv, ff) = (free_vars(&t), free_fns(&t));
        let mut all = Vec::new();
        paths(&t, &mut Vec::new(), &mut all);
        let mut seen_free = BTreeSet::new();
        for path in all {
            let class = classify_occurrence(&t, &path).unwrap();
            let node = t.subterm(&path).unwrap();
            match node {
                Term::Var(x) => {
                    let b = class.binding.unwrap();
                    prop_assert_eq!(b == Binding::Free, fv.contains(x) && !is_rebound(&t, &path, x, true));
                    if b == Binding::Free { seen_free.insert(x.clone()); }
                }
                Term::App(f, _) if node.as_connective().is_none() => {
                    let b = class.binding.unwrap();
                    prop_assert_eq!(b == Binding::Free, ff.contains(f) && !is_rebound(&t, &path, f, false));
                    if b == Binding::Free { seen_free.insert(f.clone()); }
                }
                _ => {}
            }
            if !path.is_empty() {
                let parent = t.subterm(&path[..path.len() - 1]).unwrap();
                if matches!(parent, Term::App(..) | Term::Eq(..) | Term::Quant(..)) {
                    prop_assert!(class.context != OccurrenceContext::NotApplicable, "{:?} in {}", path, t);
                }
            }
        }
        let expected: BTreeSet<Symbol> = fv.union(&ff).cloned().collect();
        prop_assert_eq!(seen_free, expected);
    }
}

/// Whether a binder on the way to `path` binds `name`.
fn is_rebound(t: &Term, path: &[usize], name: &Symbol, var: bool) -> bool {
    let mut cur = t;
    let mut bound = false;
    for &i in path {
        match cur {
            Term::Quant(_, x, _, _) if var && x == name => bound = true,
            Term::Let(l) if var && i == 0 && l.params.iter().any(|(x, _)| x == name) => bound = true,
            Term::Let(l) if !var && i == 1 && &l.name == name => bound = true,
            _ => {}
        }
        cur = cur.children()[i];
    }
    bound
}
