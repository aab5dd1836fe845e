use std::collections::{BTreeMap, BTreeSet};

use super::occurrence::{free_fns, free_vars};
use super::{LetIn, Symbol, Term};

fn fresh_like(name: &Symbol, used: &mut BTreeSet<Symbol>) -> Symbol {
    if !used.contains(name) {
        used.insert(name.clone());
        return name.clone();
    }
    let fresh = (0..)
        .map(|k| Symbol::from(format!("{name}{k}")))
        .find(|candidate| !used.contains(candidate))
        .expect("unbounded counter");
    used.insert(fresh.clone());
    fresh
}

fn lookup<'a>(env: &'a [(Symbol, Symbol)], name: &'a Symbol) -> &'a Symbol {
    env.iter().rev().find(|(old, _)| old == name).map(|(_, new)| new).unwrap_or(name)
}

struct Renamer {
    used: BTreeSet<Symbol>,
    vars: Vec<(Symbol, Symbol)>,
    fns: Vec<(Symbol, Symbol)>,
}

impl Renamer {
    fn go(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(x) => Term::Var(lookup(&self.vars, x).clone()),
            Term::App(f, args) => {
                let f = lookup(&self.fns, f).clone();
                Term::App(f, args.iter().map(|a| self.go(a)).collect())
            }
            Term::Ite(c, a, b) => Term::ite(self.go(c), self.go(a), self.go(b)),
            Term::Eq(a, b) => Term::eq(self.go(a), self.go(b)),
            Term::Quant(q, x, s, body) => {
                let x2 = fresh_like(x, &mut self.used);
                self.vars.push((x.clone(), x2.clone()));
                let body = self.go(body);
                self.vars.pop();
                Term::Quant(*q, x2, s.clone(), Box::new(body))
            }
            Term::Let(l) => {
                let n = self.vars.len();
                let mut params = Vec::with_capacity(l.params.len());
                for (x, s) in &l.params {
                    let x2 = fresh_like(x, &mut self.used);
                    self.vars.push((x.clone(), x2.clone()));
                    params.push((x2, s.clone()));
                }
                let body = self.go(&l.body);
                self.vars.truncate(n);
                let name = fresh_like(&l.name, &mut self.used);
                self.fns.push((l.name.clone(), name.clone()));
                let scope = self.go(&l.scope);
                self.fns.pop();
                Term::Let(Box::new(LetIn { name, params, sort: l.sort.clone(), body, scope }))
            }
        }
    }
}

/// Alpha-equivalent copy whose bound variable and bound function-symbol
/// names are pairwise distinct and disjoint from `avoid` and from the free
/// names of `t`. Binders already satisfying this keep their names.
pub fn rename_apart(t: &Term, avoid: &BTreeSet<Symbol>) -> Term {
    let mut used = avoid.clone();
    used.extend(free_vars(t));
    used.extend(free_fns(t));
    Renamer { used, vars: Vec::new(), fns: Vec::new() }.go(t)
}

fn canonical(t: &Term) -> Term {
    struct Canon {
        next: usize,
        vars: Vec<(Symbol, Symbol)>,
        fns: Vec<(Symbol, Symbol)>,
    }
    impl Canon {
        fn fresh(&mut self) -> Symbol {
            self.next += 1;
            Symbol::from(format!("#{}", self.next))
        }
        fn go(&mut self, t: &Term) -> Term {
            match t {
                Term::Var(x) => Term::Var(lookup(&self.vars, x).clone()),
                Term::App(f, args) => {
                    let f = lookup(&self.fns, f).clone();
                    Term::App(f, args.iter().map(|a| self.go(a)).collect())
                }
                Term::Ite(c, a, b) => Term::ite(self.go(c), self.go(a), self.go(b)),
                Term::Eq(a, b) => Term::eq(self.go(a), self.go(b)),
                Term::Quant(q, x, s, body) => {
                    let x2 = self.fresh();
                    self.vars.push((x.clone(), x2.clone()));
                    let body = self.go(body);
                    self.vars.pop();
                    Term::Quant(*q, x2, s.clone(), Box::new(body))
                }
                Term::Let(l) => {
                    let n = self.vars.len();
                    let mut params = Vec::new();
                    for (x, s) in &l.params {
                        let x2 = self.fresh();
                        self.vars.push((x.clone(), x2.clone()));
                        params.push((x2, s.clone()));
                    }
                    let body = self.go(&l.body);
                    self.vars.truncate(n);
                    let name = self.fresh();
                    self.fns.push((l.name.clone(), name.clone()));
                    let scope = self.go(&l.scope);
                    self.fns.pop();
                    Term::Let(Box::new(LetIn { name, params, sort: l.sort.clone(), body, scope }))
                }
            }
        }
    }
    Canon { next: 0, vars: Vec::new(), fns: Vec::new() }.go(t)
}

/// Equality up to renaming of bound variables and let-bound symbols.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    canonical(a) == canonical(b)
}

impl Term {
    /// Replaces free occurrences of variables by other variables. The
    /// targets must not be captured by binders inside `self`.
    pub fn rename_free_vars(&self, map: &BTreeMap<Symbol, Symbol>) -> Term {
        fn go(t: &Term, map: &BTreeMap<Symbol, Symbol>, bound: &mut Vec<Symbol>) -> Term {
            match t {
                Term::Var(x) if !bound.contains(x) => {
                    Term::Var(map.get(x).cloned().unwrap_or_else(|| x.clone()))
                }
                Term::Var(_) => t.clone(),
                Term::App(f, args) => {
                    Term::App(f.clone(), args.iter().map(|a| go(a, map, bound)).collect())
                }
                Term::Ite(c, a, b) => Term::ite(go(c, map, bound), go(a, map, bound), go(b, map, bound)),
                Term::Eq(a, b) => Term::eq(go(a, map, bound), go(b, map, bound)),
                Term::Quant(q, x, s, body) => {
                    bound.push(x.clone());
                    let body = go(body, map, bound);
                    bound.pop();
                    Term::Quant(*q, x.clone(), s.clone(), Box::new(body))
                }
                Term::Let(l) => {
                    let n = bound.len();
                    bound.extend(l.params.iter().map(|(x, _)| x.clone()));
                    let body = go(&l.body, map, bound);
                    bound.truncate(n);
                    let scope = go(&l.scope, map, bound);
                    Term::Let(Box::new(LetIn { body, scope, ..(**l).clone() }))
                }
            }
        }
        go(self, map, &mut Vec::new())
    }

    /// Rewrites every application of a free occurrence of `f`, innermost
    /// arguments first.
    pub fn map_free_apps(&self, f: &Symbol, rewrite: &mut impl FnMut(Vec<Term>) -> Term) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(g, args) => {
                let args: Vec<Term> = args.iter().map(|a| a.map_free_apps(f, rewrite)).collect();
                if g == f {
                    rewrite(args)
                } else {
                    Term::App(g.clone(), args)
                }
            }
            Term::Ite(c, a, b) => Term::ite(
                c.map_free_apps(f, rewrite),
                a.map_free_apps(f, rewrite),
                b.map_free_apps(f, rewrite),
            ),
            Term::Eq(a, b) => Term::eq(a.map_free_apps(f, rewrite), b.map_free_apps(f, rewrite)),
            Term::Quant(q, x, s, body) => {
                Term::Quant(*q, x.clone(), s.clone(), Box::new(body.map_free_apps(f, rewrite)))
            }
            Term::Let(l) => {
                let body = l.body.map_free_apps(f, rewrite);
                let scope = if &l.name == f { l.scope.clone() } else { l.scope.map_free_apps(f, rewrite) };
                Term::Let(Box::new(LetIn { body, scope, ..(**l).clone() }))
            }
        }
    }
}
