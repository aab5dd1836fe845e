//! Random well-typed FOOL terms and random finite interpretations, shared by
//! the property tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fool_core::ast::{Connective, LetIn, Quantifier, Signature, Sort, Symbol, Term, TypeContext, TypeSig};
use fool_core::semantics::{Elem, Interpretation, Table};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn s() -> Sort {
    Sort::named("s")
}

/// One sort `s` and five symbols mixing booleans into argument positions.
pub fn signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_sort(s()).unwrap();
    for (name, ty) in [
        ("c", TypeSig::constant(s())),
        ("q", TypeSig::constant(Sort::Bool)),
        ("p", TypeSig::new(vec![s()], Sort::Bool)),
        ("f", TypeSig::new(vec![s(), Sort::Bool], s())),
        ("h", TypeSig::new(vec![Sort::Bool], s())),
    ] {
        sig.declare_function(name.into(), ty).unwrap();
    }
    sig
}

/// At most three symbols of arity at most two, for exhaustive oracle runs.
pub fn small_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_sort(s()).unwrap();
    for (name, ty) in [
        ("c", TypeSig::constant(s())),
        ("p", TypeSig::new(vec![s()], Sort::Bool)),
        ("h", TypeSig::new(vec![Sort::Bool], s())),
    ] {
        sig.declare_function(name.into(), ty).unwrap();
    }
    sig
}

#[derive(Clone, Copy, Debug)]
pub struct Features {
    pub lets: bool,
    pub quantifiers: bool,
    pub ite: bool,
    /// Let-bound names may reuse signature symbols.
    pub shadowing: bool,
}

impl Features {
    pub fn all() -> Self {
        Features { lets: true, quantifiers: true, ite: true, shadowing: true }
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];
const LET_NAMES: [&str; 2] = ["g0", "g1"];

pub struct TermGen {
    rng: StdRng,
    sig: Signature,
    features: Features,
    vars: Vec<(Symbol, Sort)>,
    lets: Vec<(Symbol, TypeSig)>,
}

impl TermGen {
    pub fn new(seed: u64, sig: Signature, features: Features) -> Self {
        TermGen { rng: StdRng::seed_from_u64(seed), sig, features, vars: Vec::new(), lets: Vec::new() }
    }

    /// Makes `vars` free in generated terms.
    pub fn with_free_vars(mut self, vars: &[(&str, Sort)]) -> Self {
        self.vars = vars.iter().map(|(x, s)| (Symbol::new(x), s.clone())).collect();
        self
    }

    pub fn context(&self) -> TypeContext {
        let mut ctx = TypeContext::new(self.sig.clone());
        for (x, s) in &self.vars {
            ctx.push_var(x.clone(), s.clone());
        }
        ctx
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.rng.random_range(0..items.len())].clone()
    }

    fn sort(&mut self) -> Sort {
        if self.rng.random_bool(0.5) {
            Sort::Bool
        } else {
            s()
        }
    }

    fn visible_vars(&self, sort: &Sort) -> Vec<Symbol> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (x, t) in self.vars.iter().rev() {
            if seen.insert(x.clone()) && t == sort {
                out.push(x.clone());
            }
        }
        out
    }

    fn visible_fns(&self, result: &Sort) -> Vec<(Symbol, TypeSig)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let lets = self.lets.iter().rev().map(|(f, ty)| (f.clone(), ty.clone()));
        let sig = self.sig.user_functions().map(|(f, ty)| (f.clone(), ty.clone()));
        for (f, ty) in lets.chain(sig) {
            if seen.insert(f.clone()) && &ty.result == result {
                out.push((f, ty));
            }
        }
        out
    }

    fn leaf(&mut self, sort: &Sort) -> Term {
        let mut options: Vec<Term> = self.visible_vars(sort).into_iter().map(Term::Var).collect();
        for (f, ty) in self.visible_fns(sort) {
            if ty.args.is_empty() {
                options.push(Term::App(f, Vec::new()));
            }
        }
        if sort.is_bool() {
            options.push(Term::tt());
            options.push(Term::ff());
        }
        if options.is_empty() {
            let (f, ty) = self.pick(&self.visible_fns(sort));
            let args = ty.args.iter().map(|a| self.leaf(a)).collect();
            return Term::App(f, args);
        }
        self.pick(&options)
    }

    fn app(&mut self, sort: &Sort, depth: usize) -> Option<Term> {
        let fns: Vec<_> = self.visible_fns(sort).into_iter().filter(|(_, ty)| !ty.args.is_empty()).collect();
        if fns.is_empty() {
            return None;
        }
        let (f, ty) = self.pick(&fns);
        let args = ty.args.iter().map(|a| self.term(a, depth - 1)).collect();
        Some(Term::App(f, args))
    }

    fn let_term(&mut self, sort: &Sort, depth: usize) -> Term {
        let mut names: Vec<&str> = LET_NAMES.to_vec();
        if self.features.shadowing {
            names.extend(["c", "q"]);
        }
        let name = Symbol::new(self.pick(&names));
        let arity = self.rng.random_range(0..=2);
        let params: Vec<(Symbol, Sort)> = (0..arity).map(|i| (Symbol::new(VARS[i]), self.sort())).collect();
        let result = self.sort();
        let n = self.vars.len();
        self.vars.extend(params.iter().cloned());
        let body = self.term(&result, depth - 1);
        self.vars.truncate(n);
        let ty = TypeSig::new(params.iter().map(|(_, s)| s.clone()).collect(), result.clone());
        self.lets.push((name.clone(), ty));
        let scope = self.term(sort, depth - 1);
        self.lets.pop();
        Term::Let(Box::new(LetIn { name, params, sort: Some(result), body, scope }))
    }

    /// A term of `sort` whose nesting is at most `depth`.
    pub fn term(&mut self, sort: &Sort, depth: usize) -> Term {
        if depth == 0 || self.rng.random_bool(0.1) {
            return self.leaf(sort);
        }
        loop {
            let choice = self.rng.random_range(0..10);
            match choice {
                0 | 1 => {
                    if let Some(t) = self.app(sort, depth) {
                        return t;
                    }
                }
                2 if self.features.ite => {
                    let c = self.term(&Sort::Bool, depth - 1);
                    let a = self.term(sort, depth - 1);
                    let b = self.term(sort, depth - 1);
                    return Term::ite(c, a, b);
                }
                3 if self.features.lets => return self.let_term(sort, depth),
                4 if sort.is_bool() => return Term::not(self.term(sort, depth - 1)),
                5 | 6 if sort.is_bool() => {
                    let op = self.pick(&[Connective::And, Connective::Or, Connective::Implies, Connective::Iff]);
                    let a = self.term(sort, depth - 1);
                    let b = self.term(sort, depth - 1);
                    return Term::connective(op, vec![a, b]);
                }
                7 if sort.is_bool() => {
                    let side = self.sort();
                    let a = self.term(&side, depth - 1);
                    let b = self.term(&side, depth - 1);
                    return Term::eq(a, b);
                }
                8 | 9 if sort.is_bool() && self.features.quantifiers => {
                    let x = Symbol::new(self.pick(&VARS));
                    let bound = self.sort();
                    let q = if self.rng.random_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
                    self.vars.push((x.clone(), bound.clone()));
                    let body = self.term(&Sort::Bool, depth - 1);
                    self.vars.pop();
                    return Term::Quant(q, x, bound, Box::new(body));
                }
                _ if !sort.is_bool() && choice >= 4 => return self.leaf(sort),
                _ => {}
            }
        }
    }

    /// A closed formula.
    pub fn formula(&mut self, depth: usize) -> Term {
        let saved = std::mem::take(&mut self.vars);
        let t = self.term(&Sort::Bool, depth);
        self.vars = saved;
        t
    }

    /// Random carrier sizes in `1..=max` and random tables for every
    /// signature symbol; `vars` get random values.
    pub fn interpretation(&mut self, max: usize, vars: &[(Symbol, Sort)]) -> Interpretation {
        let size = self.rng.random_range(1..=max);
        random_interpretation(&mut self.rng, &self.sig, size, vars)
    }
}

pub fn random_table(rng: &mut StdRng, arg_sizes: Vec<usize>, result_size: usize) -> Table {
    let n: usize = arg_sizes.iter().product();
    let values = (0..n).map(|_| rng.random_range(0..result_size) as Elem).collect();
    Table::new(arg_sizes, result_size, values)
}

pub fn random_interpretation(rng: &mut StdRng, sig: &Signature, size: usize, vars: &[(Symbol, Sort)]) -> Interpretation {
    let mut interp = Interpretation::new();
    for sort in sig.sorts() {
        interp.set_domain(sort.clone(), size);
    }
    let size_of = |s: &Sort| if s.is_bool() { 2 } else { size };
    for (f, ty) in sig.user_functions() {
        let table = random_table(rng, ty.args.iter().map(size_of).collect(), size_of(&ty.result));
        interp.set_table(f.clone(), table);
    }
    for (x, sort) in vars {
        interp.set_var(x.clone(), rng.random_range(0..size_of(sort)) as Elem);
    }
    interp
}

/// Splits a corpus file into `(name, source)` problems at `%% name` lines.
pub fn corpus(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("%% ") {
            out.push((name.trim().to_string(), String::new()));
        } else if let Some((_, src)) = out.last_mut() {
            src.push_str(line);
            src.push('\n');
        }
    }
    out
}
