//! Lowering of FOOL formulas to the syntactically first-order fragment.
//!
//! Four rewrite steps remove boolean variables in formula context, formulas
//! in term context, if-then-else and let-in. Each step that introduces a
//! fresh symbol adds a closed definition pinning it down. The strategy is
//! innermost-leftmost: the first eligible node in post-order is rewritten.

mod fol;
mod mutate;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ast::{
    free_fns, free_vars_ordered, is_formula_node, is_syntactically_first_order, rename_apart,
    Connective, FoWitness, LetIn, Path, Sort, Symbol, Term, TypeContext, TypeSig,
};
use crate::problem::{Problem, Role};
use crate::typing::{annotate_lets, check_formula, context_at, infer_sort, TypeError};

pub use fol::{
    bool_distinct_axiom, bool_domain_axiom, to_fol, FolFormula, FolProblem, SymbolKind, BOOL_DISTINCT_AXIOM,
    BOOL_DOMAIN_AXIOM,
};
pub use mutate::{mutate, mutation_sites, Mutation, MutationError, MutationKind};

/// Prefix of every symbol invented by translation or clausification.
pub const RESERVED_PREFIX: &str = "sk_fool_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    BoolVar,
    FormulaInTerm,
    Ite,
    Let,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::BoolVar => "bool-var",
            StepKind::FormulaInTerm => "formula-in-term",
            StepKind::Ite => "ite",
            StepKind::Let => "let",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which formula of the state a path is relative to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Current,
    Definition(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFormula {
    pub name: String,
    pub role: Role,
    pub term: Term,
}

/// A member of `D`, with the symbol it defines and the step that made it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub symbol: Symbol,
    pub kind: StepKind,
    pub term: Term,
}

/// One applied step. `before`/`after` are the whole target formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: StepKind,
    pub target: Target,
    pub path: Path,
    pub before: Term,
    pub after: Term,
    pub symbol: Option<Symbol>,
    pub added: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("{kind} step does not apply at {path:?}: {reason}")]
    NotApplicable { kind: StepKind, path: Path, reason: &'static str },
    #[error("translation exceeded its step bound of {bound}")]
    BoundExceeded { bound: usize },
    #[error("translation left a non-first-order occurrence at {0:?}")]
    NotFirstOrder(FoWitness),
}

/// Effective context of a node for the purpose of steps 1 and 2: branches of
/// if-then-else and let bodies end up as equation operands in definitions,
/// while a let scope replaces the let node itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Eff {
    Formula,
    Term,
}

fn child_eff(parent: &Term, index: usize, eff: Eff) -> Eff {
    match parent {
        Term::App(..) => match parent.as_connective() {
            Some(c) if c.is_logical_operator() => Eff::Formula,
            _ => Eff::Term,
        },
        Term::Eq(..) => Eff::Term,
        Term::Quant(..) => Eff::Formula,
        Term::Ite(..) if index == 0 => Eff::Formula,
        Term::Ite(..) => Eff::Term,
        Term::Let(..) if index == 0 => Eff::Term,
        Term::Let(..) => eff,
        Term::Var(_) => eff,
    }
}

struct Walk<'a> {
    ctx: &'a TypeContext,
    vars: Vec<(Symbol, Sort)>,
    fns: Vec<Symbol>,
    path: Path,
}

impl Walk<'_> {
    fn var_sort(&self, x: &Symbol) -> Option<Sort> {
        self.vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, s)| s.clone())
            .or_else(|| self.ctx.var(x.as_str()).cloned())
    }

    fn redex_kind(&self, t: &Term, eff: Eff) -> Option<StepKind> {
        match t {
            Term::Var(x) if eff == Eff::Formula && self.var_sort(x).is_some_and(|s| s.is_bool()) => {
                Some(StepKind::BoolVar)
            }
            Term::Ite(..) => Some(StepKind::Ite),
            Term::Let(..) => Some(StepKind::Let),
            _ if eff == Eff::Term && is_formula_node(t) => Some(StepKind::FormulaInTerm),
            _ => None,
        }
    }

    /// Whether the redex mentions a symbol bound by an enclosing let.
    fn captured(&self, t: &Term) -> bool {
        !self.fns.is_empty() && free_fns(t).iter().any(|f| self.fns.contains(f))
    }

    /// Post-order visit; `visit` returns `true` to stop.
    fn go(&mut self, t: &Term, eff: Eff, visit: &mut dyn FnMut(&Self, &Term, StepKind) -> bool) -> bool {
        for (i, c) in t.children().into_iter().enumerate() {
            let pushed_vars = self.vars.len();
            let mut pushed_fn = false;
            match t {
                Term::Quant(_, x, s, _) => self.vars.push((x.clone(), s.clone())),
                Term::Let(l) if i == 0 => self.vars.extend(l.params.iter().cloned()),
                Term::Let(l) => {
                    self.fns.push(l.name.clone());
                    pushed_fn = true;
                }
                _ => {}
            }
            self.path.push(i);
            let stop = self.go(c, child_eff(t, i, eff), visit);
            self.path.pop();
            self.vars.truncate(pushed_vars);
            if pushed_fn {
                self.fns.pop();
            }
            if stop {
                return true;
            }
        }
        match self.redex_kind(t, eff) {
            Some(kind) => visit(self, t, kind),
            None => false,
        }
    }
}

fn first_redex(ctx: &TypeContext, t: &Term) -> Option<(Path, StepKind)> {
    let mut walk = Walk { ctx, vars: Vec::new(), fns: Vec::new(), path: Vec::new() };
    let mut found = None;
    walk.go(t, Eff::Formula, &mut |w, node, kind| {
        let eligible = kind == StepKind::BoolVar || !w.captured(node);
        if eligible {
            found = Some((w.path.clone(), kind));
        }
        eligible
    });
    found
}

/// The termination measure: if-then-else and let nodes, boolean variables
/// in formula context, and formulas in term context.
pub fn step_measure(ctx: &TypeContext, t: &Term) -> usize {
    let mut walk = Walk { ctx, vars: Vec::new(), fns: Vec::new(), path: Vec::new() };
    let mut count = 0;
    walk.go(t, Eff::Formula, &mut |_, _, _| {
        count += 1;
        false
    });
    count
}

fn all_var_names(t: &Term, out: &mut BTreeSet<Symbol>) {
    t.walk(&mut |node| match node {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Quant(_, x, _, _) => {
            out.insert(x.clone());
        }
        Term::Let(l) => out.extend(l.params.iter().map(|(x, _)| x.clone())),
        _ => {}
    });
}

/// The in-progress translation of a sequence of formulas sharing one set of
/// definitions and one growing context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationState {
    /// The formula being rewritten.
    pub current: Term,
    pub label: Option<(String, Role)>,
    /// Formulas translated earlier, in order.
    pub finished: Vec<LabeledFormula>,
    /// The definitions `D`, in insertion order.
    pub defs: Vec<Definition>,
    pub ctx: TypeContext,
    pub fresh_counter: usize,
    pub var_counter: usize,
    pub steps: Vec<StepRecord>,
    /// Sum of [`step_measure`] over every formula started so far.
    pub bound: usize,
}

impl TranslationState {
    pub fn new(ctx: TypeContext) -> Self {
        TranslationState {
            current: Term::tt(),
            label: None,
            finished: Vec::new(),
            defs: Vec::new(),
            ctx,
            fresh_counter: 0,
            var_counter: 0,
            steps: Vec::new(),
            bound: 0,
        }
    }

    /// Moves the current formula (if labeled) to `finished` and starts
    /// translating `term`, filling in let sorts and checking it is a
    /// formula.
    pub fn start(&mut self, name: impl Into<String>, role: Role, term: Term) -> Result<(), TranslateError> {
        self.finish();
        let mut term = term;
        annotate_lets(&self.ctx, &mut term)?;
        check_formula(&self.ctx, &term)?;
        self.bound += step_measure(&self.ctx, &term);
        self.current = term;
        self.label = Some((name.into(), role));
        Ok(())
    }

    pub fn finish(&mut self) {
        if let Some((name, role)) = self.label.take() {
            let term = std::mem::replace(&mut self.current, Term::tt());
            self.finished.push(LabeledFormula { name, role, term });
        }
    }

    pub fn target(&self, target: Target) -> &Term {
        match target {
            Target::Current => &self.current,
            Target::Definition(i) => &self.defs[i].term,
        }
    }

    fn target_mut(&mut self, target: Target) -> &mut Term {
        match target {
            Target::Current => &mut self.current,
            Target::Definition(i) => &mut self.defs[i].term,
        }
    }

    /// The first eligible redex: in the current formula, then in the
    /// definitions in order.
    pub fn find_redex(&self) -> Option<(Target, Path, StepKind)> {
        if let Some((p, k)) = first_redex(&self.ctx, &self.current) {
            return Some((Target::Current, p, k));
        }
        self.defs.iter().enumerate().find_map(|(i, d)| {
            first_redex(&self.ctx, &d.term).map(|(p, k)| (Target::Definition(i), p, k))
        })
    }

    fn fresh_symbol(&mut self) -> Symbol {
        loop {
            let name = Symbol::from(format!("{RESERVED_PREFIX}{}", self.fresh_counter));
            self.fresh_counter += 1;
            if self.ctx.function(name.as_str()).is_none() {
                return name;
            }
        }
    }

    fn fresh_var(&mut self, avoid: &BTreeSet<Symbol>) -> Symbol {
        loop {
            let name = Symbol::from(format!("Z{}", self.var_counter));
            self.var_counter += 1;
            if !avoid.contains(&name) {
                return name;
            }
        }
    }

    fn subterm(&self, target: Target, path: &[usize]) -> Result<Term, TranslateError> {
        self.target(target).subterm(path).cloned().ok_or(TranslateError::NotApplicable {
            kind: StepKind::BoolVar,
            path: path.to_vec(),
            reason: "path does not address a subterm",
        })
    }

    /// Binder sorts visible at `path`, and the let-bound symbols enclosing it.
    fn scope_at(&self, target: Target, path: &[usize]) -> (TypeContext, Vec<Symbol>) {
        let root = self.target(target);
        let ctx = context_at(&self.ctx, root, path);
        let (_, fns) = crate::typing::binders_along(root, path);
        (ctx, fns.into_iter().map(|(f, _)| f).collect())
    }

    fn check_eligible(
        &self,
        kind: StepKind,
        target: Target,
        path: &[usize],
        node: &Term,
    ) -> Result<TypeContext, TranslateError> {
        let (ctx, bound) = self.scope_at(target, path);
        if free_fns(node).iter().any(|f| bound.contains(f)) {
            return Err(TranslateError::NotApplicable {
                kind,
                path: path.to_vec(),
                reason: "mentions a symbol bound by an enclosing let",
            });
        }
        Ok(ctx)
    }

    fn record(&mut self, kind: StepKind, target: Target, path: &[usize], replacement: Term, symbol: Option<Symbol>, added: Vec<Term>) {
        let before = self.target(target).clone();
        *self.target_mut(target).subterm_mut(path).expect("valid path") = replacement;
        let after = self.target(target).clone();
        if let Some(g) = &symbol {
            for d in &added {
                self.defs.push(Definition { symbol: g.clone(), kind, term: d.clone() });
            }
        }
        self.steps.push(StepRecord { kind, target, path: path.to_vec(), before, after, symbol, added });
    }

    fn effective_context(&self, target: Target, path: &[usize]) -> Eff {
        let mut eff = Eff::Formula;
        let mut cur = self.target(target);
        for &i in path {
            eff = child_eff(cur, i, eff);
            match cur.children().get(i) {
                Some(next) => cur = next,
                None => break,
            }
        }
        eff
    }

    fn declare(&mut self, g: &Symbol, ty: TypeSig) {
        self.ctx
            .signature_mut()
            .declare_function(g.clone(), ty)
            .expect("fresh symbol over declared sorts");
    }

    fn sorts_of(ctx: &TypeContext, vars: &[Symbol]) -> Vec<(Symbol, Sort)> {
        vars.iter()
            .map(|x| (x.clone(), ctx.var(x.as_str()).cloned().expect("free variable has a sort")))
            .collect()
    }

    /// Step 1: `x` in formula context becomes `x ≐ true`.
    pub fn step1_bool_var(&mut self, target: Target, path: &[usize]) -> Result<(), TranslateError> {
        let kind = StepKind::BoolVar;
        let node = self.subterm(target, path)?;
        let na = |reason| TranslateError::NotApplicable { kind, path: path.to_vec(), reason };
        let Term::Var(x) = &node else { return Err(na("not a variable")) };
        let (ctx, _) = self.scope_at(target, path);
        if !ctx.var(x.as_str()).is_some_and(Sort::is_bool) {
            return Err(na("variable is not boolean"));
        }
        if self.effective_context(target, path) != Eff::Formula {
            return Err(na("variable is not in formula context"));
        }
        self.record(kind, target, path, Term::eq(node.clone(), Term::tt()), None, Vec::new());
        Ok(())
    }

    /// Step 2: a formula `ψ` in term context becomes `g(x̄)` with the
    /// definition `∀x̄ (ψ ⟺ g(x̄) ≐ true)`.
    pub fn step2_formula_in_term_ctx(&mut self, target: Target, path: &[usize]) -> Result<(), TranslateError> {
        let kind = StepKind::FormulaInTerm;
        let psi = self.subterm(target, path)?;
        let na = |reason| TranslateError::NotApplicable { kind, path: path.to_vec(), reason };
        if psi.is_var() || is_bool_constant(&psi) {
            return Err(na("variables and boolean constants are excluded"));
        }
        if self.effective_context(target, path) != Eff::Term {
            return Err(na("formula is not in term context"));
        }
        let ctx = self.check_eligible(kind, target, path, &psi)?;
        if !infer_sort(&ctx, &psi)?.is_bool() {
            return Err(na("not a formula"));
        }
        let xs = Self::sorts_of(&ctx, &free_vars_ordered(&psi));
        let g = self.fresh_symbol();
        self.declare(&g, TypeSig::new(xs.iter().map(|(_, s)| s.clone()).collect(), Sort::Bool));
        let head = Term::App(g.clone(), xs.iter().map(|(x, _)| Term::Var(x.clone())).collect());
        let def = Term::forall_many(&xs, Term::iff(psi, Term::eq(head.clone(), Term::tt())));
        self.record(kind, target, path, head, Some(g), vec![def]);
        Ok(())
    }

    /// Step 3: `ite(ψ, s, t)` becomes `g(x̄)` with `∀x̄ (ψ ⟹ g(x̄) ≐ s)` and
    /// `∀x̄ (¬ψ ⟹ g(x̄) ≐ t)`.
    pub fn step3_ite(&mut self, target: Target, path: &[usize]) -> Result<(), TranslateError> {
        let kind = StepKind::Ite;
        let node = self.subterm(target, path)?;
        let Term::Ite(psi, s, t) = &node else {
            return Err(TranslateError::NotApplicable { kind, path: path.to_vec(), reason: "not an if-then-else" });
        };
        let ctx = self.check_eligible(kind, target, path, &node)?;
        let sort = infer_sort(&ctx, &node)?;
        let xs = Self::sorts_of(&ctx, &free_vars_ordered(&node));
        let g = self.fresh_symbol();
        self.declare(&g, TypeSig::new(xs.iter().map(|(_, s)| s.clone()).collect(), sort));
        let head = Term::App(g.clone(), xs.iter().map(|(x, _)| Term::Var(x.clone())).collect());
        let then_def = Term::forall_many(
            &xs,
            Term::implies((**psi).clone(), Term::eq(head.clone(), (**s).clone())),
        );
        let else_def = Term::forall_many(
            &xs,
            Term::implies(Term::not((**psi).clone()), Term::eq(head.clone(), (**t).clone())),
        );
        self.record(kind, target, path, head, Some(g), vec![then_def, else_def]);
        Ok(())
    }

    /// Step 4: `let f(x̄) = s in t` becomes `t′`, where every `f(t̄)` in `t`
    /// is replaced by `g(t̄, ȳ)` for the free variables `ȳ` of the let, with
    /// the definition `∀z̄ ∀ȳ g(z̄, ȳ) ≐ s[x̄ := z̄]`.
    pub fn step4_let(&mut self, target: Target, path: &[usize]) -> Result<(), TranslateError> {
        let kind = StepKind::Let;
        let node = self.subterm(target, path)?;
        let Term::Let(l) = &node else {
            return Err(TranslateError::NotApplicable { kind, path: path.to_vec(), reason: "not a let" });
        };
        let ctx = self.check_eligible(kind, target, path, &node)?;
        let LetIn { name: f, params, sort, body, scope } = &**l;
        let result = match sort {
            Some(s) => s.clone(),
            None => infer_sort(&params.iter().fold(ctx.clone(), |c, (x, s)| c.with_var(x.clone(), s.clone())), body)?,
        };
        let ys = Self::sorts_of(&ctx, &free_vars_ordered(&node));
        let mut avoid = BTreeSet::new();
        all_var_names(&node, &mut avoid);
        let zs: Vec<(Symbol, Sort)> = params
            .iter()
            .map(|(_, s)| {
                let z = self.fresh_var(&avoid);
                avoid.insert(z.clone());
                (z, s.clone())
            })
            .collect();
        let g = self.fresh_symbol();
        let arg_sorts = zs.iter().chain(&ys).map(|(_, s)| s.clone()).collect();
        self.declare(&g, TypeSig::new(arg_sorts, result));
        let renaming = params.iter().map(|(x, _)| x.clone()).zip(zs.iter().map(|(z, _)| z.clone())).collect();
        let body = body.rename_free_vars(&renaming);
        let head = Term::App(g.clone(), zs.iter().chain(&ys).map(|(x, _)| Term::Var(x.clone())).collect());
        let mut binders = zs.clone();
        binders.extend(ys.iter().cloned());
        let def = Term::forall_many(&binders, Term::eq(head, body));
        let y_names: BTreeSet<Symbol> = ys.iter().map(|(y, _)| y.clone()).collect();
        let scope = rename_apart(scope, &y_names);
        let scope = scope.map_free_apps(f, &mut |mut args| {
            args.extend(ys.iter().map(|(y, _)| Term::Var(y.clone())));
            Term::App(g.clone(), args)
        });
        self.record(kind, target, path, scope, Some(g), vec![def]);
        Ok(())
    }

    pub fn apply(&mut self, target: Target, path: &[usize], kind: StepKind) -> Result<(), TranslateError> {
        match kind {
            StepKind::BoolVar => self.step1_bool_var(target, path),
            StepKind::FormulaInTerm => self.step2_formula_in_term_ctx(target, path),
            StepKind::Ite => self.step3_ite(target, path),
            StepKind::Let => self.step4_let(target, path),
        }
    }

    /// Applies steps until none is eligible.
    pub fn run(&mut self) -> Result<(), TranslateError> {
        while let Some((target, path, kind)) = self.find_redex() {
            if self.steps.len() >= self.bound {
                return Err(TranslateError::BoundExceeded { bound: self.bound });
            }
            self.apply(target, &path, kind)?;
        }
        is_syntactically_first_order(&self.current).map_err(TranslateError::NotFirstOrder)?;
        for d in &self.defs {
            is_syntactically_first_order(&d.term).map_err(TranslateError::NotFirstOrder)?;
        }
        Ok(())
    }

    pub fn step_counts(&self) -> [(StepKind, usize); 4] {
        [StepKind::BoolVar, StepKind::FormulaInTerm, StepKind::Ite, StepKind::Let]
            .map(|k| (k, self.steps.iter().filter(|s| s.kind == k).count()))
    }

    /// All translated formulas in order, including the current one.
    pub fn formulas(&self) -> Vec<LabeledFormula> {
        let mut out = self.finished.clone();
        if let Some((name, role)) = &self.label {
            out.push(LabeledFormula { name: name.clone(), role: *role, term: self.current.clone() });
        }
        out
    }

    pub fn definitions(&self) -> impl Iterator<Item = &Term> {
        self.defs.iter().map(|d| &d.term)
    }

    /// One-line summary of applied steps.
    pub fn summary(&self) -> String {
        let mut out = format!("steps={}", self.steps.len());
        for (k, n) in self.step_counts() {
            out.push_str(&format!(" {k}={n}"));
        }
        out.push_str(&format!(" definitions={}", self.defs.len()));
        out
    }
}

/// Translates the closed formula `phi` until no step applies.
pub fn run_translation(phi: &Term, ctx: &TypeContext) -> Result<TranslationState, TranslateError> {
    let mut state = TranslationState::new(ctx.clone());
    state.start("phi", Role::Axiom, phi.clone())?;
    state.run()?;
    Ok(state)
}

/// Translates every formula of `problem` in order with shared definitions.
pub fn translate_problem(problem: &Problem) -> Result<TranslationState, TranslateError> {
    let mut state = TranslationState::new(problem.ctx.clone());
    for f in problem.logical_formulas() {
        state.start(f.name.clone(), f.role, f.formula().expect("formula").clone())?;
        state.run()?;
    }
    state.finish();
    Ok(state)
}

fn is_bool_constant(t: &Term) -> bool {
    t.is_connective(Connective::True) || t.is_connective(Connective::False)
}
