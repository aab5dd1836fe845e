use std::collections::BTreeMap;

use super::{StepKind, TranslationState};
use crate::ast::{Connective, Sort, Symbol, Term, TypeContext};
use crate::problem::Role;
use crate::semantics::Translated;

/// How a symbol with boolean result is emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// Every occurrence is an atom in formula context.
    Predicate,
    /// Some occurrence is in term context; atoms become `q(t̄) ≐ true`.
    BoolFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolFormula {
    pub name: String,
    pub role: Role,
    pub term: Term,
    /// For definitions: the symbol defined and the step that introduced it.
    pub origin: Option<(Symbol, StepKind)>,
}

/// A many-sorted first-order problem: the translated formulas, the
/// definitions, the two boolean axioms, and the emission choice per boolean
/// symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolProblem {
    pub ctx: TypeContext,
    pub formulas: Vec<FolFormula>,
    pub definitions: Vec<FolFormula>,
    pub bool_axioms: Vec<FolFormula>,
    pub predicate_split: BTreeMap<Symbol, SymbolKind>,
}

pub const BOOL_DOMAIN_AXIOM: &str = "fool_bool_dom";
pub const BOOL_DISTINCT_AXIOM: &str = "fool_bool_distinct";

/// `∀x:bool (x ≐ true ∨ x ≐ false)`.
pub fn bool_domain_axiom() -> Term {
    Term::forall(
        "X",
        Sort::Bool,
        Term::or(Term::eq(Term::var("X"), Term::tt()), Term::eq(Term::var("X"), Term::ff())),
    )
}

/// `true ≉ false`.
pub fn bool_distinct_axiom() -> Term {
    Term::not(Term::eq(Term::tt(), Term::ff()))
}

impl FolProblem {
    /// Every formula in emission order.
    pub fn all(&self) -> impl Iterator<Item = &FolFormula> {
        self.formulas.iter().chain(&self.definitions).chain(&self.bool_axioms)
    }

    pub fn conjecture(&self) -> Option<&FolFormula> {
        self.formulas.iter().find(|f| f.role == Role::Conjecture)
    }

    /// The refutation goal: every assertion, definition and boolean axiom
    /// with the conjecture negated.
    pub fn goal_formulas(&self) -> Vec<Term> {
        self.all()
            .map(|f| if f.role == Role::Conjecture { Term::not(f.term.clone()) } else { f.term.clone() })
            .collect()
    }

    /// The view the preservation oracle checks: `D` is the definitions plus
    /// the boolean axioms, `φ′` the conjunction of the translated formulas
    /// with the conjecture negated.
    pub fn as_translated(&self) -> Translated {
        let formula = Term::and_all(self.formulas.iter().map(|f| {
            if f.role == Role::Conjecture {
                Term::not(f.term.clone())
            } else {
                f.term.clone()
            }
        }));
        let defs = self.definitions.iter().chain(&self.bool_axioms).map(|f| f.term.clone()).collect();
        Translated { ctx: self.ctx.clone(), defs, formula }
    }

    pub fn is_predicate(&self, f: &str) -> bool {
        self.predicate_split.get(f) == Some(&SymbolKind::Predicate)
    }
}

fn bool_result(ctx: &TypeContext, f: &Symbol) -> bool {
    ctx.signature().function(f.as_str()).is_some_and(|ty| ty.result.is_bool())
}

fn note_uses(t: &Term, formula_ctx: bool, ctx: &TypeContext, split: &mut BTreeMap<Symbol, SymbolKind>) {
    match t {
        Term::App(f, args) => match t.as_connective() {
            Some(c) => {
                for a in args {
                    note_uses(a, c.is_logical_operator(), ctx, split);
                }
            }
            None => {
                if !formula_ctx && bool_result(ctx, f) {
                    split.insert(f.clone(), SymbolKind::BoolFunction);
                }
                for a in args {
                    note_uses(a, false, ctx, split);
                }
            }
        },
        Term::Quant(_, _, _, body) => note_uses(body, true, ctx, split),
        _ => {
            for c in t.children() {
                note_uses(c, false, ctx, split);
            }
        }
    }
}

fn lower(t: &Term, formula_ctx: bool, split: &BTreeMap<Symbol, SymbolKind>) -> Term {
    match t {
        Term::App(f, args) => match t.as_connective() {
            Some(Connective::True) if formula_ctx => Term::connective(Connective::Top, vec![]),
            Some(Connective::False) if formula_ctx => Term::connective(Connective::Bottom, vec![]),
            Some(c) => Term::App(f.clone(), args.iter().map(|a| lower(a, c.is_logical_operator(), split)).collect()),
            None => {
                let app = Term::App(f.clone(), args.iter().map(|a| lower(a, false, split)).collect());
                if formula_ctx && split.get(f) == Some(&SymbolKind::BoolFunction) {
                    Term::eq(app, Term::tt())
                } else {
                    app
                }
            }
        },
        Term::Quant(q, x, s, body) => Term::Quant(*q, x.clone(), s.clone(), Box::new(lower(body, true, split))),
        Term::Eq(a, b) => Term::eq(lower(a, false, split), lower(b, false, split)),
        Term::Var(_) => t.clone(),
        Term::Ite(..) | Term::Let(..) => {
            unreachable!("first-order emission after translation has no if-then-else or let")
        }
    }
}

/// Emits a terminated translation as a first-order problem: `true`/`false`
/// in formula context become `⊤`/`⊥`, boolean symbols are split into
/// predicates and boolean functions, and the two boolean axioms are added.
pub fn to_fol(state: &TranslationState) -> FolProblem {
    let formulas = state.formulas();
    let ctx = state.ctx.clone();
    let mut split = BTreeMap::new();
    for (f, ty) in ctx.signature().user_functions() {
        if ty.result.is_bool() {
            split.insert(f.clone(), SymbolKind::Predicate);
        }
    }
    for t in formulas.iter().map(|f| &f.term).chain(state.definitions()) {
        note_uses(t, true, &ctx, &mut split);
    }
    let formulas = formulas
        .into_iter()
        .map(|f| FolFormula { name: f.name, role: f.role, term: lower(&f.term, true, &split), origin: None })
        .collect();
    let definitions = state
        .defs
        .iter()
        .enumerate()
        .map(|(i, d)| FolFormula {
            name: format!("fool_def_{i}"),
            role: Role::Axiom,
            term: lower(&d.term, true, &split),
            origin: Some((d.symbol.clone(), d.kind)),
        })
        .collect();
    let bool_axioms = vec![
        FolFormula { name: BOOL_DOMAIN_AXIOM.into(), role: Role::Axiom, term: bool_domain_axiom(), origin: None },
        FolFormula { name: BOOL_DISTINCT_AXIOM.into(), role: Role::Axiom, term: bool_distinct_axiom(), origin: None },
    ];
    FolProblem { ctx, formulas, definitions, bool_axioms, predicate_split: split }
}
