//! Clausal normal form: negation normal form, outer Skolemization and
//! distribution.

use thiserror::Error;

use super::clause::{is_tautology, normalize, Literal};
use super::term::{FoTerm, SortId, SymbolTable, BOOL, FALSE, PROP, TRUE};
use crate::ast::{Connective, Quantifier, Symbol, Term};
use crate::problem::Role;
use crate::translate::FolProblem;

pub const SKOLEM_PREFIX: &str = "sk_fool_sko_";
pub const DEFAULT_CLAUSE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClausifyError {
    #[error("formula `{0}` is not first-order")]
    NotFirstOrder(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("undeclared symbol `{0}`")]
    UnknownSymbol(String),
    #[error("clausal form exceeds {cap} clauses")]
    TooManyClauses { cap: usize },
}

#[derive(Clone, Debug)]
pub struct InputClause {
    /// Name of the formula the clause came from.
    pub origin: String,
    pub literals: Vec<Literal>,
}

#[derive(Clone, Debug)]
pub struct ClauseSet {
    pub syms: SymbolTable,
    pub clauses: Vec<InputClause>,
}

impl ClauseSet {
    /// Whether some clause mentions a term of the boolean sort.
    pub fn has_bool_terms(&self) -> bool {
        fn bool_inside(t: &FoTerm, syms: &SymbolTable) -> bool {
            syms.sort_of(t) == BOOL
                || matches!(t, FoTerm::App(_, args) if args.iter().any(|a| bool_inside(a, syms)))
        }
        self.clauses
            .iter()
            .flat_map(|c| &c.literals)
            .any(|l| bool_inside(&l.lhs, &self.syms) || bool_inside(&l.rhs, &self.syms))
    }
}

enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

struct Clausifier<'a> {
    syms: SymbolTable,
    fol: &'a FolProblem,
    env: Vec<(Symbol, FoTerm)>,
    universals: Vec<FoTerm>,
    next_var: u32,
    skolems: usize,
    cap: usize,
}

impl Clausifier<'_> {
    fn sort(&mut self, s: &crate::ast::Sort) -> SortId {
        self.syms.sort_id(s)
    }

    fn term(&mut self, t: &Term) -> Result<FoTerm, ClausifyError> {
        match t {
            Term::Var(x) => self
                .env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| ClausifyError::UnboundVariable(x.to_string())),
            Term::App(f, args) => {
                match t.as_connective() {
                    Some(Connective::True) => return Ok(FoTerm::constant(TRUE)),
                    Some(Connective::False) => return Ok(FoTerm::constant(FALSE)),
                    Some(_) => return Err(ClausifyError::NotFirstOrder(t.to_string())),
                    None => {}
                }
                let id = self.syms.id(f.as_str()).ok_or_else(|| ClausifyError::UnknownSymbol(f.to_string()))?;
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Ok(FoTerm::App(id, args))
            }
            _ => Err(ClausifyError::NotFirstOrder(t.to_string())),
        }
    }

    fn nnf(&mut self, t: &Term, pos: bool) -> Result<Nnf, ClausifyError> {
        let constant = |v: bool| if v { Nnf::True } else { Nnf::False };
        Ok(match t {
            Term::App(f, args) => match t.as_connective() {
                Some(Connective::Top | Connective::True) => constant(pos),
                Some(Connective::Bottom | Connective::False) => constant(!pos),
                Some(Connective::Not) => self.nnf(&args[0], !pos)?,
                Some(c @ (Connective::And | Connective::Or)) => {
                    let parts = vec![self.nnf(&args[0], pos)?, self.nnf(&args[1], pos)?];
                    if (c == Connective::And) == pos {
                        Nnf::And(parts)
                    } else {
                        Nnf::Or(parts)
                    }
                }
                Some(Connective::Implies) => {
                    let parts = vec![self.nnf(&args[0], !pos)?, self.nnf(&args[1], pos)?];
                    if pos {
                        Nnf::Or(parts)
                    } else {
                        Nnf::And(parts)
                    }
                }
                Some(Connective::Iff) => {
                    let (a, b) = (&args[0], &args[1]);
                    let first = Nnf::Or(vec![self.nnf(a, false)?, self.nnf(b, pos)?]);
                    let second = Nnf::Or(vec![self.nnf(a, true)?, self.nnf(b, !pos)?]);
                    Nnf::And(vec![first, second])
                }
                None => {
                    let atom = self.term(t)?;
                    if self.fol.is_predicate(f.as_str()) {
                        Nnf::Lit(Literal::atom(pos, atom))
                    } else {
                        Nnf::Lit(Literal { positive: pos, lhs: atom, rhs: FoTerm::constant(TRUE) })
                    }
                }
            },
            Term::Eq(a, b) => Nnf::Lit(Literal { positive: pos, lhs: self.term(a)?, rhs: self.term(b)? }),
            Term::Quant(q, x, s, body) => {
                let sort = self.sort(s);
                let value = if (*q == Quantifier::Forall) == pos {
                    let v = FoTerm::Var(self.next_var, sort);
                    self.next_var += 1;
                    self.universals.push(v.clone());
                    v
                } else {
                    let name = self.syms.fresh_name(SKOLEM_PREFIX, &mut self.skolems);
                    let arg_sorts = self.universals.iter().map(|u| self.syms.sort_of(u)).collect();
                    let id = self.syms.declare(&name, arg_sorts, sort);
                    FoTerm::App(id, self.universals.clone())
                };
                let universal = value.is_var();
                self.env.push((x.clone(), value));
                let out = self.nnf(body, pos);
                self.env.pop();
                if universal {
                    self.universals.pop();
                }
                out?
            }
            Term::Var(_) | Term::Ite(..) | Term::Let(..) => return Err(ClausifyError::NotFirstOrder(t.to_string())),
        })
    }

    fn cnf(&self, n: Nnf) -> Result<Vec<Vec<Literal>>, ClausifyError> {
        Ok(match n {
            Nnf::True => vec![],
            Nnf::False => vec![vec![]],
            Nnf::Lit(l) => vec![vec![l]],
            Nnf::And(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(self.cnf(p)?);
                    self.check(out.len())?;
                }
                out
            }
            Nnf::Or(parts) => {
                let mut acc: Vec<Vec<Literal>> = vec![vec![]];
                for p in parts {
                    let next = self.cnf(p)?;
                    self.check(acc.len().saturating_mul(next.len()))?;
                    acc = acc
                        .iter()
                        .flat_map(|a| next.iter().map(move |b| a.iter().chain(b).cloned().collect()))
                        .collect();
                }
                acc
            }
        })
    }

    fn check(&self, n: usize) -> Result<(), ClausifyError> {
        if n > self.cap {
            Err(ClausifyError::TooManyClauses { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Clauses for the formulas and definitions of `fol`, with the conjecture
/// negated. The boolean axioms are left to the prover's boolean mode.
/// Tautologies are dropped.
pub fn clausify(fol: &FolProblem, cap: usize) -> Result<ClauseSet, ClausifyError> {
    let mut syms = SymbolTable::new();
    for s in fol.ctx.signature().sorts() {
        syms.sort_id(s);
    }
    for (f, ty) in fol.ctx.signature().user_functions() {
        let args = ty.args.iter().map(|s| syms.sort_id(s)).collect();
        let result = if fol.is_predicate(f.as_str()) { PROP } else { syms.sort_id(&ty.result) };
        syms.declare(f.as_str(), args, result);
    }
    let mut c = Clausifier { syms, fol, env: Vec::new(), universals: Vec::new(), next_var: 0, skolems: 0, cap };
    let mut clauses = Vec::new();
    for f in fol.formulas.iter().chain(&fol.definitions) {
        let nnf = c.nnf(&f.term, f.role != Role::Conjecture)?;
        for lits in c.cnf(nnf)? {
            let lits = normalize(lits);
            if !is_tautology(&lits) {
                clauses.push(InputClause { origin: f.name.clone(), literals: lits });
            }
        }
        c.check(clauses.len())?;
    }
    Ok(ClauseSet { syms: c.syms, clauses })
}
