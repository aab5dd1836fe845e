use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::ast::{Connective, Quantifier, Sort, Symbol, Term};

/// A carrier element, identified by its position `0..n`.
pub type Elem = u32;

/// Placeholder for a table entry that has not been chosen yet. Evaluation
/// treats it with Kleene's strong three-valued logic.
pub const UNKNOWN: Elem = Elem::MAX;

pub const FALSE: Elem = 0;
pub const TRUE: Elem = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(Symbol),
    #[error("function symbol `{0}` has no table")]
    UnboundFunction(Symbol),
    #[error("sort {0} has no carrier")]
    MissingDomain(Sort),
    #[error("`{symbol}` applied to {actual} arguments, table expects {expected}")]
    ArityMismatch { symbol: Symbol, expected: usize, actual: usize },
    #[error("value depends on table entries that are not yet fixed")]
    Undetermined,
}

/// A total function table over `arg_sizes`, indexed in mixed radix with the
/// first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    arg_sizes: Vec<usize>,
    result_size: usize,
    values: Vec<Elem>,
}

impl Table {
    pub fn new(arg_sizes: Vec<usize>, result_size: usize, values: Vec<Elem>) -> Self {
        assert_eq!(values.len(), arg_sizes.iter().product::<usize>(), "table size");
        Table { arg_sizes, result_size, values }
    }

    pub fn filled(arg_sizes: Vec<usize>, result_size: usize, value: Elem) -> Self {
        let n = arg_sizes.iter().product();
        Table { arg_sizes, result_size, values: vec![value; n] }
    }

    pub fn constant(result_size: usize, value: Elem) -> Self {
        Table::new(Vec::new(), result_size, vec![value])
    }

    pub fn arity(&self) -> usize {
        self.arg_sizes.len()
    }

    pub fn arg_sizes(&self) -> &[usize] {
        &self.arg_sizes
    }

    pub fn result_size(&self) -> usize {
        self.result_size
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Elem] {
        &mut self.values
    }

    /// Position of `args` in the value vector; `None` if an argument is
    /// unknown.
    pub fn index(&self, args: &[Elem]) -> Option<usize> {
        debug_assert_eq!(args.len(), self.arg_sizes.len());
        let mut idx = 0usize;
        for (&a, &n) in args.iter().zip(&self.arg_sizes) {
            if a == UNKNOWN {
                return None;
            }
            idx = idx * n + a as usize;
        }
        Some(idx)
    }

    pub fn get(&self, args: &[Elem]) -> Elem {
        self.index(args).map_or(UNKNOWN, |i| self.values[i])
    }

    pub fn set(&mut self, args: &[Elem], value: Elem) {
        let i = self.index(args).expect("known arguments");
        self.values[i] = value;
    }
}

/// Carriers per sort, one table per function symbol, and a valuation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    domains: BTreeMap<Sort, usize>,
    tables: BTreeMap<Symbol, Table>,
    vars: BTreeMap<Symbol, Elem>,
}

impl Interpretation {
    pub fn new() -> Self {
        let mut domains = BTreeMap::new();
        domains.insert(Sort::Bool, 2);
        Interpretation { domains, tables: BTreeMap::new(), vars: BTreeMap::new() }
    }

    /// Sets the carrier size of a non-boolean sort. The boolean carrier is
    /// always `{0, 1}`.
    pub fn set_domain(&mut self, sort: Sort, size: usize) {
        assert!(size >= 1, "carriers are nonempty");
        if !sort.is_bool() {
            self.domains.insert(sort, size);
        }
    }

    pub fn with_domain(mut self, sort: Sort, size: usize) -> Self {
        self.set_domain(sort, size);
        self
    }

    pub fn domain_size(&self, sort: &Sort) -> Option<usize> {
        self.domains.get(sort).copied()
    }

    pub fn domains(&self) -> &BTreeMap<Sort, usize> {
        &self.domains
    }

    pub fn set_table(&mut self, f: impl Into<Symbol>, table: Table) {
        self.tables.insert(f.into(), table);
    }

    pub fn with_table(mut self, f: impl Into<Symbol>, table: Table) -> Self {
        self.set_table(f, table);
        self
    }

    pub fn table(&self, f: &str) -> Option<&Table> {
        self.tables.get(f)
    }

    pub fn table_mut(&mut self, f: &str) -> Option<&mut Table> {
        self.tables.get_mut(f)
    }

    pub fn tables(&self) -> &BTreeMap<Symbol, Table> {
        &self.tables
    }

    pub fn remove_table(&mut self, f: &str) -> Option<Table> {
        self.tables.remove(f)
    }

    pub fn set_var(&mut self, x: impl Into<Symbol>, value: Elem) {
        self.vars.insert(x.into(), value);
    }

    pub fn with_var(mut self, x: impl Into<Symbol>, value: Elem) -> Self {
        self.set_var(x, value);
        self
    }

    pub fn var(&self, x: &str) -> Option<Elem> {
        self.vars.get(x).copied()
    }

    pub fn vars(&self) -> &BTreeMap<Symbol, Elem> {
        &self.vars
    }

    /// Single-line rendering used in oracle reports.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

fn write_elem(f: &mut fmt::Formatter<'_>, e: Elem) -> fmt::Result {
    if e == UNKNOWN {
        f.write_str("?")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::take(&mut first) {
                f.write_str("; ")?;
            }
            Ok(())
        };
        for (sort, n) in self.domains.iter().filter(|(s, _)| !s.is_bool()) {
            sep(f)?;
            write!(f, "|{sort}|={n}")?;
        }
        for (name, table) in &self.tables {
            sep(f)?;
            write!(f, "{name}=")?;
            if table.arity() == 0 {
                write_elem(f, table.values[0])?;
            } else {
                f.write_str("[")?;
                for (i, &v) in table.values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_elem(f, v)?;
                }
                f.write_str("]")?;
            }
        }
        for (x, &v) in &self.vars {
            sep(f)?;
            write!(f, "{x}:=")?;
            write_elem(f, v)?;
        }
        Ok(())
    }
}

fn not3(a: Elem) -> Elem {
    match a {
        TRUE => FALSE,
        FALSE => TRUE,
        _ => UNKNOWN,
    }
}

fn and3(a: Elem, b: Elem) -> Elem {
    if a == FALSE || b == FALSE {
        FALSE
    } else if a == TRUE && b == TRUE {
        TRUE
    } else {
        UNKNOWN
    }
}

fn or3(a: Elem, b: Elem) -> Elem {
    not3(and3(not3(a), not3(b)))
}

fn iff3(a: Elem, b: Elem) -> Elem {
    if a == UNKNOWN || b == UNKNOWN {
        UNKNOWN
    } else {
        (a == b) as Elem
    }
}

pub(crate) struct Evaluator<'a> {
    interp: &'a Interpretation,
    vars: Vec<(Symbol, Elem)>,
    fns: Vec<(Symbol, Rc<Table>)>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(interp: &'a Interpretation) -> Self {
        Evaluator { interp, vars: Vec::new(), fns: Vec::new() }
    }

    fn domain(&self, sort: &Sort) -> Result<usize, EvalError> {
        self.interp.domain_size(sort).ok_or_else(|| EvalError::MissingDomain(sort.clone()))
    }

    fn var(&self, x: &Symbol) -> Result<Elem, EvalError> {
        self.vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, v)| *v)
            .or_else(|| self.interp.var(x.as_str()))
            .ok_or_else(|| EvalError::UnboundVariable(x.clone()))
    }

    fn apply(&self, f: &Symbol, args: &[Elem]) -> Result<Elem, EvalError> {
        let local = self.fns.iter().rev().find(|(g, _)| g == f).map(|(_, t)| &**t);
        let table = local
            .or_else(|| self.interp.tables.get(f))
            .ok_or_else(|| EvalError::UnboundFunction(f.clone()))?;
        if table.arity() != args.len() {
            return Err(EvalError::ArityMismatch {
                symbol: f.clone(),
                expected: table.arity(),
                actual: args.len(),
            });
        }
        Ok(table.get(args))
    }

    pub(crate) fn eval(&mut self, t: &Term) -> Result<Elem, EvalError> {
        match t {
            Term::Var(x) => self.var(x),
            Term::App(f, args) => {
                if let Some(c) = t.as_connective() {
                    return self.connective(c, args);
                }
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.eval(a)?);
                }
                self.apply(f, &values)
            }
            Term::Ite(c, a, b) => match self.eval(c)? {
                TRUE => self.eval(a),
                FALSE => self.eval(b),
                _ => {
                    let x = self.eval(a)?;
                    let y = self.eval(b)?;
                    Ok(if x == y { x } else { UNKNOWN })
                }
            },
            Term::Let(l) => {
                let arg_sizes = l
                    .params
                    .iter()
                    .map(|(_, s)| self.domain(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let result_size = match &l.sort {
                    Some(s) => self.domain(s)?,
                    None => 0,
                };
                let mut table = Table::filled(arg_sizes.clone(), result_size, UNKNOWN);
                let n = self.vars.len();
                self.vars.extend(l.params.iter().map(|(x, _)| (x.clone(), 0)));
                let mut tuple = vec![0 as Elem; arg_sizes.len()];
                let mut result = Ok(());
                for slot in 0..table.values.len() {
                    for (i, &v) in tuple.iter().enumerate() {
                        self.vars[n + i].1 = v;
                    }
                    match self.eval(&l.body) {
                        Ok(v) => table.values[slot] = v,
                        Err(e) => {
                            result = Err(e);
                            break;
                        }
                    }
                    for i in (0..tuple.len()).rev() {
                        tuple[i] += 1;
                        if (tuple[i] as usize) < arg_sizes[i] {
                            break;
                        }
                        tuple[i] = 0;
                    }
                }
                self.vars.truncate(n);
                result?;
                self.fns.push((l.name.clone(), Rc::new(table)));
                let out = self.eval(&l.scope);
                self.fns.pop();
                out
            }
            Term::Eq(a, b) => {
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                Ok(if x == UNKNOWN || y == UNKNOWN { UNKNOWN } else { (x == y) as Elem })
            }
            Term::Quant(q, x, s, body) => {
                let n = self.domain(s)?;
                let (absorbing, neutral) = match q {
                    Quantifier::Forall => (FALSE, TRUE),
                    Quantifier::Exists => (TRUE, FALSE),
                };
                let mut acc = neutral;
                self.vars.push((x.clone(), 0));
                let top = self.vars.len() - 1;
                let mut result = Ok(());
                for v in 0..n {
                    self.vars[top].1 = v as Elem;
                    match self.eval(body) {
                        Ok(r) if r == absorbing => {
                            acc = absorbing;
                            break;
                        }
                        Ok(r) if r != neutral => acc = UNKNOWN,
                        Ok(_) => {}
                        Err(e) => {
                            result = Err(e);
                            break;
                        }
                    }
                }
                self.vars.pop();
                result.map(|_| acc)
            }
        }
    }

    fn connective(&mut self, c: Connective, args: &[Term]) -> Result<Elem, EvalError> {
        Ok(match c {
            Connective::True | Connective::Top => TRUE,
            Connective::False | Connective::Bottom => FALSE,
            Connective::Not => not3(self.eval(&args[0])?),
            Connective::And => {
                let a = self.eval(&args[0])?;
                if a == FALSE {
                    return Ok(FALSE);
                }
                and3(a, self.eval(&args[1])?)
            }
            Connective::Or => {
                let a = self.eval(&args[0])?;
                if a == TRUE {
                    return Ok(TRUE);
                }
                or3(a, self.eval(&args[1])?)
            }
            Connective::Implies => {
                let a = self.eval(&args[0])?;
                if a == FALSE {
                    return Ok(TRUE);
                }
                or3(not3(a), self.eval(&args[1])?)
            }
            Connective::Iff => {
                let a = self.eval(&args[0])?;
                iff3(a, self.eval(&args[1])?)
            }
        })
    }
}

/// Three-valued evaluation: the result is [`UNKNOWN`] when it depends on
/// table entries that are still [`UNKNOWN`].
pub fn eval_partial(interp: &Interpretation, t: &Term) -> Result<Elem, EvalError> {
    Evaluator::new(interp).eval(t)
}

/// `⟦t⟧` under `interp`.
pub fn eval(interp: &Interpretation, t: &Term) -> Result<Elem, EvalError> {
    match eval_partial(interp, t)? {
        UNKNOWN => Err(EvalError::Undetermined),
        v => Ok(v),
    }
}

/// Whether `interp` is a model of the formula `phi`.
pub fn models(interp: &Interpretation, phi: &Term) -> Result<bool, EvalError> {
    Ok(eval(interp, phi)? == TRUE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Sort {
        Sort::named("s")
    }

    fn base() -> Interpretation {
        Interpretation::new()
            .with_domain(s(), 2)
            .with_table("a", Table::constant(2, 0))
            .with_table("b", Table::constant(2, 1))
            .with_table("c", Table::constant(2, 0))
            .with_table("cb", Table::constant(2, FALSE))
    }

    #[test]
    fn constants_and_connectives() {
        let i = base();
        assert_eq!(eval(&i, &Term::tt()), Ok(1));
        assert_eq!(eval(&i, &Term::ff()), Ok(0));
        assert_eq!(models(&i, &Term::ff()), Ok(false));
        let t = Term::implies(Term::ff(), Term::and(Term::tt(), Term::not(Term::tt())));
        assert_eq!(eval(&i, &t), Ok(1));
    }

    #[test]
    fn identity_let_returns_argument() {
        let i = base();
        let t = Term::let_in("g", vec![("x", s())], s(), Term::var("x"), Term::app("g", vec![Term::constant("b")]));
        assert_eq!(eval(&i, &t), eval(&i, &Term::constant("b")));
    }

    #[test]
    fn ite_branches_on_condition() {
        // ⟦cb⟧ = 0, so ite(cb ≐ true, a, b) takes the else branch
        let i = base();
        let t = Term::ite(Term::eq(Term::constant("cb"), Term::tt()), Term::constant("a"), Term::constant("b"));
        assert_eq!(eval(&i, &t), Ok(1));
    }

    #[test]
    fn boolean_domain_axiom_holds() {
        let i = base();
        let ax = Term::and(
            Term::forall("x", Sort::Bool, Term::or(Term::eq(Term::var("x"), Term::tt()), Term::eq(Term::var("x"), Term::ff()))),
            Term::not(Term::eq(Term::tt(), Term::ff())),
        );
        assert_eq!(models(&i, &ax), Ok(true));
    }

    #[test]
    fn let_scope_sees_shadowed_symbol() {
        // let a = b in a ≐ b, with the outer a differing from b
        let i = base();
        let t = Term::let_in("a", vec![], s(), Term::constant("b"), Term::eq(Term::constant("a"), Term::constant("b")));
        assert_eq!(eval(&i, &t), Ok(1));
        // the body refers to the outer a: let a = a in ...
        let t = Term::let_in("a", vec![], s(), Term::constant("a"), Term::eq(Term::constant("a"), Term::constant("b")));
        assert_eq!(eval(&i, &t), Ok(0));
    }

    #[test]
    fn unknown_entries_propagate_three_valued() {
        let mut i = base();
        i.set_table("p", Table::filled(vec![2], 2, UNKNOWN));
        let pa = Term::app("p", vec![Term::constant("a")]);
        assert_eq!(eval_partial(&i, &pa), Ok(UNKNOWN));
        assert_eq!(eval_partial(&i, &Term::or(pa.clone(), Term::tt())), Ok(TRUE));
        assert_eq!(eval_partial(&i, &Term::and(Term::ff(), pa.clone())), Ok(FALSE));
        assert_eq!(eval(&i, &pa), Err(EvalError::Undetermined));
        i.table_mut("p").unwrap().set(&[0], TRUE);
        assert_eq!(eval(&i, &pa), Ok(TRUE));
        let all = Term::forall("x", s(), Term::app("p", vec![Term::var("x")]));
        assert_eq!(eval_partial(&i, &all), Ok(UNKNOWN));
        i.table_mut("p").unwrap().set(&[1], FALSE);
        assert_eq!(eval(&i, &all), Ok(FALSE));
    }

    #[test]
    fn missing_symbols_are_errors() {
        let i = base();
        assert_eq!(eval(&i, &Term::var("x")), Err(EvalError::UnboundVariable(Symbol::new("x"))));
        assert_eq!(eval(&i, &Term::constant("zz")), Err(EvalError::UnboundFunction(Symbol::new("zz"))));
        let q = Term::forall("x", Sort::named("t"), Term::tt());
        assert_eq!(eval(&i, &q), Err(EvalError::MissingDomain(Sort::named("t"))));
    }

    #[test]
    fn dump_is_stable() {
        let i = Interpretation::new()
            .with_domain(s(), 2)
            .with_table("p", Table::new(vec![2], 2, vec![1, 0]))
            .with_table("c", Table::constant(2, 1))
            .with_var("x", 0);
        assert_eq!(i.dump(), "|s|=2; c=1; p=[1,0]; x:=0");
    }
}
