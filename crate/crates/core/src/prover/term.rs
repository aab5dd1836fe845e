//! Flat first-order terms, the prover's symbol table, unification and
//! matching.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::ast::{self, quote_name, Signature, Sort, Symbol, TypeContext, TypeSig};

pub type SortId = u32;
pub type SymId = u32;

/// The boolean sort.
pub const BOOL: SortId = 0;
/// Internal sort of predicate atoms; a predicate literal is `p(t̄) ≐ tt`.
pub const PROP: SortId = 1;

/// The predicate marker `tt`.
pub const TT: SymId = 0;
pub const FALSE: SymId = 1;
pub const TRUE: SymId = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymInfo {
    pub name: String,
    pub args: Vec<SortId>,
    pub result: SortId,
}

impl SymInfo {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// Sorts and function symbols known to one prover run.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    sorts: Vec<Option<Sort>>,
    sort_ids: HashMap<Sort, SortId>,
    syms: Vec<SymInfo>,
    sym_ids: HashMap<String, SymId>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut table =
            SymbolTable { sorts: vec![Some(Sort::Bool), None], sort_ids: HashMap::new(), syms: Vec::new(), sym_ids: HashMap::new() };
        table.sort_ids.insert(Sort::Bool, BOOL);
        table.declare("$tt", vec![], PROP);
        table.declare("$false", vec![], BOOL);
        table.declare("$true", vec![], BOOL);
        table
    }

    pub fn sort_id(&mut self, sort: &Sort) -> SortId {
        if let Some(&id) = self.sort_ids.get(sort) {
            return id;
        }
        let id = self.sorts.len() as SortId;
        self.sorts.push(Some(sort.clone()));
        self.sort_ids.insert(sort.clone(), id);
        id
    }

    /// The source sort of `id`; the predicate sort maps to `Bool`.
    pub fn sort(&self, id: SortId) -> Sort {
        self.sorts[id as usize].clone().unwrap_or(Sort::Bool)
    }

    /// Declares `name`, or returns the existing id if it is already known.
    pub fn declare(&mut self, name: &str, args: Vec<SortId>, result: SortId) -> SymId {
        if let Some(&id) = self.sym_ids.get(name) {
            return id;
        }
        let id = self.syms.len() as SymId;
        self.syms.push(SymInfo { name: name.to_string(), args, result });
        self.sym_ids.insert(name.to_string(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<SymId> {
        self.sym_ids.get(name).copied()
    }

    pub fn info(&self, id: SymId) -> &SymInfo {
        &self.syms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymId, &SymInfo)> {
        self.syms.iter().enumerate().map(|(i, s)| (i as SymId, s))
    }

    pub fn sort_of(&self, t: &FoTerm) -> SortId {
        match t {
            FoTerm::Var(_, s) => *s,
            FoTerm::App(f, _) => self.info(*f).result,
        }
    }

    /// `prefix<k>` for the least `k ≥ *counter` not yet declared.
    pub fn fresh_name(&self, prefix: &str, counter: &mut usize) -> String {
        loop {
            let name = format!("{prefix}{counter}");
            *counter += 1;
            if !self.sym_ids.contains_key(&name) {
                return name;
            }
        }
    }

    /// A sort-checking context over the user symbols, for handing clauses to
    /// the semantics oracle.
    pub fn to_context(&self) -> TypeContext {
        let mut sig = Signature::new();
        for s in self.sorts.iter().flatten() {
            sig.ensure_sort(s.clone());
        }
        for (id, info) in self.symbols() {
            if id <= TRUE {
                continue;
            }
            let ty = TypeSig::new(info.args.iter().map(|&s| self.sort(s)).collect(), self.sort(info.result));
            sig.declare_function(Symbol::new(&info.name), ty).expect("prover symbols are distinct");
        }
        TypeContext::new(sig)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FoTerm {
    Var(u32, SortId),
    App(SymId, Vec<FoTerm>),
}

impl FoTerm {
    pub fn constant(f: SymId) -> FoTerm {
        FoTerm::App(f, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, FoTerm::Var(..))
    }

    pub fn is_const(&self, f: SymId) -> bool {
        matches!(self, FoTerm::App(g, args) if *g == f && args.is_empty())
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            FoTerm::Var(..) => 1,
            FoTerm::App(_, args) => 1 + args.iter().map(FoTerm::size).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            FoTerm::Var(x, _) => Some(*x),
            FoTerm::App(_, args) => args.iter().filter_map(FoTerm::max_var).max(),
        }
    }

    pub fn occurs(&self, x: u32) -> bool {
        match self {
            FoTerm::Var(y, _) => *y == x,
            FoTerm::App(_, args) => args.iter().any(|a| a.occurs(x)),
        }
    }

    pub fn subterm(&self, path: &[usize]) -> &FoTerm {
        match (self, path.split_first()) {
            (_, None) => self,
            (FoTerm::App(_, args), Some((&i, rest))) => args[i].subterm(rest),
            (FoTerm::Var(..), Some(_)) => panic!("path below a variable"),
        }
    }

    pub fn replace_at(&self, path: &[usize], new: FoTerm) -> FoTerm {
        match (self, path.split_first()) {
            (_, None) => new,
            (FoTerm::App(f, args), Some((&i, rest))) => {
                let mut args = args.clone();
                args[i] = args[i].replace_at(rest, new);
                FoTerm::App(*f, args)
            }
            (FoTerm::Var(..), Some(_)) => panic!("path below a variable"),
        }
    }

    /// Positions of non-variable subterms in pre-order.
    pub fn nonvar_positions(&self) -> Vec<Vec<usize>> {
        fn go(t: &FoTerm, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let FoTerm::App(_, args) = t {
                out.push(path.clone());
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    go(a, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn shift_vars(&self, offset: u32) -> FoTerm {
        match self {
            FoTerm::Var(x, s) => FoTerm::Var(x + offset, *s),
            FoTerm::App(f, args) => FoTerm::App(*f, args.iter().map(|a| a.shift_vars(offset)).collect()),
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32, SortId) -> FoTerm) -> FoTerm {
        match self {
            FoTerm::Var(x, s) => f(*x, *s),
            FoTerm::App(g, args) => FoTerm::App(*g, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn display<'a>(&'a self, syms: &'a SymbolTable) -> TermDisplay<'a> {
        TermDisplay { term: self, syms }
    }

    /// The source-level term, with variable `i` named `X<i>`.
    pub fn to_ast(&self, syms: &SymbolTable) -> ast::Term {
        match self {
            FoTerm::Var(x, _) => ast::Term::var(&format!("X{x}")),
            FoTerm::App(f, _) if *f == TRUE => ast::Term::tt(),
            FoTerm::App(f, _) if *f == FALSE => ast::Term::ff(),
            FoTerm::App(f, args) => {
                ast::Term::app(&syms.info(*f).name, args.iter().map(|a| a.to_ast(syms)).collect())
            }
        }
    }
}

pub struct TermDisplay<'a> {
    term: &'a FoTerm,
    syms: &'a SymbolTable,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            FoTerm::Var(x, _) => write!(f, "X{x}"),
            FoTerm::App(g, args) => {
                let name = &self.syms.info(*g).name;
                if name.starts_with('$') {
                    f.write_str(name)?;
                } else {
                    f.write_str(&quote_name(name))?;
                }
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", a.display(self.syms))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A substitution in triangular form; `apply` resolves chains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst {
    map: BTreeMap<u32, FoTerm>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: u32) -> Option<&FoTerm> {
        self.map.get(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, t: &FoTerm) -> FoTerm {
        match t {
            FoTerm::Var(x, _) => match self.map.get(x) {
                Some(u) => self.apply(u),
                None => t.clone(),
            },
            FoTerm::App(f, args) => FoTerm::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    fn walk<'a>(&'a self, mut t: &'a FoTerm) -> &'a FoTerm {
        while let FoTerm::Var(x, _) = t {
            match self.map.get(x) {
                Some(u) => t = u,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, x: u32, t: &FoTerm) -> bool {
        match self.walk(t) {
            FoTerm::Var(y, _) => *y == x,
            FoTerm::App(_, args) => args.iter().any(|a| self.occurs(x, a)),
        }
    }

    /// Extends the substitution to a unifier of `a` and `b`. Variables only
    /// bind terms of their own sort. On failure the substitution may be
    /// partially extended.
    pub fn unify(&mut self, a: &FoTerm, b: &FoTerm, syms: &SymbolTable) -> bool {
        let a = self.walk(a).clone();
        let b = self.walk(b).clone();
        match (&a, &b) {
            (FoTerm::Var(x, _), FoTerm::Var(y, _)) if x == y => true,
            (FoTerm::Var(x, s), t) | (t, FoTerm::Var(x, s)) => {
                if syms.sort_of(t) != *s || self.occurs(*x, t) {
                    return false;
                }
                self.map.insert(*x, t.clone());
                true
            }
            (FoTerm::App(f, fa), FoTerm::App(g, ga)) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(x, y)| self.unify(x, y, syms))
            }
        }
    }

    /// Resolves every binding so that the substitution is idempotent.
    pub fn normalized(&self) -> Subst {
        Subst { map: self.map.keys().map(|&x| (x, self.apply(&self.map[&x]))).collect() }
    }
}

/// The idempotent most general unifier of `a` and `b`, if any.
pub fn mgu(a: &FoTerm, b: &FoTerm, syms: &SymbolTable) -> Option<Subst> {
    let mut s = Subst::new();
    s.unify(a, b, syms).then(|| s.normalized())
}

/// Bindings for one-sided matching, undone by truncating the trail.
#[derive(Default)]
pub struct Matcher {
    binds: Vec<Option<FoTerm>>,
    trail: Vec<u32>,
}

impl Matcher {
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.binds[x as usize] = None;
        }
    }

    /// Extends the bindings so that `pattern` instantiated by them is
    /// `target`. Target variables are treated as constants. On failure the
    /// caller undoes to its mark.
    pub fn match_term(&mut self, pattern: &FoTerm, target: &FoTerm, syms: &SymbolTable) -> bool {
        match (pattern, target) {
            (FoTerm::Var(x, s), t) => {
                if syms.sort_of(t) != *s {
                    return false;
                }
                let x = *x as usize;
                if x >= self.binds.len() {
                    self.binds.resize(x + 1, None);
                }
                match &self.binds[x] {
                    Some(bound) => bound == t,
                    None => {
                        self.binds[x] = Some(t.clone());
                        self.trail.push(x as u32);
                        true
                    }
                }
            }
            (FoTerm::App(f, fa), FoTerm::App(g, ga)) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(p, t)| self.match_term(p, t, syms))
            }
            _ => false,
        }
    }
}
