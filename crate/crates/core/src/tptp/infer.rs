//! Types for symbols used without a declaration, found by unification over
//! sort variables. Whatever stays open defaults to `$i`.

use indexmap::IndexMap;

use crate::ast::{Connective, Signature, Sort, Symbol, Term, TypeSig};
use crate::problem::{AnnotatedFormula, Location, Payload};

use super::{builtin_type, check_reserved, is_builtin_sort, Dialect, ParseError, ParseErrorKind};

#[derive(Clone, Debug)]
enum Ty {
    Known(Sort),
    Var(usize),
}

struct Implicit {
    args: Vec<Ty>,
    result: Ty,
    location: Location,
    formula: String,
}

struct Inference<'a> {
    sig: &'a mut Signature,
    dialect: Dialect,
    parent: Vec<usize>,
    binding: Vec<Option<Sort>>,
    implicit: IndexMap<Symbol, Implicit>,
    vars: Vec<(Symbol, Ty)>,
    lets: Vec<(Symbol, Vec<Ty>, Ty)>,
    location: Location,
    formula: String,
}

fn is_numeral(name: &str) -> bool {
    let digits = name.strip_prefix('-').unwrap_or(name);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

impl Inference<'_> {
    fn fresh(&mut self) -> Ty {
        self.parent.push(self.parent.len());
        self.binding.push(None);
        Ty::Var(self.parent.len() - 1)
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn resolve(&mut self, t: &Ty) -> Ty {
        match t {
            Ty::Known(_) => t.clone(),
            Ty::Var(v) => {
                let r = self.find(*v);
                match &self.binding[r] {
                    Some(s) => Ty::Known(s.clone()),
                    None => Ty::Var(r),
                }
            }
        }
    }

    /// Conflicts are left for the type checker to report.
    fn unify(&mut self, a: &Ty, b: &Ty) {
        match (self.resolve(a), self.resolve(b)) {
            (Ty::Var(x), Ty::Var(y)) if x != y => self.parent[x] = y,
            (Ty::Var(x), Ty::Known(s)) | (Ty::Known(s), Ty::Var(x)) => self.binding[x] = Some(s),
            _ => {}
        }
    }

    fn error(&self, kind: ParseErrorKind, message: String) -> ParseError {
        let mut e = ParseError::new(kind, self.location, message);
        e.formula = Some(self.formula.clone());
        e
    }

    fn reserved(&self, name: &str) -> Result<(), ParseError> {
        if self.dialect == Dialect::Fool {
            check_reserved(name).map_err(|m| self.error(ParseErrorKind::Reserved, m))?;
        }
        Ok(())
    }

    fn note_sort(&mut self, s: &Sort) {
        if is_builtin_sort(s) {
            self.sig.ensure_sort(s.clone());
        }
    }

    fn symbol_type(&mut self, f: &Symbol, arity: usize) -> Result<(Vec<Ty>, Ty), ParseError> {
        let known = |ty: &TypeSig| (ty.args.iter().cloned().map(Ty::Known).collect(), Ty::Known(ty.result.clone()));
        if let Some((_, args, result)) = self.lets.iter().rev().find(|(g, _, _)| g == f) {
            return Ok((args.clone(), result.clone()));
        }
        if let Some(ty) = self.sig.function(f.as_str()) {
            return Ok(known(ty));
        }
        if let Some(ty) = builtin_type(f.as_str()) {
            self.note_sort(&Sort::named("$int"));
            self.sig.declare_function(f.clone(), ty.clone()).expect("builtin over $int");
            return Ok(known(&ty));
        }
        if is_numeral(f.as_str()) && arity == 0 {
            let int = Sort::named("$int");
            self.note_sort(&int);
            self.sig.declare_function(f.clone(), TypeSig::constant(int.clone())).expect("numeral");
            return Ok((Vec::new(), Ty::Known(int)));
        }
        if let Some(imp) = self.implicit.get(f) {
            return Ok((imp.args.clone(), imp.result.clone()));
        }
        self.reserved(f.as_str())?;
        let args: Vec<Ty> = (0..arity).map(|_| self.fresh()).collect();
        let result = self.fresh();
        let entry = Implicit {
            args: args.clone(),
            result: result.clone(),
            location: self.location,
            formula: self.formula.clone(),
        };
        self.implicit.insert(f.clone(), entry);
        Ok((args, result))
    }

    fn infer(&mut self, t: &Term) -> Result<Ty, ParseError> {
        let boolean = Ty::Known(Sort::Bool);
        Ok(match t {
            Term::Var(x) => match self.vars.iter().rev().find(|(y, _)| y == x) {
                Some((_, ty)) => ty.clone(),
                None => self.fresh(),
            },
            Term::App(f, args) => {
                if Connective::from_name(f.as_str()).is_some() {
                    for a in args {
                        let ty = self.infer(a)?;
                        self.unify(&ty, &boolean);
                    }
                    return Ok(boolean);
                }
                let (expected, result) = self.symbol_type(f, args.len())?;
                for (i, a) in args.iter().enumerate() {
                    let ty = self.infer(a)?;
                    if let Some(e) = expected.get(i) {
                        self.unify(&ty, e);
                    }
                }
                result
            }
            Term::Ite(c, a, b) => {
                let cond = self.infer(c)?;
                self.unify(&cond, &boolean);
                let left = self.infer(a)?;
                let right = self.infer(b)?;
                self.unify(&left, &right);
                left
            }
            Term::Let(l) => {
                self.reserved(l.name.as_str())?;
                for (_, s) in &l.params {
                    self.note_sort(s);
                }
                let n = self.vars.len();
                self.vars.extend(l.params.iter().map(|(x, s)| (x.clone(), Ty::Known(s.clone()))));
                let body = self.infer(&l.body);
                self.vars.truncate(n);
                let body = body?;
                let result = match &l.sort {
                    Some(s) => {
                        self.note_sort(s);
                        self.unify(&body, &Ty::Known(s.clone()));
                        Ty::Known(s.clone())
                    }
                    None => body,
                };
                let params = l.params.iter().map(|(_, s)| Ty::Known(s.clone())).collect();
                self.lets.push((l.name.clone(), params, result));
                let scope = self.infer(&l.scope);
                self.lets.pop();
                scope?
            }
            Term::Eq(a, b) => {
                let left = self.infer(a)?;
                let right = self.infer(b)?;
                self.unify(&left, &right);
                boolean
            }
            Term::Quant(_, x, s, body) => {
                self.note_sort(s);
                self.vars.push((x.clone(), Ty::Known(s.clone())));
                let inner = self.infer(body);
                self.vars.pop();
                let inner = inner?;
                self.unify(&inner, &boolean);
                boolean
            }
        })
    }
}

/// Declares every undeclared symbol of `formulas` in `sig`, in order of
/// first use, with its inferred type.
pub fn declare_implicit(sig: &mut Signature, formulas: &[AnnotatedFormula], dialect: Dialect) -> Result<(), ParseError> {
    let mut inf = Inference {
        sig,
        dialect,
        parent: Vec::new(),
        binding: Vec::new(),
        implicit: IndexMap::new(),
        vars: Vec::new(),
        lets: Vec::new(),
        location: Location::default(),
        formula: String::new(),
    };
    for f in formulas {
        let Payload::Formula(t) = &f.payload else { continue };
        inf.location = f.location;
        inf.formula = f.name.clone();
        let ty = inf.infer(t)?;
        inf.unify(&ty, &Ty::Known(Sort::Bool));
    }
    let individuals = Sort::named("$i");
    let implicit = std::mem::take(&mut inf.implicit);
    for (name, imp) in implicit {
        let sort = |t: &Ty, inf: &mut Inference| match inf.resolve(t) {
            Ty::Known(s) => s,
            Ty::Var(_) => {
                inf.sig.ensure_sort(individuals.clone());
                individuals.clone()
            }
        };
        let args = imp.args.iter().map(|t| sort(t, &mut inf)).collect();
        let result = sort(&imp.result, &mut inf);
        inf.sig.declare_function(name, TypeSig::new(args, result)).map_err(|e| {
            let mut err = ParseError::new(ParseErrorKind::Type, imp.location, e.to_string());
            err.formula = Some(imp.formula.clone());
            err
        })?;
    }
    Ok(())
}
