//! Reading and writing problems in the TPTP-style dialect: TFF0 with `$o`
//! as an ordinary sort, unified `$ite`/`$let`, and the legacy typed forms.
//! The strict flag restricts the same grammar to plain TFF0.

mod infer;
mod lexer;
mod parser;
mod print;

use std::fmt;

use crate::ast::{Connective, Signature, Sort, Term, TypeContext};
use crate::problem::{AnnotatedFormula, Declaration, Location, Payload, Problem, Role};
use crate::translate::RESERVED_PREFIX;
use crate::typing::{annotate_lets, context_at, infer_sort, TypeError};

pub use print::{print_dialect, print_fol_tff0, print_fol_tff0_with};

/// Names the translation output uses for the boolean sort and its elements.
pub const RESERVED_NAMES: [&str; 3] = ["fool_bool", "fool_true", "fool_false"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    Unsupported,
    Include,
    DuplicateDeclaration,
    Reserved,
    MultipleConjectures,
    /// A construct outside TFF0 met in strict mode.
    Strict,
    Type,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax-error",
            ParseErrorKind::Unsupported => "unsupported",
            ParseErrorKind::Include => "include",
            ParseErrorKind::DuplicateDeclaration => "duplicate-declaration",
            ParseErrorKind::Reserved => "reserved-name",
            ParseErrorKind::MultipleConjectures => "multiple-conjectures",
            ParseErrorKind::Strict => "not-tff0",
            ParseErrorKind::Type => "type-error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub location: Location,
    pub message: String,
    /// Name of the annotated formula, once known.
    pub formula: Option<String>,
    pub type_error: Option<Box<TypeError>>,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, location: Location, message: String) -> Self {
        ParseError { kind, location, message, formula: None, type_error: None }
    }

    fn in_formula(mut self, f: &AnnotatedFormula) -> Self {
        self.formula = Some(f.name.clone());
        self.location = f.location;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.kind)?;
        if let Some(name) = &self.formula {
            write!(f, " in `{name}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// `$o` anywhere, `$ite` and `$let`.
    #[default]
    Fool,
    /// Plain TFF0: no boolean arguments, variables or equations, no
    /// if-then-else or let.
    Strict,
}

/// Parses and type-checks a problem in the FOOL dialect.
pub fn parse(src: &str) -> Result<Problem, ParseError> {
    parse_with(src, Dialect::Fool)
}

pub fn parse_strict(src: &str) -> Result<Problem, ParseError> {
    parse_with(src, Dialect::Strict)
}

pub fn parse_with(src: &str, dialect: Dialect) -> Result<Problem, ParseError> {
    let tokens = lexer::lex(src)?;
    let mut formulas = parser::parse_tokens(tokens, dialect)?;
    let mut sig = Signature::new();
    for f in &formulas {
        let Payload::Declaration(decl) = &f.payload else { continue };
        let err = |kind, msg: String| ParseError::new(kind, f.location, msg).in_formula(f);
        if dialect == Dialect::Fool {
            let name = match decl {
                Declaration::Sort(s) | Declaration::Function(s, _) => s,
            };
            check_reserved(name.as_str()).map_err(|m| err(ParseErrorKind::Reserved, m))?;
        }
        match decl {
            Declaration::Sort(s) => sig
                .declare_sort(Sort::Named(s.clone()))
                .map_err(|e| err(ParseErrorKind::DuplicateDeclaration, e.to_string()))?,
            Declaration::Function(name, ty) => {
                for s in ty.args.iter().chain([&ty.result]) {
                    if is_builtin_sort(s) {
                        sig.ensure_sort(s.clone());
                    }
                }
                let kind = if Connective::from_name(name.as_str()).is_some() {
                    ParseErrorKind::Reserved
                } else if sig.function(name.as_str()).is_some() {
                    ParseErrorKind::DuplicateDeclaration
                } else {
                    ParseErrorKind::Type
                };
                sig.declare_function(name.clone(), ty.clone()).map_err(|e| err(kind, e.to_string()))?;
            }
        }
    }
    let conjectures: Vec<&AnnotatedFormula> = formulas.iter().filter(|f| f.role == Role::Conjecture).collect();
    if let [_, second, ..] = conjectures.as_slice() {
        return Err(ParseError::new(
            ParseErrorKind::MultipleConjectures,
            second.location,
            "at most one conjecture is allowed".into(),
        )
        .in_formula(second));
    }
    infer::declare_implicit(&mut sig, &formulas, dialect)?;
    let ctx = TypeContext::new(sig);
    for f in &mut formulas {
        let Payload::Formula(t) = &mut f.payload else { continue };
        let sort = annotate_lets(&ctx, t).map_err(|e| type_error(e, f.location, &f.name))?;
        if !sort.is_bool() {
            let e = crate::typing::check_formula(&ctx, t).expect_err("non-boolean formula");
            return Err(type_error(e, f.location, &f.name));
        }
    }
    if dialect == Dialect::Strict {
        for f in &formulas {
            if let Some(t) = f.formula() {
                strict_check(&ctx, t).map_err(|m| ParseError::new(ParseErrorKind::Strict, f.location, m).in_formula(f))?;
            }
        }
    }
    Ok(Problem { formulas, ctx })
}

fn type_error(e: TypeError, at: Location, name: &str) -> ParseError {
    let mut out = ParseError::new(ParseErrorKind::Type, at, e.to_string());
    out.formula = Some(name.to_string());
    out.type_error = Some(Box::new(e));
    out
}

pub(crate) fn check_reserved(name: &str) -> Result<(), String> {
    if name.starts_with(RESERVED_PREFIX) || RESERVED_NAMES.contains(&name) {
        Err(format!("`{name}` is reserved for translation output"))
    } else {
        Ok(())
    }
}

pub(crate) fn is_builtin_sort(s: &Sort) -> bool {
    matches!(s, Sort::Named(n) if n.as_str().starts_with('$'))
}

/// Rejects boolean equations; the parser already refused the other
/// non-TFF0 constructs.
fn strict_check(ctx: &TypeContext, t: &Term) -> Result<(), String> {
    for path in t.positions() {
        if let Some(Term::Eq(a, _)) = t.subterm(&path) {
            let local = context_at(ctx, t, &path);
            if infer_sort(&local, a).is_ok_and(|s| s.is_bool()) {
                return Err("equality between formulas is not TFF0".into());
            }
        }
    }
    Ok(())
}

/// The builtin arithmetic symbols, read as uninterpreted.
pub(crate) fn builtin_type(name: &str) -> Option<crate::ast::TypeSig> {
    use crate::ast::TypeSig;
    let int = Sort::named("$int");
    match name {
        "$sum" | "$difference" | "$product" => Some(TypeSig::new(vec![int.clone(), int.clone()], int)),
        "$uminus" => Some(TypeSig::new(vec![int.clone()], int)),
        "$greater" | "$greatereq" | "$less" | "$lesseq" => Some(TypeSig::new(vec![int.clone(), int], Sort::Bool)),
        _ => None,
    }
}

#[cfg(test)]
mod tests;
