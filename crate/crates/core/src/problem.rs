//! Annotated formulas and problems, independent of concrete syntax.

use std::fmt;

use crate::ast::{Symbol, Term, TypeContext, TypeSig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Type,
    Axiom,
    Hypothesis,
    Definition,
    Assumption,
    Lemma,
    Theorem,
    Corollary,
    Conjecture,
    NegatedConjecture,
}

impl Role {
    pub const ALL: [Role; 10] = [
        Role::Type,
        Role::Axiom,
        Role::Hypothesis,
        Role::Definition,
        Role::Assumption,
        Role::Lemma,
        Role::Theorem,
        Role::Corollary,
        Role::Conjecture,
        Role::NegatedConjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Type => "type",
            Role::Axiom => "axiom",
            Role::Hypothesis => "hypothesis",
            Role::Definition => "definition",
            Role::Assumption => "assumption",
            Role::Lemma => "lemma",
            Role::Theorem => "theorem",
            Role::Corollary => "corollary",
            Role::Conjecture => "conjecture",
            Role::NegatedConjecture => "negated_conjecture",
        }
    }

    pub fn from_name(name: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Roles whose formula is assumed true in the problem.
    pub fn is_assertion(self) -> bool {
        !matches!(self, Role::Type | Role::Conjecture)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Language {
    Tff,
    Fof,
}

impl Language {
    pub fn keyword(self) -> &'static str {
        match self {
            Language::Tff => "tff",
            Language::Fof => "fof",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Sort(Symbol),
    Function(Symbol, TypeSig),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Declaration(Declaration),
    Formula(Term),
}

/// 1-based line and column of the start of an annotated formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// One `tff(name, role, payload).` entry. Equality ignores the location.
#[derive(Clone, Debug)]
pub struct AnnotatedFormula {
    pub language: Language,
    pub name: String,
    pub role: Role,
    pub payload: Payload,
    pub location: Location,
}

impl PartialEq for AnnotatedFormula {
    fn eq(&self, other: &Self) -> bool {
        self.language == other.language
            && self.name == other.name
            && self.role == other.role
            && self.payload == other.payload
    }
}

impl Eq for AnnotatedFormula {}

impl AnnotatedFormula {
    pub fn formula(&self) -> Option<&Term> {
        match &self.payload {
            Payload::Formula(t) => Some(t),
            Payload::Declaration(_) => None,
        }
    }
}

/// A loaded problem: annotated formulas in source order and the context
/// they were checked against.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Problem {
    pub formulas: Vec<AnnotatedFormula>,
    pub ctx: TypeContext,
}

impl Problem {
    pub fn conjecture(&self) -> Option<&AnnotatedFormula> {
        self.formulas.iter().find(|f| f.role == Role::Conjecture)
    }

    /// Formulas with a term payload, in order.
    pub fn logical_formulas(&self) -> impl Iterator<Item = &AnnotatedFormula> {
        self.formulas.iter().filter(|f| f.formula().is_some())
    }

    /// The refutation goal: every assertion conjoined with the negated
    /// conjecture.
    pub fn goal(&self) -> Term {
        Term::and_all(self.logical_formulas().map(|f| {
            let t = f.formula().expect("formula").clone();
            if f.role == Role::Conjecture {
                Term::not(t)
            } else {
                t
            }
        }))
    }
}
