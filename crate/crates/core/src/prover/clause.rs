use std::collections::HashMap;
use std::fmt;

use super::kbo::Kbo;
use super::term::{FoTerm, Matcher, Subst, SymbolTable, TT};
use crate::ast;

/// `lhs ≐ rhs` or its negation. A predicate atom `p(t̄)` is stored as
/// `p(t̄) ≐ tt`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub positive: bool,
    pub lhs: FoTerm,
    pub rhs: FoTerm,
}

impl Literal {
    pub fn eq(lhs: FoTerm, rhs: FoTerm) -> Literal {
        Literal { positive: true, lhs, rhs }
    }

    pub fn neq(lhs: FoTerm, rhs: FoTerm) -> Literal {
        Literal { positive: false, lhs, rhs }
    }

    pub fn atom(positive: bool, atom: FoTerm) -> Literal {
        Literal { positive, lhs: atom, rhs: FoTerm::constant(TT) }
    }

    pub fn negated(&self) -> Literal {
        Literal { positive: !self.positive, ..self.clone() }
    }

    pub fn is_predicate(&self) -> bool {
        self.rhs.is_const(TT)
    }

    /// An equation, of either polarity, between two distinct variables.
    pub fn is_var_equation(&self) -> bool {
        matches!((&self.lhs, &self.rhs), (FoTerm::Var(x, _), FoTerm::Var(y, _)) if x != y)
    }

    pub fn apply(&self, s: &Subst) -> Literal {
        Literal { positive: self.positive, lhs: s.apply(&self.lhs), rhs: s.apply(&self.rhs) }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&FoTerm) -> FoTerm) -> Literal {
        Literal { positive: self.positive, lhs: f(&self.lhs), rhs: f(&self.rhs) }
    }

    /// Equal up to the symmetry of equality.
    pub fn same(&self, other: &Literal) -> bool {
        self.positive == other.positive
            && ((self.lhs == other.lhs && self.rhs == other.rhs) || (self.lhs == other.rhs && self.rhs == other.lhs))
    }

    /// The term multiset the literal ordering compares.
    fn multiset(&self) -> Vec<&FoTerm> {
        if self.positive {
            vec![&self.lhs, &self.rhs]
        } else {
            vec![&self.lhs, &self.lhs, &self.rhs, &self.rhs]
        }
    }

    pub fn size(&self) -> usize {
        if self.is_predicate() {
            self.lhs.size()
        } else {
            self.lhs.size() + self.rhs.size()
        }
    }

    pub fn display<'a>(&'a self, syms: &'a SymbolTable) -> LiteralDisplay<'a> {
        LiteralDisplay { lit: self, syms }
    }

    pub fn to_ast(&self, syms: &SymbolTable) -> ast::Term {
        let atom = if self.is_predicate() {
            self.lhs.to_ast(syms)
        } else {
            ast::Term::eq(self.lhs.to_ast(syms), self.rhs.to_ast(syms))
        };
        if self.positive {
            atom
        } else {
            ast::Term::not(atom)
        }
    }
}

pub struct LiteralDisplay<'a> {
    lit: &'a Literal,
    syms: &'a SymbolTable,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.lit;
        if l.is_predicate() {
            let neg = if l.positive { "" } else { "~" };
            write!(f, "{neg}{}", l.lhs.display(self.syms))
        } else {
            let op = if l.positive { "=" } else { "!=" };
            write!(f, "{} {op} {}", l.lhs.display(self.syms), l.rhs.display(self.syms))
        }
    }
}

/// `a ≻ b` in the multiset extension of the term ordering.
pub fn literal_greater(kbo: &Kbo, a: &Literal, b: &Literal) -> bool {
    kbo.multiset_greater(&a.multiset(), &b.multiset())
}

/// Literal `i` is eligible when no other literal is strictly greater.
pub fn is_eligible(kbo: &Kbo, lits: &[Literal], i: usize) -> bool {
    lits.iter().enumerate().all(|(j, l)| j == i || !literal_greater(kbo, l, &lits[i]))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Input(String),
    Paramodulation,
    FoolParamodulation,
    Resolution,
    EqualityResolution,
    Factoring,
    EqualityFactoring,
}

impl Rule {
    /// Names of the generating rules, in statistics order.
    pub const INFERENCES: [&'static str; 6] = [
        "paramodulation",
        "fool-paramodulation",
        "resolution",
        "equality-resolution",
        "factoring",
        "equality-factoring",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Input(_) => "input",
            Rule::Paramodulation => "paramodulation",
            Rule::FoolParamodulation => "fool-paramodulation",
            Rule::Resolution => "resolution",
            Rule::EqualityResolution => "equality-resolution",
            Rule::Factoring => "factoring",
            Rule::EqualityFactoring => "equality-factoring",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Input(name) => write!(f, "input {name}"),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub id: usize,
    pub literals: Vec<Literal>,
    pub rule: Rule,
    pub parents: Vec<usize>,
}

impl Clause {
    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.literals.iter().map(Literal::size).sum()
    }

    pub fn var_count(&self) -> u32 {
        self.literals.iter().flat_map(|l| [l.lhs.max_var(), l.rhs.max_var()]).flatten().max().map_or(0, |m| m + 1)
    }

    pub fn has_var_equation(&self) -> bool {
        self.literals.iter().any(Literal::is_var_equation)
    }

    pub fn display<'a>(&'a self, syms: &'a SymbolTable) -> ClauseDisplay<'a> {
        ClauseDisplay { lits: &self.literals, syms }
    }

    /// The universal closure of the clause as a source-level formula.
    pub fn to_ast(&self, syms: &SymbolTable) -> ast::Term {
        let mut vars: Vec<(u32, u32)> = Vec::new();
        for l in &self.literals {
            for t in [&l.lhs, &l.rhs] {
                t.map_vars(&mut |x, s| {
                    if !vars.iter().any(|(y, _)| *y == x) {
                        vars.push((x, s));
                    }
                    FoTerm::Var(x, s)
                });
            }
        }
        let body = self
            .literals
            .iter()
            .map(|l| l.to_ast(syms))
            .reduce(ast::Term::or)
            .unwrap_or_else(|| ast::Term::connective(ast::Connective::Bottom, vec![]));
        vars.iter().rev().fold(body, |acc, (x, s)| ast::Term::forall(&format!("X{x}"), syms.sort(*s), acc))
    }
}

pub struct ClauseDisplay<'a> {
    lits: &'a [Literal],
    syms: &'a SymbolTable,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", l.display(self.syms))?;
        }
        Ok(())
    }
}

/// Renames variables to `0, 1, …` in order of first occurrence, drops
/// duplicate literals and literals `s ≉ s`.
pub fn normalize(lits: Vec<Literal>) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for l in lits {
        if !l.positive && l.lhs == l.rhs {
            continue;
        }
        if !out.iter().any(|m| m.same(&l)) {
            out.push(l);
        }
    }
    let mut map: HashMap<u32, u32> = HashMap::new();
    let mut rename = |x: u32, s: u32| {
        let n = map.len() as u32;
        FoTerm::Var(*map.entry(x).or_insert(n), s)
    };
    out.iter().map(|l| l.map_terms(&mut |t| t.map_vars(&mut rename))).collect()
}

/// Contains `s ≐ s` or a complementary pair.
pub fn is_tautology(lits: &[Literal]) -> bool {
    lits.iter().enumerate().any(|(i, l)| {
        (l.positive && l.lhs == l.rhs) || lits[i + 1..].iter().any(|m| m.same(&l.negated()))
    })
}

/// Whether an instance of `c` is a sub-multiset of `d`. Equations match in
/// either orientation.
pub fn subsumes(c: &[Literal], d: &[Literal], syms: &SymbolTable) -> bool {
    fn go(c: &[Literal], d: &[Literal], used: &mut [bool], m: &mut Matcher, syms: &SymbolTable) -> bool {
        let Some((l, rest)) = c.split_first() else { return true };
        for (j, k) in d.iter().enumerate() {
            if used[j] || k.positive != l.positive || k.is_predicate() != l.is_predicate() {
                continue;
            }
            let orientations: &[(&FoTerm, &FoTerm)] =
                if l.is_predicate() { &[(&k.lhs, &k.rhs)] } else { &[(&k.lhs, &k.rhs), (&k.rhs, &k.lhs)] };
            for (a, b) in orientations {
                let mark = m.mark();
                if m.match_term(&l.lhs, a, syms) && m.match_term(&l.rhs, b, syms) {
                    used[j] = true;
                    if go(rest, d, used, m, syms) {
                        return true;
                    }
                    used[j] = false;
                }
                m.undo(mark);
            }
        }
        false
    }
    c.len() <= d.len() && go(c, d, &mut vec![false; d.len()], &mut Matcher::default(), syms)
}
