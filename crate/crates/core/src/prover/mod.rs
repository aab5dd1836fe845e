//! A saturation prover for the first-order output of the translation:
//! ordered paramodulation under a Knuth-Bendix ordering in which `true` and
//! `false` are the smallest terms, with two ways of handling the boolean
//! sort. Axiom mode adds `x ≐ true ∨ x ≐ false`; rule mode replaces that
//! clause by the inference `C[s] ⊢ C[true] ∨ s ≐ false`.

mod clause;
mod clausify;
mod family;
mod infer;
mod kbo;
mod saturate;
mod term;

use std::fmt;
use std::str::FromStr;

pub use clause::{is_eligible, is_tautology, literal_greater, normalize, subsumes, Clause, Literal, Rule};
pub use clausify::{clausify, ClauseSet, ClausifyError, InputClause, DEFAULT_CLAUSE_CAP, SKOLEM_PREFIX};
pub use family::{bench_family, render_table, run_family, BenchRow};
pub use infer::{Conclusion, Inferences};
pub use kbo::Kbo;
pub use saturate::{add_bool_theory, bool_distinct_clause, bool_domain_clause, saturate, Limit, Outcome, Stats, Verdict};
pub use term::{mgu, FoTerm, Matcher, SortId, Subst, SymId, SymInfo, SymbolTable, BOOL, FALSE, PROP, TRUE, TT};

use crate::translate::FolProblem;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoolMode {
    /// Clause (4) and `true ≉ false` are input clauses.
    Axiom,
    /// `true ≉ false` is an input clause and the boolean rule is enabled.
    #[default]
    Rule,
}

impl fmt::Display for BoolMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoolMode::Axiom => "axiom",
            BoolMode::Rule => "rule",
        })
    }
}

impl FromStr for BoolMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "axiom" => Ok(BoolMode::Axiom),
            "rule" => Ok(BoolMode::Rule),
            _ => Err(format!("unknown mode `{s}`; expected axiom or rule")),
        }
    }
}

/// When to add the boolean theory.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoolTheory {
    /// Only if some clause contains a boolean-sorted term.
    #[default]
    Auto,
    Always,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProverConfig {
    pub bool_mode: BoolMode,
    pub bool_theory: BoolTheory,
    /// Stop after this many kept clauses.
    pub max_clauses: usize,
    pub max_seconds: f64,
    pub clausify_cap: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            bool_mode: BoolMode::Rule,
            bool_theory: BoolTheory::Auto,
            max_clauses: 100_000,
            max_seconds: 10.0,
            clausify_cap: DEFAULT_CLAUSE_CAP,
        }
    }
}

impl ProverConfig {
    pub fn with_mode(mut self, mode: BoolMode) -> Self {
        self.bool_mode = mode;
        self
    }
}

/// The clauses the prover starts from for `fol` under `config`.
pub fn initial_clauses(fol: &FolProblem, config: &ProverConfig) -> Result<ClauseSet, ClausifyError> {
    let mut set = clausify(fol, config.clausify_cap)?;
    add_bool_theory(&mut set, config.bool_mode, config.bool_theory);
    Ok(set)
}

/// Clausifies `fol`, adds the boolean theory and saturates.
pub fn prove(fol: &FolProblem, config: &ProverConfig) -> Result<Outcome, ClausifyError> {
    Ok(saturate(initial_clauses(fol, config)?, config))
}
