use std::collections::BTreeSet;
use std::fmt;

use super::enumerate::{
    empty_interpretation, enumerate_interpretations, enumerate_over, DomainSpec, OracleError,
    DEFAULT_CAP,
};
use super::eval::{eval, eval_partial, Elem, Interpretation, Table, FALSE, TRUE, UNKNOWN};
use crate::ast::{free_fns, Connective, Symbol, Term, TypeContext};

/// The output of a translation as the oracle sees it: the extended context,
/// the definitions `D` and the rewritten formula `φ′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translated {
    pub ctx: TypeContext,
    pub defs: Vec<Term>,
    pub formula: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `I ⊨ φ` but no extension of `I` satisfies `⋀D ∧ φ′`.
    Forward,
    /// Some extension satisfies `⋀D ∧ φ′` although `I ⊭ φ`.
    Backward,
    /// No extension of `I` satisfies `⋀D` alone.
    Definitions,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
            Direction::Definitions => "definitions",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Report {
    Ok { checked: u64 },
    Counterexample { direction: Direction, interpretation: Interpretation },
}

impl Report {
    pub fn is_ok(&self) -> bool {
        matches!(self, Report::Ok { .. })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Ok { checked } => write!(f, "OK {checked}"),
            Report::Counterexample { direction, interpretation } => {
                write!(f, "COUNTEREXAMPLE {direction} {interpretation}")
            }
        }
    }
}

/// How tables of the symbols introduced by translation are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExtensionSearch {
    /// Backtracking over table entries, cutting branches whose partial
    /// tables already falsify a conjunct under three-valued evaluation.
    #[default]
    Pruned,
    /// Plain enumeration of every table; exponential, kept as a reference.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: u128,
    pub search: ExtensionSearch,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, search: ExtensionSearch::Pruned }
    }
}

fn conjuncts(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::App(_, args) if t.is_connective(Connective::And) => {
            conjuncts(&args[0], out);
            conjuncts(&args[1], out);
        }
        _ => out.push(t.clone()),
    }
}

struct Search<'a> {
    conjuncts: &'a [Term],
    mentions: Vec<BTreeSet<Symbol>>,
    slots: Vec<(Symbol, usize, Elem)>,
}

impl Search<'_> {
    fn run(
        &self,
        interp: &mut Interpretation,
        next: usize,
        changed: Option<&Symbol>,
        satisfied: &mut Vec<bool>,
    ) -> Result<bool, OracleError> {
        let mut newly = Vec::new();
        for (k, c) in self.conjuncts.iter().enumerate() {
            if satisfied[k] || changed.is_some_and(|f| !self.mentions[k].contains(f)) {
                continue;
            }
            match eval_partial(interp, c)? {
                FALSE => {
                    for &j in &newly {
                        satisfied[j] = false;
                    }
                    return Ok(false);
                }
                TRUE => {
                    satisfied[k] = true;
                    newly.push(k);
                }
                _ => {}
            }
        }
        if satisfied.iter().all(|&s| s) {
            for (f, k, _) in &self.slots[next..] {
                let v = &mut interp.table_mut(f.as_str()).expect("table").values_mut()[*k];
                if *v == UNKNOWN {
                    *v = 0;
                }
            }
            return Ok(true);
        }
        if next < self.slots.len() {
            let (f, k, radix) = &self.slots[next];
            for v in 0..*radix {
                interp.table_mut(f.as_str()).expect("table").values_mut()[*k] = v;
                if self.run(interp, next + 1, Some(f), satisfied)? {
                    return Ok(true);
                }
            }
            interp.table_mut(f.as_str()).expect("table").values_mut()[*k] = UNKNOWN;
        }
        for &j in &newly {
            satisfied[j] = false;
        }
        Ok(false)
    }
}

/// Looks for tables of `new_symbols` that, added to `base`, satisfy every
/// formula in `constraint`. Returns the extended interpretation if one
/// exists.
pub fn find_extension(
    base: &Interpretation,
    ctx: &TypeContext,
    spec: &DomainSpec,
    new_symbols: &BTreeSet<Symbol>,
    constraint: &[Term],
    config: &OracleConfig,
) -> Result<Option<Interpretation>, OracleError> {
    let mut parts = Vec::new();
    for c in constraint {
        conjuncts(c, &mut parts);
    }
    match config.search {
        ExtensionSearch::Exhaustive => {
            for candidate in enumerate_over(base.clone(), ctx, spec, new_symbols, config.cap)? {
                let mut ok = true;
                for c in &parts {
                    if eval(&candidate, c)? != TRUE {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(candidate));
                }
            }
            Ok(None)
        }
        ExtensionSearch::Pruned => {
            let mut interp = base.clone();
            let mut slots = Vec::new();
            for f in new_symbols {
                let ty = ctx.function(f.as_str()).ok_or_else(|| OracleError::UnknownSymbol(f.clone()))?;
                let args: Vec<usize> = ty.args.iter().map(|s| spec.size(s)).collect();
                let result = spec.size(&ty.result);
                let table = Table::filled(args, result, UNKNOWN);
                for k in 0..table.values().len() {
                    slots.push((f.clone(), k, result as Elem));
                }
                interp.set_table(f.clone(), table);
            }
            let mentions = parts.iter().map(free_fns).collect();
            let search = Search { conjuncts: &parts, mentions, slots };
            let mut satisfied = vec![false; parts.len()];
            if search.run(&mut interp, 0, None, &mut satisfied)? {
                Ok(Some(interp))
            } else {
                Ok(None)
            }
        }
    }
}

fn symbol_split(phi: &Term, translated: &Translated) -> (BTreeSet<Symbol>, BTreeSet<Symbol>) {
    let original = free_fns(phi);
    let mut introduced = free_fns(&translated.formula);
    for d in &translated.defs {
        introduced.extend(free_fns(d));
    }
    let introduced = introduced.difference(&original).cloned().collect();
    (original, introduced)
}

/// For every interpretation `I` of the symbols of `phi` within `spec`:
/// if `I ⊨ phi` some extension satisfies `⋀D ∧ φ′`, and if `I ⊭ phi` none
/// does. The first violation is reported.
pub fn check_model_preservation(
    phi: &Term,
    translated: &Translated,
    spec: &DomainSpec,
    config: &OracleConfig,
) -> Result<Report, OracleError> {
    let (original, introduced) = symbol_split(phi, translated);
    let ctx = &translated.ctx;
    let mut constraint = translated.defs.clone();
    constraint.push(translated.formula.clone());
    let mut checked = 0u64;
    for interp in enumerate_interpretations(ctx, spec, &original, config.cap)? {
        let holds = eval(&interp, phi)? == TRUE;
        let extension = find_extension(&interp, ctx, spec, &introduced, &constraint, config)?;
        checked += 1;
        match (holds, extension) {
            (true, None) => {
                return Ok(Report::Counterexample { direction: Direction::Forward, interpretation: interp })
            }
            (false, Some(ext)) => {
                return Ok(Report::Counterexample { direction: Direction::Backward, interpretation: ext })
            }
            _ => {}
        }
    }
    Ok(Report::Ok { checked })
}

/// Every interpretation of the symbols of `phi` extends to a model of the
/// definitions alone.
pub fn check_witnessability(
    phi: &Term,
    translated: &Translated,
    spec: &DomainSpec,
    config: &OracleConfig,
) -> Result<Report, OracleError> {
    let (original, introduced) = symbol_split(phi, translated);
    let ctx = &translated.ctx;
    let mut checked = 0u64;
    for interp in enumerate_interpretations(ctx, spec, &original, config.cap)? {
        checked += 1;
        if find_extension(&interp, ctx, spec, &introduced, &translated.defs, config)?.is_none() {
            return Ok(Report::Counterexample { direction: Direction::Definitions, interpretation: interp });
        }
    }
    Ok(Report::Ok { checked })
}

/// Searches the interpretations of the free symbols of `formulas` within
/// `spec` for a common model.
pub fn find_model(
    ctx: &TypeContext,
    formulas: &[Term],
    spec: &DomainSpec,
    config: &OracleConfig,
) -> Result<Option<Interpretation>, OracleError> {
    let mut symbols = BTreeSet::new();
    for f in formulas {
        symbols.extend(free_fns(f));
    }
    let base = empty_interpretation(ctx, spec);
    find_extension(&base, ctx, spec, &symbols, formulas, config)
}
