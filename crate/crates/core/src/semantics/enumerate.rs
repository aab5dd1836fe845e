use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::eval::{Elem, EvalError, Interpretation, Table};
use crate::ast::{Sort, Symbol, TypeContext, TypeSig};

/// Default bound on the number of interpretations a single enumeration may
/// visit.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Carrier sizes per sort. The boolean sort always has two elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSpec {
    sizes: BTreeMap<Sort, usize>,
    default: usize,
}

impl Default for DomainSpec {
    fn default() -> Self {
        DomainSpec::uniform(2)
    }
}

impl DomainSpec {
    /// Every non-boolean sort gets `size` elements.
    pub fn uniform(size: usize) -> Self {
        assert!(size >= 1);
        DomainSpec { sizes: BTreeMap::new(), default: size }
    }

    pub fn with(mut self, sort: Sort, size: usize) -> Self {
        self.set(sort, size);
        self
    }

    pub fn set(&mut self, sort: Sort, size: usize) {
        assert!(size >= 1);
        if !sort.is_bool() {
            self.sizes.insert(sort, size);
        }
    }

    pub fn size(&self, sort: &Sort) -> usize {
        if sort.is_bool() {
            2
        } else {
            self.sizes.get(sort).copied().unwrap_or(self.default)
        }
    }

    pub fn default_size(&self) -> usize {
        self.default
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid domain spec `{0}`: expected sort=size[,sort=size...]")]
pub struct DomainSpecError(pub String);

impl FromStr for DomainSpec {
    type Err = DomainSpecError;

    /// `s=2,list=3` sets sizes per sort; a bare number sets the default.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut spec = DomainSpec::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || DomainSpecError(text.to_string());
            match part.split_once('=') {
                Some((sort, n)) => {
                    let n: usize = n.trim().parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Err(bad());
                    }
                    let sort = sort.trim().trim_matches('\'');
                    if sort == "$o" {
                        if n != 2 {
                            return Err(bad());
                        }
                    } else {
                        spec.set(Sort::named(sort), n);
                    }
                }
                None => {
                    let n: usize = part.parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Err(bad());
                    }
                    spec.default = n;
                }
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.default)?;
        for (s, n) in &self.sizes {
            write!(f, ",{s}={n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("interpretation space of {count} exceeds the cap of {cap}")]
    Overflow { count: u128, cap: u128 },
    #[error("symbol `{0}` is not declared")]
    UnknownSymbol(Symbol),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn table_shape(spec: &DomainSpec, ty: &TypeSig) -> (Vec<usize>, usize) {
    (ty.args.iter().map(|s| spec.size(s)).collect(), spec.size(&ty.result))
}

/// `∏ |range|^|domain tuples|` over `symbols`, saturating at `u128::MAX`.
pub fn interpretation_count(
    ctx: &TypeContext,
    spec: &DomainSpec,
    symbols: &BTreeSet<Symbol>,
) -> Result<u128, OracleError> {
    let mut count: u128 = 1;
    for f in symbols {
        let ty = ctx.function(f.as_str()).ok_or_else(|| OracleError::UnknownSymbol(f.clone()))?;
        let (args, result) = table_shape(spec, ty);
        let entries: u128 = args.iter().fold(1u128, |acc, &n| acc.saturating_mul(n as u128));
        let entries = u32::try_from(entries).unwrap_or(u32::MAX);
        count = count.saturating_mul((result as u128).saturating_pow(entries));
    }
    Ok(count)
}

/// An interpretation with the carriers of `spec` for every sort of `ctx` and
/// no tables.
pub fn empty_interpretation(ctx: &TypeContext, spec: &DomainSpec) -> Interpretation {
    let mut interp = Interpretation::new();
    for sort in ctx.signature().sorts() {
        interp.set_domain(sort.clone(), spec.size(sort));
    }
    interp
}

/// Every interpretation of `symbols` over the carriers of `spec`, in
/// lexicographic order of the concatenated table entries (symbols sorted by
/// name, tuples in lexicographic order, last entry varying fastest).
#[derive(Debug, Clone)]
pub struct Interpretations {
    current: Interpretation,
    slots: Vec<(Symbol, usize)>,
    radices: Vec<Elem>,
    digits: Vec<Elem>,
    started: bool,
    done: bool,
}

impl Interpretations {
    pub fn count_hint(&self) -> u128 {
        self.radices.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.digits[i] += 1;
            let wrapped = self.digits[i] == self.radices[i];
            if wrapped {
                self.digits[i] = 0;
            }
            let (f, k) = &self.slots[i];
            self.current.table_mut(f.as_str()).expect("table").values_mut()[*k] = self.digits[i];
            if !wrapped {
                return Some(self.current.clone());
            }
        }
    }
}

/// Starts an enumeration over `symbols` on top of `base` (whose tables for
/// other symbols stay fixed).
pub fn enumerate_over(
    base: Interpretation,
    ctx: &TypeContext,
    spec: &DomainSpec,
    symbols: &BTreeSet<Symbol>,
    cap: u128,
) -> Result<Interpretations, OracleError> {
    let count = interpretation_count(ctx, spec, symbols)?;
    if count > cap {
        return Err(OracleError::Overflow { count, cap });
    }
    let mut current = base;
    let mut slots = Vec::new();
    let mut radices = Vec::new();
    for f in symbols {
        let ty = ctx.function(f.as_str()).ok_or_else(|| OracleError::UnknownSymbol(f.clone()))?;
        let (args, result) = table_shape(spec, ty);
        let table = Table::filled(args, result, 0);
        for k in 0..table.values().len() {
            slots.push((f.clone(), k));
            radices.push(result as Elem);
        }
        current.set_table(f.clone(), table);
    }
    let digits = vec![0; slots.len()];
    Ok(Interpretations { current, slots, radices, digits, started: false, done: false })
}

/// Every interpretation of exactly `symbols` over the carriers of `spec`.
pub fn enumerate_interpretations(
    ctx: &TypeContext,
    spec: &DomainSpec,
    symbols: &BTreeSet<Symbol>,
    cap: u128,
) -> Result<Interpretations, OracleError> {
    enumerate_over(empty_interpretation(ctx, spec), ctx, spec, symbols, cap)
}
