//! Deliberate corruptions of translation output, used to show the
//! preservation oracle is not vacuous.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{FolProblem, StepKind};
use crate::ast::{Connective, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Remove definition `i`.
    DropDefinition(usize),
    /// Negate the guard of if-then-else definition `i`.
    FlipGuard(usize),
    /// Exchange the right-hand sides of the if-then-else definition pair
    /// starting at `i`.
    SwapBranches(usize),
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::DropDefinition(i) => write!(f, "drop-def:{i}"),
            Mutation::FlipGuard(i) => write!(f, "flip-guard:{i}"),
            Mutation::SwapBranches(i) => write!(f, "swap-branch:{i}"),
        }
    }
}

/// The kind of a mutation without its site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationKind {
    DropDefinition,
    FlipGuard,
    SwapBranches,
}

impl FromStr for MutationKind {
    type Err = MutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drop-def" => Ok(MutationKind::DropDefinition),
            "flip-guard" => Ok(MutationKind::FlipGuard),
            "swap-branch" => Ok(MutationKind::SwapBranches),
            _ => Err(MutationError::UnknownKind(s.to_string())),
        }
    }
}

impl Mutation {
    pub fn kind(self) -> MutationKind {
        match self {
            Mutation::DropDefinition(_) => MutationKind::DropDefinition,
            Mutation::FlipGuard(_) => MutationKind::FlipGuard,
            Mutation::SwapBranches(_) => MutationKind::SwapBranches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("no definition {0}")]
    NoSuchDefinition(usize),
    #[error("definition {0} is not an if-then-else definition of the expected shape")]
    WrongShape(usize),
    #[error("unknown mutation `{0}`; expected drop-def, flip-guard or swap-branch")]
    UnknownKind(String),
    #[error("the translation has no site for this mutation")]
    NoSite,
}

fn matrix_mut(t: &mut Term) -> &mut Term {
    match t {
        Term::Quant(_, _, _, body) => matrix_mut(body),
        _ => t,
    }
}

fn implication_parts(t: &mut Term) -> Option<(&mut Term, &mut Term)> {
    let m = matrix_mut(t);
    if !m.is_connective(Connective::Implies) {
        return None;
    }
    let Term::App(_, args) = m else { return None };
    let (guard, rest) = args.split_at_mut(1);
    Some((&mut guard[0], &mut rest[0]))
}

fn is_ite_def(p: &FolProblem, i: usize) -> bool {
    p.definitions.get(i).and_then(|d| d.origin.as_ref()).is_some_and(|(_, k)| *k == StepKind::Ite)
}

/// Every applicable mutation of `p`, in a fixed order.
pub fn mutation_sites(p: &FolProblem) -> Vec<Mutation> {
    let mut out = Vec::new();
    for i in 0..p.definitions.len() {
        out.push(Mutation::DropDefinition(i));
        if is_ite_def(p, i) {
            out.push(Mutation::FlipGuard(i));
            let pair = is_ite_def(p, i + 1)
                && p.definitions[i].origin.as_ref().map(|o| &o.0) == p.definitions[i + 1].origin.as_ref().map(|o| &o.0)
                && (i == 0 || p.definitions[i - 1].origin.as_ref().map(|o| &o.0) != p.definitions[i].origin.as_ref().map(|o| &o.0));
            if pair {
                out.push(Mutation::SwapBranches(i));
            }
        }
    }
    out
}

pub fn mutate(p: &FolProblem, m: Mutation) -> Result<FolProblem, MutationError> {
    let mut out = p.clone();
    match m {
        Mutation::DropDefinition(i) => {
            if i >= out.definitions.len() {
                return Err(MutationError::NoSuchDefinition(i));
            }
            out.definitions.remove(i);
        }
        Mutation::FlipGuard(i) => {
            if !is_ite_def(p, i) {
                return Err(MutationError::WrongShape(i));
            }
            let (guard, _) = implication_parts(&mut out.definitions[i].term).ok_or(MutationError::WrongShape(i))?;
            let flipped = match &*guard {
                Term::App(_, args) if guard.is_connective(Connective::Not) => args[0].clone(),
                g => Term::not(g.clone()),
            };
            *guard = flipped;
        }
        Mutation::SwapBranches(i) => {
            if !is_ite_def(p, i) || !is_ite_def(p, i + 1) {
                return Err(MutationError::WrongShape(i));
            }
            let (left, right) = out.definitions.split_at_mut(i + 1);
            let (_, a) = implication_parts(&mut left[i].term).ok_or(MutationError::WrongShape(i))?;
            let (_, b) = implication_parts(&mut right[0].term).ok_or(MutationError::WrongShape(i + 1))?;
            match (a, b) {
                (Term::Eq(_, sa), Term::Eq(_, sb)) => std::mem::swap(sa, sb),
                _ => return Err(MutationError::WrongShape(i)),
            }
        }
    }
    Ok(out)
}
