//! Inputs for the saturation benchmarks.

use fool_core::prover::{bench_family, BoolMode, ProverConfig};
use fool_core::translate::{to_fol, translate_problem, FolProblem};

/// Kept-clause cap used by the benchmarks, so both modes stop in bounded time.
pub const BENCH_CAP: usize = 300;

/// The translated member `k` of the comparison family.
pub fn family_fol(k: usize) -> FolProblem {
    let state = translate_problem(&bench_family(k)).expect("the family translates");
    to_fol(&state)
}

pub fn config(mode: BoolMode) -> ProverConfig {
    ProverConfig { max_clauses: BENCH_CAP, max_seconds: 60.0, ..ProverConfig::default() }.with_mode(mode)
}
