use std::time::{Duration, Instant};

use super::{prove, BoolMode, ClausifyError, ProverConfig, Stats, Verdict};
use crate::ast::{Signature, Sort, Term, TypeContext, TypeSig};
use crate::problem::{AnnotatedFormula, Language, Location, Payload, Problem, Role};
use crate::translate::{to_fol, translate_problem};

/// The comparison family: `p(f1(c)), …, p(fk(c))` with `fi : s → bool` and
/// `p : bool → bool`, plus `q(c)` and `¬q(d)`. Satisfiable for every `k`,
/// so a complete prover must saturate.
pub fn bench_family(k: usize) -> Problem {
    let s = Sort::named("s");
    let mut sig = Signature::new();
    sig.declare_sort(s.clone()).expect("fresh signature");
    let mut declare = |name: &str, ty: TypeSig| sig.declare_function(name.into(), ty).expect("distinct names");
    declare("c", TypeSig::constant(s.clone()));
    declare("d", TypeSig::constant(s.clone()));
    declare("q", TypeSig::new(vec![s.clone()], Sort::Bool));
    if k > 0 {
        declare("p", TypeSig::new(vec![Sort::Bool], Sort::Bool));
    }
    for i in 1..=k {
        declare(&format!("f{i}"), TypeSig::new(vec![s.clone()], Sort::Bool));
    }
    let axiom = |name: String, term: Term| AnnotatedFormula {
        language: Language::Tff,
        name,
        role: Role::Axiom,
        payload: Payload::Formula(term),
        location: Location::default(),
    };
    let mut formulas: Vec<AnnotatedFormula> = (1..=k)
        .map(|i| {
            let fi = Term::app(&format!("f{i}"), vec![Term::constant("c")]);
            axiom(format!("p_f{i}"), Term::app("p", vec![fi]))
        })
        .collect();
    formulas.push(axiom("q_c".into(), Term::app("q", vec![Term::constant("c")])));
    formulas.push(axiom("not_q_d".into(), Term::not(Term::app("q", vec![Term::constant("d")]))));
    Problem { formulas, ctx: TypeContext::new(sig) }
}

/// One line of the mode comparison on the family.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub k: usize,
    pub mode: BoolMode,
    pub verdict: Verdict,
    pub stats: Stats,
    pub elapsed: Duration,
}

/// Runs both modes on `bench_family(k)` for each `k` under the limits of
/// `config`.
pub fn run_family(sizes: &[usize], config: &ProverConfig) -> Result<Vec<BenchRow>, ClausifyError> {
    let mut rows = Vec::new();
    for &k in sizes {
        let state = translate_problem(&bench_family(k)).expect("the family translates");
        let fol = to_fol(&state);
        for mode in [BoolMode::Axiom, BoolMode::Rule] {
            let start = Instant::now();
            let out = prove(&fol, &config.clone().with_mode(mode))?;
            rows.push(BenchRow { k, mode, verdict: out.verdict, stats: out.stats, elapsed: start.elapsed() });
        }
    }
    Ok(rows)
}

/// A fixed-width table: k, mode, verdict, generated, kept, given,
/// var_equations, milliseconds.
pub fn render_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>3} {:<6} {:<18} {:>10} {:>8} {:>8} {:>8} {:>10}\n",
        "k", "mode", "verdict", "generated", "kept", "given", "var_eqs", "ms"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:<6} {:<18} {:>10} {:>8} {:>8} {:>8} {:>10.1}\n",
            r.k,
            r.mode.to_string(),
            r.verdict.to_string(),
            r.stats.generated,
            r.stats.kept,
            r.stats.given,
            r.stats.var_equations,
            r.elapsed.as_secs_f64() * 1000.0
        ));
    }
    out
}
