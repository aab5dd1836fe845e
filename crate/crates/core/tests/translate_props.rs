mod common;

use std::collections::BTreeSet;

use common::{small_signature, Features, TermGen};
use fool_core::ast::{free_fns, is_syntactically_first_order, Term, TypeContext};
use fool_core::semantics::{
    check_model_preservation, check_witnessability, enumerate_interpretations, eval, DomainSpec, OracleConfig,
    OracleError, TRUE,
};
use fool_core::translate::{run_translation, step_measure, to_fol, TranslationState};
use proptest::prelude::*;

const STEP_CAP: u128 = 100_000;

fn formula(seed: u64, depth: usize) -> (Term, TypeContext) {
    let mut g = TermGen::new(seed, small_signature(), Features::all());
    let phi = g.formula(depth);
    (phi, g.context())
}

fn translate(seed: u64, depth: usize) -> (Term, TypeContext, TranslationState) {
    let (phi, ctx) = formula(seed, depth);
    let state = run_translation(&phi, &ctx).unwrap_or_else(|e| panic!("{phi}: {e}"));
    (phi, ctx, state)
}

/// Every interpretation of the symbols of `added`, `before` and `after`
/// satisfying `added` agrees on `before` and `after`. `None` if the space
/// is over the cap.
fn step_is_local_equivalence(ctx: &TypeContext, before: &Term, after: &Term, added: &[Term]) -> Option<bool> {
    let mut symbols = BTreeSet::new();
    for t in added.iter().chain([before, after]) {
        symbols.extend(free_fns(t));
    }
    let interps = match enumerate_interpretations(ctx, &DomainSpec::uniform(2), &symbols, STEP_CAP) {
        Ok(it) => it,
        Err(OracleError::Overflow { .. }) => return None,
        Err(e) => panic!("{e}"),
    };
    for interp in interps {
        if added.iter().all(|d| eval(&interp, d).unwrap() == TRUE)
            && eval(&interp, before).unwrap() != eval(&interp, after).unwrap()
        {
            return Some(false);
        }
    }
    Some(true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn translation_preserves_models(seed in any::<u64>()) {
        let (phi, _, state) = translate(seed, 4);
        let fol = to_fol(&state);
        let config = OracleConfig::default();
        for size in 1..=2 {
            let report = check_model_preservation(&phi, &fol.as_translated(), &DomainSpec::uniform(size), &config);
            match report {
                Ok(r) => prop_assert!(r.is_ok(), "{} {}", phi, r),
                Err(OracleError::Overflow { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn definitions_are_witnessable(seed in any::<u64>()) {
        let (phi, _, state) = translate(seed, 4);
        let fol = to_fol(&state);
        match check_witnessability(&phi, &fol.as_translated(), &DomainSpec::uniform(2), &OracleConfig::default()) {
            Ok(r) => prop_assert!(r.is_ok(), "{} {}", phi, r),
            Err(OracleError::Overflow { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn each_step_is_a_local_equivalence(seed in any::<u64>()) {
        let (phi, _, state) = translate(seed, 4);
        for step in &state.steps {
            let ok = step_is_local_equivalence(&state.ctx, &step.before, &step.after, &step.added);
            prop_assert!(ok != Some(false), "{} at {:?} in {}", step.kind, step.path, phi);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn step_count_is_bounded_by_the_measure(seed in any::<u64>()) {
        let (phi, ctx, state) = translate(seed, 6);
        prop_assert!(state.steps.len() <= step_measure(&ctx, &phi), "{}", phi);
    }

    #[test]
    fn output_is_first_order(seed in any::<u64>()) {
        let (_, _, state) = translate(seed, 6);
        let fol = to_fol(&state);
        for f in fol.all() {
            prop_assert!(is_syntactically_first_order(&f.term).is_ok(), "{}", f.term);
            let mut nested = false;
            f.term.walk(&mut |node| {
                if let Term::App(_, args) = node {
                    if node.as_connective().is_none() && args.iter().any(|a| a.as_connective().is_some_and(|c| c.is_logical_operator())) {
                        nested = true;
                    }
                }
                if matches!(node, Term::Ite(..) | Term::Let(..)) {
                    nested = true;
                }
            });
            prop_assert!(!nested, "{}", f.term);
        }
    }

    #[test]
    fn translation_is_deterministic(seed in any::<u64>()) {
        let (phi, ctx, state) = translate(seed, 6);
        prop_assert_eq!(run_translation(&phi, &ctx).unwrap(), state);
    }
}

#[test]
fn sorted_sublist_definition_keeps_its_models() {
    use fool_core::tptp::parse;
    use fool_core::translate::translate_problem;
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/formula2.p")).unwrap();
    let p = parse(&src).unwrap();
    let fol = to_fol(&translate_problem(&p).unwrap());
    for domains in ["1", "list=2,elem=1", "list=2,elem=2"] {
        let spec: DomainSpec = domains.parse().unwrap();
        let report = check_model_preservation(&p.goal(), &fol.as_translated(), &spec, &OracleConfig::default()).unwrap();
        assert!(report.is_ok(), "{domains}: {report}");
    }
}
