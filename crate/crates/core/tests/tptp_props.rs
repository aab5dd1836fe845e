mod common;

use common::{signature, Features, TermGen};
use fool_core::ast::{alpha_eq, quote_name};
use fool_core::tptp::{parse, parse_strict, print_dialect, print_fol_tff0_with};
use fool_core::translate::{to_fol, translate_problem};
use proptest::prelude::*;

fn source(seed: u64) -> String {
    let mut g = TermGen::new(seed, signature(), Features::all());
    let phi = g.formula(5);
    let mut out = String::from("tff(s_type, type, s : $tType).\n");
    for (f, ty) in signature().user_functions() {
        out.push_str(&format!("tff({f}_type, type, {} : {ty}).\n", quote_name(f.as_str())));
    }
    out.push_str(&format!("tff(phi, axiom, {phi}).\n"));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>()) {
        let mut g = TermGen::new(seed, signature(), Features::all());
        let phi = g.formula(5);
        let src = source(seed);
        let p = parse(&src).unwrap_or_else(|e| panic!("{e}\n{src}"));
        let parsed = p.formulas.last().unwrap().formula().unwrap();
        prop_assert!(alpha_eq(parsed, &phi), "{} vs {}", parsed, phi);
        let text = print_dialect(&p);
        prop_assert_eq!(parse(&text).unwrap(), p);
    }

    #[test]
    fn translated_output_is_strict_tff0(seed in any::<u64>()) {
        let p = parse(&source(seed)).unwrap();
        let fol = to_fol(&translate_problem(&p).unwrap());
        let text = print_fol_tff0_with(&fol, &p);
        prop_assert!(parse_strict(&text).is_ok(), "{:?}\n{}", parse_strict(&text).err(), text);
    }
}
