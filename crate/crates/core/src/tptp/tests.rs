use super::*;
use crate::ast::{Sort, TypeSig};
use crate::translate::{to_fol, translate_problem};
use crate::typing::TypeErrorKind;

const LISTING: &str = include_str!("../../tests/fixtures/listing.p");

fn err(src: &str) -> ParseError {
    parse(src).expect_err("should be rejected")
}

fn fol_text(src: &str) -> String {
    let p = parse(src).unwrap();
    let state = translate_problem(&p).unwrap();
    print_fol_tff0_with(&to_fol(&state), &p)
}

#[test]
fn listing_loads() {
    let p = parse(LISTING).unwrap();
    assert_eq!(p.formulas.len(), 9);
    assert_eq!(p.conjecture().unwrap().name, "9");
    let Some(Term::Eq(lhs, rhs)) = p.formulas[7].formula() else { panic!("hypothesis 8 is an equation") };
    assert_eq!(**lhs, Term::constant("a1"));
    let Term::Ite(_, then, other) = &**rhs else { panic!("ite expected") };
    assert!(matches!(&**then, Term::Let(l) if l.sort == Some(Sort::named("$int"))));
    assert!(matches!(&**other, Term::Let(_)));
    assert_eq!(p.ctx.function("a1"), Some(&TypeSig::constant(Sort::named("$int"))));
    assert_eq!(p.formulas[7].location.line, 8);
}

#[test]
fn boolean_argument_needs_dialect() {
    let src = "tff(t, type, b : $o > $int).";
    let p = parse(src).unwrap();
    assert_eq!(p.ctx.function("b").unwrap().args, vec![Sort::Bool]);
    assert_eq!(parse_strict(src).unwrap_err().kind, ParseErrorKind::Strict);
}

#[test]
fn strict_mode_rejects_fool_constructs() {
    for src in [
        "tff(a, axiom, ! [X : $o] : (X = $true)).",
        "tff(a, type, p : $o).\ntff(b, type, q : $o).\ntff(c, axiom, p = q).",
        "tff(a, type, c : $i).\ntff(b, axiom, $ite(c = c, c, c) = c).",
        "tff(a, type, c : $i).\ntff(b, axiom, $let(d : $i, d := c, d = c)).",
    ] {
        assert!(parse(src).is_ok(), "{src}");
        assert_eq!(parse_strict(src).unwrap_err().kind, ParseErrorKind::Strict, "{src}");
    }
}

#[test]
fn empty_input() {
    for src in ["", "  % only a comment\n", "/* block */"] {
        let p = parse(src).unwrap();
        assert!(p.formulas.is_empty());
    }
}

#[test]
fn listing_round_trips() {
    let p = parse(LISTING).unwrap();
    let text = print_dialect(&p);
    let again = parse(&text).unwrap();
    assert_eq!(p, again);
    assert_eq!(text, print_dialect(&again));
}

#[test]
fn unified_ite_round_trips() {
    let src = "tff(s, type, s : $tType).\ntff(c, type, c : s).\ntff(d, type, d : s).\ntff(p, type, p : $o).\n\
               tff(f, type, f : s > $o).\ntff(x, axiom, f($ite(p, c, d))).\n";
    let p = parse(src).unwrap();
    let text = print_dialect(&p);
    assert!(text.contains("$ite(p, c, d)"), "{text}");
    assert_eq!(parse(&text).unwrap(), p);
}

#[test]
fn quoted_names() {
    let src = "tff('A sort', type, 'A sort' : $tType).\ntff(c, type, 'Big' : 'A sort').\ntff(x, axiom, 'Big' = 'Big').";
    let p = parse(src).unwrap();
    let text = print_dialect(&p);
    assert!(text.contains("tff('A sort', type, 'A sort' : $tType)."), "{text}");
    assert!(text.contains("'Big' = 'Big'"), "{text}");
    assert_eq!(parse(&text).unwrap(), p);
}

#[test]
fn legacy_lets_normalise() {
    let legacy = "tff(a, type, c : $i).\ntff(b, type, p : $i > $o).\n\
                  tff(x, axiom, $let_tf(g(X : $i), p(X), g(c))).\n\
                  tff(y, axiom, $let_ff(! [X : $i] : h(X) <=> p(X), h(c))).\n\
                  tff(z, axiom, $let_tt(k = c, p(k))).\n\
                  tff(w, axiom, $let_ft(q, p(c), $ite_f(q, p(c), ~ p(c)))).";
    let unified = "tff(a, type, c : $i).\ntff(b, type, p : $i > $o).\n\
                   tff(x, axiom, $let(g : $i > $o, g(X) := p(X), g(c))).\n\
                   tff(y, axiom, $let(h : $i > $o, h(X) := p(X), h(c))).\n\
                   tff(z, axiom, $let(k : $i, k := c, p(k))).\n\
                   tff(w, axiom, $let(q : $o, q := p(c), $ite(q, p(c), ~ p(c)))).";
    assert_eq!(parse(legacy).unwrap(), parse(unified).unwrap());
}

#[test]
fn connective_chains() {
    let p = parse("tff(a, type, p : $o).\ntff(b, type, q : $o).\ntff(x, axiom, p & q & p).").unwrap();
    assert_eq!(
        p.formulas[2].formula().unwrap(),
        &Term::and(Term::and(Term::constant("p"), Term::constant("q")), Term::constant("p"))
    );
    let e = err("tff(a, type, p : $o).\ntff(x, axiom, p & p | p).");
    assert_eq!(e.kind, ParseErrorKind::Syntax);
    assert_eq!(e.location.line, 2);
    let e = err("tff(a, type, p : $o).\ntff(x, axiom, p => p => p).");
    assert_eq!(e.kind, ParseErrorKind::Syntax);
    let p = parse("tff(a, type, p : $o).\ntff(x, axiom, p <= ~ p).").unwrap();
    assert_eq!(p.formulas[1].formula().unwrap(), &Term::implies(Term::not(Term::constant("p")), Term::constant("p")));
}

#[test]
fn rejections() {
    assert_eq!(err("include('Axioms/SET001.ax').").kind, ParseErrorKind::Include);
    assert_eq!(err("tff(a, type, c : $i).\ntff(b, type, c : $i).").kind, ParseErrorKind::DuplicateDeclaration);
    assert_eq!(err("tff(a, type, s : $tType).\ntff(b, type, s : $tType).").kind, ParseErrorKind::DuplicateDeclaration);
    assert_eq!(err("tff(a, conjecture, $true).\ntff(b, conjecture, $true).").kind, ParseErrorKind::MultipleConjectures);
    assert_eq!(err("tff(a, type, sk_fool_3 : $i).").kind, ParseErrorKind::Reserved);
    assert_eq!(err("tff(a, axiom, fool_true = fool_true).").kind, ParseErrorKind::Reserved);
    assert_eq!(err("tff(a, axiom, $let(sk_fool_0 : $o, sk_fool_0 := $true, sk_fool_0)).").kind, ParseErrorKind::Reserved);
    assert_eq!(err("fof(a, axiom, \"obj\" = \"obj\").").kind, ParseErrorKind::Unsupported);
    assert_eq!(err("tff(a, axiom, $distinct(1, 2)).").kind, ParseErrorKind::Unsupported);
    assert_eq!(err("tff(a, axiom, $not($true)).").kind, ParseErrorKind::Syntax);
    assert!(parse_strict("tff(a, type, sk_fool_3 : $i).").is_ok());
}

#[test]
fn syntax_errors_carry_locations() {
    let e = err("tff(a, axiom,\n  p(X) &).");
    assert_eq!(e.kind, ParseErrorKind::Syntax);
    assert_eq!((e.location.line, e.location.column), (2, 9));
    assert!(e.to_string().starts_with("2:9: "), "{e}");
}

#[test]
fn type_errors_name_the_formula() {
    let src = "tff(s, type, s : $tType).\ntff(t, type, t : $tType).\ntff(c, type, c : s).\ntff(d, type, d : t).\n\
               tff(p, type, p : $o).\ntff(bad, axiom, $ite(p, c, d) = c).";
    let e = err(src);
    assert_eq!(e.kind, ParseErrorKind::Type);
    assert_eq!(e.formula.as_deref(), Some("bad"));
    assert_eq!(e.location.line, 6);
    assert_eq!(e.type_error.unwrap().kind, TypeErrorKind::IteBranchMismatch);
    assert_eq!(err("tff(a, type, c : $i).\ntff(x, axiom, c).").type_error.unwrap().kind, TypeErrorKind::NotAFormula);
}

#[test]
fn implicit_symbols_are_inferred() {
    let p = parse("fof(a, axiom, ! [X] : (p(X) => q(f(X), c))).").unwrap();
    let i = Sort::named("$i");
    assert_eq!(p.ctx.function("p"), Some(&TypeSig::new(vec![i.clone()], Sort::Bool)));
    assert_eq!(p.ctx.function("f"), Some(&TypeSig::new(vec![i.clone()], i.clone())));
    assert_eq!(p.ctx.function("c"), Some(&TypeSig::constant(i)));
}

#[test]
fn annotations_are_skipped() {
    let p = parse("fof(a, axiom, p, file('x.p', a), [status(thm)]).").unwrap();
    assert_eq!(p.formulas.len(), 1);
}

#[test]
fn boolean_axioms_print_exactly() {
    let text = fol_text("tff(a, type, p : $o).\ntff(b, axiom, p).");
    assert!(text.contains(
        "tff(fool_bool_dom, axiom, ![X : 'fool_bool'] : (X = 'fool_true' | X = 'fool_false')).\n"
    ));
    assert!(text.ends_with("tff(fool_bool_distinct, axiom, 'fool_true' != 'fool_false').\n"), "{text}");
}

#[test]
fn first_order_input_gains_only_the_boolean_theory() {
    let src = "tff(s, type, s : $tType).\ntff(c, type, c : s).\ntff(p, type, p : s > $o).\ntff(x, axiom, p(c)).\n";
    let text = fol_text(src);
    let expected = "tff(s, type, s : $tType).\n\
                    tff(fool_bool_type, type, 'fool_bool' : $tType).\n\
                    tff(fool_true_type, type, 'fool_true' : 'fool_bool').\n\
                    tff(fool_false_type, type, 'fool_false' : 'fool_bool').\n\
                    tff(c, type, c : s).\n\
                    tff(p, type, p : s > $o).\n\
                    tff(x, axiom, p(c)).\n\
                    tff(fool_bool_dom, axiom, ![X : 'fool_bool'] : (X = 'fool_true' | X = 'fool_false')).\n\
                    tff(fool_bool_distinct, axiom, 'fool_true' != 'fool_false').\n";
    assert_eq!(text, expected);
}

#[test]
fn predicate_split_symbols_become_functions() {
    let src = "tff(s, type, s : $tType).\ntff(c, type, c : s).\ntff(d, type, d : s).\n\
               tff(q, type, q : s > $o).\ntff(f, type, f : $o > s).\n\
               tff(x, axiom, f(q(c)) = d).\ntff(y, axiom, ! [T : s] : q(T)).";
    let text = fol_text(src);
    assert!(text.contains("tff(q, type, q : s > 'fool_bool')."), "{text}");
    assert!(text.contains("tff(f, type, f : 'fool_bool' > s)."), "{text}");
    assert!(text.contains("![T : s] : (q(T) = 'fool_true')"), "{text}");
    assert!(parse_strict(&text).is_ok());
}

#[test]
fn translated_listing_is_strict_tff0() {
    let text = fol_text(LISTING);
    assert!(!text.contains("$ite") && !text.contains("$let"), "{text}");
    let p = parse_strict(&text).unwrap();
    assert!(p.formulas.iter().any(|f| f.name == "fool_bool_dom"));
    assert_eq!(text, fol_text(LISTING));
}
