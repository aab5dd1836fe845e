use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::ast::print::{quote_name, sort_text, type_text, TFF0_BOOL_SORT, TFF0_FALSE, TFF0_TRUE};
use crate::ast::{PrintStyle, Sort, TypeSig};
use crate::problem::{Declaration, Payload, Problem};
use crate::translate::FolProblem;

use super::is_builtin_sort;

fn is_numeral(name: &str) -> bool {
    let digits = name.strip_prefix('-').unwrap_or(name);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

/// Prints `p` in the dialect; parsing the result gives back `p`.
pub fn print_dialect(p: &Problem) -> String {
    let mut out = String::new();
    for f in &p.formulas {
        let payload = match &f.payload {
            Payload::Declaration(Declaration::Sort(s)) => format!("{} : $tType", quote_name(s.as_str())),
            Payload::Declaration(Declaration::Function(name, ty)) => {
                format!("{} : {}", quote_name(name.as_str()), type_text(ty, PrintStyle::Dialect))
            }
            Payload::Formula(t) => t.to_string(),
        };
        let _ = writeln!(out, "{}({}, {}, {payload}).", f.language.keyword(), quote_name(&f.name), f.role);
    }
    out
}

/// Prints a translated problem as plain TFF0 with fresh declaration names.
pub fn print_fol_tff0(fol: &FolProblem) -> String {
    print_tff0(fol, &BTreeMap::new())
}

/// As [`print_fol_tff0`], reusing the declaration names of `source`.
pub fn print_fol_tff0_with(fol: &FolProblem, source: &Problem) -> String {
    let names = source
        .formulas
        .iter()
        .filter_map(|f| match &f.payload {
            Payload::Declaration(Declaration::Sort(s) | Declaration::Function(s, _)) => {
                Some((s.to_string(), f.name.clone()))
            }
            Payload::Formula(_) => None,
        })
        .collect();
    print_tff0(fol, &names)
}

fn print_tff0(fol: &FolProblem, names: &BTreeMap<String, String>) -> String {
    let mut taken: BTreeSet<String> = fol.all().map(|f| f.name.clone()).collect();
    taken.extend(names.values().cloned());
    let mut name_for = |symbol: &str| -> String {
        if let Some(n) = names.get(symbol) {
            return n.clone();
        }
        let base = format!("{symbol}_type");
        let mut candidate = base.clone();
        let mut k = 2;
        while taken.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        taken.insert(candidate.clone());
        candidate
    };
    let mut out = String::new();
    let mut line = |name: &str, role: &str, payload: &str| {
        let _ = writeln!(out, "tff({}, {role}, {payload}).", quote_name(name));
    };
    let sig = fol.ctx.signature();
    for s in sig.sorts() {
        if let Sort::Named(n) = s {
            if !is_builtin_sort(s) {
                line(&name_for(n.as_str()), "type", &format!("{} : $tType", quote_name(n.as_str())));
            }
        }
    }
    line(&name_for("fool_bool"), "type", &format!("{TFF0_BOOL_SORT} : $tType"));
    line(&name_for("fool_true"), "type", &format!("{TFF0_TRUE} : {TFF0_BOOL_SORT}"));
    line(&name_for("fool_false"), "type", &format!("{TFF0_FALSE} : {TFF0_BOOL_SORT}"));
    for (f, ty) in sig.user_functions() {
        if f.as_str().starts_with('$') || is_numeral(f.as_str()) {
            continue;
        }
        let text = if fol.is_predicate(f.as_str()) {
            predicate_type(ty)
        } else {
            type_text(ty, PrintStyle::Tff0)
        };
        line(&name_for(f.as_str()), "type", &format!("{} : {text}", quote_name(f.as_str())));
    }
    for f in fol.all() {
        line(&f.name, f.role.name(), &f.term.display(PrintStyle::Tff0).to_string());
    }
    out
}

fn predicate_type(ty: &TypeSig) -> String {
    let args: Vec<String> = ty.args.iter().map(|s| sort_text(s, PrintStyle::Tff0)).collect();
    match args.as_slice() {
        [] => "$o".into(),
        [one] => format!("{one} > $o"),
        many => format!("({}) > $o", many.join(" * ")),
    }
}
