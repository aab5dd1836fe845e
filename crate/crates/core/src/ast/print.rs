use std::fmt::{self, Write};

use super::{Connective, Quantifier, Sort, Term};

/// Concrete syntax for printing terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintStyle {
    /// The FOOL dialect: `$o` is a sort, `$ite`/`$let` are unified.
    Dialect,
    /// Strict TFF0: the boolean sort and its constants are rendered as
    /// `'fool_bool'`, `'fool_true'`, `'fool_false'`; `$top`/`$bot` print as
    /// `$true`/`$false`.
    Tff0,
}

pub const TFF0_BOOL_SORT: &str = "'fool_bool'";
pub const TFF0_TRUE: &str = "'fool_true'";
pub const TFF0_FALSE: &str = "'fool_false'";

fn is_lower_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_upper_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_integer(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

/// Renders a functor or sort name, single-quoting it unless it is a lower
/// word, a `$`/`$$` word or an integer.
pub fn quote_name(name: &str) -> String {
    let dollar = name.strip_prefix("$$").or_else(|| name.strip_prefix('$'));
    if is_lower_word(name) || is_integer(name) || dollar.is_some_and(is_lower_word) {
        return name.to_string();
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    for c in name.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
    out
}

fn var_name(name: &str) -> String {
    if is_upper_word(name) {
        name.to_string()
    } else {
        let cleaned: String =
            name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        format!("V{cleaned}")
    }
}

pub(crate) fn sort_text(sort: &Sort, style: PrintStyle) -> String {
    match (sort, style) {
        (Sort::Bool, PrintStyle::Tff0) => TFF0_BOOL_SORT.to_string(),
        _ => sort.to_string(),
    }
}

pub struct TermDisplay<'a> {
    pub(super) term: &'a Term,
    pub(super) style: PrintStyle,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_term(&mut out, self.term, self.style);
        f.write_str(&out)
    }
}

fn needs_parens_as_operand(t: &Term) -> bool {
    match t {
        Term::Eq(..) | Term::Quant(..) => true,
        _ => t.is_connective(Connective::Not),
    }
}

fn write_operand(out: &mut String, t: &Term, style: PrintStyle) {
    if needs_parens_as_operand(t) {
        out.push('(');
        write_term(out, t, style);
        out.push(')');
    } else {
        write_term(out, t, style);
    }
}

fn write_args(out: &mut String, args: &[Term], style: PrintStyle) {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, a, style);
    }
}

pub(crate) fn write_term(out: &mut String, t: &Term, style: PrintStyle) {
    match t {
        Term::Var(x) => out.push_str(&var_name(x.as_str())),
        Term::App(f, args) => match (t.as_connective(), args.as_slice()) {
            (Some(Connective::True), _) => out.push_str(match style {
                PrintStyle::Dialect => "$true",
                PrintStyle::Tff0 => TFF0_TRUE,
            }),
            (Some(Connective::False), _) => out.push_str(match style {
                PrintStyle::Dialect => "$false",
                PrintStyle::Tff0 => TFF0_FALSE,
            }),
            (Some(Connective::Top), _) => out.push_str("$true"),
            (Some(Connective::Bottom), _) => out.push_str("$false"),
            (Some(Connective::Not), [Term::Eq(a, b)]) => {
                write_operand(out, a, style);
                out.push_str(" != ");
                write_operand(out, b, style);
            }
            (Some(Connective::Not), [a]) => {
                out.push_str("~ ");
                write_operand(out, a, style);
            }
            (Some(c), [a, b]) => {
                let op = match c {
                    Connective::And => "&",
                    Connective::Or => "|",
                    Connective::Implies => "=>",
                    _ => "<=>",
                };
                out.push('(');
                write_term(out, a, style);
                let _ = write!(out, " {op} ");
                write_term(out, b, style);
                out.push(')');
            }
            _ => {
                out.push_str(&quote_name(f.as_str()));
                if !args.is_empty() {
                    out.push('(');
                    write_args(out, args, style);
                    out.push(')');
                }
            }
        },
        Term::Ite(c, a, b) => {
            out.push_str("$ite(");
            write_args(out, &[(**c).clone(), (**a).clone(), (**b).clone()], style);
            out.push(')');
        }
        Term::Let(l) => {
            let name = quote_name(l.name.as_str());
            match &l.sort {
                Some(sort) => {
                    let ty = super::TypeSig::new(
                        l.params.iter().map(|(_, s)| s.clone()).collect(),
                        sort.clone(),
                    );
                    let _ = write!(out, "$let({name} : {}, {name}", type_text(&ty, style));
                    if !l.params.is_empty() {
                        out.push('(');
                        for (i, (x, _)) in l.params.iter().enumerate() {
                            if i > 0 {
                                out.push_str(", ");
                            }
                            out.push_str(&var_name(x.as_str()));
                        }
                        out.push(')');
                    }
                    out.push_str(" := ");
                }
                None => {
                    let _ = write!(out, "$let_tt({name}");
                    if !l.params.is_empty() {
                        out.push('(');
                        for (i, (x, s)) in l.params.iter().enumerate() {
                            if i > 0 {
                                out.push_str(", ");
                            }
                            let _ = write!(out, "{} : {}", var_name(x.as_str()), sort_text(s, style));
                        }
                        out.push(')');
                    }
                    out.push_str(", ");
                }
            }
            write_term(out, &l.body, style);
            out.push_str(", ");
            write_term(out, &l.scope, style);
            out.push(')');
        }
        Term::Eq(a, b) => {
            write_operand(out, a, style);
            out.push_str(" = ");
            write_operand(out, b, style);
        }
        Term::Quant(q, _, _, _) => {
            out.push_str(match (q, style) {
                (Quantifier::Forall, PrintStyle::Dialect) => "! [",
                (Quantifier::Exists, PrintStyle::Dialect) => "? [",
                (Quantifier::Forall, PrintStyle::Tff0) => "![",
                (Quantifier::Exists, PrintStyle::Tff0) => "?[",
            });
            let mut cur = t;
            let mut first = true;
            while let Term::Quant(q2, x, s, body) = cur {
                if q2 != q {
                    break;
                }
                if !first {
                    out.push_str(", ");
                }
                first = false;
                let _ = write!(out, "{} : {}", var_name(x.as_str()), sort_text(s, style));
                cur = body;
            }
            out.push_str("] : ");
            write_operand(out, cur, style);
        }
    }
}

pub(crate) fn type_text(ty: &super::TypeSig, style: PrintStyle) -> String {
    let result = sort_text(&ty.result, style);
    match ty.args.as_slice() {
        [] => result,
        [one] => format!("{} > {result}", sort_text(one, style)),
        many => {
            let args: Vec<String> = many.iter().map(|s| sort_text(s, style)).collect();
            format!("({}) > {result}", args.join(" * "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote_name("abc_1"), "abc_1");
        assert_eq!(quote_name("$int"), "$int");
        assert_eq!(quote_name("42"), "42");
        assert_eq!(quote_name("Abc"), "'Abc'");
        assert_eq!(quote_name("a b"), "'a b'");
        assert_eq!(quote_name("it's"), "'it\\'s'");
    }

    #[test]
    fn renders_connectives_and_quantifiers() {
        let t = Term::forall(
            "X",
            Sort::Bool,
            Term::forall(
                "Y",
                Sort::named("s"),
                Term::or(Term::eq(Term::var("X"), Term::tt()), Term::not(Term::app("p", vec![Term::var("Y")]))),
            ),
        );
        assert_eq!(t.to_string(), "! [X : $o, Y : s] : (X = $true | ~ p(Y))");
        assert_eq!(
            t.display(PrintStyle::Tff0).to_string(),
            "![X : 'fool_bool', Y : s] : (X = 'fool_true' | ~ p(Y))"
        );
    }

    #[test]
    fn renders_let_and_ite() {
        let t = Term::let_in(
            "f",
            vec![("X", Sort::named("s"))],
            Sort::Bool,
            Term::app("p", vec![Term::var("X")]),
            Term::ite(Term::app("f", vec![Term::constant("c")]), Term::constant("a"), Term::constant("b")),
        );
        assert_eq!(t.to_string(), "$let(f : s > $o, f(X) := p(X), $ite(f(c), a, b))");
        let neq = Term::not(Term::eq(Term::constant("a"), Term::constant("b")));
        assert_eq!(neq.to_string(), "a != b");
    }
}
