//! Recursive descent over the token stream. Legacy `$ite_*`/`$let_*` forms
//! are normalised to the unified nodes here.

use crate::ast::{Connective, LetIn, Quantifier, Sort, Symbol, Term, TypeSig};
use crate::problem::{AnnotatedFormula, Declaration, Language, Location, Payload, Role};

use super::lexer::{Tok, Token};
use super::{builtin_type, Dialect, ParseError, ParseErrorKind};

pub fn parse_tokens(tokens: Vec<Token>, dialect: Dialect) -> Result<Vec<AnnotatedFormula>, ParseError> {
    let mut p = Parser { toks: tokens, pos: 0, dialect };
    let mut out = Vec::new();
    while p.peek() != &Tok::Eof {
        out.push(p.annotated()?);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    dialect: Dialect,
}

type Res<T> = Result<T, ParseError>;

fn is_binop(t: &Tok) -> bool {
    matches!(t, Tok::And | Tok::Or | Tok::Implies | Tok::RevImplies | Tok::Iff | Tok::Xor | Tok::Nor | Tok::Nand)
}

fn combine(op: &Tok, a: Term, b: Term) -> Term {
    match op {
        Tok::And => Term::and(a, b),
        Tok::Or => Term::or(a, b),
        Tok::Implies => Term::implies(a, b),
        Tok::RevImplies => Term::implies(b, a),
        Tok::Iff => Term::iff(a, b),
        Tok::Xor => Term::not(Term::iff(a, b)),
        Tok::Nor => Term::not(Term::or(a, b)),
        Tok::Nand => Term::not(Term::and(a, b)),
        _ => unreachable!("not a binary connective"),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn at(&self) -> Location {
        self.toks[self.pos].at
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Res<T> {
        Err(ParseError::new(ParseErrorKind::Syntax, self.at(), msg.into()))
    }

    fn strict_error<T>(&self, msg: &str) -> Res<T> {
        Err(ParseError::new(ParseErrorKind::Strict, self.at(), format!("{msg} is not TFF0")))
    }

    fn expect(&mut self, tok: Tok) -> Res<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn lower(&mut self, what: &str) -> Res<String> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected {what}, found {}", other.describe())),
        }
    }

    fn upper(&mut self) -> Res<String> {
        match self.peek().clone() {
            Tok::Upper(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a variable, found {}", other.describe())),
        }
    }

    fn annotated(&mut self) -> Res<AnnotatedFormula> {
        let location = self.at();
        let language = match self.peek() {
            Tok::Lower(w) if w == "tff" => Language::Tff,
            Tok::Lower(w) if w == "fof" => Language::Fof,
            Tok::Lower(w) if w == "include" => {
                return Err(ParseError::new(ParseErrorKind::Include, location, "include directives are not supported".into()))
            }
            other => return self.error(format!("expected `tff` or `fof`, found {}", other.describe())),
        };
        self.bump();
        self.expect(Tok::LParen)?;
        let name = match self.bump().tok {
            Tok::Lower(s) | Tok::Integer(s) | Tok::Upper(s) => s,
            other => {
                self.pos -= 1;
                return self.error(format!("expected a formula name, found {}", other.describe()));
            }
        };
        self.expect(Tok::Comma)?;
        let role_at = self.at();
        let role_name = self.lower("a role")?;
        let role = Role::from_name(&role_name)
            .ok_or_else(|| ParseError::new(ParseErrorKind::Syntax, role_at, format!("unknown role `{role_name}`")))?;
        self.expect(Tok::Comma)?;
        let payload = if role == Role::Type {
            Payload::Declaration(self.declaration()?)
        } else {
            Payload::Formula(self.formula()?)
        };
        while self.eat(&Tok::Comma) {
            self.skip_annotation()?;
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Dot)?;
        Ok(AnnotatedFormula { language, name, role, payload, location })
    }

    /// Skips a source or useful-info annotation as a balanced token run.
    fn skip_annotation(&mut self) -> Res<()> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::Eof => return self.error("unterminated annotation"),
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket if depth == 0 => return Ok(()),
                Tok::RParen | Tok::RBracket => depth -= 1,
                Tok::Comma if depth == 0 => return Ok(()),
                _ => {}
            }
            self.bump();
        }
    }

    fn declaration(&mut self) -> Res<Declaration> {
        if self.eat(&Tok::LParen) {
            let d = self.declaration()?;
            self.expect(Tok::RParen)?;
            return Ok(d);
        }
        let name = self.lower("a symbol name")?;
        self.expect(Tok::Colon)?;
        if matches!(self.peek(), Tok::Dollar(w) if w == "$tType") {
            self.bump();
            return Ok(Declaration::Sort(Symbol::from(name)));
        }
        let ty = self.type_sig()?;
        if self.dialect == Dialect::Strict && ty.args.iter().any(Sort::is_bool) {
            return self.strict_error("a boolean argument sort");
        }
        Ok(Declaration::Function(Symbol::from(name), ty))
    }

    fn type_sig(&mut self) -> Res<TypeSig> {
        let args = if self.eat(&Tok::LParen) {
            let mut args = vec![self.sort()?];
            while self.eat(&Tok::Star) {
                args.push(self.sort()?);
            }
            self.expect(Tok::RParen)?;
            if args.len() == 1 && self.peek() != &Tok::Gt {
                return Ok(TypeSig::constant(args.pop().expect("one sort")));
            }
            args
        } else {
            let s = self.sort()?;
            if self.peek() != &Tok::Gt {
                return Ok(TypeSig::constant(s));
            }
            vec![s]
        };
        self.expect(Tok::Gt)?;
        Ok(TypeSig::new(args, self.sort()?))
    }

    fn sort(&mut self) -> Res<Sort> {
        match self.peek().clone() {
            Tok::Dollar(w) => match w.as_str() {
                "$o" => {
                    self.bump();
                    Ok(Sort::Bool)
                }
                "$i" | "$int" | "$rat" | "$real" => {
                    self.bump();
                    Ok(Sort::named(&w))
                }
                _ => self.error(format!("`{w}` is not a sort")),
            },
            Tok::Lower(s) => {
                self.bump();
                Ok(Sort::named(&s))
            }
            other => self.error(format!("expected a sort, found {}", other.describe())),
        }
    }

    /// `formula := unary (binop unary)*`; a chain must repeat one
    /// associative connective.
    fn formula(&mut self) -> Res<Term> {
        let mut acc = self.unary()?;
        let mut op: Option<Tok> = None;
        while is_binop(self.peek()) {
            let next = self.peek().clone();
            if let Some(prev) = &op {
                if *prev != next || !matches!(next, Tok::And | Tok::Or) {
                    return self.error(format!("{} after {} needs parentheses", next.describe(), prev.describe()));
                }
            }
            self.bump();
            let rhs = self.unary()?;
            acc = combine(&next, acc, rhs);
            op = Some(next);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Res<Term> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Term::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump().tok == Tok::Forall { Quantifier::Forall } else { Quantifier::Exists };
                let vars = self.var_list()?;
                self.expect(Tok::Colon)?;
                let body = self.unary()?;
                Ok(vars.into_iter().rev().fold(body, |b, (x, s)| Term::Quant(q, x, s, Box::new(b))))
            }
            _ => {
                let lhs = self.primary()?;
                match self.peek() {
                    Tok::Eq => {
                        self.bump();
                        Ok(Term::eq(lhs, self.primary()?))
                    }
                    Tok::Neq => {
                        self.bump();
                        Ok(Term::not(Term::eq(lhs, self.primary()?)))
                    }
                    _ => Ok(lhs),
                }
            }
        }
    }

    /// `[X : s, Y, ...]`; untyped variables are individuals.
    fn var_list(&mut self) -> Res<Vec<(Symbol, Sort)>> {
        self.expect(Tok::LBracket)?;
        let mut vars = Vec::new();
        loop {
            let x = self.upper()?;
            let s = if self.eat(&Tok::Colon) { self.sort()? } else { Sort::named("$i") };
            if s.is_bool() && self.dialect == Dialect::Strict {
                return self.strict_error("a boolean variable");
            }
            vars.push((Symbol::from(x), s));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(vars)
    }

    fn args(&mut self) -> Res<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.formula()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    fn primary(&mut self) -> Res<Term> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Upper(x) => {
                self.bump();
                Ok(Term::var(&x))
            }
            Tok::Integer(n) => {
                self.bump();
                Ok(Term::constant(&n))
            }
            Tok::Lower(f) => {
                self.bump();
                let args = self.args()?;
                Ok(Term::App(Symbol::from(f), args))
            }
            Tok::Dollar(w) => self.dollar(&w),
            other => self.error(format!("expected a term, found {}", other.describe())),
        }
    }

    fn dollar(&mut self, w: &str) -> Res<Term> {
        match w {
            "$true" => {
                self.bump();
                Ok(Term::tt())
            }
            "$false" => {
                self.bump();
                Ok(Term::ff())
            }
            "$ite" | "$ite_t" | "$ite_f" => {
                if self.dialect == Dialect::Strict {
                    return self.strict_error("if-then-else");
                }
                self.bump();
                self.expect(Tok::LParen)?;
                let c = self.formula()?;
                self.expect(Tok::Comma)?;
                let a = self.formula()?;
                self.expect(Tok::Comma)?;
                let b = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Term::ite(c, a, b))
            }
            "$let" | "$let_tt" | "$let_tf" | "$let_ft" | "$let_ff" => {
                if self.dialect == Dialect::Strict {
                    return self.strict_error("let");
                }
                self.bump();
                if w == "$let" {
                    self.unified_let()
                } else {
                    self.legacy_let(w.starts_with("$let_f"))
                }
            }
            _ if builtin_type(w).is_some() => {
                self.bump();
                let args = self.args()?;
                Ok(Term::App(Symbol::new(w), args))
            }
            _ if Connective::from_name(w).is_some() => self.error(format!("`{w}` is reserved")),
            _ => Err(ParseError::new(ParseErrorKind::Unsupported, self.at(), format!("unknown builtin `{w}`"))),
        }
    }

    fn params(&mut self) -> Res<Vec<Symbol>> {
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                params.push(Symbol::from(self.upper()?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(params)
    }

    /// `$let(f : τ, f(X̄) := body, scope)`.
    fn unified_let(&mut self) -> Res<Term> {
        self.expect(Tok::LParen)?;
        let name = self.lower("the let-bound symbol")?;
        self.expect(Tok::Colon)?;
        let ty = self.type_sig()?;
        self.expect(Tok::Comma)?;
        let head = self.lower("the let-bound symbol")?;
        if head != name {
            return self.error(format!("let defines `{head}` but declares `{name}`"));
        }
        let params = self.params()?;
        if params.len() != ty.arity() {
            return self.error(format!("`{name}` has {} parameters but its type has arity {}", params.len(), ty.arity()));
        }
        self.expect(Tok::Assign)?;
        let body = self.formula()?;
        self.expect(Tok::Comma)?;
        let scope = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(Term::Let(Box::new(LetIn {
            name: Symbol::from(name),
            params: params.into_iter().zip(ty.args).collect(),
            sort: Some(ty.result),
            body,
            scope,
        })))
    }

    /// `$let_xy(f(X : s, ...), body, scope)`, or the equational form
    /// `$let_xy(! [X̄] : f(X̄) = body, scope)` with `<=>` for formulas.
    fn legacy_let(&mut self, formula_body: bool) -> Res<Term> {
        self.expect(Tok::LParen)?;
        let typed = if self.peek() == &Tok::Forall {
            self.bump();
            let vars = self.var_list()?;
            self.expect(Tok::Colon)?;
            Some(vars)
        } else {
            None
        };
        let name = self.lower("the let-bound symbol")?;
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let x = Symbol::from(self.upper()?);
                let sort = if self.eat(&Tok::Colon) {
                    self.sort()?
                } else {
                    typed
                        .as_ref()
                        .and_then(|vs| vs.iter().find(|(y, _)| *y == x))
                        .map(|(_, s)| s.clone())
                        .unwrap_or_else(|| Sort::named("$i"))
                };
                params.push((x, sort));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        let body = match self.peek() {
            Tok::Comma if typed.is_none() => {
                self.bump();
                self.formula()?
            }
            Tok::Eq if !formula_body => {
                self.bump();
                self.formula()?
            }
            Tok::Iff if formula_body => {
                self.bump();
                self.formula()?
            }
            other => return self.error(format!("unexpected {} in let definition", other.describe())),
        };
        self.expect(Tok::Comma)?;
        let scope = self.formula()?;
        self.expect(Tok::RParen)?;
        let sort = if formula_body { Some(Sort::Bool) } else { None };
        Ok(Term::Let(Box::new(LetIn { name: Symbol::from(name), params, sort, body, scope })))
    }
}
