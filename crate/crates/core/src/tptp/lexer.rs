use crate::problem::Location;

use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// A lower word or a single-quoted atom, unquoted.
    Lower(String),
    Upper(String),
    /// `$word` or `$$word`, with the dollars.
    Dollar(String),
    Integer(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Assign,
    Star,
    Gt,
    Eq,
    Neq,
    And,
    Or,
    Not,
    Implies,
    RevImplies,
    Iff,
    Xor,
    Nor,
    Nand,
    Forall,
    Exists,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Dollar(s) | Tok::Integer(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Assign => ":=",
            Tok::Star => "*",
            Tok::Gt => ">",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Not => "~",
            Tok::Implies => "=>",
            Tok::RevImplies => "<=",
            Tok::Iff => "<=>",
            Tok::Xor => "<~>",
            Tok::Nor => "~|",
            Tok::Nand => "~&",
            Tok::Forall => "!",
            Tok::Exists => "?",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub at: Location,
}

fn word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let at = Location { line, column: col };
        let err = |msg: String| ParseError::new(ParseErrorKind::Syntax, at, msg);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut line, &mut col, 2);
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                advance(&mut i, &mut line, &mut col, 1);
            }
            if i >= chars.len() {
                return Err(err("unterminated comment".into()));
            }
            advance(&mut i, &mut line, &mut col, 2);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let punct = [
            ("<=>", Tok::Iff),
            ("<~>", Tok::Xor),
            ("=>", Tok::Implies),
            ("<=", Tok::RevImplies),
            ("!=", Tok::Neq),
            ("~|", Tok::Nor),
            ("~&", Tok::Nand),
            (":=", Tok::Assign),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
            (",", Tok::Comma),
            (".", Tok::Dot),
            (":", Tok::Colon),
            ("*", Tok::Star),
            (">", Tok::Gt),
            ("=", Tok::Eq),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("~", Tok::Not),
            ("!", Tok::Forall),
            ("?", Tok::Exists),
        ];
        if let Some((text, tok)) = punct.iter().find(|(p, _)| rest.starts_with(p)) {
            out.push(Token { tok: tok.clone(), at });
            advance(&mut i, &mut line, &mut col, text.chars().count());
            continue;
        }
        let start = i;
        let tok = if c == '\'' {
            let mut text = String::new();
            let mut j = i + 1;
            loop {
                match chars.get(j) {
                    None | Some('\n') => return Err(err("unterminated quoted atom".into())),
                    Some('\\') => {
                        match chars.get(j + 1) {
                            Some(&e @ ('\\' | '\'')) => text.push(e),
                            _ => return Err(err("bad escape in quoted atom".into())),
                        }
                        j += 2;
                    }
                    Some('\'') => break,
                    Some(&ch) => {
                        text.push(ch);
                        j += 1;
                    }
                }
            }
            if text.is_empty() {
                return Err(err("empty quoted atom".into()));
            }
            advance(&mut i, &mut line, &mut col, j + 1 - start);
            Tok::Lower(text)
        } else if c == '"' {
            return Err(ParseError::new(ParseErrorKind::Unsupported, at, "distinct objects are not supported".into()));
        } else if c == '$' {
            let mut j = i + 1;
            if chars.get(j) == Some(&'$') {
                j += 1;
            }
            if !chars.get(j).is_some_and(|c| c.is_ascii_lowercase()) {
                return Err(err("expected a word after `$`".into()));
            }
            while chars.get(j).copied().is_some_and(word_char) {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            Tok::Dollar(text)
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut j = i + 1;
            while chars.get(j).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
            }
            if matches!(chars.get(j), Some('.' | '/' | 'e' | 'E')) && chars.get(j + 1).is_some_and(|d| d.is_ascii_digit()) {
                return Err(ParseError::new(ParseErrorKind::Unsupported, at, "only integer numerals are supported".into()));
            }
            let text: String = chars[i..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            Tok::Integer(text)
        } else if c.is_ascii_alphabetic() {
            let mut j = i + 1;
            while chars.get(j).copied().is_some_and(word_char) {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            if c.is_ascii_uppercase() {
                Tok::Upper(text)
            } else {
                Tok::Lower(text)
            }
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        };
        out.push(Token { tok, at });
    }
    out.push(Token { tok: Tok::Eof, at: Location { line, column: col } });
    Ok(out)
}
