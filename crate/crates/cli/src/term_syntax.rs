//! Parser for signal-flow terms.
//!
//! ```text
//! term   ::= tensor (";" tensor)*
//! tensor ::= atom ("(+)" atom)*
//! atom   ::= "(" term ")" | generator
//! ```
//!
//! Both operators nest to the left. `#` starts a comment running to the end
//! of the line.

use opennet::field::{parse_expr, Rational};
use opennet::lti::{SfgGenerator, SfgTerm};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Scalar { mirrored: bool, value: Rational },
    Open,
    Close,
    Seq,
    Plus,
}

/// Parses and type-checks a term.
pub fn parse_term(src: &str) -> Result<SfgTerm, CliError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, end: src.len() };
    let term = p.term()?;
    if let Some((at, tok)) = p.tokens.get(p.pos) {
        return Err(syntax(*at, format!("unexpected {}", describe(tok))));
    }
    term.typ().map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(term)
}

fn syntax(at: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse(format!("at offset {at}: {}", msg.into()))
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Name(n) => format!("`{n}`"),
        Token::Scalar { mirrored, value } => format!("`{}x({value})`", if *mirrored { "co-" } else { "" }),
        Token::Open => "`(`".into(),
        Token::Close => "`)`".into(),
        Token::Seq => "`;`".into(),
        Token::Plus => "`(+)`".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            b';' => {
                out.push((i, Token::Seq));
                i += 1;
            }
            b'(' if src[i..].starts_with("(+)") => {
                out.push((i, Token::Plus));
                i += 3;
            }
            b'(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-') {
                    i += 1;
                }
                let word = &src[start..i];
                if word == "x" || word == "co-x" {
                    if bytes.get(i) != Some(&b'(') {
                        return Err(syntax(i, format!("`{word}` needs a scalar in parentheses")));
                    }
                    let close = src[i..].find(')').ok_or_else(|| syntax(i, "unclosed scalar"))? + i;
                    let value = parse_expr(&src[i + 1..close])
                        .ok()
                        .and_then(|f| f.as_constant())
                        .ok_or_else(|| syntax(i + 1, format!("`{}` is not a rational number", &src[i + 1..close])))?;
                    out.push((start, Token::Scalar { mirrored: word == "co-x", value }));
                    i = close + 1;
                } else {
                    out.push((start, Token::Name(word.to_string())));
                }
            }
            _ => return Err(syntax(i, format!("unexpected character `{}`", src[i..].chars().next().unwrap()))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(at, _)| *at)
    }

    fn term(&mut self) -> Result<SfgTerm, CliError> {
        let mut acc = self.tensor()?;
        while self.peek() == Some(&Token::Seq) {
            self.pos += 1;
            acc = SfgTerm::seq(acc, self.tensor()?);
        }
        Ok(acc)
    }

    fn tensor(&mut self) -> Result<SfgTerm, CliError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            acc = SfgTerm::tensor(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SfgTerm, CliError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of term"));
        };
        self.pos += 1;
        match tok {
            Token::Open => {
                let inner = self.term()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Scalar { mirrored: false, value } => Ok(SfgTerm::Gen(SfgGenerator::Scalar(value))),
            Token::Scalar { mirrored: true, value } => Ok(SfgTerm::Mirror(SfgGenerator::Scalar(value))),
            Token::Name(name) => generator(&name).ok_or_else(|| syntax(at, format!("unknown generator `{name}`"))),
            other => Err(syntax(at, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn generator(name: &str) -> Option<SfgTerm> {
    let (mirrored, base) = match name.strip_prefix("co-") {
        Some(rest) => (true, rest),
        None => (false, name),
    };
    let g = match base {
        "id" if !mirrored => return Some(SfgTerm::Id),
        "tw" if !mirrored => return Some(SfgTerm::Twist),
        "add" => SfgGenerator::Add,
        "zero" => SfgGenerator::Zero,
        "copy" => SfgGenerator::Copy,
        "discard" => SfgGenerator::Discard,
        "delay" => SfgGenerator::Delay,
        _ => return None,
    };
    Some(if mirrored { SfgTerm::Mirror(g) } else { SfgTerm::Gen(g) })
}
