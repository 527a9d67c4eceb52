//! Parser for scalar expressions: integers, decimals, fractions, the
//! indeterminate `s`, `+ - * /`, `^` with integer exponents, parentheses and
//! juxtaposition (`2s` is `2*s`). Negative exponents are only allowed on `s`.

use num_bigint::BigInt;

use super::{Polynomial, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parses a scalar expression into ℚ(s).
pub fn parse_expr(src: &str) -> Result<RationalFunction, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected `{}`", p.peek().unwrap() as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| ParseError { pos: at, msg: "division by zero".into() })?;
            } else {
                self.skip_ws();
                match self.peek() {
                    Some(c) if c.is_ascii_digit() || c == b's' || c == b'(' => {
                        acc = &acc * &self.power()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        self.skip_ws();
        let is_s = self.peek() == Some(b's');
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let exp: i32 = digits.parse().map_err(|_| ParseError { pos: at, msg: "exponent too large".into() })?;
        if negative && !is_s {
            return Err(ParseError { pos: at, msg: "negative exponents are only allowed on `s`".into() });
        }
        base.pow(if negative { -exp } else { exp })
            .map_err(|_| ParseError { pos: at, msg: "division by zero".into() })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn primary(&mut self) -> Result<RationalFunction, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(RationalFunction::s())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let int = self.digits();
                let mut value = Rational::from_integer(int.parse::<BigInt>().expect("digits"));
                if self.peek() == Some(b'.') {
                    self.pos += 1;
                    let frac = self.digits();
                    if frac.is_empty() {
                        return Err(self.error("expected digits after `.`"));
                    }
                    let scale = BigInt::from(10u32).pow(frac.len() as u32);
                    let frac = Rational::new(frac.parse::<BigInt>().expect("digits"), scale).expect("nonzero");
                    value = &value + &frac;
                }
                Ok(RationalFunction::from_poly(Polynomial::constant(value)))
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
