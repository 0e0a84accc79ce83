//! Polynomial expressions: `x^2*y^2*(x^2+y^2-1)+1`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary ("*" unary)*
//! unary := "-" unary | power
//! power := atom ("^" INT)?
//! atom  := INT | VAR | "(" expr ")"
//! ```
//!
//! Variables are `x1..xk`; for `k <= 3` the aliases `x`, `y`, `z` name
//! `x1`, `x2`, `x3`. Juxtaposition is not multiplication.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use crate::IntMultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    /// `^` not followed by a nonnegative integer literal.
    BadExponent,
    UnknownVariable(String),
    ImplicitMultiplication,
}

/// Error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.position;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}` at {at}"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}` at {at}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at {at}"),
            ParseErrorKind::BadExponent => {
                write!(f, "exponent at {at} must be a nonnegative integer literal")
            }
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}` at {at}"),
            ParseErrorKind::ImplicitMultiplication => {
                write!(f, "missing `*` at {at} (implicit multiplication is not allowed)")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::parse_bytes(&bytes[start..i], 10).expect("digits parse");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError { position: start, kind: ParseErrorKind::UnexpectedChar(ch) });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.offset(), kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<IntMultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntMultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(self.err(ParseErrorKind::ImplicitMultiplication));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntMultiPoly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<IntMultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek() {
            Some(Tok::Int(n)) => u32::try_from(n.clone()).map_err(|_| self.err(ParseErrorKind::BadExponent))?,
            _ => return Err(self.err(ParseErrorKind::BadExponent)),
        };
        self.pos += 1;
        if self.peek() == Some(&Tok::Caret) {
            return Err(self.unexpected());
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<IntMultiPoly, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(IntMultiPoly::constant(self.nvars, n))
            }
            Tok::Ident(name) => {
                let i = variable_index(&name, self.nvars)
                    .ok_or_else(|| self.err(ParseErrorKind::UnknownVariable(name.clone())))?;
                self.pos += 1;
                Ok(IntMultiPoly::var(self.nvars, i))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn variable_index(name: &str, nvars: usize) -> Option<usize> {
    let i = match name {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.starts_with('0') {
                return None;
            }
            return digits.parse::<usize>().ok().filter(|&i| (1..=nvars).contains(&i)).map(|i| i - 1);
        }
    };
    (nvars <= 3 && i < nvars).then_some(i)
}

/// Parses `text` as a polynomial in `nvars` variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<IntMultiPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), nvars };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(poly)
}

/// Canonical text: `x1..xk`, terms in descending graded-lex order,
/// `*` between factors, unit coefficients elided.
pub fn render(p: &IntMultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (mono, c)) in p.terms_desc().enumerate() {
        let neg = c.sign() == Sign::Minus;
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || mono.degree() == 0 {
            factors.push(mag.to_string());
        }
        for (v, &e) in mono.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", v + 1)),
                _ => factors.push(format!("x{}^{e}", v + 1)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
