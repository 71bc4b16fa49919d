//! Reader for polynomial systems.
//!
//! ```text
//! system := poly ';' poly [';']
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' | 'y' | '(' poly ')'
//! ```
//!
//! A sign is accepted only at the start of a polynomial or parenthesized
//! group, and multiplication must be written out.

use rug::{Integer, Rational};

use crate::error::ParseError;
use crate::poly::{BiPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Integer),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
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
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b';' => Tok::Semi,
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::Syntax {
                    position: start,
                    found: format!("character `{ch}`"),
                    expected: vec!["a number, x, y, an operator or a parenthesis".into()],
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn poly(&mut self) -> Result<BiPoly, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) => {
                let Some(e) = n.to_u32() else {
                    return Err(self.error(&["an exponent below 2^32"]));
                };
                self.bump();
                Ok(base.pow(e))
            }
            _ => Err(self.error(&["a nonnegative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        const EXPECTED: &[&str] = &["a number", "`x`", "`y`", "`(`"];
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(BiPoly::constant(Rational::from(n)));
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Num(d) if d != 0 => {
                        self.bump();
                        Ok(BiPoly::constant(Rational::from((n, d))))
                    }
                    _ => Err(self.error(&["a nonzero integer denominator"])),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(BiPoly::var(Var::X)),
                    "y" => Ok(BiPoly::var(Var::Y)),
                    _ => Err(ParseError::UnknownVariable { position: at, name }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.poly()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "an operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

fn check(p: BiPoly, index: usize) -> Result<BiPoly, ParseError> {
    if p.is_zero() {
        return Err(ParseError::ZeroPolynomial { index });
    }
    if !p.has_variables() {
        return Err(ParseError::NoVariables { index });
    }
    Ok(p)
}

/// Reads a single polynomial; `index` (1 or 2) labels errors.
pub fn parse_poly(text: &str, index: usize) -> Result<BiPoly, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let poly = p.poly()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["an operator", "end of input"]));
    }
    check(poly, index)
}

/// Reads `f; g`.
pub fn parse_pair(text: &str) -> Result<(BiPoly, BiPoly), ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.poly()?;
    if *p.peek() != Tok::Semi {
        return Err(p.error(&["an operator", "`;`"]));
    }
    p.bump();
    let g = p.poly()?;
    if *p.peek() == Tok::Semi {
        p.bump();
    }
    if *p.peek() != Tok::End {
        return Err(p.error(&["an operator", "end of input"]));
    }
    Ok((check(f, 1)?, check(g, 2)?))
}
