//! Recursive-descent parser for the text grammar shared by scalars and free-algebra elements:
//! integers, identifiers, `+ - * / ^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::symbol_index;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Target of expression parsing.
pub trait ExprValue: Sized {
    fn from_scalar(s: Scalar) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, o: Self) -> std::result::Result<Self, String>;
    fn powi(self, k: i64) -> std::result::Result<Self, String>;
}

impl ExprValue for Scalar {
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add(self, o: Self) -> Self {
        &self + &o
    }
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
    fn neg(self) -> Self {
        -self
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        self.checked_div(&o).map_err(|e| e.to_string())
    }
    fn powi(self, k: i64) -> std::result::Result<Self, String> {
        if k < 0 && self.is_zero() {
            return Err("negative power of zero".into());
        }
        let k = i32::try_from(k).map_err(|_| "exponent too large".to_string())?;
        Ok(Scalar::powi(&self, k))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, T, F: Fn(&str) -> Option<T>> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    resolve: &'a F,
}

impl<'a, T: ExprValue, F: Fn(&str) -> Option<T>> Parser<'a, T, F> {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<R>(&self, msg: impl Into<String>) -> Result<R> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(rhs) } else { acc.sub(rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.mul(rhs)
            } else {
                acc.div(rhs).map_err(|msg| Error::Parse { pos: at, msg })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<T> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<T> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        if self.peek_op() == Some('-') {
            neg = true;
            self.pos += 1;
        }
        let at = self.here();
        let k = match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => {
                i64::try_from(n.clone()).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?
            }
            _ => return self.err("expected an integer exponent"),
        };
        self.pos += 1;
        base.powi(if neg { -k } else { k }).map_err(|msg| Error::Parse { pos: at, msg })
    }

    fn atom(&mut self) -> Result<T> {
        let Some((at, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(T::from_scalar(Scalar::from_rational(BigRational::from_integer(n)))),
            Tok::Ident(name) => match (self.resolve)(&name) {
                Some(v) => Ok(v),
                None => Err(Error::Parse { pos: at, msg: format!("unknown symbol `{name}`") }),
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(Error::Parse { pos: at, msg: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses `text` into any [`ExprValue`], resolving identifiers with `resolve`.
pub fn parse_with<T: ExprValue, F: Fn(&str) -> Option<T>>(text: &str, resolve: &F) -> Result<T> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), resolve };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    parse_with(text, &|name: &str| symbol_index(name).map(Scalar::sym))
}
