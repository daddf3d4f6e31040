//! The text notation `S2(e; r1, ...)`, `M(e; r1, ...)` and `P(a1, ...)`.
//!
//! A bare integer `n` in a coefficient list means `n/1`. Whitespace is
//! ignored between tokens.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::montesinos::MontesinosLink;
use crate::rational::Rational;
use crate::seifert::SeifertInvariants;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Seifert(SeifertInvariants),
    Montesinos(MontesinosLink),
    Pretzel(Vec<i64>),
}

/// Byte offset into the input and what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Seifert(y) => y.fmt(f),
            Expr::Montesinos(m) => m.fmt(f),
            Expr::Pretzel(a) => {
                let parts: Vec<String> = a.iter().map(i64::to_string).collect();
                write!(f, "P({})", parts.join(", "))
            }
        }
    }
}

impl FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expression(s)
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let expr = p.expression()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.eat("S2") || self.eat("S²") {
            let (e, coeffs) = self.framed_list()?;
            let y = SeifertInvariants::new(e, coeffs).expect("coefficients checked while parsing");
            Ok(Expr::Seifert(y))
        } else if self.eat("M") {
            let (e, coeffs) = self.framed_list()?;
            Ok(Expr::Montesinos(MontesinosLink::new(e, coeffs)))
        } else if self.eat("P") {
            self.expect("(")?;
            let mut strands = vec![self.small_integer()?];
            while self.eat(",") {
                strands.push(self.small_integer()?);
            }
            self.expect(")")?;
            Ok(Expr::Pretzel(strands))
        } else {
            Err(self.error("expected 'S2', 'M' or 'P'"))
        }
    }

    /// `'(' int ';' ratlist ')'`
    fn framed_list(&mut self) -> Result<(BigInt, Vec<Rational>), ParseError> {
        self.expect("(")?;
        let e = self.integer()?;
        self.expect(";")?;
        let mut coeffs = Vec::new();
        if !self.eat(")") {
            coeffs.push(self.coefficient()?);
            while self.eat(",") {
                coeffs.push(self.coefficient()?);
            }
            self.expect(")")?;
        }
        Ok((e, coeffs))
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let p = self.integer()?;
        let q = if self.eat("/") {
            self.integer()?
        } else {
            BigInt::one()
        };
        let at = |message: String| ParseError {
            pos: start,
            message,
        };
        if q.is_zero() {
            return Err(at("zero denominator".into()));
        }
        if !p.gcd(&q).is_one() {
            return Err(at(format!("{p}/{q} is not in lowest terms")));
        }
        if p.abs() <= BigInt::one() {
            return Err(at(format!("coefficient {p}/{q} needs |p| > 1")));
        }
        Ok(Rational::new(p, q).expect("non-zero denominator"))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign_len..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += sign_len + digits;
        self.text[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            message: "malformed integer".into(),
        })
    }

    fn small_integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        self.integer()?.to_i64().ok_or(ParseError {
            pos: start,
            message: "integer out of range".into(),
        })
    }
}
