//! Text format for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' integer)?
//! base   := integer ('/' integer)? | name | '(' expr ')'
//! ```
//!
//! Binding strength is `^` > unary `-` > `*` > binary `+`/`-`. `^` does not
//! chain, there is no implicit multiplication, and every name must be a
//! declared ring variable. Printing emits terms in descending monomial order,
//! so `parse_poly(&p.to_string(), ring) == p`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Rational;
use crate::poly::{Monomial, Polynomial, Ring};

/// Largest total degree a power of a non-monomial may produce while parsing.
const MAX_EXPANDED_DEGREE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Name,
    Integer,
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprToken {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: expected {expected}, found `{found}`")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

const END: &str = "end of input";

pub fn tokenize(text: &str) -> Result<Vec<ExprToken>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match b {
            b'/' => TokenKind::Slash,
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(ExprToken {
                    kind: TokenKind::Integer,
                    lexeme: text[start..i].to_string(),
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(ExprToken {
                    kind: TokenKind::Name,
                    lexeme: text[start..i].to_string(),
                    position: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    expected: "number, variable, operator or parenthesis".into(),
                    found: ch.to_string(),
                });
            }
        };
        i += 1;
        out.push(ExprToken { kind, lexeme: text[start..i].to_string(), position: start });
    }
    Ok(out)
}

// binding powers
const ADD_BP: u8 = 1;
const MUL_BP: u8 = 3;
const NEG_BP: u8 = 5;
const POW_BP: u8 = 7;

struct Parser<'a> {
    tokens: Vec<ExprToken>,
    pos: usize,
    len: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&ExprToken> {
        self.tokens.get(self.pos)
    }

    fn error(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                position: t.position,
                expected: expected.into(),
                found: t.lexeme.clone(),
            },
            None => ParseError { position: self.len, expected: expected.into(), found: END.into() },
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<ExprToken, ParseError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                let t = t.clone();
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn expr(&mut self, min_bp: u8, at_head: bool) -> Result<Polynomial, ParseError> {
        let mut lhs = match self.peek().map(|t| t.kind) {
            Some(TokenKind::Minus) if at_head => {
                self.pos += 1;
                -self.expr(NEG_BP, false)?
            }
            _ => self.base()?,
        };
        loop {
            let kind = match self.peek() {
                Some(t) => t.kind,
                None => break,
            };
            match kind {
                TokenKind::Plus | TokenKind::Minus if ADD_BP >= min_bp => {
                    self.pos += 1;
                    let rhs = self.expr(ADD_BP + 1, false)?;
                    lhs = if kind == TokenKind::Plus { &lhs + &rhs } else { &lhs - &rhs };
                }
                TokenKind::Star if MUL_BP >= min_bp => {
                    self.pos += 1;
                    let rhs = self.expr(MUL_BP + 1, false)?;
                    lhs = &lhs * &rhs;
                }
                TokenKind::Caret if POW_BP >= min_bp => {
                    self.pos += 1;
                    let e = self.exponent()?;
                    if matches!(self.peek(), Some(t) if t.kind == TokenKind::Caret) {
                        return Err(self.error("operator or end of input (`^` does not chain)"));
                    }
                    lhs = self.power(lhs, e)?;
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        const WHAT: &str = "nonnegative integer exponent";
        let err = self.error(WHAT);
        let tok = self.expect(TokenKind::Integer, WHAT)?;
        tok.lexeme.parse::<u32>().map_err(|_| err)
    }

    fn power(&self, base: Polynomial, e: u32) -> Result<Polynomial, ParseError> {
        if base.len() > 1 {
            let deg = base.total_degree().unwrap_or(0) as u64;
            if deg * e as u64 > MAX_EXPANDED_DEGREE {
                let t = &self.tokens[self.pos - 1];
                return Err(ParseError {
                    position: t.position,
                    expected: format!("exponent keeping expanded degree <= {MAX_EXPANDED_DEGREE}"),
                    found: t.lexeme.clone(),
                });
            }
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        const WHAT: &str = "number, variable or `(`";
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error(WHAT)),
        };
        match tok.kind {
            TokenKind::Integer => {
                self.pos += 1;
                let n: BigInt = tok.lexeme.parse().expect("lexer yields digits");
                let mut value = Rational::from_integer(n);
                if matches!(self.peek(), Some(t) if t.kind == TokenKind::Slash) {
                    self.pos += 1;
                    let err = self.error("nonzero integer denominator");
                    let d = self.expect(TokenKind::Integer, "integer denominator")?;
                    let d: BigInt = d.lexeme.parse().expect("lexer yields digits");
                    value = Rational::new(value.numer().clone(), d).map_err(|_| err)?;
                }
                Ok(Polynomial::constant(self.ring, value))
            }
            TokenKind::Name => {
                self.pos += 1;
                match self.ring.index_of(&tok.lexeme) {
                    Some(i) => Ok(Polynomial::var(self.ring, i).expect("index from ring")),
                    None => Err(ParseError {
                        position: tok.position,
                        expected: format!("declared variable ({})", self.ring.names().join(", ")),
                        found: tok.lexeme,
                    }),
                }
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr(0, true)?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(WHAT)),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, len: text.len(), ring };
    let p = parser.expr(0, true)?;
    if parser.peek().is_some() {
        return Err(parser.error("operator or end of input"));
    }
    Ok(p)
}

/// Canonical text form, identical to `p.to_string()`.
pub fn print_poly(p: &Polynomial) -> String {
    p.to_string()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in names.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.ring().names();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write_monomial(f, names, m)?;
            } else {
                write!(f, "{a}*")?;
                write_monomial(f, names, m)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn ring(v: &str) -> Ring {
        PolyRing::parse_vars(v).unwrap()
    }

    #[test]
    fn parses_generator_pair() {
        let r = ring("x1,x2,x3");
        let p = parse_poly("x1^2*x2 + x3", &r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x1^2*x2 + x3");
    }

    #[test]
    fn identity_collapses() {
        let r = ring("x");
        assert!(parse_poly("(x+1)^2 - (x^2+2*x+1)", &r).unwrap().is_zero());
    }

    #[test]
    fn negative_exponent_rejected() {
        let r = ring("x");
        let e = parse_poly("x^-1", &r).unwrap_err();
        assert_eq!(e.position, 2);
        assert_eq!(e.expected, "nonnegative integer exponent");
        assert_eq!(e.found, "-");
    }

    #[test]
    fn printing() {
        let r = ring("x1,x2");
        assert_eq!(parse_poly("x1^2*x2", &r).unwrap().to_string(), "x1^2*x2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        let x = ring("x");
        assert_eq!(parse_poly("-3/2*x", &x).unwrap().to_string(), "-3/2*x");
        assert_eq!(parse_poly("x - 3/2*x^2 + 7", &x).unwrap().to_string(), "-3/2*x^2 + x + 7");
        assert_eq!(parse_poly("-(3/4)", &x).unwrap().to_string(), "-3/4");
    }

    #[test]
    fn precedence() {
        let x = ring("x,y");
        assert_eq!(parse_poly("-x^2", &x).unwrap().to_string(), "-x^2");
        assert_eq!(
            parse_poly("2*x^2*y - x*y + 1", &x).unwrap(),
            parse_poly("((2*(x^2))*y) - (x*y) + 1", &x).unwrap()
        );
        assert_eq!(parse_poly("6/4*x", &x).unwrap().to_string(), "3/2*x");
    }

    #[test]
    fn errors_are_positioned() {
        let r = ring("x,y");
        let cases = [
            ("x^2^3", 3, "`^`"),
            ("z + 1", 0, "z"),
            ("(x+1", 4, END),
            ("x+1)", 3, ")"),
            ("2x", 1, "x"),
            ("x*-y", 2, "-"),
            ("x/2", 1, "/"),
            ("", 0, END),
            ("x $ y", 2, "$"),
            ("1/0", 2, "0"),
            ("x^1.5", 3, "."),
            ("x^(2)", 2, "("),
            ("--x", 1, "-"),
        ];
        for (text, pos, found) in cases {
            let e = parse_poly(text, &r).unwrap_err();
            assert_eq!(e.position, pos, "{text}: {e}");
            if found != "`^`" {
                assert_eq!(e.found, found, "{text}: {e}");
            }
        }
    }

    #[test]
    fn tokens_strictly_increase() {
        let toks = tokenize(" x1^2 * (y - 3/4)").unwrap();
        assert!(toks.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(toks[0].kind, TokenKind::Name);
        assert_eq!(toks[2].lexeme, "2");
    }
}
