//! Polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' index | '(' expr ')'
//! ```
//!
//! Whitespace is ignored everywhere. Variables are `x1..xn` for the ring's `n`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::WeightedPolynomial;
use super::ring::WeightedRing;
use super::Rational;
use crate::error::{Error, Result};

pub fn parse_polynomial(src: &str, ring: &WeightedRing) -> Result<WeightedPolynomial> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
        end: src.len(),
    };
    let out = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t.pos, format!("unexpected `{}`", t.kind)));
    }
    Ok(out)
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let s = src.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Int(n) => write!(f, "{n}"),
            Kind::Var(i) => write!(f, "x{i}"),
            Kind::Plus => write!(f, "+"),
            Kind::Minus => write!(f, "-"),
            Kind::Star => write!(f, "*"),
            Kind::Slash => write!(f, "/"),
            Kind::Caret => write!(f, "^"),
            Kind::LParen => write!(f, "("),
            Kind::RParen => write!(f, ")"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    kind: Kind::Int(src[start..i].parse().expect("digits")),
                    pos: start,
                });
                continue;
            }
            b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "variable `x` needs an index, e.g. x1".into(),
                    });
                }
                let idx: usize = src[digits..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "variable index too large".into(),
                })?;
                out.push(Token {
                    kind: Kind::Var(idx),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a WeightedRing,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error_at(&self, pos: usize, msg: String) -> Error {
        Error::Parse { pos, msg }
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeightedPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Kind::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Kind::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeightedPolynomial> {
        let mut acc = self.unary()?;
        while self.eat(&Kind::Star) {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WeightedPolynomial> {
        if self.eat(&Kind::Minus) {
            return Ok(-&self.unary()?);
        }
        if self.eat(&Kind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeightedPolynomial> {
        let base = self.atom()?;
        if self.eat(&Kind::Caret) {
            let pos = self.here();
            match self.peek().map(|t| t.kind.clone()) {
                Some(Kind::Int(n)) => {
                    self.pos += 1;
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| self.error_at(pos, "exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.error_at(pos, "expected a nonnegative integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WeightedPolynomial> {
        let pos = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error_at(pos, "unexpected end of input".into()));
        };
        match tok.kind {
            Kind::Int(n) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.eat(&Kind::Slash) {
                    let dpos = self.here();
                    match self.peek().map(|t| t.kind.clone()) {
                        Some(Kind::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(Kind::Int(_)) => {
                            return Err(self.error_at(dpos, "zero denominator".into()))
                        }
                        _ => {
                            return Err(self.error_at(
                                dpos,
                                "division is only allowed between integer literals".into(),
                            ))
                        }
                    }
                }
                Ok(WeightedPolynomial::constant(self.ring, value))
            }
            Kind::Var(i) => {
                self.pos += 1;
                if i == 0 || i > self.ring.nvars() {
                    return Err(self.error_at(
                        tok.pos,
                        format!("variable x{i} outside x1..x{}", self.ring.nvars()),
                    ));
                }
                Ok(WeightedPolynomial::var(self.ring, i - 1))
            }
            Kind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Kind::RParen) {
                    let p = self.here();
                    return Err(self.error_at(p, "expected `)`".into()));
                }
                Ok(inner)
            }
            other => Err(self.error_at(tok.pos, format!("unexpected `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> WeightedRing {
        WeightedRing::new(vec![6, 10, 15]).unwrap()
    }

    #[test]
    fn parses_e8() {
        let f = parse_polynomial("x1^5 + x2^3 + x3^2", &ring()).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(30));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn rationals_parentheses_and_signs() {
        let r = WeightedRing::standard(2).unwrap();
        let f = parse_polynomial(" -(x1 - 1/2*x2)^2 + 3/4 ", &r).unwrap();
        let g = parse_polynomial("-x1^2 + x1*x2 - 1/4*x2^2 + 3/4", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn display_reparses() {
        let r = WeightedRing::standard(3).unwrap();
        let f = parse_polynomial("x1^3+x2^3+x3^3 - 5/3*x1*x2*x3", &r).unwrap();
        assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn error_positions() {
        let r = WeightedRing::standard(3).unwrap();
        match parse_polynomial("x1 + x4", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x1 + ", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x1 ? 2", &r), Err(Error::Parse { pos: 3, .. })));
        assert!(parse_polynomial("x1/x2", &r).is_err());
        assert!(parse_polynomial("1/0", &r).is_err());
        assert!(parse_polynomial("(x1", &r).is_err());
        assert!(parse_polynomial("x1^x2", &r).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
