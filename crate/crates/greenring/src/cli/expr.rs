//! Recursive-descent parser for ring-element expressions.
//!
//! Grammar (with precedence `^` > `*` > `+ -`, left-associative binary
//! operators, juxtaposition as implicit multiplication):
//!
//! ```text
//! expr    := term { ('+' | '-') term }
//! term    := ['-'] factor { ['*'] factor }
//! factor  := primary [ '^' integer ]
//! primary := integer | variable | '(' expr ')'
//! ```
//!
//! Variables depend on the ring context: `Y`, `Z`, `X1`..`X{m-1}` for the
//! Green ring (`Z` excluded for the Grothendieck ring), and `y`, `z`,
//! `F_1`, `F_2`, ... atoms for the stable ring.

use std::fmt;

use num::{BigInt, BigRational};

use crate::dickson;
use crate::poly::Poly;
use crate::presented::{RingElement, RingError, RingKind, RingSpec};

const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { offset, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                // X and F names carry an index, optionally after '_'.
                if c == 'X' || c == 'F' {
                    if i < bytes.len() && bytes[i] == b'_' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    spec: RingSpec,
    end: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.bump();
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                // Juxtaposition: `2Y`, `Y Z^2`, `3(1+Y)`.
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    use num::ToPrimitive;
                    let e = n.to_u64().filter(|&e| e <= MAX_EXPONENT);
                    let Some(e) = e else {
                        return err(off, format!("exponent overflow (> {MAX_EXPONENT})"));
                    };
                    Ok(base.pow(e as u32))
                }
                _ => err(off, "expected a nonnegative integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Poly::constant(
                self.spec.arity(),
                BigRational::from_integer(n),
            )),
            Some(Tok::Ident(name)) => self.variable(off, &name),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let off = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(off, "expected ')'"),
                }
            }
            Some(tok) => err(off, format!("unexpected token {tok:?}")),
            None => err(off, "unexpected end of input"),
        }
    }

    fn variable(&mut self, off: usize, name: &str) -> Result<Poly, ParseError> {
        let arity = self.spec.arity();
        match self.spec.kind() {
            RingKind::RadfordGreen | RingKind::Grothendieck => match name {
                "Y" => Ok(Poly::var_y(arity)),
                "Z" if self.spec.kind() == RingKind::RadfordGreen => Ok(Poly::var_z(arity)),
                _ if name.starts_with('X') => {
                    let idx: usize = name[1..]
                        .trim_start_matches('_')
                        .parse()
                        .map_err(|_| ParseError {
                            offset: off,
                            message: format!("malformed X generator {name:?}"),
                        })?;
                    if idx >= 1 && idx <= arity {
                        Ok(Poly::var_x(arity, idx))
                    } else {
                        err(
                            off,
                            format!(
                                "X{idx} out of range: this ring has X1..X{} (m = {})",
                                arity,
                                self.spec.m()
                            ),
                        )
                    }
                }
                _ => err(
                    off,
                    format!("unknown variable {name:?} in a {} ring", self.spec.kind()),
                ),
            },
            RingKind::Stable => match name {
                "y" => Ok(Poly::var_y(0)),
                "z" => Ok(Poly::var_z(0)),
                _ if name.starts_with('F') => {
                    let idx: u32 = name[1..]
                        .trim_start_matches('_')
                        .parse()
                        .map_err(|_| ParseError {
                            offset: off,
                            message: format!("malformed Dickson atom {name:?}"),
                        })?;
                    dickson::dickson_f(idx).map_err(|e| ParseError {
                        offset: off,
                        message: e.to_string(),
                    })
                }
                _ => err(
                    off,
                    format!("unknown variable {name:?} in a stable ring (use y, z, F_j)"),
                ),
            },
        }
    }
}

/// Parses an expression to a polynomial in the ring's variable context.
pub fn parse_poly(src: &str, spec: RingSpec) -> Result<Poly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, spec, end: src.len(), _src: src };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.offset(), "trailing input after expression");
    }
    Ok(poly)
}

/// Parses an expression and reduces it to normal form in the ring.
pub fn parse_element(src: &str, spec: RingSpec) -> Result<RingElement, ElementParseError> {
    let poly = parse_poly(src, spec)?;
    Ok(spec.reduce(&poly)?)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementParseError {
    Syntax(ParseError),
    Ring(RingError),
}

impl fmt::Display for ElementParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementParseError::Syntax(e) => e.fmt(f),
            ElementParseError::Ring(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ElementParseError {}

impl From<ParseError> for ElementParseError {
    fn from(e: ParseError) -> Self {
        ElementParseError::Syntax(e)
    }
}

impl From<RingError> for ElementParseError {
    fn from(e: RingError) -> Self {
        ElementParseError::Ring(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radford(n: u32, m: u32) -> RingSpec {
        RingSpec::new(RingKind::RadfordGreen, n, m).unwrap()
    }

    fn stable(n: u32) -> RingSpec {
        RingSpec::new(RingKind::Stable, n, 1).unwrap()
    }

    #[test]
    fn parses_examples() {
        let spec = radford(2, 2);
        let e = parse_element("Z^2 - Y", spec).unwrap();
        assert_eq!(e.to_string(), "-Y + Z + Y*Z");
        let one = parse_element("1", spec).unwrap();
        assert_eq!(one, RingElement::unit(spec));
        let s = stable(4);
        let e = parse_element("y^2*F_3", s).unwrap();
        assert_eq!(e.to_string(), "y^2*F_3");
    }

    #[test]
    fn precedence_and_unary_minus() {
        let spec = radford(3, 1);
        assert_eq!(
            parse_element("-Y^2 + 2*Y", spec).unwrap(),
            parse_element("2Y - Y^2", spec).unwrap()
        );
        assert_eq!(
            parse_element("(1 + Y)^2", spec).unwrap(),
            parse_element("1 + 2Y + Y^2", spec).unwrap()
        );
        // '^' binds tighter than '*'
        assert_eq!(
            parse_element("2*Y^2", spec).unwrap(),
            parse_element("Y^2 + Y^2", spec).unwrap()
        );
    }

    #[test]
    fn juxtaposition_is_multiplication() {
        let spec = radford(4, 1);
        assert_eq!(
            parse_element("2Y Z", spec).unwrap(),
            parse_element("2*Y*Z", spec).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let spec = radford(2, 2);
        let e = parse_poly("Z + $", spec).unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_poly("Z2 +", spec).unwrap_err();
        assert!(e.offset > 0);
        let e = parse_poly("X7", spec).unwrap_err();
        assert!(e.message.contains("X7"));
        let e = parse_poly("Y^9999999", spec).unwrap_err();
        assert!(e.message.contains("exponent overflow"));
        // Z is not a Grothendieck variable
        let g = RingSpec::new(RingKind::Grothendieck, 2, 2).unwrap();
        assert!(parse_poly("Z", g).is_err());
        // lowercase y only in the stable context
        assert!(parse_poly("y", spec).is_err());
        assert!(parse_poly("q", stable(3)).is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let specs = [radford(3, 3), radford(2, 1), stable(5)];
        for spec in specs {
            let basis = spec.basis();
            for label in &basis {
                let e = RingElement::from_label(spec, *label).unwrap();
                let back = parse_element(&e.to_string(), spec).unwrap();
                assert_eq!(back, e, "label {label}");
            }
        }
    }
}
