//! Recursive-descent parser for polynomial expressions in `u`, `v` with
//! tower-element constants.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | power
//! power   := primary ('^' integer)?
//! primary := integer | 'u' | 'v' | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants; `sqrt` takes a positive
//! rational constant. `−` (U+2212) and `·` are accepted for `-` and `*`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::poly::PolyUV;
use crate::exactnum::{Rational, TowerElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset into the expression.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        let chars = src
            .chars()
            .map(|c| match c {
                '\u{2212}' => '-',
                '\u{00b7}' => '*',
                c => c,
            })
            .collect();
        Parser { chars, pos: 0 }
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: at, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("{f:?}"));
            self.err(self.pos, format!("expected {c:?}, found {found}"))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<PolyUV, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyUV, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                let Some(c) = d.as_constant() else {
                    return self.err(at + 1, "division by an expression in u or v");
                };
                let Ok(inv) = c.inv() else {
                    return self.err(at + 1, "division by zero");
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<PolyUV, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.eat('^') {
            let at = self.pos;
            let e = self.integer()?;
            let Ok(e) = u32::try_from(e) else {
                return self.err(at, "exponent too large");
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<PolyUV, ParseError> {
        let at = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.chars[at];
        if c.is_ascii_digit() {
            let n = self.integer()?;
            return Ok(PolyUV::constant(TowerElement::from_rational(Rational::from_integer(n))));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() {
            let name = self.ident();
            return match name.as_str() {
                "u" => Ok(PolyUV::u()),
                "v" => Ok(PolyUV::v()),
                "i" => Ok(PolyUV::constant(TowerElement::imag_unit())),
                "sqrt" => {
                    self.expect('(')?;
                    let arg_at = self.pos;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    let q = match arg.as_constant().and_then(|c| c.as_rational()) {
                        Some(q) if q.is_positive() => q,
                        _ => return self.err(arg_at, "sqrt takes a positive rational constant"),
                    };
                    match TowerElement::sqrt_rational(&q) {
                        Ok(r) => Ok(PolyUV::constant(r)),
                        Err(e) => self.err(arg_at, e.to_string()),
                    }
                }
                other => self.err(at, format!("unknown identifier {other:?}")),
            };
        }
        self.err(at, format!("unexpected character {c:?}"))
    }
}

/// Parses a polynomial expression in `u` and `v`.
pub fn parse_poly(src: &str) -> Result<PolyUV, ParseError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected {c:?} after expression"));
    }
    Ok(e)
}

/// Parses a constant expression (no `u` or `v`).
pub fn parse_constant(src: &str) -> Result<TowerElement, ParseError> {
    let p = parse_poly(src)?;
    match p.as_constant() {
        Some(c) => Ok(c),
        None => Err(ParseError { offset: 0, message: "expected a constant, found an expression in u or v".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let a = parse_constant("1/2 - 53*sqrt(89)/1000").unwrap();
        let b = parse_constant("1/2 − 53/1000*sqrt(89)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_constant("sqrt(12)").unwrap(), parse_constant("2*sqrt(3)").unwrap());
        assert_eq!(parse_constant("(sqrt(3) + i)^2").unwrap(), parse_constant("2 + 2*sqrt(3)*i").unwrap());
        assert_eq!(parse_constant("-i^2").unwrap(), TowerElement::one());
        assert_eq!(parse_constant("sqrt(1/5)").unwrap(), parse_constant("sqrt(5)/5").unwrap());
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("u^2 + v^2 + 3*u*v − 1").unwrap();
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coefficient(1, 1), TowerElement::from_int(3));
        let q = parse_poly("u*v - v*u + 1").unwrap();
        assert_eq!(q.as_constant(), Some(TowerElement::one()));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_poly("u + * v").unwrap_err().offset, 4);
        assert_eq!(parse_poly("u / v").unwrap_err().offset, 3);
        assert_eq!(parse_poly("sqrt(-3)").unwrap_err().offset, 5);
        assert_eq!(parse_poly("w").unwrap_err().offset, 0);
        assert_eq!(parse_poly("(u + v").unwrap_err().offset, 6);
        assert_eq!(parse_poly("u v").unwrap_err().offset, 2);
        assert!(parse_poly("").is_err());
        assert!(parse_constant("1/0").is_err());
    }
}
