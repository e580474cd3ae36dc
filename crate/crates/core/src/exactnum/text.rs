//! Normalized text form: `p/q*sqrt(r1)*sqrt(r2)*i` terms in monomial order.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::tower::{Monomial, Rational, TowerElement};
use super::ExactError;
use crate::modeq::parser;

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, mut need_star: bool) -> fmt::Result {
    for p in m.primes() {
        if need_star {
            f.write_str("*")?;
        }
        write!(f, "sqrt({p})")?;
        need_star = true;
    }
    if m.is_imag() {
        if need_star {
            f.write_str("*")?;
        }
        f.write_str("i")?;
    }
    Ok(())
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer().abs())
    } else {
        write!(f, "{}/{}", q.numer().abs(), q.denom())
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, q)) in self.terms().enumerate() {
            match (k, q.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write_magnitude(f, q)?;
            } else if q.abs().is_one() {
                write_monomial(f, m, false)?;
            } else {
                write_magnitude(f, q)?;
                write_monomial(f, m, true)?;
            }
        }
        Ok(())
    }
}

impl FromStr for TowerElement {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parser::parse_constant(s).map_err(|e| ExactError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_monomial_order() {
        let x: TowerElement = "82573/516854*i - 294573/516854*sqrt(3)".parse().unwrap();
        assert_eq!(x.to_string(), "82573/516854*i - 294573/516854*sqrt(3)");
        let y: TowerElement = "sqrt(15)/20 + sqrt(5)/20".parse().unwrap();
        assert_eq!(y.to_string(), "1/20*sqrt(5) + 1/20*sqrt(3)*sqrt(5)");
        assert_eq!(TowerElement::zero().to_string(), "0");
        let z: TowerElement = "-i + sqrt(2)*i - 7".parse().unwrap();
        assert_eq!(z.to_string(), "-7 - i + sqrt(2)*i");
    }

    #[test]
    fn rejects_variables() {
        assert!("u + 1".parse::<TowerElement>().is_err());
        assert!("1/0".parse::<TowerElement>().is_err());
    }
}
