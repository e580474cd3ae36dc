//! Exact arithmetic in quadratic radical towers ℚ(i, √r₁, …, √rₘ).

mod factor;
mod sqrt;
mod text;
mod tower;

pub use factor::{is_prime, squarefree_decompose, Squarefree};
pub use sqrt::{choose_branch, sqrt, sqrt_any};
pub use tower::{Generator, Monomial, Rational, TowerElement};

use num_bigint::BigInt;
use thiserror::Error;

use crate::ball::{ComplexBall, Float, RealBall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("numeric hint does not separate the two square roots")]
    AmbiguousBranch,
    #[error("cannot factor radicand {0}")]
    Unfactorable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

const GUARD_BITS: u32 = 32;

impl TowerElement {
    /// Certified enclosure with relative radius about `2^-precision_bits`.
    ///
    /// Working precision doubles until cancellation between terms no longer
    /// eats the requested accuracy.
    pub fn to_ball(&self, precision_bits: u32) -> ComplexBall {
        if self.is_zero() {
            return ComplexBall::zero();
        }
        if let Some(q) = self.as_rational() {
            if let Some(f) = Float::from_dyadic_rational(&q) {
                return ComplexBall::from_floats(f, Float::zero());
            }
        }
        let mut wp = precision_bits + GUARD_BITS;
        loop {
            let b = self.eval_at(wp);
            if b.rel_accuracy_bits() >= precision_bits as i64 || wp > 64 * (precision_bits + GUARD_BITS) {
                return b;
            }
            wp *= 2;
        }
    }

    fn eval_at(&self, wp: u32) -> ComplexBall {
        let mut re = RealBall::zero();
        let mut im = RealBall::zero();
        for (m, q) in self.terms() {
            let mut term = RealBall::from_rational(q, wp);
            if !m.primes().is_empty() {
                let r = RealBall::from_int(&BigInt::from(m.radicand()));
                let root = r.sqrt(wp).expect("radicand is a positive integer");
                term = term.mul(&root, wp);
            }
            if m.is_imag() {
                im = im.add(&term, wp);
            } else {
                re = re.add(&term, wp);
            }
        }
        ComplexBall::from_real_parts(&re, &im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TowerElement {
        s.parse().unwrap()
    }

    #[test]
    fn multiplier_ball_matches_printed_digits() {
        let m0 = t("1/46*sqrt(89) + 1/46*sqrt(3)*i");
        let b = m0.to_ball(70);
        let printed = ComplexBall::from_printed("0.20508654634905660459", "0.037653278425410375946").unwrap();
        assert!(b.overlaps(&printed));
        assert!(b.rel_accuracy_bits() >= 70);
    }

    #[test]
    fn dyadic_is_exact() {
        let b = t("1/2").to_ball(64);
        assert!(b.radius().is_zero());
    }

    #[test]
    fn alpha0_survives_cancellation() {
        let a = t("1/2 - 53/1000*sqrt(89)").to_ball(64);
        // 53√89 = √250001 = 500.000999999…
        let expect = ComplexBall::from_decimal("-0.00000099999900000199999500001", "0").unwrap();
        let dist = a.sub(&expect, 128).abs_upper();
        assert!(dist.to_f64() < 1e-20);
        assert!(a.rel_accuracy_bits() >= 64);
    }
}
