//! Ball-arithmetic summation of `Σ wₙ(a + bn)zⁿ = 1/π` for algebraic `z`,
//! `a`, `b` that admit no rational normal form.

use num_bigint::BigInt;

use crate::ball::{ComplexBall, RealBall, Round};
use crate::exactnum::TowerElement;

use super::{PiDigits, PiError, GUARD_TERMS};

const GUARD_BITS: u32 = 64;

fn upper(x: &ComplexBall) -> RealBall {
    RealBall::exact(x.abs_upper())
}

/// `log₁₀(1/|z|)`, or `None` when `|z|` may reach 1.
pub fn digits_per_term(z: &TowerElement) -> Option<f64> {
    let r = z.to_ball(64).abs_upper().to_f64();
    (r < 1.0 && r > 0.0).then(|| -r.log10())
}

/// `Σ_{n<N} wₙ(a + bn)zⁿ` as a ball that also encloses the tail.
fn enclose_sum(s: u32, z: &ComplexBall, a: &ComplexBall, b: &ComplexBall, n_terms: u64, prec: u32) -> Result<ComplexBall, PiError> {
    let s64 = s as u64;
    let mut term = ComplexBall::one();
    let mut sum = ComplexBall::zero();
    for n in 0..n_terms {
        let weight = a.add(&b.mul(&ComplexBall::from_i64(n as i64), prec), prec);
        sum = sum.add(&term.mul(&weight, prec), prec);
        let num = BigInt::from(2 * n + 1) * BigInt::from(s64 * n + 1) * BigInt::from(s64 * n + s64 - 1);
        let den = BigInt::from(n + 1).pow(3) * BigInt::from(2 * s64 * s64);
        term = term.mul(z, prec).scale_ratio(&num, &den, prec);
    }
    // every later ratio is at most |z|, so the tail is below |t_N|·K with
    // K = (|b|N + |a|)/(1−ρ) + |b|ρ/(1−ρ)²
    let rho = upper(z);
    let gap = RealBall::one().sub(&rho, 64);
    if !gap.is_positive() {
        return Err(PiError::Divergent);
    }
    let (ab, bb) = (upper(a), upper(b));
    let lead = bb.mul(&RealBall::from_i64(n_terms as i64), 64).add(&ab, 64).div(&gap, 64).map_err(|_| PiError::Divergent)?;
    let rest = bb.mul(&rho, 64).div(&gap.sqr(64), 64).map_err(|_| PiError::Divergent)?;
    let k = lead.add(&rest, 64).upper();
    let tail = term.abs_upper().mul(&k).round(30, Round::Ceil);
    Ok(sum.inflate(&tail))
}

fn attempt(s: u32, z: &TowerElement, a: &TowerElement, b: &TowerElement, digits: usize, n: u64) -> Result<(String, usize), PiError> {
    let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
    let (zb, ab, bb) = (z.to_ball(prec), a.to_ball(prec), b.to_ball(prec));
    let sum = enclose_sum(s, &zb, &ab, &bb, n, prec)?;
    let pi = sum.inv(prec).map_err(|_| PiError::UncertifiedDigits { requested: digits, certified: 0 })?;
    if !pi.imag_part().contains_zero() {
        return Err(PiError::UncertifiedDigits { requested: digits, certified: 0 });
    }
    let text = pi.real_part().to_decimal(digits);
    let certified = text.split_once('.').map_or(0, |(_, f)| f.len());
    Ok((text, certified))
}

/// π to `digits` decimals (truncated) from algebraic series parameters.
/// Digits are certified by the enclosing ball; one retry with 10% more
/// terms is made.
pub fn pi_digits_algebraic(s: u32, z: &TowerElement, a: &TowerElement, b: &TowerElement, digits: usize) -> Result<PiDigits, PiError> {
    let per = digits_per_term(z).ok_or(PiError::Divergent)?;
    let mut n = (digits as f64 / per).ceil() as u64 + GUARD_TERMS;
    let mut last = 0;
    for _ in 0..2 {
        let (text, certified) = attempt(s, z, a, b, digits, n)?;
        if certified >= digits {
            return Ok(PiDigits { text, requested: digits, certified, terms: n });
        }
        last = certified;
        n = (n as f64 * 1.1).ceil() as u64;
    }
    Err(PiError::UncertifiedDigits { requested: digits, certified: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piengine::reference_pi;

    fn t(s: &str) -> TowerElement {
        s.parse().unwrap()
    }

    #[test]
    fn agrees_with_the_rational_path() {
        let d = pi_digits_algebraic(3, &t("-1/250000"), &t("827/4500*sqrt(3)"), &t("4717/1500*sqrt(3)"), 120).unwrap();
        assert_eq!(d.text, reference_pi(120));
    }

    #[test]
    fn wrong_parameters_give_wrong_digits() {
        let d = pi_digits_algebraic(3, &t("-1/250000"), &t("827/4500*sqrt(3) + 1"), &t("4717/1500*sqrt(3)"), 20).unwrap();
        assert!(!d.text.starts_with("3.14"));
        assert_eq!(pi_digits_algebraic(3, &t("2"), &t("1"), &t("1"), 10), Err(PiError::Divergent));
    }
}
