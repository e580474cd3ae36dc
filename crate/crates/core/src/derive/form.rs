//! Integer normal form `Σ wₙ (A n + B) (±N/M)ⁿ = C√r/π` of a rational series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{Rational, TowerElement};

use super::DeriveError;

/// `wₙ = (1/2)ₙ(1/s)ₙ(1−1/s)ₙ/(1)ₙ³`; `r` is squarefree and `C > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalForm {
    pub s: u32,
    /// `A`, the coefficient of `n`.
    pub n_coef: BigInt,
    /// `B`, the constant term.
    pub const_coef: BigInt,
    pub sign: i8,
    pub z_num: BigInt,
    pub z_den: BigInt,
    pub c: Rational,
    pub r: BigInt,
}

fn real_monomial(x: &TowerElement, what: &str) -> Result<Option<(Rational, BigInt)>, DeriveError> {
    if x.is_zero() {
        return Ok(None);
    }
    let mut terms = x.terms();
    let (m, q) = terms.next().expect("nonzero");
    if terms.next().is_some() || m.is_imag() {
        return Err(DeriveError::NonRationalSeries(format!("{what} = {x} is not a rational multiple of one real square root")));
    }
    Ok(Some((q.clone(), BigInt::from(m.radicand()))))
}

impl RationalForm {
    /// Rescales `Σ wₙ (a + b n) zⁿ = 1/π` by the least positive rational that
    /// makes both coefficients integers.
    pub fn from_params(s: u32, z: &TowerElement, a: &TowerElement, b: &TowerElement) -> Result<Self, DeriveError> {
        let zq = z.as_rational().ok_or_else(|| DeriveError::NonRationalSeries(format!("z = {z} is irrational")))?;
        if zq.is_zero() {
            return Err(DeriveError::NonRationalSeries("z = 0".into()));
        }
        let fa = real_monomial(a, "a")?;
        let fb = real_monomial(b, "b")?;
        let r = match (&fa, &fb) {
            (Some((_, ra)), Some((_, rb))) if ra != rb => {
                return Err(DeriveError::NonRationalSeries(format!("a = {a} and b = {b} carry different square roots")));
            }
            (Some((_, r)), _) | (_, Some((_, r))) => r.clone(),
            (None, None) => return Err(DeriveError::NonRationalSeries("a = b = 0".into())),
        };
        let qa = fa.map(|(q, _)| q).unwrap_or_else(Rational::zero);
        let qb = fb.map(|(q, _)| q).unwrap_or_else(Rational::zero);
        let l = qa.denom().lcm(qb.denom());
        let ia = (&qa * Rational::from_integer(l.clone())).to_integer();
        let ib = (&qb * Rational::from_integer(l.clone())).to_integer();
        let g = ia.gcd(&ib);
        let rho = Rational::new(l, g);
        Ok(RationalForm {
            s,
            n_coef: (&qb * &rho).to_integer(),
            const_coef: (&qa * &rho).to_integer(),
            sign: if zq.is_negative() { -1 } else { 1 },
            z_num: zq.numer().abs(),
            z_den: zq.denom().clone(),
            c: rho / Rational::from_integer(r.clone()),
            r,
        })
    }

    pub fn z(&self) -> Rational {
        Rational::new(&self.z_num * BigInt::from(self.sign), self.z_den.clone())
    }

    /// `(z, a, b)` with `a = B√r/(C r)` and `b = A√r/(C r)`.
    pub fn to_params(&self) -> (TowerElement, TowerElement, TowerElement) {
        let root = TowerElement::sqrt_rational(&Rational::from_integer(self.r.clone())).expect("positive radicand");
        let k = (&self.c * Rational::from_integer(self.r.clone())).recip();
        let a = root.scale(&(Rational::from_integer(self.const_coef.clone()) * &k));
        let b = root.scale(&(Rational::from_integer(self.n_coef.clone()) * &k));
        (TowerElement::from_rational(self.z()), a, b)
    }

    /// `log₁₀(M/N)`, the asymptotic number of digits gained per term.
    pub fn digits_per_term(&self) -> f64 {
        let ratio = |x: &BigInt| {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            (x >> shift).to_f64().unwrap_or(f64::MAX).log10() + shift as f64 * std::f64::consts::LOG10_2
        };
        ratio(&self.z_den) - ratio(&self.z_num)
    }
}

fn power(base: &BigInt, twice: bool) -> String {
    if twice {
        format!("{base}^{{2n}}")
    } else {
        format!("{base}^n")
    }
}

fn square_root(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    (&r * &r == *x && !x.is_one()).then_some(r)
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minus = '\u{2212}';
        let b = &self.const_coef;
        if b.is_negative() {
            write!(f, "({} n {minus} {})", self.n_coef, b.abs())?;
        } else {
            write!(f, "({} n + {})", self.n_coef, b)?;
        }
        if self.sign < 0 {
            write!(f, "({minus}1)^n")?;
        }
        if !self.z_num.is_one() {
            write!(f, "·{}^n", self.z_num)?;
        }
        if !self.z_den.is_one() {
            let p = match square_root(&self.z_den) {
                Some(root) => power(&root, true),
                None => power(&self.z_den, false),
            };
            write!(f, "/{p}")?;
        }
        f.write_str(" = ")?;
        let (cn, cd) = (self.c.numer(), self.c.denom());
        let root = if self.r.is_one() { String::new() } else { format!("√{}", self.r) };
        let lead = if cn.is_one() && !root.is_empty() { String::new() } else { cn.to_string() };
        if cd.is_one() {
            write!(f, "{lead}{root}/π")
        } else {
            write!(f, "{lead}{root}/({cd}π)")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TowerElement {
        s.parse().unwrap()
    }

    #[test]
    fn flagship_form() {
        let f = RationalForm::from_params(3, &t("-1/250000"), &t("827/4500*sqrt(3)"), &t("4717/1500*sqrt(3)")).unwrap();
        assert_eq!((f.n_coef.clone(), f.const_coef.clone()), (BigInt::from(14151), BigInt::from(827)));
        assert_eq!(f.c, Rational::from_integer(1500.into()));
        assert_eq!(f.to_string(), "(14151 n + 827)(\u{2212}1)^n/500^{2n} = 1500√3/π");
        let (z, a, b) = f.to_params();
        assert_eq!((z, a, b), (t("-1/250000"), t("827/4500*sqrt(3)"), t("4717/1500*sqrt(3)")));
        assert!((f.digits_per_term() - 5.39794).abs() < 1e-5);
    }

    #[test]
    fn forms_without_square_root_and_positive_z() {
        let f = RationalForm::from_params(4, &t("-1/324"), &t("23/72"), &t("65/18")).unwrap();
        assert_eq!(f.to_string(), "(260 n + 23)(\u{2212}1)^n/18^{2n} = 72/π");
        let g = RationalForm::from_params(3, &t("4/125"), &t("8/45*sqrt(3)"), &t("22/15*sqrt(3)")).unwrap();
        assert_eq!(g.to_string(), "(33 n + 4)·4^n/125^n = 15√3/(2π)");
    }

    #[test]
    fn rejects_irrational_series() {
        assert!(RationalForm::from_params(3, &t("sqrt(2)"), &t("1"), &t("1")).is_err());
        assert!(RationalForm::from_params(3, &t("1/2"), &t("sqrt(2)"), &t("sqrt(3)")).is_err());
        assert!(RationalForm::from_params(3, &t("1/2"), &t("1 + sqrt(2)"), &t("1")).is_err());
    }
}
