//! Real midpoint–radius balls.

use num_bigint::BigInt;
use num_traits::Signed;

use super::float::{Float, Round};
use super::BallError;
use crate::exactnum::Rational;

pub(crate) const RAD_PREC: u32 = 30;

pub(crate) fn rad_up(x: &Float) -> Float {
    x.round(RAD_PREC, Round::Ceil)
}

/// The interval `[mid − rad, mid + rad]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: Float,
    rad: Float,
}

impl RealBall {
    pub fn new(mid: Float, rad: Float) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        RealBall { mid, rad: rad_up(&rad) }
    }

    pub fn zero() -> Self {
        RealBall::exact(Float::zero())
    }

    pub fn one() -> Self {
        RealBall::exact(Float::one())
    }

    pub fn exact(mid: Float) -> Self {
        RealBall { mid, rad: Float::zero() }
    }

    pub fn from_int(n: &BigInt) -> Self {
        RealBall::exact(Float::from_int(n.clone()))
    }

    pub fn from_i64(n: i64) -> Self {
        RealBall::exact(Float::from_int(n))
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if let Some(f) = Float::from_dyadic_rational(q) {
            return RealBall::exact(f);
        }
        let mid = Float::from_rational(q, prec, Round::Nearest);
        let err = (q - mid.to_rational()).abs();
        RealBall { mid, rad: Float::from_rational(&err, RAD_PREC, Round::Ceil) }
    }

    /// Rounds an exact value to `prec` bits and widens by `extra`.
    fn rounded(exact: Float, extra: Float, prec: u32) -> Self {
        let (mid, err) = exact.round_with_error(prec);
        RealBall { mid, rad: rad_up(&extra.add(&err)) }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn lower(&self) -> Float {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Float {
        self.mid.add(&self.rad)
    }

    pub fn abs_upper(&self) -> Float {
        self.mid.abs().add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        (q - self.mid.to_rational()).abs() <= self.rad.to_rational()
    }

    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    pub fn inflate(&self, r: &Float) -> Self {
        RealBall { mid: self.mid.clone(), rad: rad_up(&self.rad.add(&r.abs())) }
    }

    pub fn neg(&self) -> Self {
        RealBall { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn abs(&self) -> Self {
        RealBall { mid: self.mid.abs(), rad: self.rad.clone() }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        RealBall { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k) }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        RealBall::rounded(self.mid.add(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let prop = self.mid.abs().mul(&other.rad).add(&other.mid.abs().mul(&self.rad)).add(&self.rad.mul(&other.rad));
        RealBall::rounded(self.mid.mul(&other.mid), prop, prec)
    }

    pub fn sqr(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self, BallError> {
        let m2 = other.mid.abs();
        if m2 <= other.rad {
            return Err(BallError::DivisorContainsZero);
        }
        let lo = self.mid.div(&other.mid, prec, Round::Floor);
        let hi = self.mid.div(&other.mid, prec, Round::Ceil);
        let (mid, round_err) = (lo.clone(), hi.sub(&lo));
        // |x/y − m1/m2| ≤ (r1·|m2| + |m1|·r2) / (|m2|·(|m2| − r2))
        let num = self.rad.mul(&m2).add(&self.mid.abs().mul(&other.rad));
        let den = m2.mul(&m2.sub(&other.rad));
        let prop = if num.is_zero() { Float::zero() } else { num.div(&den, RAD_PREC, Round::Ceil) };
        Ok(RealBall { mid, rad: rad_up(&prop.add(&round_err)) })
    }

    pub fn inv(&self, prec: u32) -> Result<Self, BallError> {
        RealBall::one().div(self, prec)
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self, BallError> {
        if self.is_exact() && self.mid.is_zero() {
            return Ok(RealBall::zero());
        }
        let lo = self.lower();
        if !lo.is_positive() {
            return Err(BallError::Domain("square root of a ball reaching zero or below".into()));
        }
        let a = self.mid.sqrt(prec, Round::Floor);
        let b = self.mid.sqrt(prec, Round::Ceil);
        // |√x − √m| ≤ r / (√m + √lo)
        let prop = if self.rad.is_zero() {
            Float::zero()
        } else {
            let den = a.add(&lo.sqrt(RAD_PREC, Round::Floor));
            self.rad.div(&den, RAD_PREC, Round::Ceil)
        };
        Ok(RealBall { mid: a.clone(), rad: rad_up(&prop.add(&b.sub(&a))) })
    }

    /// `Σ_{j≥0} x^(2j+1)/(2j+1)·(±1)^j` for an exact `|x| ≤ 1/4`, with tail bound.
    fn odd_series(x: &Float, alternating: bool, wp: u32) -> RealBall {
        let x = RealBall::exact(x.clone());
        let x2 = x.sqr(wp);
        let mut power = x.clone();
        let mut sum = x.clone();
        let eps = Float::pow2(-(wp as i64) - 4);
        let mut j: i64 = 1;
        loop {
            power = power.mul(&x2, wp);
            let mut term = power.div(&RealBall::from_i64(2 * j + 1), wp).expect("odd divisor");
            if alternating && j % 2 == 1 {
                term = term.neg();
            }
            sum = sum.add(&term, wp);
            j += 1;
            if power.abs_upper() < eps {
                break;
            }
        }
        // remaining terms are bounded by |x|^(2j+1)·Σ x^(2i) ≤ 2·|power·x²|
        let tail = power.abs_upper().mul(&x2.abs_upper()).mul_2exp(1);
        sum.inflate(&tail)
    }

    /// `ln 2` as `2·atanh(1/3)`.
    pub fn ln2(prec: u32) -> Self {
        let wp = prec + 16;
        let third = RealBall::from_rational(&Rational::new(1.into(), 3.into()), wp + 8);
        let s = Self::atanh_ball(&third, wp);
        s.mul_2exp(1)
    }

    fn atanh_ball(x: &RealBall, wp: u32) -> RealBall {
        // atanh' = 1/(1−x²) ≤ 2 on |x| ≤ 1/√2
        let s = Self::odd_series(x.mid(), false, wp);
        s.inflate(&x.rad().mul_2exp(1))
    }

    /// Natural logarithm of a positive ball.
    pub fn ln(&self, prec: u32) -> Result<Self, BallError> {
        let lo = self.lower();
        if !lo.is_positive() {
            return Err(BallError::Domain("logarithm of a ball reaching zero or below".into()));
        }
        let wp = prec + 32;
        let m = &self.mid;
        // m = y·2^k with y ∈ [1/√2, √2)
        let mut k = m.mag();
        let mut y = m.mul_2exp(-k);
        if y.mul(&y) < Float::pow2(-1) {
            y = y.mul_2exp(1);
            k -= 1;
        }
        let yb = RealBall::exact(y);
        let t = yb.sub(&RealBall::one(), wp).div(&yb.add(&RealBall::one(), wp), wp)?;
        let mut r = Self::atanh_ball(&t, wp).mul_2exp(1);
        if k != 0 {
            let kwp = wp + 64 - (k.unsigned_abs().leading_zeros());
            r = r.add(&Self::ln2(kwp).mul(&RealBall::from_i64(k), kwp), wp);
        }
        let prop = if self.rad.is_zero() { Float::zero() } else { self.rad.div(&lo, RAD_PREC, Round::Ceil) };
        Ok(RealBall::rounded(r.mid.clone(), r.rad.add(&prop), prec + 8))
    }

    /// `atan` of an exact value.
    fn atan_exact(x: &Float, wp: u32) -> RealBall {
        if x.is_zero() {
            return RealBall::zero();
        }
        if x.abs() > Float::one() {
            let inv = RealBall::exact(x.clone()).inv(wp).expect("nonzero");
            let half_pi = Self::pi(wp).mul_2exp(-1);
            // atan x = sign(x)·π/2 − atan(1/x), rad of inv passes with |atan'| ≤ 1
            let a = Self::atan_exact(inv.mid(), wp).inflate(inv.rad());
            let hp = if x.is_negative() { half_pi.neg() } else { half_pi };
            return hp.sub(&a, wp);
        }
        // three halvings: atan x = 2·atan(x / (1 + √(1 + x²)))
        let mut y = RealBall::exact(x.clone());
        let mut halvings = 0;
        while halvings < 3 {
            let den = RealBall::one().add(&RealBall::one().add(&y.sqr(wp), wp).sqrt(wp).expect("positive"), wp);
            y = y.div(&den, wp).expect("positive");
            halvings += 1;
        }
        let s = Self::odd_series(y.mid(), true, wp).inflate(y.rad());
        s.mul_2exp(halvings)
    }

    pub fn atan(&self, prec: u32) -> Self {
        let wp = prec + 32;
        let r = Self::atan_exact(&self.mid, wp).inflate(&self.rad);
        RealBall::rounded(r.mid.clone(), r.rad.clone(), prec + 8)
    }

    /// π via Machin's formula.
    pub fn pi(prec: u32) -> Self {
        let wp = prec + 32;
        let at = |n: i64| {
            let x = RealBall::from_rational(&Rational::new(1.into(), n.into()), wp + 8);
            Self::odd_series(x.mid(), true, wp).inflate(x.rad())
        };
        let a = at(5).mul_2exp(4);
        let b = at(239).mul_2exp(2);
        let r = a.sub(&b, wp);
        RealBall::rounded(r.mid.clone(), r.rad.clone(), prec + 8)
    }

    /// Certified decimal with at most `max_frac` digits after the point,
    /// dropping digits the radius does not pin down (truncation toward zero).
    pub fn to_decimal(&self, max_frac: usize) -> String {
        super::decimal::render(&self.lower().to_rational(), &self.upper().to_rational(), max_frac)
    }
}
