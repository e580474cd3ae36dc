//! Complex disc balls: a midpoint and one absolute radius.
//!
//! Transcendental functions are evaluated at the exact midpoint with real
//! balls, then widened by `rad · sup|f′|` over the disc.

use num_bigint::BigInt;

use super::float::{Float, Round};
use super::real::{rad_up, RealBall, RAD_PREC};
use super::{decimal, BallError, Side};
use crate::exactnum::{Rational, TowerElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: Float,
    im: Float,
    rad: Float,
}

impl ComplexBall {
    pub fn new(re: Float, im: Float, rad: Float) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        ComplexBall { re, im, rad: rad_up(&rad) }
    }

    pub fn zero() -> Self {
        ComplexBall::from_floats(Float::zero(), Float::zero())
    }

    pub fn one() -> Self {
        ComplexBall::from_floats(Float::one(), Float::zero())
    }

    pub fn i() -> Self {
        ComplexBall::from_floats(Float::zero(), Float::one())
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        ComplexBall { re, im, rad: Float::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        ComplexBall::from_floats(Float::from_int(n), Float::zero())
    }

    pub fn from_real(x: &RealBall) -> Self {
        ComplexBall { re: x.mid().clone(), im: Float::zero(), rad: x.rad().clone() }
    }

    /// The disc around `(re.mid, im.mid)` covering the product of the intervals.
    pub fn from_real_parts(re: &RealBall, im: &RealBall) -> Self {
        let rad = if im.rad().is_zero() {
            re.rad().clone()
        } else if re.rad().is_zero() {
            im.rad().clone()
        } else {
            Float::hypot_upper(re.rad(), im.rad(), RAD_PREC)
        };
        ComplexBall { re: re.mid().clone(), im: im.mid().clone(), rad: rad_up(&rad) }
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: u32) -> Self {
        ComplexBall::from_real_parts(&RealBall::from_rational(re, prec), &RealBall::from_rational(im, prec))
    }

    /// Encloses the exact value of two decimal strings.
    pub fn from_decimal(re: &str, im: &str) -> Result<Self, BallError> {
        Self::decimal_ball(re, im, false)
    }

    /// A printed decimal stands for its rounding interval: the value plus or
    /// minus half a unit in the last place.
    pub fn from_printed(re: &str, im: &str) -> Result<Self, BallError> {
        Self::decimal_ball(re, im, true)
    }

    fn decimal_ball(re: &str, im: &str, widen: bool) -> Result<Self, BallError> {
        let bad = |s: &str| BallError::Domain(format!("not a decimal number: {s:?}"));
        let (vr, hr) = decimal::parse(re).ok_or_else(|| bad(re))?;
        let (vi, hi) = decimal::parse(im).ok_or_else(|| bad(im))?;
        let prec = 4 * re.len().max(im.len()) as u32 + 64;
        let part = |v: &Rational, h: &Rational| {
            let b = RealBall::from_rational(v, prec);
            if widen {
                b.inflate(&Float::from_rational(h, RAD_PREC, Round::Ceil))
            } else {
                b
            }
        };
        Ok(ComplexBall::from_real_parts(&part(&vr, &hr), &part(&vi, &hi)))
    }

    pub fn re_mid(&self) -> &Float {
        &self.re
    }

    pub fn im_mid(&self) -> &Float {
        &self.im
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn real_part(&self) -> RealBall {
        RealBall::new(self.re.clone(), self.rad.clone())
    }

    pub fn imag_part(&self) -> RealBall {
        RealBall::new(self.im.clone(), self.rad.clone())
    }

    pub fn inflate(&self, r: &Float) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.clone(), rad: rad_up(&self.rad.add(&r.abs())) }
    }

    /// `|mid|²`, exact.
    fn mid_norm(&self) -> Float {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs_upper(&self) -> Float {
        Float::hypot_upper(&self.re, &self.im, RAD_PREC).add(&self.rad).round(RAD_PREC, Round::Ceil)
    }

    pub fn abs_lower(&self) -> Float {
        let l = Float::hypot_lower(&self.re, &self.im, RAD_PREC).sub(&self.rad);
        if l.is_negative() {
            Float::zero()
        } else {
            l.round(RAD_PREC, Round::Floor)
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_norm() <= self.rad.mul(&self.rad)
    }

    /// Exact test that `re + im·i` lies in the disc.
    pub fn contains_point(&self, re: &Rational, im: &Rational) -> bool {
        let dr = re - self.re.to_rational();
        let di = im - self.im.to_rational();
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    /// Whether `other` lies entirely inside this disc.
    pub fn contains(&self, other: &ComplexBall) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let d = self.rad.sub(&other.rad);
        let dr = self.re.sub(&other.re);
        let di = self.im.sub(&other.im);
        dr.mul(&dr).add(&di.mul(&di)) <= d.mul(&d)
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        let s = self.rad.add(&other.rad);
        let dr = self.re.sub(&other.re);
        let di = self.im.sub(&other.im);
        dr.mul(&dr).add(&di.mul(&di)) <= s.mul(&s)
    }

    /// Whether the exact value of `x` is compatible with this ball.
    pub fn contains_element(&self, x: &TowerElement) -> bool {
        let prec = if self.rad.is_zero() {
            256
        } else {
            let scale = self.re.abs().max(self.im.abs()).mag().max(self.rad.mag());
            (scale - self.rad.mag()).clamp(0, 1 << 16) as u32 + 64
        };
        self.overlaps(&x.to_ball(prec))
    }

    /// Bits of the midpoint magnitude that the radius leaves intact.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        let m = self.re.mag().max(self.im.mag());
        if m == i64::MIN {
            return i64::MIN;
        }
        m - 1 - self.rad.mag()
    }

    fn rounded(re: Float, im: Float, extra: Float, prec: u32) -> Self {
        let (re, er) = re.round_with_error(prec);
        let (im, ei) = im.round_with_error(prec);
        ComplexBall { re, im, rad: rad_up(&extra.add(&er).add(&ei)) }
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        ComplexBall { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k), rad: self.rad.mul_2exp(k) }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        ComplexBall::rounded(self.re.add(&other.re), self.im.add(&other.im), self.rad.add(&other.rad), prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        let extra = if self.rad.is_zero() && other.rad.is_zero() {
            Float::zero()
        } else {
            let a = Float::hypot_upper(&self.re, &self.im, RAD_PREC);
            let b = Float::hypot_upper(&other.re, &other.im, RAD_PREC);
            a.mul(&other.rad).add(&b.mul(&self.rad)).add(&self.rad.mul(&other.rad))
        };
        ComplexBall::rounded(re, im, extra, prec)
    }

    /// Multiplies by `num/den` for nonzero integers.
    pub fn scale_ratio(&self, num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let n = Float::from_int(num.clone());
        let d = Float::from_int(den.clone());
        let part = |x: &Float| {
            let y = x.mul(&n);
            let lo = y.div(&d, prec, Round::Floor);
            let hi = y.div(&d, prec, Round::Ceil);
            (lo.clone(), hi.sub(&lo))
        };
        let (re, er) = part(&self.re);
        let (im, ei) = part(&self.im);
        let rad = if self.rad.is_zero() { Float::zero() } else { self.rad.mul(&n.abs()).div(&d.abs(), RAD_PREC, Round::Ceil) };
        ComplexBall { re, im, rad: rad_up(&rad.add(&er).add(&ei)) }
    }

    pub fn mul_real(&self, x: &RealBall, prec: u32) -> Self {
        self.mul(&ComplexBall::from_real(x), prec)
    }

    pub fn sqr(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    pub fn inv(&self, prec: u32) -> Result<Self, BallError> {
        let n = self.mid_norm();
        if n <= self.rad.mul(&self.rad) {
            return Err(BallError::DivisorContainsZero);
        }
        let wp = prec + 8;
        let re = self.re.div(&n, wp, Round::Nearest);
        let im = self.im.neg().div(&n, wp, Round::Nearest);
        // division rounding: one ulp per component
        let ulp = Float::pow2(re.mag().max(im.mag()).max(-(1 << 40)) - wp as i64 + 1);
        // |1/z − 1/m| ≤ r / (|m|·(|m| − r))
        let extra = if self.rad.is_zero() {
            Float::zero()
        } else {
            let ml = Float::hypot_lower(&self.re, &self.im, RAD_PREC);
            let den = ml.mul(&ml.sub(&self.rad));
            if !den.is_positive() {
                return Err(BallError::DivisorContainsZero);
            }
            self.rad.div(&den, RAD_PREC, Round::Ceil)
        };
        Ok(ComplexBall::rounded(re, im, extra.add(&ulp.mul_2exp(1)), prec))
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self, BallError> {
        Ok(self.mul(&other.inv(prec + 8)?, prec))
    }

    pub fn powi(&self, n: i64, prec: u32) -> Result<Self, BallError> {
        let wp = prec + 2 * (64 - n.unsigned_abs().leading_zeros()) + 8;
        let mut base = self.clone();
        let mut acc = ComplexBall::one();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, wp);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(wp);
            }
        }
        if n < 0 {
            acc.inv(prec)
        } else {
            Ok(acc)
        }
    }

    /// Cut handling shared by `log` and `sqrt`: `Some(true)` when the disc
    /// reaches the negative real axis and the requested side continues the
    /// principal branch across it, i.e. the midpoint sits strictly on the
    /// other side. Midpoints on the axis itself are resolved by the caller.
    fn cut_crossing(&self, side: Option<Side>) -> Result<bool, BallError> {
        if self.contains_zero() {
            return Err(BallError::Domain("disc contains the branch point 0".into()));
        }
        let touches_cut = self.re.is_negative() && self.im.abs() <= self.rad;
        if !touches_cut {
            return Ok(false);
        }
        match side {
            None => Err(BallError::BranchCutStraddle),
            Some(Side::Upper) => Ok(self.im.is_negative()),
            Some(Side::Lower) => Ok(self.im.is_positive()),
        }
    }

    /// Principal logarithm; on the negative real axis `side` picks the limit
    /// from above (`+iπ`) or below (`−iπ`) and is continued across the disc.
    pub fn log(&self, prec: u32, side: Option<Side>) -> Result<Self, BallError> {
        let crossing = self.cut_crossing(side)?;
        let wp = prec + 32;
        let re = RealBall::exact(self.mid_norm()).ln(wp)?.mul_2exp(-1);
        let mut arg = atan2(&self.im, &self.re, wp);
        if crossing || (self.im.is_zero() && self.re.is_negative()) {
            let pi2 = RealBall::pi(wp).mul_2exp(1);
            arg = match side {
                Some(Side::Lower) if !self.im.is_negative() => arg.sub(&pi2, wp),
                Some(Side::Upper) if self.im.is_negative() => arg.add(&pi2, wp),
                Some(Side::Upper) | Some(Side::Lower) => arg,
                None => return Err(BallError::BranchCutStraddle),
            };
        }
        let extra = if self.rad.is_zero() {
            Float::zero()
        } else {
            let den = Float::hypot_lower(&self.re, &self.im, RAD_PREC).sub(&self.rad);
            self.rad.div(&den, RAD_PREC, Round::Ceil)
        };
        let out = ComplexBall::from_real_parts(&re, &arg).inflate(&extra);
        Ok(ComplexBall::rounded(out.re, out.im, out.rad, prec + 8))
    }

    /// Principal square root with the same side convention as `log`.
    pub fn sqrt(&self, prec: u32, side: Option<Side>) -> Result<Self, BallError> {
        if self.is_exact() && self.re.is_zero() && self.im.is_zero() {
            return Ok(ComplexBall::zero());
        }
        let crossing = self.cut_crossing(side)?;
        let wp = prec + 32;
        let x = RealBall::exact(self.re.clone());
        let y = RealBall::exact(self.im.clone());
        let modulus = RealBall::exact(self.mid_norm()).sqrt(wp)?;
        let (mut re, mut im);
        if !self.re.is_negative() {
            re = modulus.add(&x, wp).mul_2exp(-1).sqrt(wp)?;
            im = y.div(&re.mul_2exp(1), wp)?;
        } else {
            let t = modulus.sub(&x, wp).mul_2exp(-1).sqrt(wp)?;
            re = y.abs().div(&t.mul_2exp(1), wp)?;
            im = if self.im.is_negative() { t.neg() } else { t };
        }
        let on_cut = self.im.is_zero() && self.re.is_negative();
        if crossing || (on_cut && side == Some(Side::Lower)) {
            re = re.neg();
            im = im.neg();
        } else if on_cut && side.is_none() {
            return Err(BallError::BranchCutStraddle);
        }
        let extra = if self.rad.is_zero() {
            Float::zero()
        } else {
            // sup |1/(2√z)| = 1 / (2·√(|m| − r))
            let lo = Float::hypot_lower(&self.re, &self.im, RAD_PREC).sub(&self.rad);
            let s = lo.sqrt(RAD_PREC, Round::Floor).mul_2exp(1);
            self.rad.div(&s, RAD_PREC, Round::Ceil)
        };
        let out = ComplexBall::from_real_parts(&re, &im).inflate(&extra);
        Ok(ComplexBall::rounded(out.re, out.im, out.rad, prec + 8))
    }

    /// Arithmetic–geometric mean for arguments in the right half-plane.
    pub fn agm(a: &Self, b: &Self, prec: u32) -> Result<Self, BallError> {
        if !a.real_part().is_positive() || !b.real_part().is_positive() {
            return Err(BallError::Domain("agm arguments must lie in the right half-plane".into()));
        }
        let wp = prec + 32;
        let target = Float::pow2(-(wp as i64));
        let max_iter = 2 * (64 - wp.leading_zeros()) as usize + 60;
        let (mut x, mut y) = (a.clone(), b.clone());
        for _ in 0..max_iter {
            let diff = Float::hypot_upper(&x.re.sub(&y.re), &x.im.sub(&y.im), RAD_PREC);
            let scale = x.abs_lower();
            if diff <= target.mul(&scale) {
                // the mean stays within |x − y| of either iterate
                let m = x.add(&y, wp).mul_2exp(-1).inflate(&diff);
                return Ok(ComplexBall::rounded(m.re, m.im, m.rad, prec + 8));
            }
            let nx = x.add(&y, wp).mul_2exp(-1);
            let ny = x.mul(&y, wp).sqrt(wp, None)?;
            x = nx;
            y = ny;
        }
        Err(BallError::NonConvergence)
    }

    /// Certified rendering `re ± im·i` with at most `max_frac` fractional digits per part.
    pub fn to_decimal(&self, max_frac: usize) -> String {
        let re = self.real_part().to_decimal(max_frac);
        let im = self.imag_part().to_decimal(max_frac);
        match im.strip_prefix('-') {
            Some(mag) => format!("{re} - {mag}i"),
            None => format!("{re} + {im}i"),
        }
    }

    /// Like `to_decimal`, followed by the certified digit count.
    pub fn to_decimal_verbose(&self, max_frac: usize) -> String {
        let count = |s: &str| s.split_once('.').map_or(0, |(_, f)| f.len());
        let re = self.real_part().to_decimal(max_frac);
        let im = self.imag_part().to_decimal(max_frac);
        format!("{}… [{} digits]", self.to_decimal(max_frac), count(&re).min(count(&im)))
    }
}

/// `arg(x + iy)` for exact inputs, principal value in `(−π, π]`.
fn atan2(y: &Float, x: &Float, wp: u32) -> RealBall {
    let pi = || RealBall::pi(wp);
    if x.is_zero() {
        return match y.signum() {
            0 => RealBall::zero(),
            s => pi().mul_2exp(-1).mul(&RealBall::from_i64(s as i64), wp),
        };
    }
    if y.is_zero() {
        return if x.is_negative() { pi() } else { RealBall::zero() };
    }
    let a = if y.abs() <= x.abs() {
        RealBall::exact(y.clone()).div(&RealBall::exact(x.clone()), wp).expect("nonzero").atan(wp)
    } else {
        // atan(y/x) = ±π/2 − atan(x/y)
        let r = RealBall::exact(x.clone()).div(&RealBall::exact(y.clone()), wp).expect("nonzero").atan(wp);
        let hp = pi().mul_2exp(-1);
        if x.is_negative() == y.is_negative() {
            hp.sub(&r, wp)
        } else {
            hp.neg().sub(&r, wp)
        }
    };
    if !x.is_negative() {
        a
    } else if y.is_negative() {
        a.sub(&pi(), wp)
    } else {
        a.add(&pi(), wp)
    }
}

impl From<&BigInt> for ComplexBall {
    fn from(n: &BigInt) -> Self {
        ComplexBall::from_floats(Float::from_int(n.clone()), Float::zero())
    }
}
