//! Binary floating point with unbounded mantissa and directed rounding.
//!
//! Values are `mant · 2^exp` with `mant` odd (or zero with `exp = 0`), so
//! every value has exactly one representation. Addition, subtraction and
//! multiplication are exact; precision is only lost in an explicit `round`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
    Nearest,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Float {
    mant: BigInt,
    exp: i64,
}

fn trailing_zeros(m: &BigInt) -> u64 {
    m.trailing_zeros().unwrap_or(0)
}

impl Float {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Float::zero();
        }
        let tz = trailing_zeros(&mant);
        Float { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Float { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Float { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Float::new(n.into(), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Float { mant: BigInt::one(), exp: e }
    }

    /// Exact conversion; panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Float::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Float::new(BigInt::from(m) * sign, e)
    }

    /// `Some` iff the denominator is a power of two.
    pub fn from_dyadic_rational(q: &Rational) -> Option<Self> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz).is_one() {
            Some(Float::new(q.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn from_rational(q: &Rational, prec: u32, mode: Round) -> Self {
        Float::from_int(q.numer().clone()).div(&Float::from_int(q.denom().clone()), prec, mode)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.mant.to_f64().expect("60-bit mantissa fits");
        let mut e = r.exp;
        let mut out = m;
        while e > 0 {
            let step = e.min(1000);
            out *= 2f64.powi(step as i32);
            e -= step;
            if out.is_infinite() {
                return out;
            }
        }
        while e < 0 {
            let step = e.max(-1000);
            out *= 2f64.powi(step as i32);
            e -= step;
            if out == 0.0 {
                return out;
            }
        }
        out
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Mantissa bit length.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `2^(mag−1) ≤ |x| < 2^mag`; `i64::MIN` for zero.
    pub fn mag(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Self {
        Float { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Float { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Float::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let nb = self.mant.bits();
        if nb <= prec as u64 {
            return self.clone();
        }
        let shift = nb - prec as u64;
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let trunc = mag >> shift;
        let dropped_nonzero = mag.trailing_zeros().unwrap_or(0) < shift;
        let up = match mode {
            Round::Floor => neg && dropped_nonzero,
            Round::Ceil => !neg && dropped_nonzero,
            Round::Nearest => mag.bit(shift - 1),
        };
        let m = if up { trunc + 1u32 } else { trunc };
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, m);
        Float::new(m, self.exp + shift as i64)
    }

    /// Round to nearest and return the exact rounding error `|x − rounded|`.
    pub fn round_with_error(&self, prec: u32) -> (Self, Self) {
        let r = self.round(prec, Round::Nearest);
        let err = self.sub(&r).abs();
        (r, err)
    }

    /// Quotient rounded in direction `mode`; panics if `other` is zero.
    pub fn div(&self, other: &Self, prec: u32, mode: Round) -> Self {
        assert!(!other.is_zero(), "float division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let ma = self.mant.magnitude();
        let mb = other.mant.magnitude();
        let s = (prec as i64 + 2 + mb.bits() as i64 - ma.bits() as i64).max(0) as u64;
        let num: BigUint = ma << s;
        let (q, r) = (&num / mb, &num % mb);
        let (q, extra) = if r.is_zero() { (q, 0) } else { ((q << 1u32) + 1u32, 1) };
        let neg = self.is_negative() != other.is_negative();
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
        Float::new(m, self.exp - other.exp - s as i64 - extra).round(prec, mode)
    }

    /// Square root rounded in direction `mode`; panics on negative input.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative float");
        if self.is_zero() {
            return Float::zero();
        }
        let m = self.mant.magnitude();
        let mut s = (2 * (prec as i64 + 2) - m.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n: BigUint = m << s as u64;
        let r = n.sqrt();
        let exact = &r * &r == n;
        let e = (self.exp - s) / 2;
        let f = if exact { Float::new(BigInt::from(r), e) } else { Float::new(BigInt::from((r << 1u32) + 1u32), e - 1) };
        f.round(prec, mode)
    }

    /// Upper bound on `√(x² + y²)` at `prec` bits.
    pub fn hypot_upper(x: &Self, y: &Self, prec: u32) -> Self {
        x.mul(x).add(&y.mul(y)).sqrt(prec, Round::Ceil)
    }

    pub fn hypot_lower(x: &Self, y: &Self, prec: u32) -> Self {
        x.mul(x).add(&y.mul(y)).sqrt(prec, Round::Floor)
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            o => return o,
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{} (≈{:e})", self.mant, self.exp, self.to_f64())
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
