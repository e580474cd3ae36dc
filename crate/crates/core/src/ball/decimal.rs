//! Decimal input and certified decimal output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactnum::Rational;

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

fn trunc_scaled(x: &Rational, k: usize) -> BigInt {
    let s = x * Rational::from_integer(pow10(k));
    s.numer().abs().div_floor(s.denom())
}

fn fixed(mag: &BigInt, frac: usize, negative: bool) -> String {
    let mut digits = mag.to_string();
    if digits.len() <= frac {
        digits = "0".repeat(frac + 1 - digits.len()) + &digits;
    }
    let split = digits.len() - frac;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if frac > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

/// Digits shared by every point of `[lo, hi]` when truncated toward zero,
/// with at most `max_frac` fractional digits. An interval straddling zero
/// renders as `"0"` only when both ends truncate to zero, otherwise `"?"`.
pub fn render(lo: &Rational, hi: &Rational, max_frac: usize) -> String {
    let negative = hi.is_negative();
    if !negative && lo.is_negative() {
        return if trunc_scaled(lo, 0).is_zero() && trunc_scaled(hi, 0).is_zero() { "0".into() } else { "?".into() };
    }
    let (a, b) = if negative { (hi.abs(), lo.abs()) } else { (lo.clone(), hi.clone()) };
    let mut frac = max_frac;
    loop {
        let ta = trunc_scaled(&a, frac);
        let tb = trunc_scaled(&b, frac);
        if ta == tb {
            return fixed(&ta, frac, negative && !ta.is_zero());
        }
        if frac == 0 {
            return "?".into();
        }
        frac -= 1;
    }
}

/// Parses `[-]digits[.digits][e[±]digits]` into its exact value and half a
/// unit in the last printed place.
pub fn parse(s: &str) -> Option<(Rational, Rational)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(p) => (&body[..p], body[p + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").trim_start_matches('0').parse().unwrap_or_default();
    let scale = exp - frac.len() as i64;
    let unit = if scale >= 0 {
        Rational::from_integer(pow10(scale as usize))
    } else {
        Rational::new(BigInt::from(1), pow10((-scale) as usize))
    };
    let mut value = Rational::from_integer(digits) * &unit;
    if neg {
        value = -value;
    }
    Some((value, unit / Rational::from_integer(BigInt::from(2))))
}
