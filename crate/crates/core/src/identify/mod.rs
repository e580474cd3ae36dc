//! Recognising numeric values as elements of a quadratic tower.
//!
//! Each of the real and imaginary parts is matched against `q·√g` for every
//! squarefree product `g` of the allowed radicands, using the simplest
//! rational in the quotient interval. Sums of several such terms are
//! searched with an integer relation (LLL) over the whole basis. Every hit is
//! re-evaluated at doubled precision and must overlap the input.

mod lll;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ball::{parse_decimal, ComplexBall, Float, RealBall, Round};
use crate::exactnum::{ExactError, Monomial, Rational, TowerElement};

pub use lll::lll;

pub const DEFAULT_HEIGHT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifyError {
    #[error("no element of height at most {height} over radicands {radicands:?} matches the input")]
    NoMatch { radicands: Vec<u64>, height: u64 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `max(|numerator|, denominator)`.
pub fn height(q: &Rational) -> BigInt {
    q.numer().abs().max(q.denom().clone())
}

/// The rational with smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`.
pub fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_positive(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// 1 and the square roots of all squarefree products of `radicands`, with
/// duplicates removed.
pub fn basis(radicands: &[u64]) -> Result<Vec<TowerElement>, IdentifyError> {
    let mut out: Vec<TowerElement> = vec![TowerElement::one()];
    let mut seen: Vec<Monomial> = vec![Monomial::one()];
    for &r in radicands {
        if r == 0 {
            return Err(IdentifyError::Input("radicand 0".into()));
        }
        let root = TowerElement::sqrt_int(r as i64)?;
        let mut next = Vec::new();
        for b in &out {
            let prod = b * &root;
            let (m, _) = prod.terms().next().expect("product of square roots is nonzero");
            if !seen.contains(m) {
                seen.push(m.clone());
                next.push(TowerElement::from_term(m.clone(), Rational::one()));
            }
        }
        out.extend(next);
    }
    Ok(out)
}

fn real_value(g: &TowerElement, prec: u32) -> RealBall {
    g.to_ball(prec).real_part()
}

fn interval(b: &RealBall) -> (Rational, Rational) {
    (b.lower().to_rational(), b.upper().to_rational())
}

fn accuracy_bits(x: &RealBall) -> u32 {
    if x.rad().is_zero() {
        return 256;
    }
    (-x.rad().mag()).clamp(8, 1 << 16) as u32
}

fn verified(x: &RealBall, cand: &TowerElement) -> bool {
    let prec = 2 * accuracy_bits(x).max(64);
    ComplexBall::from_real(x).overlaps(&cand.to_ball(prec))
}

fn single_term(x: &RealBall, basis: &[TowerElement], h: &BigInt) -> Option<TowerElement> {
    let prec = accuracy_bits(x) + 64;
    let mut best: Option<(BigInt, TowerElement)> = None;
    for g in basis {
        let gb = real_value(g, prec);
        let Ok(y) = x.div(&gb, prec) else { continue };
        let (lo, hi) = interval(&y);
        let q = simplest_rational(&lo, &hi);
        let hq = height(&q);
        if hq > *h {
            continue;
        }
        let cand = g.scale(&q);
        if !verified(x, &cand) {
            continue;
        }
        if best.as_ref().map_or(true, |(bh, _)| hq < *bh) {
            best = Some((hq, cand));
        }
    }
    best.map(|(_, c)| c)
}

fn round_scaled(b: &RealBall, k: u32) -> BigInt {
    let r = b.mid().mul_2exp(k as i64).to_rational();
    let two = BigInt::from(2);
    (r.numer() * &two + r.denom()).div_floor(&(r.denom() * two))
}

fn relation(x: &RealBall, basis: &[TowerElement], h: &BigInt) -> Option<TowerElement> {
    let k = accuracy_bits(x).saturating_sub(4);
    let prec = k + 64;
    let m = basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
    for (j, g) in basis.iter().enumerate() {
        let mut row = vec![BigInt::zero(); m + 2];
        row[j] = BigInt::one();
        row[m + 1] = round_scaled(&real_value(g, prec), k);
        rows.push(row);
    }
    let mut row = vec![BigInt::zero(); m + 2];
    row[m] = BigInt::one();
    row[m + 1] = round_scaled(x, k);
    rows.push(row);
    lll(&mut rows);
    rows.sort_by_key(|r| lll::norm2(r));
    for r in rows {
        let cx = &r[m];
        if cx.is_zero() {
            continue;
        }
        let mut cand = TowerElement::zero();
        let mut ok = true;
        for (j, g) in basis.iter().enumerate() {
            let q = Rational::new(-&r[j], cx.clone());
            if height(&q) > *h {
                ok = false;
                break;
            }
            cand = cand + g.scale(&q);
        }
        if ok && verified(x, &cand) {
            return Some(cand);
        }
    }
    None
}

/// Identifies a real ball as a combination of `basis` with rational
/// coefficients of height at most `height`.
pub fn identify_real(x: &RealBall, basis: &[TowerElement], height: u64) -> Option<TowerElement> {
    let h = BigInt::from(height);
    single_term(x, basis, &h).or_else(|| if basis.len() > 1 { relation(x, basis, &h) } else { None })
}

/// Identifies `re + im·i` with both parts in ℚ(√r₁, …, √rₘ).
pub fn identify_parts(re: &RealBall, im: &RealBall, radicands: &[u64], height: u64) -> Result<TowerElement, IdentifyError> {
    let basis = basis(radicands)?;
    let no_match = || IdentifyError::NoMatch { radicands: radicands.to_vec(), height };
    let a = identify_real(re, &basis, height).ok_or_else(no_match)?;
    let b = identify_real(im, &basis, height).ok_or_else(no_match)?;
    Ok(a + b * TowerElement::imag_unit())
}

/// Identifies a complex ball.
pub fn identify(x: &ComplexBall, radicands: &[u64], height: u64) -> Result<TowerElement, IdentifyError> {
    identify_parts(&x.real_part(), &x.imag_part(), radicands, height)
}

fn printed_part(s: &str) -> Result<RealBall, IdentifyError> {
    let (v, half) = parse_decimal(s).ok_or_else(|| IdentifyError::Input(format!("not a decimal number: {s:?}")))?;
    if v.is_zero() {
        return Ok(RealBall::zero());
    }
    let prec = 4 * s.len() as u32 + 64;
    Ok(RealBall::from_rational(&v, prec).inflate(&Float::from_rational(&half, 30, Round::Ceil)))
}

/// Identifies printed decimals. A nonzero string stands for its rounding
/// interval; a zero part is taken as exactly zero.
pub fn identify_decimal(re: &str, im: &str, radicands: &[u64], height: u64) -> Result<TowerElement, IdentifyError> {
    identify_parts(&printed_part(re)?, &printed_part(im)?, radicands, height)
}
