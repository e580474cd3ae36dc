//! Square roots inside quadratic towers.
//!
//! `x = a + b·γ` with `γ² = g` and `a`, `b` free of `γ`. If `y = c + d·γ`
//! squares to `x` then `c² + g·d² = a`, `2cd = b`, and `n² = a² − g·b²`
//! gives `c² = (a ± n)/2`. Recursing on `n` and on `c` removes one
//! generator per level; rational radicands adjoin fresh primes. The search
//! depth is bounded, so nested radicals outside the multiquadratic closure
//! surface as `NotRepresentable`.

use super::tower::{Generator, Rational, TowerElement};
use super::ExactError;
use crate::ball::ComplexBall;

/// Some square root of `x` (sign unspecified).
pub fn sqrt_any(x: &TowerElement) -> Result<TowerElement, ExactError> {
    let depth = 2 * x.generators().len() + 2;
    let y = sqrt_rec(x, depth)?;
    debug_assert_eq!(&y * &y, *x);
    Ok(y)
}

fn sqrt_rec(x: &TowerElement, depth: usize) -> Result<TowerElement, ExactError> {
    if let Some(q) = x.as_rational() {
        return TowerElement::sqrt_rational(&q);
    }
    if depth == 0 {
        return Err(ExactError::NotRepresentable(format!("no square root of {x} found in the searched towers")));
    }
    let gens = x.generators();
    let g = if gens.contains(&Generator::I) {
        Generator::I
    } else {
        *gens.iter().next_back().expect("non-rational element has a generator")
    };
    let g_sq = match g {
        Generator::I => TowerElement::from_int(-1),
        Generator::Sqrt(p) => TowerElement::from_rational(Rational::from_integer(p.into())),
    };
    let gamma = TowerElement::generator_element(g);
    let (a, b) = x.split(g);
    let norm = &a.square() - &(&g_sq * &b.square());
    let n = sqrt_rec(&norm, depth - 1)?;
    let half = Rational::new(1.into(), 2.into());
    let mut last_err = None;
    for cand in [&a + &n, &a - &n] {
        let c_sq = cand.scale(&half);
        if c_sq.is_zero() {
            continue;
        }
        let c = match sqrt_rec(&c_sq, depth - 1) {
            Ok(c) => c,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let d = b.checked_div(&c.scale(&Rational::from_integer(2.into())))?;
        let y = &c + &(&d * &gamma);
        if y.square() == *x {
            return Ok(y);
        }
    }
    Err(last_err.unwrap_or_else(|| ExactError::NotRepresentable(format!("no square root of {x} found in the searched towers"))))
}

/// The square root of `x` lying on the same side as `hint`, i.e. with
/// `Re(y·conj(hint)) > 0`.
pub fn sqrt(x: &TowerElement, hint: &ComplexBall) -> Result<TowerElement, ExactError> {
    if x.is_zero() {
        return Err(ExactError::NotRepresentable("square root of zero has no branch".into()));
    }
    let y = sqrt_any(x)?;
    choose_branch(y, hint)
}

/// Picks `y` or `−y` by agreement with a numeric hint.
pub fn choose_branch(y: TowerElement, hint: &ComplexBall) -> Result<TowerElement, ExactError> {
    for prec in [64u32, 256, 1024] {
        let yb = y.to_ball(prec);
        let dot = yb.mul(&hint.conj(), prec).real_part();
        if dot.is_positive() {
            return Ok(y);
        }
        if dot.is_negative() {
            return Ok(-y);
        }
    }
    Err(ExactError::AmbiguousBranch)
}
