//! `F_s(α) = ₂F₁(1/s, 1 − 1/s; 1; α)` for `s ∈ {2, 3, 4, 6}`.
//!
//! Two regimes: the Gauss series around 0 and, since `c = a + b`, the
//! logarithmic expansion around 1,
//!
//! ```text
//! F_s(α) = sin(π/s)/π · Σ cₙ (K_s + hₙ − log w) wⁿ,   w = 1 − α,
//! cₙ = (a)ₙ(b)ₙ/n!²,   K_s = 2ψ(1) − ψ(a) − ψ(b),
//! hₙ = Σ_{j<n} (2/(j+1) − 1/(j+a) − 1/(j+b)),
//! ```
//!
//! with `K_s = ln 16, ln 27, ln 64, ln 432` for `s = 2, 3, 4, 6`. Every
//! `hₙ` lies in `(−K_s, 0]`, which bounds the tail of the second sum.

use num_bigint::BigInt;
use thiserror::Error;

use crate::ball::{BallError, ComplexBall, Float, RealBall, Round, Side};
use crate::exactnum::{Rational, TowerElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("s = {0} is not one of 2, 3, 4, 6")]
    InvalidParameter(u32),
    #[error("argument is too far from both 0 and 1")]
    UnsupportedRegion,
    #[error("argument reaches the branch cut [1, ∞) and no side was given")]
    BranchAmbiguous,
    #[error("β₀ is not 1 − α₀")]
    NotComplementary,
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// Radius of both expansion discs.
pub const DISC_RADIUS: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Gauss series in `α`.
    Direct,
    /// Logarithmic expansion in `1 − α`.
    Connection,
}

/// `a = 1/s`, `b = 1 − 1/s`, `c = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperParams {
    s: u32,
}

impl HyperParams {
    pub fn new(s: u32) -> Result<Self, HyperError> {
        match s {
            2 | 3 | 4 | 6 => Ok(HyperParams { s }),
            _ => Err(HyperError::InvalidParameter(s)),
        }
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn a(&self) -> Rational {
        Rational::new(1.into(), self.s.into())
    }

    pub fn b(&self) -> Rational {
        Rational::new((self.s - 1).into(), self.s.into())
    }

    /// `t_{n+1}/t_n = (sn+1)(sn+s−1) / (s²(n+1)²)` for `cₙ`.
    fn coeff_ratio(&self, n: u64) -> (BigInt, BigInt) {
        let s = self.s as u64;
        let num = BigInt::from(s * n + 1) * BigInt::from(s * n + s - 1);
        let den = BigInt::from(s * s) * BigInt::from(n + 1) * BigInt::from(n + 1);
        (num, den)
    }

    /// `h_{n+1} − hₙ = 2/(n+1) − s/(sn+1) − s/(sn+s−1)`, exact.
    pub fn harmonic_step(&self, n: u64) -> Rational {
        let s = self.s as i64;
        let n = n as i64;
        Rational::new(2.into(), (n + 1).into()) - Rational::new(s.into(), (s * n + 1).into()) - Rational::new(s.into(), (s * n + s - 1).into())
    }

    /// `K_s = 2ψ(1) − ψ(1/s) − ψ(1 − 1/s)`.
    pub fn k_const(&self, prec: u32) -> RealBall {
        let arg = match self.s {
            2 => 16,
            3 => 27,
            4 => 64,
            _ => 432,
        };
        RealBall::from_i64(arg).ln(prec).expect("positive")
    }

    /// Upper bound on `K_s`, used in tail estimates.
    fn k_bound(&self) -> Float {
        Float::from_int(7)
    }

    /// `sin(π/s) = 1/Γ(a)Γ(b)`.
    pub fn sin_pi_over_s(&self, prec: u32) -> RealBall {
        match self.s {
            2 => RealBall::one(),
            3 => RealBall::from_i64(3).sqrt(prec).expect("positive").mul_2exp(-1),
            4 => RealBall::from_i64(2).sqrt(prec).expect("positive").mul_2exp(-1),
            _ => RealBall::one().mul_2exp(-1),
        }
    }
}

fn disc_limit() -> Float {
    Float::from_f64(DISC_RADIUS)
}

/// `1/(1 − ρ)` rounded up; `ρ < 1` required.
fn geometric_factor(rho: &Float) -> Float {
    Float::one().div(&Float::one().sub(rho), 30, Round::Ceil)
}

/// `Σ cₙ zⁿ` and, if `harmonic`, `Σ cₙ hₙ zⁿ` at the exact midpoint of `z`,
/// each with its truncation bound folded into the radius.
fn series(p: &HyperParams, z: &ComplexBall, harmonic: bool, wp: u32) -> (ComplexBall, ComplexBall) {
    let zm = ComplexBall::from_floats(z.re_mid().clone(), z.im_mid().clone());
    let rho = zm.abs_upper();
    let eps = Float::pow2(-(wp as i64) - 8);
    let mut term = ComplexBall::one();
    let mut a_sum = ComplexBall::one();
    let mut b_sum = ComplexBall::zero();
    let mut h = Rational::from_integer(0.into());
    let mut n = 0u64;
    loop {
        let (num, den) = p.coeff_ratio(n);
        term = term.scale_ratio(&num, &den, wp).mul(&zm, wp);
        if harmonic {
            h += p.harmonic_step(n);
            let hb = RealBall::from_rational(&h, wp);
            b_sum = b_sum.add(&term.mul_real(&hb, wp), wp);
        }
        a_sum = a_sum.add(&term, wp);
        n += 1;
        if term.abs_upper() < eps {
            break;
        }
    }
    // the next term is at most |term|·ρ, and later ratios stay below ρ
    let tail = term.abs_upper().mul(&rho).mul(&geometric_factor(&rho));
    let a_sum = a_sum.inflate(&tail);
    let b_sum = b_sum.inflate(&tail.mul(&p.k_bound()));
    (a_sum, b_sum)
}

fn direct(p: &HyperParams, alpha: &ComplexBall, wp: u32) -> Result<ComplexBall, HyperError> {
    let rho = alpha.abs_upper();
    if rho > disc_limit() {
        return Err(HyperError::UnsupportedRegion);
    }
    let (f, _) = series(p, alpha, false, wp);
    // |F′| ≤ Σ n ρ^(n−1) = 1/(1−ρ)² on the disc, since cₙ ≤ 1
    let g = geometric_factor(&rho);
    Ok(f.inflate(&alpha.radius().mul(&g).mul(&g)))
}

fn connection(p: &HyperParams, alpha: &ComplexBall, side: Option<Side>, wp: u32) -> Result<ComplexBall, HyperError> {
    let w = ComplexBall::one().sub(alpha, wp);
    let rho = w.abs_upper();
    if rho > disc_limit() {
        return Err(HyperError::UnsupportedRegion);
    }
    let wm = ComplexBall::from_floats(w.re_mid().clone(), w.im_mid().clone());
    // approaching α from above means approaching w from below; the branch
    // is fixed over the whole disc, not just at its midpoint
    let log_w = match w.log(wp, side.map(Side::flip)) {
        Ok(l) => l,
        Err(BallError::BranchCutStraddle) => return Err(HyperError::BranchAmbiguous),
        Err(e) => return Err(e.into()),
    };
    let (a_sum, b_sum) = series(p, &wm, true, wp);
    let k = ComplexBall::from_real(&p.k_const(wp));
    let inner = k.sub(&log_w, wp).mul(&a_sum, wp).add(&b_sum, wp);
    let pi = RealBall::pi(wp);
    let scale = p.sin_pi_over_s(wp).div(&pi, wp)?;
    let f = inner.mul_real(&scale, wp);
    if w.radius().is_zero() {
        return Ok(f);
    }
    // d/dw[(K − L)A + B] = −A/w + (K − L)A′ + B′ with |A| ≤ 1/(1−ρ),
    // |A′| ≤ 1/(1−ρ)², |B′| ≤ K/(1−ρ)² and |L| ≤ |ln|w|| + 2π
    let wmin = w.abs_lower();
    if !wmin.is_positive() {
        return Err(HyperError::Ball(BallError::Domain("disc around 1 − α contains 0".into())));
    }
    let g = geometric_factor(&rho);
    let ln_bound = RealBall::exact(wmin.clone()).ln(30)?.abs_upper().add(&Float::from_int(7));
    let a_term = g.div(&wmin, 30, Round::Ceil);
    let rest = p.k_bound().mul_2exp(1).add(&ln_bound).mul(&g).mul(&g);
    let deriv = a_term.add(&rest).div(&Float::from_int(2), 30, Round::Ceil);
    Ok(f.inflate(&w.radius().mul(&deriv)))
}

/// `F_s(α)` with the given regime; `side` picks the limit onto `[1, ∞)`.
pub fn f_s_regime(p: &HyperParams, alpha: &ComplexBall, side: Option<Side>, prec: u32, regime: Regime) -> Result<ComplexBall, HyperError> {
    let wp = prec + 32;
    let out = match regime {
        Regime::Direct => direct(p, alpha, wp)?,
        Regime::Connection => connection(p, alpha, side, wp)?,
    };
    Ok(out)
}

/// Certified `F_s(α)`. On `[1, ∞)` the value is the limit from the upper
/// (`Side::Upper`) or lower half-plane and a side is required there.
pub fn f_s(p: &HyperParams, alpha: &ComplexBall, side: Option<Side>, prec: u32) -> Result<ComplexBall, HyperError> {
    let near_zero = alpha.abs_upper();
    let near_one = ComplexBall::one().sub(alpha, prec + 32).abs_upper();
    let regime = if near_zero <= near_one { Regime::Direct } else { Regime::Connection };
    f_s_regime(p, alpha, side, prec, regime)
}

/// `F_s(α₀)/F_s(β₀)` with `β₀ = 1 − α₀`, continued from the upper half-plane.
pub fn multiplier_numeric(p: &HyperParams, alpha0: &TowerElement, beta0: &TowerElement, prec: u32) -> Result<ComplexBall, HyperError> {
    multiplier_numeric_with_side(p, alpha0, beta0, prec, Side::Upper)
}

pub fn multiplier_numeric_with_side(p: &HyperParams, alpha0: &TowerElement, beta0: &TowerElement, prec: u32, side: Side) -> Result<ComplexBall, HyperError> {
    if &(alpha0 + beta0) != &TowerElement::one() {
        return Err(HyperError::NotComplementary);
    }
    let wp = prec + 64;
    let fa = f_s(p, &alpha0.to_ball(wp), Some(side), wp)?;
    let fb = f_s(p, &beta0.to_ball(wp), Some(side), wp)?;
    Ok(fa.div(&fb, prec + 16)?)
}
