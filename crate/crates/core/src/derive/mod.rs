//! Series parameters from a modular equation, computed exactly.
//!
//! At a point with `β = 1 − α` the relations `u^k = αβ` and
//! `v^k = (1−α)(1−β)` force `v = ζu` with `ζ^k = 1`. Every such `ζ` is
//! tried; `P(u, ζu)` is solved exactly, `v(u)` is differentiated
//! implicitly, and the multiplier `m` and `m′/α′` give `z`, `a`, `b` with
//!
//! ```text
//! Σ (1/2)ₙ(1/s)ₙ(1−1/s)ₙ/(1)ₙ³ · (a + b·n) · zⁿ = 1/π.
//! ```
//!
//! All primes denote `d/du`.

mod certificate;
mod form;
pub mod roots;
mod verify;

pub use certificate::{CertificateError, CertificateFile, Provenance, SCHEMA_VERSION};
pub use form::RationalForm;
pub use verify::{verify_certificate, Check, CheckGroup, VerificationReport};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::ball::{ComplexBall, Side};
use crate::exactnum::{sqrt as tower_sqrt, ExactError, Rational, TowerElement};
use crate::hyper::{multiplier_numeric_with_side, HyperError, HyperParams};
use crate::modeq::{ModeqError, ModularEquation, PolyUV};

const HINT_BITS: u32 = 96;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("no singular point: {0}")]
    NoSingularPoint(String),
    #[error("identification failed: {0}")]
    IdentificationFailed(String),
    #[error("∂P/∂v vanishes at the point")]
    SingularJacobian,
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),
    #[error("multiplier {0} matches neither rational form")]
    UnrecognizedMultiplier(String),
    #[error("series is not rational: {0}")]
    NonRationalSeries(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Modeq(#[from] ModeqError),
}

impl DeriveError {
    /// Variant name, for scripts.
    pub fn name(&self) -> &'static str {
        match self {
            DeriveError::NoSingularPoint(_) => "NoSingularPoint",
            DeriveError::IdentificationFailed(_) => "IdentificationFailed",
            DeriveError::SingularJacobian => "SingularJacobian",
            DeriveError::DegeneratePoint(_) => "DegeneratePoint",
            DeriveError::UnrecognizedMultiplier(_) => "UnrecognizedMultiplier",
            DeriveError::NonRationalSeries(_) => "NonRationalSeries",
            DeriveError::Exact(_) => "ExactError",
            DeriveError::Hyper(_) => "HyperError",
            DeriveError::Modeq(_) => "ModeqError",
        }
    }
}

/// `Positive`: `0 < z < 1`, `m₀ = 1/√d`. `Alternating`: `z < 0`,
/// `m₀ = (√(4d−ℓ) ± √ℓ·i)/2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Positive,
    Alternating,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Positive => "positive",
            Class::Alternating => "alternating",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Class::Positive),
            "alternating" => Ok(Class::Alternating),
            _ => Err(format!("unknown class {s:?} (expected positive or alternating)")),
        }
    }
}

/// A point on the curve in coordinates `u = λx`, `v = λy`, where
/// `λ^scale_root = scale`. Usually `λ = 1`; a nontrivial scale keeps the
/// coordinates in the tower when `u₀` itself would need a nested radical.
/// `u0` and `v0` hold the scaled coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub u0: TowerElement,
    pub v0: TowerElement,
    pub zeta: TowerElement,
    pub alpha0: TowerElement,
    pub beta0: TowerElement,
    pub scale_root: u32,
    pub scale: TowerElement,
}

impl SingularPoint {
    pub fn is_scaled(&self) -> bool {
        !self.scale.is_one()
    }

    /// `λ^n`, defined when `scale_root` divides `n`.
    pub fn lambda_pow(&self, n: u32) -> Option<TowerElement> {
        if self.scale_root == 0 || n % self.scale_root != 0 {
            return None;
        }
        Some(self.scale.pow(n / self.scale_root))
    }

    /// `P(λx, λy)`.
    pub fn curve(&self, eq: &ModularEquation) -> Result<PolyUV, DeriveError> {
        if !self.is_scaled() {
            return Ok(eq.poly.clone());
        }
        let mut out = PolyUV::zero();
        for (&(i, j), c) in eq.poly.terms() {
            let f = self
                .lambda_pow(i + j)
                .ok_or_else(|| DeriveError::DegeneratePoint(format!("scale root {} does not divide degree {}", self.scale_root, i + j)))?;
            out.add_term(i, j, c * &f);
        }
        Ok(out)
    }

    /// `λ^k`, the factor in `αβ = λ^k·x^k`.
    pub fn modular_factor(&self, k: u32) -> Result<TowerElement, DeriveError> {
        self.lambda_pow(k).ok_or_else(|| DeriveError::DegeneratePoint(format!("scale root {} does not divide k = {k}", self.scale_root)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha1: TowerElement,
    pub beta1: TowerElement,
    pub alpha2: TowerElement,
    pub beta2: TowerElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub v1: TowerElement,
    pub v2: TowerElement,
    pub alpha1: TowerElement,
    pub beta1: TowerElement,
    pub alpha2: TowerElement,
    pub beta2: TowerElement,
    pub m0: TowerElement,
    pub m_ratio: TowerElement,
    pub d: u32,
    pub l: u32,
    pub s: u32,
}

impl DerivationTrace {
    pub fn alpha_beta(&self) -> AlphaBeta {
        AlphaBeta { alpha1: self.alpha1.clone(), beta1: self.beta1.clone(), alpha2: self.alpha2.clone(), beta2: self.beta2.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCertificate {
    pub equation: ModularEquation,
    pub class: Class,
    /// Side of the branch cut used for the numeric multiplier.
    pub side: Side,
    pub point: SingularPoint,
    pub trace: DerivationTrace,
    pub z: TowerElement,
    pub a: TowerElement,
    pub b: TowerElement,
    /// `None` when `z`, `a`, `b` admit no rational normal form.
    pub rational_form: Option<RationalForm>,
}

impl SeriesCertificate {
    pub fn name(&self) -> &str {
        &self.equation.name
    }

    /// The identity in normal form, or the raw parameters if there is none.
    pub fn identity(&self) -> String {
        match &self.rational_form {
            Some(f) => f.to_string(),
            None => format!("z = {}, a = {}, b = {}", self.z, self.a, self.b),
        }
    }
}

fn int(n: i64) -> TowerElement {
    TowerElement::from_int(n)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn arg(x: &TowerElement) -> f64 {
    let b = x.to_ball(64);
    let a = b.im_mid().to_f64().atan2(b.re_mid().to_f64());
    if a < -1e-15 {
        a + std::f64::consts::TAU
    } else {
        a.max(0.0)
    }
}

fn sign_of_real(x: &TowerElement) -> i32 {
    if let Some(r) = x.as_rational() {
        return if r.is_zero() { 0 } else if r > Rational::zero() { 1 } else { -1 };
    }
    for prec in [64u32, 256, 1024] {
        let b = x.to_ball(prec).real_part();
        if b.is_positive() {
            return 1;
        }
        if b.is_negative() {
            return -1;
        }
    }
    0
}

/// The point for a candidate `u₀` on the line `v = ζu`, if it satisfies
/// every exact invariant and the class predicate.
fn point_from(
    eq: &ModularEquation,
    class: Class,
    zeta: &TowerElement,
    u0: TowerElement,
    scale_root: u32,
    scale: TowerElement,
) -> Result<Option<SingularPoint>, DeriveError> {
    let draft = SingularPoint { u0, v0: TowerElement::zero(), zeta: zeta.clone(), alpha0: int(0), beta0: int(0), scale_root, scale };
    let Ok(c) = draft.modular_factor(eq.k) else { return Ok(None) };
    let Ok(curve) = draft.curve(eq) else { return Ok(None) };
    let u0 = draft.u0;
    let p = &c * &u0.pow(eq.k);
    if p.is_zero() || !p.is_real() {
        return Ok(None);
    }
    let sp = sign_of_real(&p);
    let ok = match class {
        Class::Alternating => sp < 0,
        Class::Positive => sp > 0 && sign_of_real(&(&int(1) - &p.scale(&q(4, 1)))) > 0,
    };
    if !ok {
        return Ok(None);
    }
    let disc = &int(1) - &p.scale(&q(4, 1));
    let root = tower_sqrt(&disc, &ComplexBall::one())?;
    let alpha0 = (&int(1) - &root).scale(&q(1, 2));
    let beta0 = &int(1) - &alpha0;
    if alpha0.is_zero() || alpha0 == TowerElement::from_rational(q(1, 2)) || alpha0.is_one() {
        return Ok(None);
    }
    let v0 = zeta * &u0;
    let valid = curve.eval(&u0, &v0).is_zero() && &alpha0 * &beta0 == p && &alpha0 + &beta0 == &(&p - &(&c * &v0.pow(eq.k))) + &int(1);
    if !valid {
        return Ok(None);
    }
    Ok(Some(SingularPoint { u0, v0, zeta: zeta.clone(), alpha0, beta0, scale_root: draft.scale_root, scale: draft.scale }))
}

/// Whether every total degree of the equation, and `k`, is a multiple of `e`,
/// so that `P(λx, λy)` and `λ^k` lie in the tower once `λ^e` does.
fn scalable(eq: &ModularEquation, e: usize) -> bool {
    let e = e as u32;
    e > 1 && eq.k % e == 0 && eq.poly.terms().all(|(&(i, j), _)| (i + j) % e == 0)
}

fn points_on_line(eq: &ModularEquation, class: Class, zeta: &TowerElement) -> Result<Vec<SingularPoint>, DeriveError> {
    let q = eq.substitute_scaled(zeta)?;
    if q.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let e = q.power_stride();
    let r = q.compress(e);
    let mut out = Vec::new();
    for w in roots::exact_roots(&r)? {
        if w.is_zero() {
            continue;
        }
        match roots::all_roots_of(&w, e) {
            Ok(us) => {
                for u0 in us {
                    if let Some(pt) = point_from(eq, class, zeta, u0, 1, int(1))? {
                        out.push(pt);
                    }
                }
            }
            // u^e = w leaves the tower; take λ^e = w and x₀ = 1 instead
            Err(_) if scalable(eq, e) => {
                if let Some(pt) = point_from(eq, class, zeta, int(1), e as u32, w)? {
                    out.push(pt);
                }
            }
            Err(_) => {}
        }
    }
    Ok(out)
}

/// Every candidate point of the class, best first: rational `u₀^k` before
/// irrational, then by `arg u₀` and `arg ζ` in `[0, 2π)`.
pub fn candidates(eq: &ModularEquation, class: Class) -> Result<Vec<SingularPoint>, DeriveError> {
    let zetas = roots::roots_of_unity(eq.k)?;
    let per_line: Vec<Result<Vec<SingularPoint>, DeriveError>> = zetas.par_iter().map(|z| points_on_line(eq, class, z)).collect();
    let mut out = Vec::new();
    let mut failure = None;
    for r in per_line {
        match r {
            Ok(pts) => out.extend(pts),
            Err(e) => failure = Some(e),
        }
    }
    if out.is_empty() {
        return Err(failure.unwrap_or_else(|| DeriveError::NoSingularPoint(format!("no {class} candidate on any line v = ζu"))));
    }
    let mut keyed: Vec<((bool, f64, f64), SingularPoint)> =
        out.into_iter().map(|pt| ((!(&pt.alpha0 * &pt.beta0).is_rational(), arg(&pt.u0), arg(&pt.zeta)), pt)).collect();
    keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite keys"));
    Ok(keyed.into_iter().map(|(_, pt)| pt).collect())
}

/// The first candidate point from which a complete derivation succeeds.
pub fn find_singular_point(eq: &ModularEquation, class: Class) -> Result<SingularPoint, DeriveError> {
    derive(eq, class).map(|c| c.point)
}

/// `v′ = −P_u/P_v`, `v″ = −(P_uu + 2P_uv·v′ + P_vv·v′²)/P_v`.
pub fn implicit_derivatives(p: &PolyUV, u0: &TowerElement, v0: &TowerElement) -> Result<(TowerElement, TowerElement), DeriveError> {
    let pu = p.diff_u();
    let pv = p.diff_v();
    let pv0 = pv.eval(u0, v0);
    if pv0.is_zero() {
        return Err(DeriveError::SingularJacobian);
    }
    let inv = pv0.inv()?;
    let v1 = -(&pu.eval(u0, v0) * &inv);
    let puu = pu.diff_u().eval(u0, v0);
    let puv = pu.diff_v().eval(u0, v0);
    let pvv = pv.diff_v().eval(u0, v0);
    let num = &(&puu + &(&puv * &v1).scale(&q(2, 1))) + &(&pvv * &v1.square());
    let v2 = -(&num * &inv);
    Ok((v1, v2))
}

/// Solves `α′ + β′ = S′`, `α′β + αβ′ = Π′` and their derivatives, where
/// `S = c(u^k − v^k) + 1 = α + β`, `Π = c·u^k = αβ` and `c = λ^k`.
pub fn alpha_beta_derivatives(k: u32, pt: &SingularPoint, v1: &TowerElement, v2: &TowerElement) -> Result<AlphaBeta, DeriveError> {
    let (a0, b0) = (&pt.alpha0, &pt.beta0);
    let gap = b0 - a0;
    if gap.is_zero() {
        return Err(DeriveError::DegeneratePoint("α₀ = β₀".into()));
    }
    let inv = gap.inv()?;
    let kk = q(k as i64, 1);
    let kk1 = q(k as i64 * (k as i64 - 1), 1);
    let (u, v) = (&pt.u0, &pt.v0);
    let c = pt.modular_factor(k)?;
    let u1 = &c * &u.pow(k - 1).scale(&kk);
    let u2 = if k >= 2 { &c * &u.pow(k - 2).scale(&kk1) } else { TowerElement::zero() };
    let vk1 = &c * &v.pow(k - 1).scale(&kk);
    let vk2 = if k >= 2 { &c * &v.pow(k - 2).scale(&kk1) } else { TowerElement::zero() };
    let s1 = &u1 - &(&vk1 * v1);
    let s2 = &(&u2 - &(&vk2 * &v1.square())) - &(&vk1 * v2);
    let alpha1 = &(&u1 - &(a0 * &s1)) * &inv;
    let beta1 = &s1 - &alpha1;
    let alpha2 = &(&(&u2 - &(&alpha1 * &beta1).scale(&q(2, 1))) - &(a0 * &s2)) * &inv;
    let beta2 = &s2 - &alpha2;
    Ok(AlphaBeta { alpha1, beta1, alpha2, beta2 })
}

/// `m² = (1/d)·β(1−β)/(α(1−α))·α′/β′`.
pub fn multiplier_squared(d: u32, alpha0: &TowerElement, beta0: &TowerElement, alpha1: &TowerElement, beta1: &TowerElement) -> Result<TowerElement, DeriveError> {
    let den = &(alpha0 * &(&int(1) - alpha0)) * beta1;
    if den.is_zero() {
        return Err(DeriveError::DegeneratePoint("α₀(1−α₀)β′₀ = 0".into()));
    }
    let num = &(beta0 * &(&int(1) - beta0)) * alpha1;
    Ok((&num * &den.inv()?).scale(&q(1, d as i64)))
}

/// Which rational form `m₀` takes, if any. The conjugate alternating form
/// is accepted too: conjugating the whole configuration leaves `z`, `a`,
/// `b` unchanged.
pub fn classify_multiplier(m0: &TowerElement, d: u32, l: u32) -> Result<Option<Class>, DeriveError> {
    let (d, l) = (d as i64, l as i64);
    if *m0 == TowerElement::sqrt_rational(&q(1, d))? {
        return Ok(Some(Class::Positive));
    }
    if 4 * d > l {
        let re = TowerElement::sqrt_int(4 * d - l)?.scale(&q(1, 2 * d));
        let im = TowerElement::sqrt_int(l)?.scale(&q(1, 2 * d));
        let form = &re + &(&im * &TowerElement::imag_unit());
        if *m0 == form || *m0 == form.conj() {
            return Ok(Some(Class::Alternating));
        }
    }
    Ok(None)
}

/// The square root of `m²` on the side of `hint`, with its class.
pub fn multiplier_at(m_squared: &TowerElement, d: u32, l: u32, hint: &ComplexBall) -> Result<(TowerElement, Class), DeriveError> {
    let m0 = tower_sqrt(m_squared, hint)?;
    match classify_multiplier(&m0, d, l)? {
        Some(c) => Ok((m0, c)),
        None => Err(DeriveError::UnrecognizedMultiplier(m0.to_string())),
    }
}

/// `m′/α′ = m/(2α′)·(β′/β − β′/(1−β) − α′/α + α′/(1−α) + α″/α′ − β″/β′)`.
pub fn m_derivative_ratio(m0: &TowerElement, alpha0: &TowerElement, beta0: &TowerElement, ab: &AlphaBeta) -> Result<TowerElement, DeriveError> {
    let one = int(1);
    let inv = |x: &TowerElement, what: &str| x.inv().map_err(|_| DeriveError::DegeneratePoint(format!("{what} = 0")));
    let ia = inv(alpha0, "α₀")?;
    let ib = inv(beta0, "β₀")?;
    let ia1 = inv(&(&one - alpha0), "1 − α₀")?;
    let ib1 = inv(&(&one - beta0), "1 − β₀")?;
    let ida = inv(&ab.alpha1, "α′₀")?;
    let idb = inv(&ab.beta1, "β′₀")?;
    let bracket = &(&(&(&(&ab.beta1 * &ib) - &(&ab.beta1 * &ib1)) - &(&ab.alpha1 * &ia)) + &(&ab.alpha1 * &ia1)) + &(&(&ab.alpha2 * &ida) - &(&ab.beta2 * &idb));
    Ok(&(m0 * &ida.scale(&q(1, 2))) * &bracket)
}

/// `z = 4α₀β₀`, `a = −2α₀β₀·(m′/α′)·d/√ℓ`, and `b = 2(1−2α₀)√(d/ℓ)` for the
/// positive class or `b = 2(1−2α₀)√(d/ℓ − 1/4)` for the alternating class.
pub fn series_parameters(
    class: Class,
    alpha0: &TowerElement,
    beta0: &TowerElement,
    m_ratio: &TowerElement,
    d: u32,
    l: u32,
) -> Result<(TowerElement, TowerElement, TowerElement), DeriveError> {
    let ab = alpha0 * beta0;
    let z = ab.scale(&q(4, 1));
    let inv_sqrt_l = TowerElement::sqrt_int(l as i64)?.inv()?;
    let a = (&(&ab * m_ratio) * &inv_sqrt_l).scale(&q(-2 * d as i64, 1));
    let inner = match class {
        Class::Positive => q(d as i64, l as i64),
        Class::Alternating => q(d as i64, l as i64) - q(1, 4),
    };
    let b = (&int(1) - &alpha0.scale(&q(2, 1))).scale(&q(2, 1)) * TowerElement::sqrt_rational(&inner)?;
    Ok((z, a, b))
}

/// The derivation at a given point, with the numeric multiplier on `side`.
pub fn derive_at(eq: &ModularEquation, class: Class, pt: &SingularPoint, side: Side) -> Result<SeriesCertificate, DeriveError> {
    let (d, l, s) = (eq.degree, eq.level, eq.s);
    let (v1, v2) = implicit_derivatives(&pt.curve(eq)?, &pt.u0, &pt.v0)?;
    let ab = alpha_beta_derivatives(eq.k, pt, &v1, &v2)?;
    let m2 = multiplier_squared(d, &pt.alpha0, &pt.beta0, &ab.alpha1, &ab.beta1)?;
    let hint = multiplier_numeric_with_side(&HyperParams::new(s)?, &pt.alpha0, &pt.beta0, HINT_BITS, side)?;
    let (m0, found) = multiplier_at(&m2, d, l, &hint)?;
    if found != class {
        return Err(DeriveError::UnrecognizedMultiplier(format!("{m0} has the {found} form at a {class} point")));
    }
    if !hint.contains_element(&m0) {
        return Err(DeriveError::UnrecognizedMultiplier(format!("{m0} is not F(α₀)/F(β₀) on the {} side", side.as_str())));
    }
    let m_ratio = m_derivative_ratio(&m0, &pt.alpha0, &pt.beta0, &ab)?;
    let (z, a, b) = series_parameters(class, &pt.alpha0, &pt.beta0, &m_ratio, d, l)?;
    let rational_form = RationalForm::from_params(s, &z, &a, &b).ok();
    let trace = DerivationTrace { v1, v2, alpha1: ab.alpha1, beta1: ab.beta1, alpha2: ab.alpha2, beta2: ab.beta2, m0, m_ratio, d, l, s };
    Ok(SeriesCertificate { equation: eq.clone(), class, side, point: pt.clone(), trace, z, a, b, rational_form })
}

/// Derives the certificate from the first candidate point whose exact
/// multiplier agrees with the continuation of `F(α)/F(β)`, trying the upper
/// side of the branch cut before the lower.
pub fn derive(eq: &ModularEquation, class: Class) -> Result<SeriesCertificate, DeriveError> {
    derive_with_side(eq, class, Side::Upper).or_else(|e| match e {
        DeriveError::UnrecognizedMultiplier(_) => derive_with_side(eq, class, Side::Lower).map_err(|_| e),
        e => Err(e),
    })
}

pub fn derive_with_side(eq: &ModularEquation, class: Class, side: Side) -> Result<SeriesCertificate, DeriveError> {
    let mut last = None;
    for pt in candidates(eq, class)? {
        match derive_at(eq, class, &pt, side) {
            Ok(c) => return Ok(c),
            Err(e @ (DeriveError::UnrecognizedMultiplier(_) | DeriveError::DegeneratePoint(_) | DeriveError::SingularJacobian | DeriveError::Hyper(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| DeriveError::NoSingularPoint("no candidate".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modeq::parse_poly;

    fn t(s: &str) -> TowerElement {
        s.parse().unwrap()
    }

    #[test]
    fn circle_derivatives() {
        let p = parse_poly("u^2 + v^2 - 1").unwrap();
        let (v1, v2) = implicit_derivatives(&p, &int(0), &int(1)).unwrap();
        assert_eq!(v1, int(0));
        assert_eq!(v2, int(-1));
        assert_eq!(implicit_derivatives(&p, &int(1), &int(0)), Err(DeriveError::SingularJacobian));
    }

    #[test]
    fn identity_transformation_has_unit_multiplier() {
        let x = t("1/3");
        let m2 = multiplier_squared(1, &x, &x, &t("2/7"), &t("2/7")).unwrap();
        assert_eq!(m2, int(1));
    }

    #[test]
    fn bracket_vanishes_for_equal_functions() {
        let x = t("1/3");
        let ab = AlphaBeta { alpha1: t("2/7"), beta1: t("2/7"), alpha2: t("5"), beta2: t("5") };
        let r = m_derivative_ratio(&int(1), &x, &x, &ab).unwrap();
        // the six terms cancel in pairs when α = β
        assert_eq!(r, int(0));
    }

    #[test]
    fn half_gives_zero_b() {
        let half = t("1/2");
        let (_, _, b) = series_parameters(Class::Positive, &half, &half, &int(1), 5, 3).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn classifies_multipliers() {
        let m = t("1/46*sqrt(89) + 1/46*sqrt(3)*i");
        assert_eq!(classify_multiplier(&m, 23, 3).unwrap(), Some(Class::Alternating));
        assert_eq!(classify_multiplier(&m.conj(), 23, 3).unwrap(), Some(Class::Alternating));
        assert_eq!(classify_multiplier(&t("1/5*sqrt(5)"), 5, 3).unwrap(), Some(Class::Positive));
        assert_eq!(classify_multiplier(&t("1/5"), 5, 3).unwrap(), None);
    }

    #[test]
    fn class_round_trips_through_text() {
        for c in [Class::Positive, Class::Alternating] {
            assert_eq!(c.to_string().parse::<Class>().unwrap(), c);
        }
        assert!("neither".parse::<Class>().is_err());
    }
}
