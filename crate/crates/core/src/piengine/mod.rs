//! π from a rational series by binary splitting.
//!
//! With `p(n) = ±N(2n+1)(sn+1)(sn+s−1)` and `q(n) = 2s²M(n+1)³` the term
//! ratio is `p(n)/q(n)`. Over `[n₁, n₂)` the triple `(P, Q, T)` holds
//! `P = ∏p`, `Q = ∏q` and `T/Q = Σ (An+B)·∏_{n₁≤j<n} p(j)/q(j)`; two adjacent
//! triples merge as `(P₁P₂, Q₁Q₂, T₁Q₂ + P₁T₂)`.

mod algebraic;
mod reference;
mod report;

pub use algebraic::pi_digits_algebraic;
pub use reference::reference_pi;
pub use report::{convergence_report, ConvergenceReport, ConvergenceRow};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::derive::{RationalForm, SeriesCertificate};
use crate::exactnum::Rational;

const GUARD_TERMS: u64 = 10;
const GUARD_DIGITS: usize = 10;
const PARALLEL_SPAN: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiError {
    #[error("only {certified} of {requested} digits could be certified")]
    UncertifiedDigits { requested: usize, certified: usize },
    #[error("certificate has no rational form: {0}")]
    NoRationalForm(String),
    #[error("series does not converge geometrically (|z| ≥ 1)")]
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummationState {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
}

impl SummationState {
    pub fn merge(&self, right: &SummationState) -> SummationState {
        SummationState { p: &self.p * &right.p, q: &self.q * &right.q, t: &self.t * &right.q + &self.p * &right.t }
    }

    /// `T/Q`, the partial sum relative to the first term of the range.
    pub fn sum(&self) -> Rational {
        Rational::new(self.t.clone(), self.q.clone())
    }
}

fn p_term(f: &RationalForm, n: u64) -> BigInt {
    let s = f.s as u64;
    let v = BigInt::from(2 * n + 1) * BigInt::from(s * n + 1) * BigInt::from(s * n + s - 1);
    let v = v * &f.z_num;
    if f.sign < 0 {
        -v
    } else {
        v
    }
}

fn q_term(f: &RationalForm, n: u64) -> BigInt {
    let s = f.s as u64;
    BigInt::from(n + 1).pow(3) * BigInt::from(2 * s * s) * &f.z_den
}

/// `t_{n+1}/t_n` of the unweighted term.
pub fn term_ratio(f: &RationalForm, n: u64) -> Rational {
    Rational::new(p_term(f, n), q_term(f, n))
}

/// The triple for `[n1, n2)`.
pub fn binsplit(f: &RationalForm, n1: u64, n2: u64) -> SummationState {
    assert!(n1 < n2, "empty range");
    if n2 - n1 == 1 {
        let q = q_term(f, n1);
        let w = BigInt::from(n1) * &f.n_coef + &f.const_coef;
        return SummationState { p: p_term(f, n1), t: w * &q, q };
    }
    let m = n1 + (n2 - n1) / 2;
    let (l, r) = if n2 - n1 >= PARALLEL_SPAN {
        rayon::join(|| binsplit(f, n1, m), || binsplit(f, m, n2))
    } else {
        (binsplit(f, n1, m), binsplit(f, m, n2))
    };
    l.merge(&r)
}

/// `⌈D / log₁₀(1/|z|)⌉` plus a guard.
pub fn terms_for_digits(f: &RationalForm, digits: usize) -> u64 {
    let per = f.digits_per_term();
    if per <= 0.0 {
        return u64::MAX;
    }
    (digits as f64 / per).ceil() as u64 + GUARD_TERMS
}

/// `(K_num, K_den)` with `|S − S_N| ≤ |t_N|·K`, where
/// `K = (AN+B)/(1−ρ) + Aρ/(1−ρ)²` and `ρ = |z|` bounds every term ratio.
fn tail_factor(f: &RationalForm, n: u64) -> Option<(BigInt, BigInt)> {
    let rho = Rational::new(f.z_num.clone(), f.z_den.clone());
    let one = Rational::one();
    if rho >= one {
        return None;
    }
    let gap = &one - &rho;
    let a = Rational::from_integer(f.n_coef.abs());
    let b = Rational::from_integer(f.const_coef.abs());
    let k = (&a * Rational::from_integer(n.into()) + b) / &gap + &a * &rho / (&gap * &gap);
    Some((k.numer().clone(), k.denom().clone()))
}

/// A rigorous bound on `|S − S_N|` for the state over `[0, N)`.
pub fn tail_bound(f: &RationalForm, state: &SummationState, n: u64) -> Option<Rational> {
    let (kn, kd) = tail_factor(f, n)?;
    Some(Rational::new(state.p.abs() * kn, state.q.abs() * kd))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiDigits {
    /// `"3."` followed by the certified fractional digits.
    pub text: String,
    pub requested: usize,
    pub certified: usize,
    pub terms: u64,
}

fn common_prefix(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count()
}

fn attempt(f: &RationalForm, digits: usize, n: u64) -> Result<(BigInt, usize), PiError> {
    let st = binsplit(f, 0, n);
    let (kn, kd) = tail_factor(f, n).ok_or(PiError::Divergent)?;
    let e = digits + GUARD_DIGITS;
    let ten_e = BigInt::from(10).pow(e as u32);
    let (s_lo, s_hi) = if f.r.is_one() {
        (ten_e.clone(), ten_e.clone())
    } else {
        let lo = (&f.r * &ten_e * &ten_e).sqrt();
        let hi = &lo + 1;
        (lo, hi)
    };
    let pk = st.p.abs() * &kn;
    let tk = &st.t * &kd;
    let (t_lo, t_hi) = (&tk - &pk, &tk + &pk);
    if !t_lo.is_positive() {
        return Err(PiError::UncertifiedDigits { requested: digits, certified: 0 });
    }
    let ten_d = BigInt::from(10).pow(digits as u32);
    let num = st.q.abs() * &kd * f.c.numer() * &ten_d;
    let den = f.c.denom() * &ten_e;
    let lo = (&num * &s_lo).div_floor(&(&den * &t_hi));
    let hi = (&num * &s_hi).div_floor(&(&den * &t_lo));
    let (ls, hs) = (lo.to_string(), hi.to_string());
    let certified = if lo == hi { digits } else { common_prefix(&ls, &hs).saturating_sub(1).min(digits) };
    Ok((lo, certified))
}

/// π to `digits` decimals (truncated) from a rational form. Every digit is
/// certified by the tail bound; one retry with 10% more terms is made.
pub fn pi_digits(f: &RationalForm, digits: usize) -> Result<PiDigits, PiError> {
    let mut n = terms_for_digits(f, digits);
    if n == u64::MAX {
        return Err(PiError::Divergent);
    }
    let mut last = 0;
    for _ in 0..2 {
        let (v, certified) = attempt(f, digits, n)?;
        if certified >= digits {
            let s = v.to_string();
            let text = format!("{}.{}", &s[..1], &s[1..]);
            return Ok(PiDigits { text, requested: digits, certified, terms: n });
        }
        last = certified;
        n = (n as f64 * 1.1).ceil() as u64;
    }
    Err(PiError::UncertifiedDigits { requested: digits, certified: last })
}

/// The rational form re-derived from the certificate's own `(z, a, b)`.
pub fn form_of(cert: &SeriesCertificate) -> Result<RationalForm, PiError> {
    RationalForm::from_params(cert.trace.s, &cert.z, &cert.a, &cert.b).map_err(|e| PiError::NoRationalForm(e.to_string()))
}

/// π from the certificate's `(z, a, b)`: exact binary splitting when they
/// have a rational form, ball summation when `z` is irrational.
pub fn pi_from_certificate(cert: &SeriesCertificate, digits: usize) -> Result<PiDigits, PiError> {
    match form_of(cert) {
        Ok(f) => pi_digits(&f, digits),
        Err(_) if !cert.z.is_rational() => pi_digits_algebraic(cert.trace.s, &cert.z, &cert.a, &cert.b, digits),
        Err(e) => Err(e),
    }
}

/// `log₁₀(1/|z|)` for any certificate.
pub fn digits_per_term(cert: &SeriesCertificate) -> Option<f64> {
    match form_of(cert) {
        Ok(f) => Some(f.digits_per_term()),
        Err(_) => algebraic::digits_per_term(&cert.z),
    }
}

/// `"3."` and the digits, wrapped at `width` columns, with a final newline.
pub fn format_digits(text: &str, width: usize) -> String {
    let mut out = String::with_capacity(text.len() + text.len() / width + 1);
    let chars: Vec<char> = text.chars().collect();
    for line in chars.chunks(width.max(1)) {
        out.extend(line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::TowerElement;

    fn flagship() -> RationalForm {
        let t = |s: &str| s.parse::<TowerElement>().unwrap();
        RationalForm::from_params(3, &t("-1/250000"), &t("827/4500*sqrt(3)"), &t("4717/1500*sqrt(3)")).unwrap()
    }

    #[test]
    fn first_ratio_and_first_term() {
        let f = flagship();
        assert_eq!(term_ratio(&f, 0), Rational::new((-1).into(), 2_250_000.into()));
        assert_eq!(binsplit(&f, 0, 1).sum(), Rational::from_integer(827.into()));
    }

    #[test]
    fn fifty_digits() {
        let d = pi_digits(&flagship(), 50).unwrap();
        assert_eq!(d.text, "3.14159265358979323846264338327950288419716939937510");
        assert!(d.terms <= 20);
        assert_eq!(pi_digits(&flagship(), 1).unwrap().text, "3.1");
    }

    #[test]
    fn wraps_output() {
        let s = format_digits("3.1415", 3);
        assert_eq!(s, "3.1\n415\n");
    }
}
