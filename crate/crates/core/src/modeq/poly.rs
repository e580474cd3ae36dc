//! Polynomials in `u`, `v` (and univariate in `u`) over tower elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::ball::{BallError, ComplexBall};
use crate::exactnum::TowerElement;

/// `Σ c_{ij} u^i v^j` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyUV {
    terms: BTreeMap<(u32, u32), TowerElement>,
}

impl PolyUV {
    pub fn zero() -> Self {
        PolyUV::default()
    }

    pub fn constant(c: TowerElement) -> Self {
        PolyUV::monomial(0, 0, c)
    }

    pub fn u() -> Self {
        PolyUV::monomial(1, 0, TowerElement::one())
    }

    pub fn v() -> Self {
        PolyUV::monomial(0, 1, TowerElement::one())
    }

    pub fn monomial(i: u32, j: u32, c: TowerElement) -> Self {
        let mut p = PolyUV::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: TowerElement) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(TowerElement::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &TowerElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> TowerElement {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(TowerElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no `u` or `v`.
    pub fn as_constant(&self) -> Option<TowerElement> {
        match self.terms.len() {
            0 => Some(TowerElement::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn swap_uv(&self) -> Self {
        PolyUV { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_uv()
    }

    /// Pairs of mirror-image monomials, counted once.
    pub fn orbit_count(&self) -> usize {
        self.terms.keys().filter(|(i, j)| i <= j || !self.terms.contains_key(&(*j, *i))).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyUV { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &TowerElement) -> Self {
        let mut out = PolyUV::zero();
        for (&(i, j), x) in &self.terms {
            out.add_term(i, j, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PolyUV::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = PolyUV::constant(TowerElement::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn diff_u(&self) -> Self {
        let mut out = PolyUV::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * &TowerElement::from_int(i as i64));
            }
        }
        out
    }

    pub fn diff_v(&self) -> Self {
        self.swap_uv().diff_u().swap_uv()
    }

    pub fn eval(&self, u: &TowerElement, v: &TowerElement) -> TowerElement {
        let du = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let dv = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let up = powers(u, du);
        let vp = powers(v, dv);
        let mut acc = TowerElement::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &up[i as usize]) * &vp[j as usize]);
        }
        acc
    }

    pub fn eval_ball(&self, u: &ComplexBall, v: &ComplexBall, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero();
        for (&(i, j), c) in &self.terms {
            let t = c.to_ball(prec).mul(&u.powi(i as i64, prec).expect("nonnegative power"), prec);
            let t = t.mul(&v.powi(j as i64, prec).expect("nonnegative power"), prec);
            acc = acc.add(&t, prec);
        }
        acc
    }

    /// `P(u, ζu)` collected by powers of `u`.
    pub fn substitute_scaled(&self, zeta: &TowerElement) -> UniPoly {
        let zp = powers(zeta, self.terms.keys().map(|k| k.1).max().unwrap_or(0));
        let mut coeffs = vec![TowerElement::zero(); self.total_degree() as usize + 1];
        for (&(i, j), c) in &self.terms {
            let slot = &mut coeffs[(i + j) as usize];
            *slot = &*slot + &(c * &zp[j as usize]);
        }
        UniPoly::new(coeffs)
    }
}

fn powers(x: &TowerElement, n: u32) -> Vec<TowerElement> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(TowerElement::one());
    for k in 1..=n as usize {
        out.push(&out[k - 1] * x);
    }
    out
}

/// Writes a coefficient so that the output reparses to the same value.
/// Multi-term coefficients are parenthesized; the sign of a single term
/// is returned separately.
fn coefficient_text(c: &TowerElement) -> (bool, String) {
    if c.num_terms() == 1 {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var("u", i), var("v", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

impl fmt::Display for PolyUV {
    /// Terms by descending total degree, then descending power of `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let (neg, mut text) = coefficient_text(c);
            let mono = monomial_text(i, j);
            if !mono.is_empty() {
                if text == "1" {
                    text = mono;
                } else {
                    text = format!("{text}*{mono}");
                }
            }
            match (n, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

/// `Σ c_n u^n`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<TowerElement>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<TowerElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> TowerElement {
        self.coeffs.get(n).cloned().unwrap_or_else(TowerElement::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, u: &TowerElement) -> TowerElement {
        self.coeffs.iter().rev().fold(TowerElement::zero(), |acc, c| &(&acc * u) + c)
    }

    pub fn eval_ball(&self, u: &ComplexBall, prec: u32) -> ComplexBall {
        self.coeffs.iter().rev().fold(ComplexBall::zero(), |acc, c| acc.mul(u, prec).add(&c.to_ball(prec), prec))
    }

    /// Greatest `e` such that only powers divisible by `e` occur.
    pub fn power_stride(&self) -> usize {
        let mut g = 0usize;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && n > 0 {
                g = num_integer::gcd(g, n);
            }
        }
        g.max(1)
    }

    /// `R(w)` with `P(u) = R(u^e)`; panics unless `e` divides every occurring power.
    pub fn compress(&self, e: usize) -> UniPoly {
        assert!(e >= 1 && self.power_stride() % e == 0, "stride {e} does not divide the polynomial");
        UniPoly::new(self.coeffs.iter().step_by(e).cloned().collect())
    }

    pub fn to_balls(&self, prec: u32) -> Result<Vec<ComplexBall>, BallError> {
        Ok(self.coeffs.iter().map(|c| c.to_ball(prec)).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = PolyUV::zero();
        for (n, c) in self.coeffs.iter().enumerate() {
            p.add_term(n as u32, 0, c.clone());
        }
        write!(f, "{p}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TowerElement {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = PolyUV::u().mul(&PolyUV::v()).sub(&PolyUV::v().mul(&PolyUV::u()));
        assert!(p.is_zero());
        let q = PolyUV::u().add(&PolyUV::v()).pow(2);
        assert_eq!(q.coefficient(1, 1), TowerElement::from_int(2));
        assert!(q.is_symmetric());
        assert_eq!(q.orbit_count(), 2);
    }

    #[test]
    fn derivatives_and_evaluation() {
        let p = PolyUV::u().pow(3).mul(&PolyUV::v()).scale(&t("sqrt(2)"));
        assert_eq!(p.diff_u(), PolyUV::u().pow(2).mul(&PolyUV::v()).scale(&t("3*sqrt(2)")));
        assert_eq!(p.diff_v(), PolyUV::u().pow(3).scale(&t("sqrt(2)")));
        assert_eq!(p.eval(&t("2"), &t("i")), t("8*sqrt(2)*i"));
    }

    #[test]
    fn univariate_compression() {
        let p = UniPoly::new(vec![t("1"), t("0"), t("0"), t("0"), t("-2"), t("0"), t("0"), t("0"), t("3")]);
        assert_eq!(p.power_stride(), 4);
        assert_eq!(p.compress(4), UniPoly::new(vec![t("1"), t("-2"), t("3")]));
        assert_eq!(p.eval(&t("i")), t("2"));
        assert_eq!(p.to_string(), "3*u^8 - 2*u^4 + 1");
    }

    #[test]
    fn renders_multi_term_coefficients() {
        let p = PolyUV::monomial(1, 1, t("1 + sqrt(2)")).add(&PolyUV::constant(t("-1/2")));
        assert_eq!(p.to_string(), "(1 + sqrt(2))*u*v - 1/2");
    }
}
