//! Roots of unity in ℚ(i, √2, √3) and exact roots of univariate tower
//! polynomials.

use std::collections::BTreeSet;


use crate::ball::{ComplexBall, Float, Round};
use crate::exactnum::{sqrt_any, Rational, TowerElement};
use crate::identify;
use crate::modeq::UniPoly;

use super::DeriveError;

const ISOLATION_BITS: u32 = 256;
const IDENTIFY_HEIGHT: u64 = 1_000_000;

/// `e^{2πi/24} = ((√6+√2) + (√6−√2)i)/4`.
fn zeta24() -> TowerElement {
    "sqrt(6)/4 + sqrt(2)/4 + sqrt(6)/4*i - sqrt(2)/4*i".parse().expect("valid constant")
}

/// `[ζ⁰, ζ¹, …, ζ^{k−1}]` for `ζ = e^{2πi/k}`; `k` must divide 24.
pub fn roots_of_unity(k: u32) -> Result<Vec<TowerElement>, DeriveError> {
    if k == 0 || 24 % k != 0 {
        return Err(DeriveError::NoSingularPoint(format!("k = {k} does not divide 24; its roots of unity are outside ℚ(i, √2, √3)")));
    }
    let step = zeta24().pow(24 / k);
    let mut out = Vec::with_capacity(k as usize);
    let mut z = TowerElement::one();
    for _ in 0..k {
        out.push(z.clone());
        z = &z * &step;
    }
    Ok(out)
}

fn poly_rem(a: &[TowerElement], b: &[TowerElement]) -> Result<Vec<TowerElement>, DeriveError> {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero divisor").inv()?;
    while r.len() >= b.len() {
        let top = r.last().expect("nonempty").clone();
        if !top.is_zero() {
            let f = &top * &lead_inv;
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&f * c);
            }
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    Ok(r)
}

fn poly_div_exact(a: &[TowerElement], b: &[TowerElement]) -> Result<Vec<TowerElement>, DeriveError> {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero divisor").inv()?;
    let mut q = vec![TowerElement::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - b.len();
        let f = &top * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&f * c);
        }
        q[shift] = f;
        r.pop();
    }
    Ok(q)
}

/// `p / gcd(p, p′)`: the same roots, each simple.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, DeriveError> {
    let c = p.coeffs();
    if c.len() <= 2 {
        return Ok(p.clone());
    }
    let dp: Vec<TowerElement> = c.iter().enumerate().skip(1).map(|(n, x)| x.scale(&Rational::from_integer((n as i64).into()))).collect();
    let mut a = c.to_vec();
    let mut b = dp;
    while !b.is_empty() {
        let r = poly_rem(&a, &b)?;
        a = b;
        b = r;
    }
    if a.len() <= 1 {
        return Ok(p.clone());
    }
    Ok(UniPoly::new(poly_div_exact(c, &a)?))
}

fn mid(b: &ComplexBall) -> ComplexBall {
    ComplexBall::from_floats(b.re_mid().clone(), b.im_mid().clone())
}

fn derivative(p: &UniPoly) -> UniPoly {
    UniPoly::new(p.coeffs().iter().enumerate().skip(1).map(|(n, x)| x.scale(&Rational::from_integer((n as i64).into()))).collect())
}

/// Simultaneous Aberth iteration, then Newton inclusion discs
/// `|w − wⱼ| ≤ n·|p(wⱼ)/p′(wⱼ)|`. Pairwise disjoint discs hold one root each.
pub fn isolate_roots(p: &UniPoly, prec: u32) -> Result<Vec<ComplexBall>, DeriveError> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let dp = derivative(p);
    let coeffs = p.coeffs();
    let lead = coeffs[n].to_ball(64).abs_lower().to_f64();
    let bound = 1.0 + coeffs[..n].iter().map(|c| c.to_ball(64).abs_upper().to_f64() / lead).fold(0.0, f64::max);
    let mut z: Vec<ComplexBall> = (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            ComplexBall::from_floats(Float::from_f64(bound * t.cos()), Float::from_f64(bound * t.sin()))
        })
        .collect();
    let tol = -(prec as i64) + 16;
    for _ in 0..500 {
        let mut max_step = i64::MIN;
        for j in 0..n {
            let pz = p.eval_ball(&z[j], prec);
            let dz = dp.eval_ball(&z[j], prec);
            if pz.contains_zero() && pz.abs_upper().is_zero() {
                continue;
            }
            let Ok(ratio) = pz.div(&dz, prec) else { continue };
            let mut sum = ComplexBall::zero();
            for i in (0..n).filter(|&i| i != j) {
                if let Ok(inv) = z[j].sub(&z[i], prec).inv(prec) {
                    sum = sum.add(&inv, prec);
                }
            }
            let denom = ComplexBall::one().sub(&ratio.mul(&sum, prec), prec);
            let Ok(step) = ratio.div(&denom, prec) else { continue };
            let step = mid(&step);
            max_step = max_step.max(step.abs_upper().mag());
            z[j] = mid(&z[j].sub(&step, prec));
        }
        if max_step < tol {
            break;
        }
    }
    let mut discs = Vec::with_capacity(n);
    for zj in &z {
        let pz = p.eval_ball(zj, prec);
        let dz = dp.eval_ball(zj, prec);
        let lower = dz.abs_lower();
        if !lower.is_positive() {
            return Err(DeriveError::IdentificationFailed("root isolation failed: derivative vanishes near a root".into()));
        }
        let r = pz.abs_upper().mul(&Float::from_int(n as i64)).div(&lower, 30, Round::Ceil);
        discs.push(zj.inflate(&r));
    }
    for i in 0..n {
        for j in 0..i {
            if discs[i].overlaps(&discs[j]) {
                return Err(DeriveError::IdentificationFailed("root isolation failed: inclusion discs overlap".into()));
            }
        }
    }
    Ok(discs)
}

fn radicands_of(p: &UniPoly) -> Vec<u64> {
    let mut set: BTreeSet<u64> = [2, 3, 5].into_iter().collect();
    for c in p.coeffs() {
        for (m, _) in c.terms() {
            set.extend(m.primes().iter().copied());
        }
    }
    set.into_iter().collect()
}

fn closed_form(p: &UniPoly) -> Result<Option<Vec<TowerElement>>, DeriveError> {
    let c = p.coeffs();
    match p.degree() {
        Some(1) => Ok(Some(vec![-(&c[0] * &c[1].inv()?)])),
        Some(2) => {
            let disc = &c[1].square() - &(&c[0] * &c[2]).scale(&Rational::from_integer(4.into()));
            // no square root in the tower means no roots in the tower
            let Ok(root) = sqrt_any(&disc) else { return Ok(Some(Vec::new())) };
            let inv = c[2].scale(&Rational::from_integer(2.into())).inv()?;
            Ok(Some(vec![&(&root - &c[1]) * &inv, &(-(&root + &c[1])) * &inv]))
        }
        _ => Ok(None),
    }
}

/// The roots of `p` that lie in the tower, in the order of their certified
/// isolating discs. Each is reconstructed exactly and substituted back;
/// roots outside the tower are skipped.
pub fn exact_roots(p: &UniPoly) -> Result<Vec<TowerElement>, DeriveError> {
    let sf = squarefree_part(p)?;
    let discs = isolate_roots(&sf, ISOLATION_BITS)?;
    let closed = closed_form(&sf)?;
    let radicands = radicands_of(&sf);
    let mut out = Vec::with_capacity(discs.len());
    for disc in &discs {
        let found = match &closed {
            Some(cands) => cands.iter().find(|c| disc.contains_element(c)).cloned(),
            None => identify::identify(disc, &radicands, IDENTIFY_HEIGHT).ok(),
        };
        let Some(root) = found else { continue };
        if !sf.eval(&root).is_zero() {
            return Err(DeriveError::IdentificationFailed(format!("candidate {root} does not satisfy the polynomial exactly")));
        }
        out.push(root);
    }
    Ok(out)
}

/// All `u` with `u^e = w`.
pub fn all_roots_of(w: &TowerElement, e: usize) -> Result<Vec<TowerElement>, DeriveError> {
    if w.is_zero() {
        return Ok(vec![TowerElement::zero()]);
    }
    match e {
        1 => Ok(vec![w.clone()]),
        e if e % 2 == 0 => {
            let y = sqrt_any(w).map_err(|err| DeriveError::IdentificationFailed(format!("√({w}): {err}")))?;
            let mut out = all_roots_of(&y, e / 2)?;
            out.extend(all_roots_of(&-y, e / 2)?);
            Ok(out)
        }
        e => Err(DeriveError::IdentificationFailed(format!("odd root of order {e} of {w}"))),
    }
}
