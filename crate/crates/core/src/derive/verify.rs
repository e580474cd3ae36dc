//! Checking a certificate without re-deriving it.

use std::fmt;

use crate::exactnum::{Rational, TowerElement};
use crate::hyper::{multiplier_numeric_with_side, HyperParams};
use crate::piengine::{pi_from_certificate, reference_pi};

use super::{classify_multiplier, m_derivative_ratio, multiplier_squared, series_parameters, SeriesCertificate};

const NUMERIC_BITS: u32 = 80;
/// Twenty decimal digits.
const NUMERIC_MIN_BITS: i64 = 67;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckGroup {
    Exact,
    Numeric,
    Series,
}

impl CheckGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckGroup::Exact => "exact",
            CheckGroup::Numeric => "numeric",
            CheckGroup::Series => "series",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub group: CheckGroup,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub equation: String,
    pub digits: usize,
    pub checks: Vec<Check>,
    /// Terms summed by the series check, when it ran.
    pub terms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verifying {} at {} digits", self.equation, self.digits)?;
        for c in &self.checks {
            writeln!(f, "{} {:<8} {:<24} {}", if c.passed { "PASS" } else { "FAIL" }, c.group.as_str(), c.name, c.detail)?;
        }
        let failed = self.failed().len();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

fn int(n: i64) -> TowerElement {
    TowerElement::from_int(n)
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, group: CheckGroup, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { group, name, passed, detail: detail.into() });
    }

    fn exact(&mut self, name: &'static str, passed: bool, ok: &str, bad: impl FnOnce() -> String) {
        let detail = if passed { ok.to_string() } else { bad() };
        self.push(CheckGroup::Exact, name, passed, detail);
    }
}

/// Runs every exact identity, the numeric multiplier check at 80 bits, and
/// the series check against reference π to `digits` decimals. Failures are
/// report entries; nothing here returns an error.
pub fn verify_certificate(cert: &SeriesCertificate, digits: usize) -> VerificationReport {
    let mut b = Builder { checks: Vec::new() };
    let eq = &cert.equation;
    let pt = &cert.point;
    let tr = &cert.trace;
    let k = eq.k;

    let curve = pt.curve(eq);
    let c = pt.modular_factor(k);
    let zero = int(0);
    let (curve_ok, curve_detail) = match (&curve, &c) {
        (Ok(p), Ok(_)) => {
            let val = p.eval(&pt.u0, &pt.v0);
            (val.is_zero(), if pt.is_scaled() { format!("P(λx₀, λy₀) = {val}, λ^{} = {}", pt.scale_root, pt.scale) } else { format!("P(u₀, v₀) = {val}") })
        }
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    };
    b.exact("point_on_curve", curve_ok, &curve_detail, || curve_detail.clone());
    let c = c.unwrap_or_else(|_| zero.clone());

    let line = pt.zeta.pow(k).is_one() && pt.v0 == &pt.zeta * &pt.u0;
    b.exact("root_of_unity_line", line, "v₀ = ζu₀, ζ^k = 1", || "v₀ ≠ ζu₀ or ζ^k ≠ 1".into());

    let compl = pt.beta0 == &int(1) - &pt.alpha0;
    b.exact("complementary", compl, "β₀ = 1 − α₀", || format!("α₀ + β₀ = {}", &pt.alpha0 + &pt.beta0));

    let uk = &c * &pt.u0.pow(k);
    let vk = &c * &pt.v0.pow(k);
    let prod = !c.is_zero() && &pt.alpha0 * &pt.beta0 == uk && &pt.alpha0 + &pt.beta0 == &(&uk - &vk) + &int(1);
    b.exact("modular_relations", prod, "α₀β₀ = u₀^k, α₀ + β₀ = u₀^k − v₀^k + 1", || "α₀, β₀ do not satisfy the modular relations".into());

    let z_ok = cert.z == (&pt.alpha0 * &pt.beta0).scale(&Rational::from_integer(4.into()));
    b.exact("z", z_ok, "z = 4α₀β₀", || format!("4α₀β₀ = {}", (&pt.alpha0 * &pt.beta0).scale(&Rational::from_integer(4.into()))));

    let (pu, pv) = match &curve {
        Ok(p) => (p.diff_u(), p.diff_v()),
        Err(_) => (eq.poly.diff_u(), eq.poly.diff_v()),
    };
    let (u0, v0) = (&pt.u0, &pt.v0);
    let first = &pu.eval(u0, v0) + &(&pv.eval(u0, v0) * &tr.v1);
    let second = &(&(&pu.diff_u().eval(u0, v0) + &(&pu.diff_v().eval(u0, v0) * &tr.v1).scale(&Rational::from_integer(2.into())))
        + &(&pv.diff_v().eval(u0, v0) * &tr.v1.square()))
        + &(&pv.eval(u0, v0) * &tr.v2);
    b.exact("implicit_derivatives", first.is_zero() && second.is_zero(), "dP/du = d²P/du² = 0 along v(u)", || "v′₀ or v″₀ inconsistent with P".into());

    let kk = Rational::from_integer((k as i64).into());
    let kk1 = Rational::from_integer((k as i64 * (k as i64 - 1)).into());
    let u1 = &c * &u0.pow(k - 1).scale(&kk);
    let u2 = if k >= 2 { &c * &u0.pow(k - 2).scale(&kk1) } else { int(0) };
    let vk1 = &c * &v0.pow(k - 1).scale(&kk);
    let vk2 = if k >= 2 { &c * &v0.pow(k - 2).scale(&kk1) } else { int(0) };
    let s1 = &u1 - &(&vk1 * &tr.v1);
    let s2 = &(&u2 - &(&vk2 * &tr.v1.square())) - &(&vk1 * &tr.v2);
    let two = Rational::from_integer(2.into());
    let ab_ok = &tr.alpha1 + &tr.beta1 == s1
        && &(&tr.alpha1 * &pt.beta0) + &(&pt.alpha0 * &tr.beta1) == u1
        && &tr.alpha2 + &tr.beta2 == s2
        && &(&(&tr.alpha2 * &pt.beta0) + &(&tr.alpha1 * &tr.beta1).scale(&two)) + &(&pt.alpha0 * &tr.beta2) == u2;
    b.exact("alpha_beta_derivatives", ab_ok, "α′, β′, α″, β″ solve the differentiated relations", || "derivative relations fail".into());

    let m2 = multiplier_squared(tr.d, &pt.alpha0, &pt.beta0, &tr.alpha1, &tr.beta1);
    let m_ok = matches!(&m2, Ok(m2) if tr.m0.square() == *m2);
    b.exact("multiplier_identity", m_ok, "m₀² = β₀(1−β₀)α′₀/(d·α₀(1−α₀)β′₀)", || match &m2 {
        Ok(m2) => format!("m₀² = {} but the right-hand side is {m2}", tr.m0.square()),
        Err(e) => e.to_string(),
    });

    let class = classify_multiplier(&tr.m0, tr.d, tr.l).ok().flatten();
    b.exact("multiplier_class", class == Some(cert.class), &format!("m₀ has the {} form", cert.class), || match class {
        Some(c) => format!("m₀ has the {c} form, certificate says {}", cert.class),
        None => format!("m₀ = {} matches neither form", tr.m0),
    });

    let ratio = m_derivative_ratio(&tr.m0, &pt.alpha0, &pt.beta0, &tr.alpha_beta());
    let r_ok = matches!(&ratio, Ok(r) if *r == tr.m_ratio);
    b.exact("m_ratio", r_ok, "m′₀/α′₀ matches the logarithmic derivative", || match &ratio {
        Ok(r) => format!("recomputed m′₀/α′₀ = {r}"),
        Err(e) => e.to_string(),
    });

    let params = series_parameters(cert.class, &pt.alpha0, &pt.beta0, &tr.m_ratio, tr.d, tr.l);
    let p_ok = matches!(&params, Ok((_, a, bb)) if *a == cert.a && *bb == cert.b);
    b.exact("series_parameters", p_ok, "a, b follow from α₀, m′₀/α′₀, d, ℓ", || match &params {
        Ok((_, a, bb)) => format!("expected a = {a}, b = {bb}"),
        Err(e) => e.to_string(),
    });

    // an irrational z has no rational form; a rational z must carry one
    let (form_ok, form_detail) = match &cert.rational_form {
        Some(f) => (f.s == tr.s && f.to_params() == (cert.z.clone(), cert.a.clone(), cert.b.clone()), f.to_string()),
        None if !cert.z.is_rational() => (true, format!("z = {} is irrational; no rational form", cert.z)),
        None => (false, "rational z without a rational form".to_string()),
    };
    b.exact("rational_form", form_ok, &form_detail, || format!("{form_detail} does not expand to (z, a, b)"));

    let numeric = HyperParams::new(tr.s)
        .map_err(|e| e.to_string())
        .and_then(|hp| multiplier_numeric_with_side(&hp, &pt.alpha0, &pt.beta0, NUMERIC_BITS, cert.side).map_err(|e| e.to_string()));
    match numeric {
        Ok(ball) => {
            let ok = ball.rel_accuracy_bits() >= NUMERIC_MIN_BITS && ball.contains_element(&tr.m0);
            b.push(CheckGroup::Numeric, "multiplier_numeric", ok, format!("F(α₀)/F(β₀) = {} ({} side)", ball.to_decimal(20), cert.side.as_str()));
        }
        Err(e) => b.push(CheckGroup::Numeric, "multiplier_numeric", false, e),
    }

    let mut terms = None;
    match pi_from_certificate(cert, digits) {
        Ok(pi) => {
            terms = Some(pi.terms);
            let reference = reference_pi(digits);
            let agree = pi.text.bytes().zip(reference.bytes()).take_while(|(x, y)| x == y).count().saturating_sub(2);
            let ok = pi.text == reference;
            let detail = if ok { format!("{digits} digits of π from {} terms", pi.terms) } else { format!("series agrees with π to {agree} of {digits} digits") };
            b.push(CheckGroup::Series, "pi_digits", ok, detail);
        }
        Err(e) => b.push(CheckGroup::Series, "pi_digits", false, e.to_string()),
    }

    VerificationReport { equation: cert.name().to_string(), digits, checks: b.checks, terms }
}
