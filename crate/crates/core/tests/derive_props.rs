mod common;

use proptest::prelude::*;

use ramanujan::ball::{ComplexBall, Float};
use ramanujan::derive::{verify_certificate, CertificateFile, SeriesCertificate};
use ramanujan::exactnum::TowerElement;
use ramanujan::modeq::{builtin, parse_equation, parse_poly, PolyUV};

use common::certificates;

const PREC: u32 = 320;
const H_EXP: i64 = -40;
const MIN_BITS: f64 = 25.0;

fn recenter(b: &ComplexBall) -> ComplexBall {
    ComplexBall::from_floats(b.re_mid().clone(), b.im_mid().clone())
}

fn to_c(x: &TowerElement) -> ComplexBall {
    x.to_ball(PREC)
}

fn dist(a: &ComplexBall, b: &ComplexBall) -> f64 {
    a.sub(b, PREC).abs_upper().to_f64()
}

/// `v(u)` on the branch through `(u₀, v₀)`, by Newton's method.
fn solve_v(p: &PolyUV, u: &ComplexBall, v0: &ComplexBall) -> ComplexBall {
    let pv = p.diff_v();
    let mut v = v0.clone();
    for _ in 0..12 {
        let step = p.eval_ball(u, &v, PREC).div(&pv.eval_ball(u, &v, PREC), PREC).unwrap();
        v = recenter(&v.sub(&step, PREC));
    }
    v
}

/// The root of `t² − Σt + Π` nearest to `near`.
fn alpha_at(c: &ComplexBall, k: u32, u: &ComplexBall, v: &ComplexBall, near: &ComplexBall) -> ComplexBall {
    let uk = c.mul(&u.powi(k as i64, PREC).unwrap(), PREC);
    let vk = c.mul(&v.powi(k as i64, PREC).unwrap(), PREC);
    let sum = ComplexBall::one().add(&uk.sub(&vk, PREC), PREC);
    let disc = recenter(&sum.sqr(PREC).sub(&uk.mul_2exp(2), PREC));
    let root = disc.sqrt(PREC, Some(ramanujan::ball::Side::Upper)).unwrap();
    let a = recenter(&sum.sub(&root, PREC).mul_2exp(-1));
    let b = recenter(&sum.add(&root, PREC).mul_2exp(-1));
    if dist(&a, near) <= dist(&b, near) {
        a
    } else {
        b
    }
}

/// Bits of agreement between a finite difference and the exact value.
fn agreement(fd: &ComplexBall, exact: &TowerElement) -> f64 {
    let err = dist(fd, &to_c(exact));
    let size = to_c(exact).abs_upper().to_f64().max(1e-300);
    if err == 0.0 {
        return f64::INFINITY;
    }
    -(err / size).log2()
}

fn check_finite_differences(cert: &SeriesCertificate) {
    let pt = &cert.point;
    let tr = &cert.trace;
    let k = cert.equation.k;
    let curve = pt.curve(&cert.equation).unwrap();
    let c = to_c(&pt.modular_factor(k).unwrap());
    let (u0, v0, a0) = (to_c(&pt.u0), to_c(&pt.v0), to_c(&pt.alpha0));
    let h = ComplexBall::from_floats(Float::pow2(H_EXP), Float::zero());
    let (up, um) = (u0.add(&h, PREC), u0.sub(&h, PREC));
    let (vp, vm) = (solve_v(&curve, &up, &v0), solve_v(&curve, &um, &v0));
    let (ap, am) = (alpha_at(&c, k, &up, &vp, &a0), alpha_at(&c, k, &um, &vm, &a0));
    let first = |p: &ComplexBall, m: &ComplexBall| p.sub(m, PREC).mul_2exp(-H_EXP - 1);
    let second = |p: &ComplexBall, m: &ComplexBall, mid: &ComplexBall| p.add(m, PREC).sub(&mid.mul_2exp(1), PREC).mul_2exp(-2 * H_EXP);
    let pairs = [
        ("v′", first(&vp, &vm), &tr.v1),
        ("v″", second(&vp, &vm, &v0), &tr.v2),
        ("α′", first(&ap, &am), &tr.alpha1),
        ("α″", second(&ap, &am, &a0), &tr.alpha2),
    ];
    for (what, fd, exact) in pairs {
        let bits = agreement(&fd, exact);
        assert!(bits >= MIN_BITS, "{} {what}: {bits:.1} bits (fd {}, exact {exact})", cert.name(), fd.to_decimal(20));
    }
}

#[test]
fn implicit_derivatives_match_finite_differences() {
    for cert in certificates() {
        check_finite_differences(cert);
    }
}

#[test]
fn certificates_survive_a_save_and_reload() {
    for cert in certificates() {
        let file = CertificateFile::new(cert.clone(), 1_700_000_000);
        let json = file.to_json();
        let back = CertificateFile::from_json(&json).unwrap();
        assert_eq!(&back.certificate, cert);
        assert_eq!(back.to_json(), json);
        assert_eq!(verify_certificate(&back.certificate, 60), verify_certificate(cert, 60));
    }
}

#[test]
fn shipped_equations_are_symmetric_and_canonical() {
    for eq in builtin() {
        assert!(eq.poly.is_symmetric(), "{}", eq.name);
        assert_eq!(parse_equation(&eq.render()).unwrap(), eq);
    }
}

fn coefficient() -> impl Strategy<Value = TowerElement> {
    (-30i64..=30, 1i64..=12, 0usize..6).prop_map(|(n, d, r)| {
        let radical = ["1", "sqrt(2)", "sqrt(3)", "i", "sqrt(5)*i", "sqrt(2)*sqrt(3)"][r];
        TowerElement::from_ratio(n, d) * radical.parse::<TowerElement>().unwrap()
    })
}

fn polynomial() -> impl Strategy<Value = PolyUV> {
    prop::collection::vec((0u32..5, 0u32..5, coefficient()), 0..8).prop_map(|terms| {
        let mut p = PolyUV::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn polynomials_round_trip_through_text(p in polynomial()) {
        let text = p.to_string();
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(&back, &p, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn symmetrisation(p in polynomial()) {
        prop_assert_eq!(p.swap_uv().swap_uv(), p.clone());
        prop_assert!(p.add(&p.swap_uv()).is_symmetric());
        let u = TowerElement::from_ratio(2, 3);
        let v = "sqrt(3) - 1/2*i".parse::<TowerElement>().unwrap();
        prop_assert_eq!(p.swap_uv().eval(&u, &v), p.eval(&v, &u));
    }
}
