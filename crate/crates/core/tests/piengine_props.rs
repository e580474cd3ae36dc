mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ramanujan::derive::Class;
use ramanujan::exactnum::Rational;
use ramanujan::piengine::{binsplit, form_of, pi_digits, reference_pi, tail_bound};

use common::{certificate, certificates, machin_pi};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `Σ_{n<N} (An+B)·(½)ₙ(1/s)ₙ(1−1/s)ₙ/n!³·zⁿ` straight from the Pochhammer symbols.
fn naive_sum(idx: usize, n_terms: u64) -> Rational {
    let f = form_of(&certificates()[idx]).unwrap();
    let s = f.s as i64;
    let z = Rational::new(BigInt::from(f.sign) * &f.z_num, f.z_den.clone());
    let (mut sum, mut w, mut zn) = (Rational::zero(), Rational::one(), Rational::one());
    for n in 0..n_terms as i64 {
        let weight = Rational::from_integer(&f.n_coef * n + &f.const_coef);
        sum += weight * &w * &zn;
        w = w * (q(1, 2) + q(n, 1)) * (q(1, s) + q(n, 1)) * (q(s - 1, s) + q(n, 1)) / q((n + 1).pow(3), 1);
        zn *= &z;
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn binary_splitting_matches_naive_summation(idx in 0usize..5, n in 1u64..=50, cut in 0.0f64..1.0) {
        let f = form_of(&certificates()[idx]).unwrap();
        let whole = binsplit(&f, 0, n);
        prop_assert_eq!(whole.sum(), naive_sum(idx, n));
        let m = ((n as f64 * cut) as u64).clamp(1, n);
        if m < n {
            prop_assert_eq!(binsplit(&f, 0, m).merge(&binsplit(&f, m, n)), whole);
        }
    }

    #[test]
    fn tail_bound_covers_the_remainder(idx in 0usize..5, n in 1u64..=40) {
        let f = form_of(&certificates()[idx]).unwrap();
        let st = binsplit(&f, 0, n);
        let bound = tail_bound(&f, &st, n).unwrap();
        // 200 further terms leave far less than the first omitted one
        let far = binsplit(&f, 0, n + 200).sum();
        let remainder = (far - st.sum()).abs();
        prop_assert!(remainder <= bound);
        prop_assert!(bound.is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn digits_match_machin(digits in 1usize..3000, idx in 0usize..5) {
        let oracle = machin_pi(digits);
        prop_assert_eq!(&reference_pi(digits), &oracle);
        let f = form_of(&certificates()[idx]).unwrap();
        let got = pi_digits(&f, digits).unwrap();
        prop_assert_eq!(got.text, oracle);
        prop_assert_eq!(got.certified, digits);
    }
}

#[test]
fn flagship_needs_few_terms() {
    let f = form_of(certificate("chan-liaw-3-23", Class::Alternating)).unwrap();
    let d = pi_digits(&f, 1000).unwrap();
    assert!(d.terms <= 200, "{} terms", d.terms);
    assert!((f.digits_per_term() - 5.39794).abs() < 1e-5);
}
