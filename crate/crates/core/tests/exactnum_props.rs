use proptest::prelude::*;

use ramanujan::exactnum::{sqrt, sqrt_any, TowerElement};

fn monomial(which: u8) -> TowerElement {
    let i = TowerElement::imag_unit();
    match which % 8 {
        0 => TowerElement::one(),
        1 => TowerElement::sqrt_int(2).unwrap(),
        2 => TowerElement::sqrt_int(3).unwrap(),
        3 => TowerElement::sqrt_int(5).unwrap(),
        4 => TowerElement::sqrt_int(6).unwrap(),
        5 => i,
        6 => TowerElement::sqrt_int(2).unwrap() * i,
        _ => TowerElement::sqrt_int(3).unwrap() * i,
    }
}

fn element() -> impl Strategy<Value = TowerElement> {
    prop::collection::vec((-20i64..=20, 1i64..=9, any::<u8>()), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(TowerElement::zero(), |acc, (n, d, m)| acc + TowerElement::from_ratio(n, d) * monomial(m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &TowerElement::one(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(b.checked_div(&a).unwrap() * a.clone(), b.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn square_roots_of_squares(x in element()) {
        let sq = x.square();
        let y = sqrt_any(&sq).unwrap();
        prop_assert_eq!(y.square(), sq.clone());
        prop_assert!(y == x || y == -x.clone());
        if !x.is_zero() {
            // a nearby ball selects the branch
            prop_assert_eq!(sqrt(&sq, &x.to_ball(64)).unwrap(), x.clone());
        }
    }

    #[test]
    fn balls_enclose_elements(a in element(), b in element()) {
        prop_assert!(a.to_ball(64).contains_element(&a));
        let prod = a.to_ball(96).mul(&b.to_ball(96), 96);
        prop_assert!(prod.contains_element(&(&a * &b)));
    }
}
