use proptest::prelude::*;

use hessberg_core::{build_quotient, generators, HessFn, Monomial, Poly, QuotientRing, Q};

const N: usize = 3;

fn term() -> impl Strategy<Value = (Monomial, Q)> {
    (prop::collection::vec(0u16..4, N), -9i64..=9, 1i64..=4).prop_map(|(e, a, b)| {
        (Monomial::from_exponents(&e), Q::new(a.into(), b.into()))
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(), 0..6).prop_map(|ts| Poly::from_terms(N, ts))
}

fn ring() -> QuotientRing {
    let h: HessFn = "B3:5,5,4".parse().unwrap();
    build_quotient(&generators(&h)).unwrap()
}

proptest! {
    #[test]
    fn addition_and_multiplication_commute(a in poly(), b in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates_and_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in poly()) {
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &a, Poly::zero(N));
    }

    #[test]
    fn print_parse_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(Poly::parse(&text, N).unwrap(), a);
    }

    #[test]
    fn terms_stay_sorted(a in poly(), b in poly()) {
        let p = &a * &b;
        prop_assert!(p.terms().windows(2).all(|w| w[0].0 < w[1].0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_a_ring_map(a in poly(), b in poly()) {
        let qr = ring();
        let nf = |p: &Poly| qr.normal_form(p).unwrap();
        prop_assert_eq!(nf(&(&a + &b)), &nf(&a) + &nf(&b));
        prop_assert_eq!(nf(&(&a * &b)), nf(&(&nf(&a) * &nf(&b))));
        prop_assert_eq!(nf(&nf(&a)), nf(&a));
        prop_assert_eq!(qr.coordinates(&a).unwrap(), qr.coordinates_via_matrices(&a).unwrap());
    }
}
