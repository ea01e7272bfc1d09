use burau_core::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

// Coefficients up to about 2^120 so products overflow any fixed-width type.
fn big_coeff() -> impl Strategy<Value = BigInt> {
    (any::<i64>(), any::<i64>(), 0u32..3).prop_map(|(a, b, k)| {
        let base = BigInt::from(a) * BigInt::from(b);
        base.pow(k.max(1)) + BigInt::from(a)
    })
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..=12, big_coeff()), 0..8).prop_map(LaurentPoly::from_terms)
}

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn eval(p: &LaurentPoly, v: i64) -> BigRational {
    p.evaluate_int(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_commutative_group(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &LaurentPoly::zero(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p + &(-&p), LaurentPoly::zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_unital(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        prop_assert!((&p * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn distributivity(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn no_zero_coefficients_are_stored(p in poly(), q in poly()) {
        for x in [&p + &q, &p - &q, &p * &q] {
            prop_assert!(x.terms().all(|(_, c)| *c != BigInt::from(0)));
        }
    }

    #[test]
    fn monomials_shift_exponents(p in poly(), k in -20i64..=20) {
        prop_assert_eq!(&LaurentPoly::t_pow(k) * &p, p.shift(k));
        prop_assert_eq!(p.shift(k).shift(-k), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), v in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5])) {
        prop_assert_eq!(eval(&(&p + &q), v), eval(&p, v) + eval(&q, v));
        prop_assert_eq!(eval(&(&p * &q), v), eval(&p, v) * eval(&q, v));
    }

    #[test]
    fn evaluation_at_zero_is_an_error(p in poly()) {
        prop_assert!(p.evaluate_int(0).is_err());
    }

    #[test]
    fn inversion_is_an_involutive_ring_map(p in poly(), q in poly()) {
        prop_assert_eq!(p.invert_t().invert_t(), p.clone());
        prop_assert_eq!((&p * &q).invert_t(), &p.invert_t() * &q.invert_t());
        prop_assert_eq!((&p + &q).invert_t(), &p.invert_t() + &q.invert_t());
    }

    #[test]
    fn unit_normal_form(p in poly(), k in -9i64..=9, negate in any::<bool>()) {
        let u = LaurentPoly::monomial(k, if negate { -1 } else { 1 });
        let q = &u * &p;
        prop_assert!(q.unit_equivalent(&p));
        let n = p.unit_normalize();
        prop_assert_eq!(&n.poly, &q.unit_normalize().poly);
        if !p.is_zero() {
            prop_assert_eq!(n.poly.min_exp(), Some(0));
            prop_assert!(n.poly.coeff(0) > BigInt::from(0));
        }
        let rebuilt = &LaurentPoly::monomial(n.shift, n.sign as i64) * &n.poly;
        prop_assert_eq!(rebuilt, p.clone());
    }

    #[test]
    fn division_by_one_minus_t_is_exact(p in poly()) {
        let one_minus_t = LaurentPoly::from_terms([(0i64, 1i64), (1, -1)]);
        let product = &one_minus_t * &p;
        prop_assert_eq!(product.div_one_minus_t(), Some(p.clone()));
        // Divisible exactly when the value at t = 1 vanishes.
        prop_assert_eq!(p.div_one_minus_t().is_some(), p.at_one() == BigInt::from(0));
    }

    #[test]
    fn text_round_trip(p in poly()) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn small_polys_agree_with_dense_multiplication(p in small_poly(), q in small_poly()) {
        // Dense oracle on exponents shifted into 0..=24.
        let dense = |x: &LaurentPoly| {
            let mut v = vec![0i64; 13];
            for (e, c) in x.terms() {
                v[(e + 6) as usize] = i64::try_from(c).unwrap();
            }
            v
        };
        let (a, b) = (dense(&p), dense(&q));
        let mut prod = [0i64; 25];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let expected = LaurentPoly::from_terms(prod.iter().enumerate().map(|(i, &c)| (i as i64 - 12, c)));
        prop_assert_eq!(&p * &q, expected);
    }
}

#[test]
fn examples() {
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    assert_eq!(&p("t^-3 + 1") + &p("-1"), p("t^-3"));
    assert_eq!(&p("1 + t") * &p("1 - t"), p("1 - t^2"));
    assert_eq!(&p("-t") * &p("-t"), p("t^2"));
    assert_eq!(p("1 - t + t^2").evaluate_int(1).unwrap(), BigRational::from_integer(1.into()));
    assert_eq!(p("t^-3").evaluate_int(1).unwrap(), BigRational::from_integer(1.into()));
    assert_eq!(p("t^2 - t^-2").evaluate_int(-1).unwrap(), BigRational::from_integer(0.into()));
}
