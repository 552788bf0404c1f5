use minorsum::ring::{Monomial, Poly, RingTag, Scalar, Vars};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn vars() -> Vars {
    Vars::new(["x1", "x2", "x3"]).unwrap()
}

fn big_int() -> impl Strategy<Value = Scalar> {
    (any::<i64>(), -1000i64..1000).prop_map(|(a, b)| Scalar::Int(BigInt::from(a) * BigInt::from(b)))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..12).prop_map(|(p, q)| Scalar::Rat(BigRational::new(p.into(), q.into())))
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
        let vars = vars();
        Scalar::Poly(Poly::from_terms(
            &vars,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), BigInt::from(k))),
        ))
    })
}

fn ring_axioms(x: &Scalar, y: &Scalar, z: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!((x + y) + z, x + &(y + z));
    prop_assert_eq!(x * &(y + z), x * y + x * z);
    prop_assert_eq!(x + y, y + x);
    prop_assert_eq!(x * y, y * x);
    prop_assert_eq!((x * y) * z, x * &(y * z));
    prop_assert!((x + &(-x)).is_zero());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn integer_axioms(x in big_int(), y in big_int(), z in big_int()) {
        ring_axioms(&x, &y, &z)?;
    }

    #[test]
    fn rational_axioms(x in rational(), y in rational(), z in rational()) {
        ring_axioms(&x, &y, &z)?;
    }

    #[test]
    fn polynomial_axioms(x in poly(), y in poly(), z in poly()) {
        ring_axioms(&x, &y, &z)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalization_is_idempotent(x in poly(), r in rational()) {
        prop_assert_eq!(x.normalized(), x.clone());
        prop_assert_eq!(x.normalized().normalized(), x.normalized());
        prop_assert_eq!(r.normalized().normalized(), r.normalized());
        if let Scalar::Rat(q) = &r {
            prop_assert!(q.denom() > &BigInt::from(0));
        }
    }

    #[test]
    fn exact_divide_inverts_multiplication(x in poly(), y in poly(), a in big_int(), b in big_int()) {
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).exact_divide(&y).unwrap(), x);
        }
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }
    }

    #[test]
    fn display_parse_round_trip(x in poly(), r in rational()) {
        let ring = RingTag::Polynomial(vars());
        prop_assert_eq!(Scalar::parse(&x.to_string(), &ring).unwrap(), x);
        prop_assert_eq!(Scalar::parse(&r.to_string(), &RingTag::Rational).unwrap(), r);
    }
}

#[test]
fn mixed_rings_are_rejected() {
    let p = Scalar::parse("x1", &RingTag::Polynomial(vars())).unwrap();
    assert!(Scalar::int(1).checked_add(&p).is_err());
    let other = RingTag::polynomial(["y"]).unwrap();
    assert!(Scalar::one(&other).checked_mul(&p).is_err());
}
