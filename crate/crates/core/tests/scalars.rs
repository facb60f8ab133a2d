use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qchar::scalars::{param, quantum_integer, Scalar, Specialization, A, B, Q, T};
use qchar::Error;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn worked_identities() {
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    assert_eq!((&q - &qi) * (&q + &qi), Scalar::q_pow(2) - Scalar::q_pow(-2));
    let lhs = (Scalar::one() - Scalar::q_pow(-4)).checked_div(&(Scalar::one() - Scalar::q_pow(-2))).unwrap();
    assert_eq!(lhs, Scalar::one() + Scalar::q_pow(-2));
    let a2 = Scalar::sym(A).powi(2);
    let b2 = Scalar::sym(B).powi(2);
    let ab = Scalar::sym(A) * Scalar::sym(B);
    assert_eq!(ab.powi(2), &a2 * &b2);
}

#[test]
fn quantum_integers() {
    assert!(quantum_integer(0).is_zero());
    assert!(quantum_integer(1).is_one());
    assert_eq!(quantum_integer(2), s("1 + q^-2"));
    for k in 0..=12 {
        let lhs = quantum_integer(k) * (Scalar::one() - Scalar::q_pow(-2));
        assert_eq!(lhs, Scalar::one() - Scalar::q_pow(-2 * k as i32), "k = {k}");
    }
}

#[test]
fn specialization_examples() {
    let classical = Specialization::classical().with(Q, r(1, 1)).unwrap();
    assert_eq!(s("q - q^-1").specialize(&classical).unwrap(), r(0, 1));
    assert_eq!(quantum_integer(2).specialize(&classical).unwrap(), r(2, 1));
    // zeta = (lambda + mu)/(lambda - mu) with lambda = a^2, mu = b^2
    let zeta = s("(a^2 + b^2)/(a^2 - b^2)");
    let sp = Specialization::new().with(A, r(2, 1)).unwrap().with(B, r(1, 1)).unwrap();
    assert_eq!(zeta.specialize(&sp).unwrap(), r(5, 3));
    let sp = Specialization::new().with(A, r(1, 1)).unwrap().with(B, r(1, 1)).unwrap();
    assert!(matches!(zeta.specialize(&sp), Err(Error::BadSpecialization(_))));
    // the worked value 3 at lambda = 2, mu = 1, with the eigenvalues as free parameters
    let lam_mu = s("(l1 + l2)/(l1 - l2)");
    let sp = Specialization::new().with(param(1), r(2, 1)).unwrap().with(param(2), r(1, 1)).unwrap();
    assert_eq!(lam_mu.specialize(&sp).unwrap(), r(3, 1));
}

#[test]
fn specialization_errors() {
    let x = s("t/(q - 2)");
    let sp = Specialization::new().with(Q, r(2, 1)).unwrap().with(T, r(1, 1)).unwrap();
    assert!(matches!(x.specialize(&sp), Err(Error::BadSpecialization(_))));
    let sp = Specialization::new().with(Q, r(3, 1)).unwrap();
    assert!(matches!(x.specialize(&sp), Err(Error::MissingSymbol(_))));
    assert!(Specialization::new().with(Q, r(1, 1)).is_err());
    assert!(Specialization::new().with(Q, r(-1, 1)).is_err());
    assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
}

#[test]
fn parse_render_examples() {
    assert_eq!(s("q^2 - q^-2").to_string(), "(q^4 - 1)/q^2");
    assert_eq!(s("(q - q^-1)*(a*b)").to_string(), "(q^2*a*b - a*b)/q");
    assert_eq!(s("3/2*t").to_string(), "3/2*t");
    assert_eq!(s("-(a+b)^2/(2*q)").to_string(), "(-1/2*b^2 - a*b - 1/2*a^2)/q");
    for bad in ["", "q +", "(q", "x1", "q^a", "2 $ 3", "1/0"] {
        assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| r(n, d))
}

fn monomial_text() -> impl Strategy<Value = String> {
    let sym = prop::sample::select(vec!["q", "a", "b", "t", "l1"]);
    (prop::collection::vec((sym, 0u8..3), 0..3), -5i64..=5).prop_map(|(fs, c)| {
        let mut t = format!("{c}");
        for (v, e) in fs {
            t.push_str(&format!("*{v}^{e}"));
        }
        t
    })
}

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec(monomial_text(), 1..4).prop_map(|ms| format!("({})", ms.join(" + ")))
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_text(), poly_text()).prop_filter_map("nonzero denominator", |(n, d)| {
        format!("{n}/{d}").parse::<Scalar>().ok()
    })
}

fn point() -> impl Strategy<Value = Specialization> {
    (small_rational(), small_rational(), small_rational(), small_rational(), small_rational())
        .prop_filter_map("generic q", |(q, a, b, t, l)| {
            let mut sp = Specialization::new();
            sp.set(Q, q + r(7, 3)).ok()?;
            sp.set(A, a).ok()?;
            sp.set(B, b).ok()?;
            sp.set(T, t).ok()?;
            sp.set(param(1), l).ok()?;
            Some(sp)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in scalar_strategy(), y in scalar_strategy(), z in scalar_strategy()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn render_round_trips(x in scalar_strategy()) {
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn specialization_is_a_homomorphism(x in scalar_strategy(), y in scalar_strategy(), sp in point()) {
        if let (Ok(vx), Ok(vy)) = (x.specialize(&sp), y.specialize(&sp)) {
            prop_assert_eq!((&x + &y).specialize(&sp).unwrap(), &vx + &vy);
            prop_assert_eq!((&x - &y).specialize(&sp).unwrap(), &vx - &vy);
            prop_assert_eq!((&x * &y).specialize(&sp).unwrap(), &vx * &vy);
            if !num_traits::Zero::is_zero(&vy) {
                prop_assert_eq!(x.checked_div(&y).unwrap().specialize(&sp).unwrap(), &vx / &vy);
            }
        }
    }
}
