use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use qchar::cpoly::CPoly;
use qchar::poisson::*;
use qchar::qtensor::Mat;
use qchar::scalars::Scalar;
use qchar::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn smat(rows: &[&[i64]]) -> Mat {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()).unwrap()
}

/// Coordinates `x_rc` of an n×n matrix, row-major.
fn coords(n: usize) -> Vec<CPoly> {
    (0..n * n).map(|k| CPoly::var(n * n, k)).collect()
}

/// `Tr(A^k)` as a polynomial in the coordinates.
fn power_trace(n: usize, k: usize) -> CPoly {
    let x = coords(n);
    let mut p: Vec<CPoly> = x.clone();
    for _ in 1..k {
        p = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                (0..n).fold(CPoly::zero(n * n), |acc, l| acc.add(&p[i * n + l].mul(&x[l * n + j])))
            })
            .collect();
    }
    (0..n).fold(CPoly::zero(n * n), |acc, i| acc.add(&p[i * n + i]))
}

#[test]
fn frozen_table_at_n2() {
    let table = extract_semiclassical(2).unwrap();
    let json = table.to_json();
    let frozen = serde_json::json!({
        "n": 2,
        "brackets": {
            "1,1|1,2": "-2*x1_2*x2_2",
            "1,1|2,1": "2*x2_1*x2_2",
            "1,2|2,1": "-2*x1_1*x2_2 + 2*x2_2^2",
            "1,2|2,2": "-2*x1_2*x2_2",
            "2,1|2,2": "2*x2_1*x2_2",
        }
    });
    assert_eq!(json, frozen);
    assert!(table.is_quadratic());
}

#[test]
fn structure_at_n2_and_n3() {
    for n in [2, 3] {
        let table = extract_semiclassical(n).unwrap();
        assert!(table.is_antisymmetric());
        assert!(verify_jacobi(&table));
        assert!(verify_poisson_table(n).unwrap().passed());
        // traces of powers are Casimirs
        for k in 1..=n {
            let f = power_trace(n, k);
            for a in 0..n * n {
                assert!(table.bracket_with(a, &f).is_zero(), "n = {n}, Tr(A^{k}), coordinate {a}");
            }
        }
    }
}

#[test]
fn perturbed_table_breaks_jacobi() {
    let table = extract_semiclassical(2).unwrap();
    let mut brackets: BTreeMap<(usize, usize), CPoly> = table.brackets().clone();
    let entry = brackets.get_mut(&(0, 1)).unwrap();
    *entry = entry.add(&CPoly::var(4, 0).mul(&CPoly::var(4, 2)));
    let perturbed = PoissonTable::from_brackets(2, brackets).unwrap();
    assert!(perturbed.is_antisymmetric());
    assert!(!jacobi_failures(&perturbed).is_empty());
}

#[test]
fn from_brackets_rejects_bad_keys() {
    let mut b = BTreeMap::new();
    b.insert((2, 1), CPoly::var(4, 0));
    assert!(PoissonTable::from_brackets(2, b).is_err());
}

#[test]
fn geometric_consistency() {
    for n in [2, 3] {
        let rec = verify_bracket_consistency(n, 10, 1).unwrap();
        assert!(rec.passed(), "{:?}", rec.witnesses);
    }
    let pts = sample_points(2, 10, 1);
    assert_eq!(pts.len(), 10);
    assert!(pts[0].iter().flatten().all(|x| x.is_zero()));
    assert_eq!(pts, sample_points(2, 10, 1));
}

#[test]
fn classical_tensors() {
    for n in [2, 3] {
        let t = ClassicalTensors::new(n);
        assert!(t.r_is_antisymmetric());
        assert!(t.omega_is_symmetric());
        assert!(t.omega_is_flip());
        assert_eq!(ClassicalTensors::first_order_of_s(n).unwrap(), t.r.add(&t.omega).unwrap());
    }
}

#[test]
fn invariant_part_examples() {
    let a = smat(&[&[2, 0], &[0, 1]]);
    let e21 = Mat::unit(2, 2, 1);
    let e12 = Mat::unit(2, 1, 2);
    // A²[e21, e12] = diag(4,1)·diag(-1,1)
    assert_eq!(invariant_part(&a, &e21, &e12).unwrap(), rat(-3, 1));
    assert_eq!(invariant_part(&a, &e12, &e12).unwrap(), rat(0, 1));
    assert_eq!(invariant_part(&Mat::identity(2), &e21, &e12).unwrap(), rat(0, 1));
    assert!(matches!(invariant_part(&a, &Mat::identity(3), &e12), Err(Error::ShapeMismatch(_))));
}

#[test]
fn reps_coefficient_examples() {
    assert_eq!(reps_coefficient(&rat(2, 1), &rat(1, 1)).unwrap(), rat(3, 1));
    assert_eq!(reps_coefficient(&rat(1, 1), &rat(2, 1)).unwrap(), rat(-3, 1));
    assert_eq!(reps_coefficient(&rat(4, 1), &rat(0, 1)).unwrap(), rat(1, 1));
    assert!(matches!(reps_coefficient(&rat(5, 2), &rat(5, 2)), Err(Error::DegenerateOrbit)));
}

fn small_mat() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 4)
}

fn from_vec(v: &[i64]) -> Mat {
    smat(&[&v[0..2], &v[2..4]])
}

proptest! {
    #[test]
    fn reps_coefficient_is_dilation_invariant(
        a in -40i64..40, b in -40i64..40, d in 1i64..9, nu in prop::sample::select(vec![-5i64, -2, 2, 3, 7]),
    ) {
        prop_assume!(a != b);
        let (li, lj) = (rat(a, d), rat(b, d));
        let c = reps_coefficient(&li, &lj).unwrap();
        prop_assert_eq!(&c, &((&li + &lj) / (&li - &lj)));
        let nu = rat(nu, 1);
        prop_assert_eq!(reps_coefficient(&(&nu * &li), &(&nu * &lj)).unwrap(), c.clone());
        prop_assert_eq!(reps_coefficient(&lj, &li).unwrap(), -c);
    }

    #[test]
    fn invariant_part_is_antisymmetric_and_bilinear(a in small_mat(), x in small_mat(), y in small_mat(), z in small_mat(), k in -4i64..4) {
        let (a, x, y, z) = (from_vec(&a), from_vec(&x), from_vec(&y), from_vec(&z));
        let xy = invariant_part(&a, &x, &y).unwrap();
        prop_assert_eq!(invariant_part(&a, &y, &x).unwrap(), -xy.clone());
        let combo = x.scale(&Scalar::from_int(k)).add(&z).unwrap();
        prop_assert_eq!(
            invariant_part(&a, &combo, &y).unwrap(),
            rat(k, 1) * xy + invariant_part(&a, &z, &y).unwrap()
        );
    }

    #[test]
    fn geometric_bracket_is_antisymmetric(a in small_mat(), x in small_mat(), y in small_mat()) {
        let t = ClassicalTensors::new(2);
        let r = |v: &[i64]| -> RMat { vec![vec![rat(v[0], 1), rat(v[1], 1)], vec![rat(v[2], 1), rat(v[3], 1)]] };
        let (a, x, y) = (r(&a), r(&x), r(&y));
        prop_assert_eq!(t.geometric_bracket(&a, &x, &y), -t.geometric_bracket(&a, &y, &x));
    }
}
