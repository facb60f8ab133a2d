use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qchar::cpoly::CPoly;
use qchar::freealg::EngineConfig;
use qchar::presentations::*;
use qchar::scalars::{Scalar, A, B};
use qchar::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

type RMat = Vec<Vec<BigRational>>;

fn mul(x: &RMat, y: &RMat) -> RMat {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
}

/// `S = P·R` for n = 2 at a rational q, written out entry by entry.
fn s_at(q: &BigRational) -> RMat {
    let z = BigRational::zero;
    let mut s = vec![vec![z(); 4]; 4];
    // basis e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2
    s[0][0] = q.clone();
    s[3][3] = q.clone();
    s[1][2] = BigRational::one();
    s[2][1] = BigRational::one();
    s[1][1] = q - q.recip();
    s
}

/// `1 ⊗ A` in the same basis.
fn second(a: &[[BigRational; 2]; 2]) -> RMat {
    let mut m = vec![vec![BigRational::zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                m[2 * k + i][2 * k + j] = a[i][j].clone();
            }
        }
    }
    m
}

fn solves_re(q: &BigRational, a: &[[BigRational; 2]; 2]) -> bool {
    let (s, a2) = (s_at(q), second(a));
    mul(&mul(&mul(&s, &a2), &s), &a2) == mul(&mul(&mul(&a2, &s), &a2), &s)
}

#[test]
fn hand_written_s_matches_the_built_one() {
    let q = rat(5, 3);
    let sp = qchar::scalars::Specialization::new().with(qchar::scalars::Q, q.clone()).unwrap();
    let built = qchar::qtensor::build_s(2);
    for r in 0..4 {
        for c in 0..4 {
            assert_eq!(built.mat().get(r, c).specialize(&sp).unwrap(), s_at(&q)[r][c], "({r},{c})");
        }
    }
}

#[test]
fn re_system_vanishes_exactly_on_solutions() {
    let q = rat(7, 2);
    let system = re_system(&q).unwrap();
    let candidates = [
        [[rat(3, 1), rat(-2, 5)], [rat(4, 1), rat(0, 1)]],
        [[rat(2, 1), rat(0, 1)], [rat(0, 1), rat(2, 1)]],
        [[rat(1, 1), rat(1, 1)], [rat(1, 1), rat(1, 1)]],
        [[rat(0, 1), rat(1, 1)], [rat(0, 1), rat(3, 1)]],
    ];
    for a in &candidates {
        let point: Vec<BigRational> = a.iter().flatten().cloned().collect();
        let vanishes = system.iter().all(|p| p.eval(&point).is_zero());
        assert_eq!(vanishes, solves_re(&q, a), "{a:?}");
    }
}

/// The two irreducible pieces at n = 2: matrices with vanishing (2,2) entry, and scalar matrices.
#[test]
fn components_at_sampled_q() {
    for q in sample_q_values(3, 1) {
        let comps = solution_components(&q).unwrap();
        assert_eq!(comps.len(), 2, "q = {q}");
        let corner = [[rat(3, 1), rat(-5, 2)], [rat(1, 7), rat(0, 1)]];
        let scalar = [[rat(-4, 3), rat(0, 1)], [rat(0, 1), rat(-4, 3)]];
        for a in [&corner, &scalar] {
            assert!(solves_re(&q, a));
            let point: Vec<BigRational> = a.iter().flatten().cloned().collect();
            let on: Vec<bool> = comps.iter().map(|c| c.iter().all(|p| p.eval(&point).is_zero())).collect();
            assert_eq!(on.iter().filter(|&&x| x).count(), 1, "{a:?} at q = {q}");
        }
    }
    let rec = verify_bruteforce_classification(3, 1).unwrap();
    assert!(rec.passed(), "{:?}", rec.witnesses);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn points_of_components_solve_the_equation(
        qn in 2i64..9, qd in 1i64..5, x in -20i64..20, y in -20i64..20, z in 1i64..9,
    ) {
        let q = rat(qn, qd);
        prop_assume!(q != BigRational::one());
        let corner = [[rat(x, z), rat(y, 1)], [rat(y - x, z), rat(0, 1)]];
        let scalar = [[rat(x, z), rat(0, 1)], [rat(0, 1), rat(x, z)]];
        prop_assert!(solves_re(&q, &corner));
        prop_assert!(solves_re(&q, &scalar));
        // nonzero (2,2) entry and not scalar: off both pieces
        prop_assume!(x != 0);
        let off = [[rat(y, 1), rat(1, 1)], [rat(0, 1), rat(x, z)]];
        prop_assert!(!solves_re(&q, &off));
    }

    #[test]
    fn cpoly_arithmetic_matches_evaluation(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let x = CPoly::var(2, 0);
        let y = CPoly::var(2, 1);
        let f = x.mul(&x).sub(&y.scale(&rat(a, 1)));
        let g = x.mul(&y).add(&CPoly::constant(2, rat(b, 1)));
        let p = [rat(c, 1), rat(a - b, 1)];
        prop_assert_eq!(f.mul(&g).eval(&p), f.eval(&p) * g.eval(&p));
        prop_assert_eq!(f.add(&g).eval(&p), f.eval(&p) + g.eval(&p));
    }
}

#[test]
fn classical_orbit_dims_examples() {
    // regular orbit in gl(2): an affine quadric surface
    let dims = classical_orbit_dims(&[1, 1], &[rat(4, 1), rat(1, 1)], 4, 1).unwrap();
    assert_eq!(dims, vec![1, 4, 9, 16, 25]);
    // rank-one projectors in gl(3) are v·wᵀ with w·v = 1, so degree ≤ d functions number C(d+2,2)²
    let dims = classical_orbit_dims(&[1, 2], &[rat(1, 1), rat(0, 1)], 3, 1).unwrap();
    assert_eq!(dims, vec![1, 9, 36, 100]);
    assert!(matches!(classical_orbit_dims(&[1, 1], &[rat(2, 1), rat(2, 1)], 2, 1), Err(Error::DegenerateOrbit)));
}

#[test]
fn classical_orbit_dims_do_not_depend_on_the_seed() {
    let a = classical_orbit_dims(&[1, 1, 1], &[rat(3, 1), rat(1, 1), rat(0, 1)], 2, 1).unwrap();
    let b = classical_orbit_dims(&[1, 1, 1], &[rat(3, 1), rat(1, 1), rat(0, 1)], 2, 99).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, vec![1, 9, 44]);
}

#[test]
fn trace_lemma_and_control() {
    let cfg = EngineConfig::default();
    let x = vec![Scalar::zero(), Scalar::one()];
    assert!(verify_lemma_trp(2, &x, 5, &cfg).unwrap().passed());
    assert!(trp_ordinary_trace_control(2, 5, &cfg).unwrap().passed());
    assert!(matches!(verify_lemma_trp(2, &x, 3, &cfg), Err(Error::BoundTooSmall { .. })));
}

#[test]
fn algebra_lemma_rejects_bad_input() {
    let cfg = EngineConfig::default();
    let beta = Scalar::q() - Scalar::q_pow(-1);
    let shifted = vec![Scalar::one(), Scalar::one()];
    assert!(matches!(verify_lemma_alg(&shifted, &Scalar::one(), &beta, 2, 8, &cfg), Err(Error::InvalidPolynomial(_))));
    let x = vec![Scalar::zero(), Scalar::one()];
    assert!(matches!(verify_lemma_alg(&x, &Scalar::one(), &beta, 4, 2, &cfg), Err(Error::BoundTooSmall { .. })));
    assert!(verify_lemma_alg(&x, &Scalar::one(), &beta, 2, 8, &cfg).unwrap().passed());
}

#[test]
fn fiber_map_needs_degree_five() {
    let cfg = EngineConfig::default();
    assert!(matches!(verify_fiber_map(1, 1, 1, 4, &cfg), Err(Error::BoundTooSmall { .. })));
}

#[test]
fn substitution_and_gl2() {
    assert!(verify_substitution(2).unwrap().passed());
    let rec = verify_gl2_example(4, &EngineConfig::default()).unwrap();
    assert!(rec.passed(), "{:?}", rec.witnesses);
    let ex = Gl2Example::new().unwrap();
    assert_eq!(ex.system.len(), 4);
}

#[test]
fn shift_constant_value() {
    let q = Scalar::q();
    let expected = (Scalar::sym(qchar::scalars::T) * &q * &q).checked_div(&(&q * &q - Scalar::one())).unwrap();
    assert_eq!(shift_constant(), expected);
}

#[test]
fn orbit_characters() {
    let lambda = Scalar::sym(A) * Scalar::sym(A);
    let mu = Scalar::sym(B) * Scalar::sym(B);
    let spec = OrbitQuotientSpec::new(OrbitKind::Symmetric { l: 1, m: 1, lambda: lambda.clone(), mu: mu.clone() }).unwrap();
    let good = qchar::qtensor::family_a_matrix(2, 1, 1, &Scalar::sym(A), &Scalar::sym(B)).unwrap();
    assert!(verify_character(spec.base(), &good).unwrap());
    assert!(verify_orbit_character(&spec, &good).unwrap());
    assert!(verify_orbit_character(&spec, &spec.designated_character().unwrap()).unwrap());
    // the same matrix on the orbit with a shifted second eigenvalue
    let shifted = OrbitQuotientSpec::new(OrbitKind::Symmetric { l: 1, m: 1, lambda, mu: &mu + &Scalar::one() }).unwrap();
    assert!(!verify_orbit_character(&shifted, &good).unwrap());
    let nil = OrbitQuotientSpec::new(OrbitKind::Nilpotent { n: 2 }).unwrap();
    let e = nil.designated_character().unwrap();
    assert!(e.mul(&e).unwrap().is_zero() && !e.is_zero());
    assert!(verify_orbit_character(&nil, &e).unwrap());
}
