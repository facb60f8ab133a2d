//! Characteristic polynomials over the Scalar field.

use super::mat::Mat;
use crate::scalars::Scalar;

/// Univariate polynomial in `x`; index = power.
pub type UPoly = Vec<Scalar>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

pub fn upoly_mul(a: &[Scalar], b: &[Scalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// `∏ (x - v)^k`.
pub fn expand_linear_factors(factors: &[(Scalar, usize)]) -> UPoly {
    let mut p = vec![Scalar::one()];
    for (v, k) in factors {
        for _ in 0..*k {
            p = upoly_mul(&p, &[-v, Scalar::one()]);
        }
    }
    p
}

/// `det(x·I - A)` by the Faddeev–LeVerrier recursion (exact in characteristic zero).
pub fn char_poly(a: &Mat) -> UPoly {
    let n = a.dim();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Mat::zero(n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            next.set(i, i, next.get(i, i) + &coeffs[n - k + 1]);
        }
        m = next;
        let tr = a.mul(&m).expect("square").trace();
        coeffs[n - k] = -(tr.checked_div(&Scalar::from_int(k as i64)).expect("nonzero"));
    }
    coeffs
}
