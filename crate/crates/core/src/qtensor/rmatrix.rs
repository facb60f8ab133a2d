//! The standard gl(n) R-matrix, its braided form, and the identities it satisfies.

use super::mat::{Mat, TensorOperator};
use crate::scalars::Scalar;

fn q_minus_qinv() -> Scalar {
    Scalar::q() - Scalar::q_pow(-1)
}

/// `R = q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q - q⁻¹) Σ_{i<k} e_ki⊗e_ik`.
pub fn build_r(n: usize) -> TensorOperator {
    assert!(n >= 1);
    let mut m = Mat::zero(n * n);
    let q = Scalar::q();
    let h = q_minus_qinv();
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { q.clone() } else { Scalar::one() };
            m.set(i * n + j, i * n + j, v);
        }
    }
    for i in 0..n {
        for k in (i + 1)..n {
            // e_ki ⊗ e_ik sits at row (k,i), column (i,k)
            m.set(k * n + i, i * n + k, h.clone());
        }
    }
    TensorOperator::from_mat(n, m).expect("sizes agree")
}

/// The flip `P = Σ e^i_j ⊗ e^j_i`.
pub fn build_p(n: usize) -> TensorOperator {
    let mut m = Mat::zero(n * n);
    for a in 0..n {
        for b in 0..n {
            m.set(a * n + b, b * n + a, Scalar::one());
        }
    }
    TensorOperator::from_mat(n, m).expect("sizes agree")
}

/// `S = P·R`.
pub fn build_s(n: usize) -> TensorOperator {
    let s = build_p(n).mat().mul(build_r(n).mat()).expect("sizes agree");
    TensorOperator::from_mat(n, s).expect("sizes agree")
}

/// The quantum-trace weight `D = diag(1, q⁻², …, q^(-2n+2))`.
pub fn build_d(n: usize) -> Mat {
    Mat::diagonal(&(0..n).map(|i| Scalar::q_pow(-2 * i as i32)).collect::<Vec<_>>())
}

/// Whether `S² - (q - q⁻¹)S = 1` holds entrywise.
pub fn check_hecke(s: &TensorOperator) -> bool {
    hecke_defect(s).is_zero()
}

pub fn hecke_defect(s: &TensorOperator) -> Mat {
    let m = s.mat();
    let lhs = m.mul(m).expect("square").sub(&m.scale(&q_minus_qinv())).expect("square");
    lhs.sub(&Mat::identity(m.dim())).expect("square")
}

/// `Tr(D·A)`.
pub fn quantum_trace(a: &Mat) -> Scalar {
    let n = a.dim();
    (0..n).map(|i| Scalar::q_pow(-2 * i as i32) * a.get(i, i)).sum()
}

/// `Tr_q(A^k)`.
pub fn quantum_trace_power(a: &Mat, k: u32) -> Scalar {
    quantum_trace(&a.pow(k))
}

/// `S A₂ S A₂ - A₂ S A₂ S` with `A₂ = I⊗A`.
pub fn re_defect(a: &Mat, s: &TensorOperator) -> Mat {
    let n = a.dim();
    assert_eq!(n, s.base_dim(), "matrix and operator sizes differ");
    let a2 = Mat::identity(n).kron(a);
    let sm = s.mat();
    let lhs = sm.mul(&a2).and_then(|x| x.mul(sm)).and_then(|x| x.mul(&a2)).expect("square");
    let rhs = a2.mul(sm).and_then(|x| x.mul(&a2)).and_then(|x| x.mul(sm)).expect("square");
    lhs.sub(&rhs).expect("square")
}

/// The numerical reflection equation `S A₂ S A₂ = A₂ S A₂ S`.
pub fn check_numerical_re(a: &Mat, s: &TensorOperator) -> bool {
    re_defect(a, s).is_zero()
}

/// Braid relation `S₁S₂S₁ = S₂S₁S₂` on V⊗V⊗V with `S₁ = S⊗I`, `S₂ = I⊗S`.
pub fn check_braid(s: &TensorOperator) -> bool {
    let n = s.base_dim();
    let id = Mat::identity(n);
    let s1 = s.mat().kron(&id);
    let s2 = id.kron(s.mat());
    let lhs = s1.mul(&s2).and_then(|x| x.mul(&s1)).expect("square");
    let rhs = s2.mul(&s1).and_then(|x| x.mul(&s2)).expect("square");
    lhs == rhs
}

/// Yang–Baxter `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`, with `R₁₃ = P₂₃R₁₂P₂₃`.
pub fn check_yang_baxter(r: &TensorOperator) -> bool {
    let n = r.base_dim();
    let id = Mat::identity(n);
    let r12 = r.mat().kron(&id);
    let r23 = id.kron(r.mat());
    let p23 = id.kron(build_p(n).mat());
    let r13 = p23.mul(&r12).and_then(|x| x.mul(&p23)).expect("square");
    let lhs = r12.mul(&r13).and_then(|x| x.mul(&r23)).expect("square");
    let rhs = r23.mul(&r13).and_then(|x| x.mul(&r12)).expect("square");
    lhs == rhs
}
