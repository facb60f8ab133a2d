//! Admissible pairs and the two canonical families of numerical RE solutions.

use serde::Serialize;

use super::charpoly::{char_poly, expand_linear_factors, UPoly};
use super::mat::Mat;
use super::rmatrix::{build_s, check_numerical_re};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, A, B};

/// A subset `Y ⊂ {1..n}` with a strictly decreasing injective map `σ: Y -> {1..n}`.
///
/// Indices are 1-based; `y` is sorted ascending and `sigma[k]` is the image of `y[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissiblePair {
    pub n: usize,
    pub y: Vec<usize>,
    pub sigma: Vec<usize>,
    pub y_plus: Vec<usize>,
    pub y_minus: Vec<usize>,
    pub b_minus: usize,
    pub b_plus: usize,
}

impl AdmissiblePair {
    pub fn new(n: usize, y: Vec<usize>, sigma: Vec<usize>) -> Result<Self> {
        if y.len() != sigma.len() {
            return Err(Error::InvalidParameters("σ must be defined on all of Y".into()));
        }
        if y.windows(2).any(|w| w[0] >= w[1]) || sigma.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameters("Y must be increasing and σ strictly decreasing".into()));
        }
        if y.iter().chain(&sigma).any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidParameters(format!("indices must lie in 1..={n}")));
        }
        if y.iter().zip(&sigma).any(|(i, s)| i == s) {
            return Err(Error::InvalidParameters("σ may not fix a point".into()));
        }
        let y_plus: Vec<usize> = y.iter().zip(&sigma).filter(|(i, s)| i > s).map(|(i, _)| *i).collect();
        let y_minus: Vec<usize> = y.iter().zip(&sigma).filter(|(i, s)| i < s).map(|(i, _)| *i).collect();
        let img = |i: usize| sigma[y.iter().position(|&x| x == i).expect("in Y")];
        let b_minus = y_minus.iter().copied().chain(y_plus.iter().map(|&i| img(i))).max().unwrap_or(0);
        let b_plus = y_plus.iter().copied().chain(y_minus.iter().map(|&i| img(i))).min().unwrap_or(n + 1);
        if b_minus >= b_plus {
            return Err(Error::InternalInconsistency(format!("b- = {b_minus} is not below b+ = {b_plus}")));
        }
        Ok(AdmissiblePair { n, y, sigma, y_plus, y_minus, b_minus, b_plus })
    }

    pub fn sigma_of(&self, i: usize) -> Option<usize> {
        self.y.iter().position(|&x| x == i).map(|k| self.sigma[k])
    }

    /// `card(Y) ≤ n/2` and `σ(Y) ∩ Y = ∅`, the conditions for the nilpotent-type family.
    pub fn is_type_b(&self) -> bool {
        2 * self.y.len() <= self.n && self.sigma.iter().all(|s| !self.y.contains(s))
    }

    /// Admissible values of `l` for the type-B family: `[b-, b+)` clipped to `0..=n`.
    pub fn l_range(&self) -> std::ops::Range<usize> {
        self.b_minus..self.b_plus.min(self.n + 1)
    }
}

/// Every admissible pair for `n`, ordered by `(|Y|, Y, σ)`.
///
/// Maps with a fixed point are excluded, so that `n = 1` has only the empty pair.
pub fn enumerate_admissible_pairs(n: usize) -> Vec<AdmissiblePair> {
    assert!(n >= 1);
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
            .collect()
    };
    let mut out = Vec::new();
    for k in 0..=n {
        for y in subsets(k) {
            for img in subsets(k) {
                // σ sends the ascending Y onto the image in descending order
                let sigma: Vec<usize> = img.iter().rev().copied().collect();
                if let Ok(p) = AdmissiblePair::new(n, y.clone(), sigma) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    /// `A(l,m; λ,μ)` with `λ = a²`, `μ = b²`, so `√(λμ) = ab`.
    A { l: usize, m: usize, sqrt_lambda: Scalar, sqrt_mu: Scalar },
    /// `B(Y,σ,l; λ)`.
    B { pair: AdmissiblePair, l: usize, lambda: Scalar },
}

impl FamilyParams {
    /// Type A with the symbolic square roots `a`, `b`.
    pub fn symbolic_a(l: usize, m: usize) -> Self {
        FamilyParams::A { l, m, sqrt_lambda: Scalar::sym(A), sqrt_mu: Scalar::sym(B) }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyParams::A { .. } => "A",
            FamilyParams::B { .. } => "B",
        }
    }
}

/// A verified numerical RE solution together with its spectral data.
#[derive(Clone, Debug)]
pub struct NumericalRESolution {
    pub n: usize,
    pub params: FamilyParams,
    pub matrix: Mat,
    /// `(eigenvalue, multiplicity)`, zero-multiplicity entries omitted.
    pub eigenvalues: Vec<(Scalar, usize)>,
    pub char_poly: UPoly,
}

/// The type-A matrix for `n` with square roots `a`, `b` of the eigenvalues.
pub fn family_a_matrix(n: usize, l: usize, m: usize, a: &Scalar, b: &Scalar) -> Result<Mat> {
    if m > l || l + m > n {
        return Err(Error::InvalidParameters(format!("type A needs m ≤ l and l+m ≤ n (l={l}, m={m}, n={n})")));
    }
    let lambda = a * a;
    let mu = b * b;
    let ab = a * b;
    let mut mat = Mat::zero(n);
    for i in 0..l {
        mat.set(i, i, lambda.clone());
    }
    for i in 1..=m {
        let s = l + m + 1 - i;
        mat.set(i - 1, i - 1, mat.get(i - 1, i - 1) + &mu);
        mat.set(i - 1, s - 1, ab.clone());
        mat.set(s - 1, i - 1, -&ab);
    }
    Ok(mat)
}

pub fn family_b_matrix(pair: &AdmissiblePair, l: usize, lambda: &Scalar) -> Result<Mat> {
    if !pair.is_type_b() {
        return Err(Error::InvalidParameters("type B needs card(Y) ≤ n/2 and σ(Y) ∩ Y = ∅".into()));
    }
    if !pair.l_range().contains(&l) {
        return Err(Error::InvalidParameters(format!(
            "l = {l} outside [b-, b+) = [{}, {})",
            pair.b_minus, pair.b_plus
        )));
    }
    let mut mat = Mat::zero(pair.n);
    for i in 0..l {
        mat.set(i, i, lambda.clone());
    }
    for (i, s) in pair.y.iter().zip(&pair.sigma) {
        mat.set(i - 1, s - 1, Scalar::one());
    }
    Ok(mat)
}

/// Builds a canonical solution and checks the RE, the characteristic polynomial and,
/// for nilpotent type B, that the square vanishes.
pub fn build_solution(params: FamilyParams, n: usize) -> Result<NumericalRESolution> {
    let (matrix, eigen) = match &params {
        FamilyParams::A { l, m, sqrt_lambda, sqrt_mu } => {
            let mat = family_a_matrix(n, *l, *m, sqrt_lambda, sqrt_mu)?;
            let eig = vec![
                (sqrt_mu * sqrt_mu, *m),
                (sqrt_lambda * sqrt_lambda, *l),
                (Scalar::zero(), n - l - m),
            ];
            (mat, eig)
        }
        FamilyParams::B { pair, l, lambda } => {
            if pair.n != n {
                return Err(Error::InvalidParameters("admissible pair built for another n".into()));
            }
            let mat = family_b_matrix(pair, *l, lambda)?;
            (mat, vec![(lambda.clone(), *l), (Scalar::zero(), n - l)])
        }
    };
    if !check_numerical_re(&matrix, &build_s(n)) {
        return Err(Error::InternalInconsistency(format!("canonical matrix fails the RE: {params:?}")));
    }
    let cp = char_poly(&matrix);
    let factors: Vec<(Scalar, usize)> = eigen.iter().filter(|(_, k)| *k > 0).cloned().collect();
    if cp != expand_linear_factors(&factors) {
        return Err(Error::InternalInconsistency(format!("characteristic polynomial mismatch for {params:?}")));
    }
    if let FamilyParams::B { lambda, .. } = &params {
        if lambda.is_zero() && !matrix.mul(&matrix)?.is_zero() {
            return Err(Error::InternalInconsistency("nilpotent type-B matrix does not square to zero".into()));
        }
    }
    let eigenvalues = merge_eigen(factors);
    Ok(NumericalRESolution { n, params, matrix, eigenvalues, char_poly: cp })
}

fn merge_eigen(f: Vec<(Scalar, usize)>) -> Vec<(Scalar, usize)> {
    let mut out: Vec<(Scalar, usize)> = Vec::new();
    for (v, k) in f {
        match out.iter_mut().find(|(w, _)| *w == v) {
            Some(e) => e.1 += k,
            None => out.push((v, k)),
        }
    }
    out
}

/// Every canonical parameter choice at size `n` with symbolic eigenvalues:
/// all type-A `(l, m)` and all type-B `(Y, σ, l)` with `λ` symbolic and `λ = 0`.
pub fn canonical_sweep(n: usize) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for l in 0..=n {
        for m in 0..=l.min(n - l) {
            out.push(FamilyParams::symbolic_a(l, m));
        }
    }
    for pair in enumerate_admissible_pairs(n).into_iter().filter(|p| p.is_type_b()) {
        for l in pair.l_range() {
            for lambda in [Scalar::sym(A), Scalar::zero()] {
                out.push(FamilyParams::B { pair: pair.clone(), l, lambda });
            }
        }
    }
    out
}

/// `G·A·G⁻¹` for an invertible diagonal `G`.
pub fn gauge_transform(a: &Mat, g: &Mat) -> Result<Mat> {
    if a.dim() != g.dim() {
        return Err(Error::ShapeMismatch("gauge and matrix sizes differ".into()));
    }
    if !g.is_diagonal() {
        return Err(Error::SingularGauge);
    }
    let n = a.dim();
    let mut inv = Vec::with_capacity(n);
    for i in 0..n {
        inv.push(g.get(i, i).inv().map_err(|_| Error::SingularGauge)?);
    }
    Ok(Mat::from_fn(n, |r, c| g.get(r, r) * a.get(r, c) * &inv[c]))
}
