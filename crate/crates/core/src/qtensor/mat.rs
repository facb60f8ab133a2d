//! Dense square matrices over [`Scalar`], and operators on V⊗V.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// An `n x n` matrix, row-major, 0-based internally.
///
/// The matrix unit `e^i_j` (1-based) has its single 1 at row `i`, column `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    n: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrices have dimension at least 1");
        Mat { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// The matrix unit `e^i_j` with 1-based indices.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i - 1, j - 1, Scalar::one());
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!("row {} has {} entries, expected {n}", r + 1, row.len())));
            }
            entries.extend(row);
        }
        Ok(Mat { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Mat { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based (row, column).
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.n + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| r == c || self.get(r, c).is_zero()))
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.n, self.n, o.n, o.n)))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Mat { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Mat { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Mat { n: self.n, entries: self.entries.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let n = self.n;
        let mut out = vec![Scalar::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &o.entries[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    out[r * n + c] = &out[r * n + c] + &(a * b);
                }
            }
        }
        Ok(Mat { n, entries: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self).expect("same size");
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product: `(X⊗Y)[(a,b),(c,d)] = X[a,c]·Y[b,d]`, first factor major.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.n, o.n);
        let mut out = Self::zero(n * m);
        for a in 0..n {
            for c in 0..n {
                let x = self.get(a, c);
                if x.is_zero() {
                    continue;
                }
                for b in 0..m {
                    for d in 0..m {
                        let y = o.get(b, d);
                        if !y.is_zero() {
                            out.set(a * m + b, c * m + d, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    /// Positions and values where `self` and `o` differ (0-based).
    pub fn differences(&self, o: &Self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                let d = self.get(r, c) - o.get(r, c);
                if !d.is_zero() {
                    out.push((r, c, d));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> MatJson {
        MatJson {
            n: self.n,
            entries: self.rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(j: &MatJson) -> Result<Self> {
        if j.entries.len() != j.n {
            return Err(Error::ShapeMismatch(format!("declared n = {} but {} rows", j.n, j.entries.len())));
        }
        let mut rows = Vec::with_capacity(j.n);
        for row in &j.entries {
            rows.push(row.iter().map(|t| t.parse()).collect::<Result<Vec<Scalar>>>()?);
        }
        Self::from_rows(rows)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: MatJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }
}

/// Wire format `{n, entries: [[rendered scalar]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

/// An endomorphism of V⊗V for `dim V = n`; composite index `(i1, i2) -> i1·n + i2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorOperator {
    n: usize,
    mat: Mat,
}

impl TensorOperator {
    pub fn from_mat(n: usize, mat: Mat) -> Result<Self> {
        if mat.dim() != n * n {
            return Err(Error::ShapeMismatch(format!("operator of size {} on V⊗V with dim V = {n}", mat.dim())));
        }
        Ok(TensorOperator { n, mat })
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Entry at 1-based composite indices `((a,b),(c,d))`.
    pub fn entry(&self, a: usize, b: usize, c: usize, d: usize) -> &Scalar {
        let n = self.n;
        self.mat.get((a - 1) * n + (b - 1), (c - 1) * n + (d - 1))
    }
}
