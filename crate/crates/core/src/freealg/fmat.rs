use std::sync::Arc;

use super::element::FreeElement;
use super::word::Alphabet;
use crate::error::{Error, Result};
use crate::qtensor::Mat;
use crate::scalars::Scalar;

/// Square matrix with free-algebra entries, for matrix-form relations.
#[derive(Clone, Debug, PartialEq)]
pub struct FMat {
    n: usize,
    alphabet: Arc<Alphabet>,
    entries: Vec<FreeElement>,
}

impl FMat {
    pub fn from_fn(alphabet: &Arc<Alphabet>, n: usize, mut f: impl FnMut(usize, usize) -> FreeElement) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        FMat { n, alphabet: alphabet.clone(), entries }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, n: usize) -> Self {
        Self::from_fn(alphabet, n, |_, _| FreeElement::zero(alphabet))
    }

    pub fn identity(alphabet: &Arc<Alphabet>, n: usize) -> Self {
        Self::from_fn(alphabet, n, |r, c| {
            if r == c {
                FreeElement::one(alphabet)
            } else {
                FreeElement::zero(alphabet)
            }
        })
    }

    /// Constant matrix.
    pub fn from_mat(alphabet: &Arc<Alphabet>, m: &Mat) -> Self {
        Self::from_fn(alphabet, m.dim(), |r, c| FreeElement::constant(alphabet, m.get(r, c).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn get(&self, r: usize, c: usize) -> &FreeElement {
        &self.entries[r * self.n + c]
    }

    pub fn entries(&self) -> &[FreeElement] {
        &self.entries
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.n, o.n)));
        }
        if *self.alphabet != *o.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_fn(&self.alphabet, self.n, |r, c| self.get(r, c) + o.get(r, c)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_fn(&self.alphabet, self.n, |r, c| self.get(r, c) - o.get(r, c)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.n;
        Ok(Self::from_fn(&self.alphabet, n, |r, c| {
            let mut acc = FreeElement::zero(&self.alphabet);
            for k in 0..n {
                let a = self.get(r, k);
                let b = o.get(k, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::from_fn(&self.alphabet, self.n, |r, c| self.get(r, c).scale(k))
    }

    pub fn add_scalar(&self, k: &Scalar) -> Self {
        Self::from_fn(&self.alphabet, self.n, |r, c| {
            if r == c {
                self.get(r, c) + &FreeElement::constant(&self.alphabet, k.clone())
            } else {
                self.get(r, c).clone()
            }
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(&self.alphabet, self.n);
        for _ in 0..k {
            out = out.mul(self).expect("same shape");
        }
        out
    }

    /// `Σ weight_i · M_ii`.
    pub fn weighted_trace(&self, weights: &[Scalar]) -> FreeElement {
        let mut acc = FreeElement::zero(&self.alphabet);
        for (i, w) in weights.iter().enumerate().take(self.n) {
            acc = &acc + &self.get(i, i).scale(w);
        }
        acc
    }

    pub fn trace(&self) -> FreeElement {
        self.weighted_trace(&vec![Scalar::one(); self.n])
    }

    /// `1 ⊗ self` with the first factor as the major index.
    pub fn in_second_factor(&self) -> Self {
        let n = self.n;
        Self::from_fn(&self.alphabet, n * n, |r, c| {
            if r / n == c / n {
                self.get(r % n, c % n).clone()
            } else {
                FreeElement::zero(&self.alphabet)
            }
        })
    }

    /// `self ⊗ 1`.
    pub fn in_first_factor(&self) -> Self {
        let n = self.n;
        Self::from_fn(&self.alphabet, n * n, |r, c| {
            if r % n == c % n {
                self.get(r / n, c / n).clone()
            } else {
                FreeElement::zero(&self.alphabet)
            }
        })
    }

    /// Nonzero entries with their (row, column) positions.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &FreeElement)> {
        (0..self.n * self.n)
            .filter(|&i| !self.entries[i].is_zero())
            .map(|i| (i / self.n, i % self.n, &self.entries[i]))
            .collect()
    }

    /// Evaluates each entry with `f`.
    pub fn map(&self, f: impl Fn(&FreeElement) -> FreeElement) -> Self {
        FMat { n: self.n, alphabet: self.alphabet.clone(), entries: self.entries.iter().map(f).collect() }
    }
}
