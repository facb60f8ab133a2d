//! Sparse row echelon forms over any [`Field`].
//!
//! Columns are integers whose order is the monomial order: larger column = larger word.
//! Rows are kept sorted by descending column, so the first entry is the leading one.

use crate::field::Field;

pub type SparseRow<F> = Vec<(u32, F)>;

/// `a - k·b` for rows sorted by descending column.
pub fn axpy<F: Field>(a: &[(u32, F)], k: &F, b: &[(u32, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, va) = &a[i];
        let (cb, vb) = &b[j];
        if ca > cb {
            out.push((*ca, va.clone()));
            i += 1;
        } else if ca < cb {
            out.push((*cb, k.mul(vb).neg()));
            j += 1;
        } else {
            let v = va.sub(&k.mul(vb));
            if !v.is_zero() {
                out.push((*ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(c, v)| (*c, k.mul(v).neg())));
    out
}

/// Incrementally built echelon basis with distinct leading columns and monic leading entries.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pivot_of: Vec<u32>,
    rows: Vec<SparseRow<F>>,
}

const NONE: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { pivot_of: vec![NONE; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of[col as usize] != NONE
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Adds a row; returns its new pivot column, or `None` if it was dependent.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> Option<u32> {
        loop {
            let (c, v) = row.first()?.clone();
            let p = self.pivot_of[c as usize];
            if p == NONE {
                if v != F::one() {
                    let inv = v.inv().expect("nonzero leading entry");
                    for e in row.iter_mut() {
                        e.1 = e.1.mul(&inv);
                    }
                }
                self.pivot_of[c as usize] = self.rows.len() as u32;
                self.rows.push(row);
                return Some(c);
            }
            row = axpy(&row[1..], &v, &self.rows[p as usize][1..]);
        }
    }

    /// Remainder of `row` after eliminating every pivot column; supported on non-pivot columns.
    pub fn reduce(&self, row: &[(u32, F)]) -> SparseRow<F> {
        let mut out = Vec::new();
        let mut work: SparseRow<F> = row.to_vec();
        let mut start = 0;
        while start < work.len() {
            let (c, v) = work[start].clone();
            let p = self.pivot_of[c as usize];
            if p == NONE {
                out.push((c, v));
                start += 1;
            } else {
                work = axpy(&work[start + 1..], &v, &self.rows[p as usize][1..]);
                start = 0;
            }
        }
        out
    }
}
