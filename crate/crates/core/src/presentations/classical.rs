//! Evaluation oracle for the coordinate rings of classical conjugation orbits.
//!
//! Orbit points `g⁻¹Ag` are sampled with seeded random integer `g` and reduced modulo a large
//! prime; the filtered dimension in degree `≤ k` is the rank of the evaluation map on the
//! monomials of degree `≤ k` in the matrix entries.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::linalg::Echelon;

/// Largest number of monomials the oracle will evaluate.
pub const MONOMIAL_CAP: usize = 50_000;

/// Exponent vectors in `vars` variables of total degree `≤ d`, ordered by degree.
fn monomials(vars: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; vars]];
    let mut layer = vec![(vec![0u8; vars], 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, first) in &layer {
            // extend only at variables ≥ the last one raised, so each monomial appears once
            for v in *first..vars {
                let mut e = m.clone();
                e[v] += 1;
                next.push((e, v));
            }
        }
        out.extend(next.iter().map(|(e, _)| e.clone()));
        layer = next;
    }
    out
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn invert(m: &[Vec<Fp>]) -> Option<Vec<Vec<Fp>>> {
    let n = m.len();
    let mut a: Vec<Vec<Fp>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Fp::one() } else { Fp::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&k.mul(p));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<Fp>], b: &[Vec<Fp>]) -> Vec<Vec<Fp>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Fp::zero(), |s, k| s.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

/// One orbit point `g⁻¹Ag`, flattened row by row.
fn sample_point(a: &[Vec<Fp>], rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = a.len();
    loop {
        let g: Vec<Vec<Fp>> = (0..n).map(|_| (0..n).map(|_| Fp::from_i64(rng.gen_range(-1000..=1000))).collect()).collect();
        if let Some(gi) = invert(&g) {
            return mat_mul(&mat_mul(&gi, a), &g).into_iter().flatten().collect();
        }
    }
}

/// Ranks of the evaluation map restricted to monomials of degree `≤ k`, for `k = 0..=d`.
fn ranks(monos: &[Vec<u8>], d: usize, points: &[Vec<Fp>]) -> Vec<usize> {
    let mut ech = Echelon::<Fp>::new(points.len());
    let mut out = Vec::with_capacity(d + 1);
    let mut idx = 0;
    for k in 0..=d {
        while idx < monos.len() && monos[idx].iter().map(|&e| e as usize).sum::<usize>() == k {
            let row = points
                .iter()
                .enumerate()
                .rev()
                .filter_map(|(c, p)| {
                    let v = monos[idx].iter().zip(p).fold(Fp::one(), |acc, (&e, x)| acc.mul(&x.pow(e as u64)));
                    (!v.is_zero()).then_some((c as u32, v))
                })
                .collect();
            ech.insert(row);
            idx += 1;
        }
        out.push(ech.rank());
    }
    out
}

/// Filtered dimensions, degrees `0..=d`, of the coordinate ring of the closure of the orbit of `a`.
pub fn orbit_dims_through(a: &[Vec<BigRational>], d: usize, seed: u64) -> Result<Vec<usize>> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("the orbit representative must be a nonempty square matrix".into()));
    }
    let count = binom(n * n + d, d);
    if count > MONOMIAL_CAP as u128 {
        return Err(Error::TooLarge { words: count, cap: MONOMIAL_CAP as u128 });
    }
    let af: Vec<Vec<Fp>> = a
        .iter()
        .map(|r| r.iter().map(|x| Fp::from_rational(x).ok_or_else(|| Error::InvalidParameters("entry not reducible modulo the prime".into()))).collect())
        .collect::<Result<_>>()?;
    let monos = monomials(n * n, d);
    let base = 2 * monos.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<Fp>> = (0..base + base / 2).map(|_| sample_point(&af, &mut rng)).collect();
    let first = ranks(&monos, d, &points[..base]);
    let again = ranks(&monos, d, &points);
    if first != again {
        return Err(Error::SamplingUnstable(format!("ranks {first:?} grew to {again:?} with more points")));
    }
    Ok(first)
}

/// Filtered dimensions of the orbit of `diag(λ₁^(n₁), …, λ_k^(n_k))`.
pub fn classical_orbit_dims(multiplicities: &[usize], eigenvalues: &[BigRational], d: usize, seed: u64) -> Result<Vec<usize>> {
    if multiplicities.len() != eigenvalues.len() || multiplicities.contains(&0) {
        return Err(Error::InvalidParameters("one positive multiplicity per eigenvalue".into()));
    }
    for (i, x) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(x) {
            return Err(Error::DegenerateOrbit);
        }
    }
    let diag: Vec<&BigRational> = multiplicities.iter().zip(eigenvalues).flat_map(|(&m, x)| std::iter::repeat_n(x, m)).collect();
    let n = diag.len();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { BigRational::from_integer(0.into()) }).collect())
        .collect();
    orbit_dims_through(&a, d, seed)
}
