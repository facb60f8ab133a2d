//! The semiclassical limit of the reflection equation: the quadratic Poisson bracket on matrix
//! coordinates, its geometric description by the classical r-matrix and the symmetric invariant
//! tensor, and the invariant part on semisimple orbits.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::presentations::{re_presentation, MAX_N};
use crate::qtensor::{build_p, build_s, Mat};
use crate::report::CheckRecord;
use crate::scalars::{Scalar, Specialization, Q};

/// Dense rational matrix, row-major.
pub type RMat = Vec<Vec<BigRational>>;

fn rzero(n: usize) -> RMat {
    vec![vec![BigRational::zero(); n]; n]
}

fn rmul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let mut out = rzero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn rsub(a: &RMat, b: &RMat) -> RMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

fn rtrace(a: &RMat) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

fn runit(n: usize, i: usize, j: usize) -> RMat {
    let mut m = rzero(n);
    m[i][j] = BigRational::one();
    m
}

fn to_rmat(m: &Mat) -> Result<RMat> {
    m.rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.as_rational().ok_or_else(|| Error::InvalidParameters(format!("{x} is not rational")))).collect())
        .collect()
}

fn coord_name(n: usize, k: usize) -> String {
    format!("x{}_{}", k / n + 1, k % n + 1)
}

/// Bracket of the matrix coordinates `x_rc = A(r,c)`, indexed `r·n + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonTable {
    n: usize,
    brackets: BTreeMap<(usize, usize), CPoly>,
}

impl PoissonTable {
    /// Brackets for pairs `a < b`; absent pairs are zero.
    pub fn from_brackets(n: usize, brackets: BTreeMap<(usize, usize), CPoly>) -> Result<Self> {
        let m = n * n;
        if brackets.iter().any(|(&(a, b), p)| a >= b || b >= m || p.nvars() != m) {
            return Err(Error::InvalidParameters("brackets are keyed by coordinate pairs a < b".into()));
        }
        Ok(PoissonTable { n, brackets: brackets.into_iter().filter(|(_, p)| !p.is_zero()).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), CPoly> {
        &self.brackets
    }

    /// `{x_a, x_b}`.
    pub fn bracket(&self, a: usize, b: usize) -> CPoly {
        let m = self.n * self.n;
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.brackets.get(&(a, b)).cloned().unwrap_or_else(|| CPoly::zero(m)),
            std::cmp::Ordering::Greater => self.bracket(b, a).neg(),
            std::cmp::Ordering::Equal => CPoly::zero(m),
        }
    }

    /// `{x_a, f}` by the Leibniz rule.
    pub fn bracket_with(&self, a: usize, f: &CPoly) -> CPoly {
        (0..self.n * self.n).fold(CPoly::zero(self.n * self.n), |acc, i| {
            let d = f.derivative(i);
            if d.is_zero() {
                acc
            } else {
                acc.add(&d.mul(&self.bracket(a, i)))
            }
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.n * self.n;
        (0..m).all(|a| self.bracket(a, a).is_zero() && (0..m).all(|b| self.bracket(a, b) == self.bracket(b, a).neg()))
    }

    pub fn is_quadratic(&self) -> bool {
        self.brackets.values().all(|p| p.is_homogeneous_of(2))
    }

    pub fn evaluate(&self, a: usize, b: usize, point: &[BigRational]) -> BigRational {
        self.bracket(a, b).eval(point)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names: Vec<String> = (0..self.n * self.n).map(|k| coord_name(self.n, k)).collect();
        let key = |k: usize| format!("{},{}", k / self.n + 1, k % self.n + 1);
        let brackets: BTreeMap<String, String> =
            self.brackets.iter().map(|(&(a, b), p)| (format!("{}|{}", key(a), key(b)), p.render(&names))).collect();
        json!({"n": self.n, "brackets": brackets})
    }
}

/// Commutative image of a word in the generators of the reflection-equation algebra.
fn word_monomial(n: usize, positions: &[(usize, usize)], letters: &[u8]) -> Vec<u8> {
    let mut m = vec![0u8; n * n];
    for &l in letters {
        let (r, c) = positions[l as usize];
        m[r * n + c] += 1;
    }
    m
}

/// Reads the bracket off the first-order term of the RE relations at `q = e^h`.
///
/// At `h = 0` every relation is a combination `Σ κ_ab (x_a x_b - x_b x_a)`; replacing each
/// commutator by `h {x_a, x_b}` and collecting order `h` gives one linear equation per relation
/// in the unknown brackets, which must have a unique consistent solution.
pub fn extract_semiclassical(n: usize) -> Result<PoissonTable> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    if n > MAX_N {
        return Err(Error::TooLarge { words: n as u128, cap: MAX_N as u128 });
    }
    let p = re_presentation(n)?;
    let fam = &p.families()[0];
    let m = n * n;
    let positions: Vec<(usize, usize)> = (0..p.alphabet().len()).map(|l| fam.position(l as u8).expect("single family")).collect();
    let coord = |l: u8| positions[l as usize].0 * n + positions[l as usize].1;
    let one = Specialization::classical().with(Q, BigRational::one())?;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut rows: Vec<(Vec<BigRational>, CPoly)> = Vec::new();
    for rel in p.relations() {
        let mut kappa = vec![BigRational::zero(); pairs.len()];
        let mut order0 = CPoly::zero(m);
        let mut order1 = CPoly::zero(m);
        for (w, c) in rel.terms() {
            let letters = w.letters();
            if letters.len() != 2 {
                return Err(Error::InternalInconsistency("RE relations are quadratic".into()));
            }
            let c0 = c.specialize(&one)?;
            let c1 = c.derivative(Q).specialize(&one)?;
            let mono = word_monomial(n, &positions, letters);
            order0.add_term(mono.clone(), c0.clone());
            order1.add_term(mono, c1);
            let (a, b) = (coord(letters[0]), coord(letters[1]));
            if a < b {
                kappa[index[&(a, b)]] += &c0;
            }
        }
        if !order0.is_zero() {
            return Err(Error::InternalInconsistency(format!("relation does not commute at q = 1: {rel}")));
        }
        rows.push((kappa, order1.neg()));
    }
    let solution = solve(rows, pairs.len())?;
    let brackets = pairs.into_iter().zip(solution).collect();
    PoissonTable::from_brackets(n, brackets)
}

/// Gaussian elimination with polynomial right-hand sides; the solution must be unique.
fn solve(mut rows: Vec<(Vec<BigRational>, CPoly)>, unknowns: usize) -> Result<Vec<CPoly>> {
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(unknowns);
    let mut next = 0;
    for col in 0..unknowns {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            return Err(Error::InternalInconsistency(format!("bracket {col} is not determined by the relations")));
        };
        rows.swap(next, p);
        let inv = rows[next].0[col].recip();
        let (coeffs, rhs) = &mut rows[next];
        for x in coeffs.iter_mut() {
            *x *= &inv;
        }
        *rhs = rhs.scale(&inv);
        let (pc, pr) = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row.0[col].is_zero() {
                let k = row.0[col].clone();
                for (x, y) in row.0.iter_mut().zip(&pc) {
                    *x -= &k * y;
                }
                row.1 = row.1.sub(&pr.scale(&k));
            }
        }
        pivot_rows.push(next);
        next += 1;
    }
    if let Some((_, rhs)) = rows[next..].iter().find(|(_, rhs)| !rhs.is_zero()) {
        return Err(Error::InternalInconsistency(format!("the first-order relations are inconsistent: {rhs} = 0")));
    }
    Ok(pivot_rows.into_iter().map(|r| rows[r].1.clone()).collect())
}

/// Jacobi identity for every triple of coordinates, as polynomial identities.
pub fn verify_jacobi(table: &PoissonTable) -> bool {
    jacobi_failures(table).is_empty()
}

pub fn jacobi_failures(table: &PoissonTable) -> Vec<(usize, usize, usize)> {
    let m = table.n * table.n;
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let s = table
                    .bracket_with(a, &table.bracket(b, c))
                    .add(&table.bracket_with(b, &table.bracket(c, a)))
                    .add(&table.bracket_with(c, &table.bracket(a, b)));
                if !s.is_zero() {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// The classical r-matrix and symmetric invariant tensor of gl(n) as operators on V⊗V.
#[derive(Clone, Debug)]
pub struct ClassicalTensors {
    pub n: usize,
    /// `Σ_{i<k} (e_ki ⊗ e_ik - e_ik ⊗ e_ki)`.
    pub r: Mat,
    /// `Σ_i e_ii ⊗ e_ii + Σ_{i<k} (e_ki ⊗ e_ik + e_ik ⊗ e_ki)`.
    pub omega: Mat,
}

impl ClassicalTensors {
    pub fn new(n: usize) -> Self {
        let unit = |a: usize, b: usize, c: usize, d: usize| Mat::unit(n, a + 1, b + 1).kron(&Mat::unit(n, c + 1, d + 1));
        let mut r = Mat::zero(n * n);
        let mut omega = Mat::zero(n * n);
        for i in 0..n {
            omega = omega.add(&unit(i, i, i, i)).expect("same size");
            for k in i + 1..n {
                let (low, up) = (unit(k, i, i, k), unit(i, k, k, i));
                r = r.add(&low).and_then(|x| x.sub(&up)).expect("same size");
                omega = omega.add(&low).and_then(|x| x.add(&up)).expect("same size");
            }
        }
        ClassicalTensors { n, r, omega }
    }

    pub fn r_is_antisymmetric(&self) -> bool {
        let p = build_p(self.n);
        let flipped = p.mat().mul(&self.r).and_then(|x| x.mul(p.mat())).expect("same size");
        flipped == self.r.scale(&-Scalar::one())
    }

    pub fn omega_is_symmetric(&self) -> bool {
        let p = build_p(self.n);
        p.mat().mul(&self.omega).and_then(|x| x.mul(p.mat())).expect("same size") == self.omega
    }

    pub fn omega_is_flip(&self) -> bool {
        self.omega == *build_p(self.n).mat()
    }

    /// `P · dS/dq` at `q = 1`, the first-order term of `S = P(1 + h(r + ω) + …)`.
    pub fn first_order_of_s(n: usize) -> Result<Mat> {
        let one = Specialization::classical().with(Q, BigRational::one())?;
        let s = build_s(n);
        let ds = Mat::from_fn(n * n, |r, c| Scalar::from_rational(s.mat().get(r, c).derivative(Q).specialize(&one).expect("no pole at q = 1")));
        build_p(n).mat().mul(&ds)
    }

    /// Terms `(v, a, b, c, d)` of a tensor `Σ v e_ab ⊗ e_cd`.
    fn terms(t: &Mat, n: usize) -> Vec<(BigRational, usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for row in 0..n * n {
            for col in 0..n * n {
                let v = t.get(row, col);
                if !v.is_zero() {
                    let v = v.as_rational().expect("rational tensor");
                    out.push((v, row / n, col / n, row % n, col % n));
                }
            }
        }
        out
    }

    /// The bracket of the linear functions `Tr(X·)` and `Tr(Y·)` at `A`: the r-matrix acting by
    /// the adjoint vector fields on both arguments plus the mixed left/right action of `ω`.
    pub fn geometric_bracket(&self, a: &RMat, x: &RMat, y: &RMat) -> BigRational {
        let n = self.n;
        let tr = |z: &RMat| rtrace(&rmul(z, a));
        let ad = |e: &RMat, z: &RMat| rsub(&rmul(e, z), &rmul(z, e));
        let mut total = BigRational::zero();
        for (v, i, j, k, l) in Self::terms(&self.r, n) {
            let (e1, e2) = (runit(n, i, j), runit(n, k, l));
            total += v * tr(&ad(&e1, x)) * tr(&ad(&e2, y));
        }
        for (v, i, j, k, l) in Self::terms(&self.omega, n) {
            let (e1, e2) = (runit(n, i, j), runit(n, k, l));
            let right_left = tr(&rmul(x, &e1)) * tr(&rmul(&e2, y));
            let left_right = tr(&rmul(&e1, x)) * tr(&rmul(y, &e2));
            total += v * (right_left - left_right);
        }
        total
    }
}

/// `Tr(A²[X,Y])`.
pub fn invariant_part(a: &Mat, x: &Mat, y: &Mat) -> Result<BigRational> {
    if a.dim() != x.dim() || a.dim() != y.dim() {
        return Err(Error::ShapeMismatch("A, X and Y must have the same size".into()));
    }
    let (a, x, y) = (to_rmat(a)?, to_rmat(x)?, to_rmat(y)?);
    let comm = rsub(&rmul(&x, &y), &rmul(&y, &x));
    Ok(rtrace(&rmul(&rmul(&a, &a), &comm)))
}

/// `(λ_i² - λ_j²) / (λ_i - λ_j)²`, the coefficient of the invariant bracket on the quasi-root
/// joining two eigenvalue blocks.
pub fn reps_coefficient(li: &BigRational, lj: &BigRational) -> Result<BigRational> {
    if li == lj {
        return Err(Error::DegenerateOrbit);
    }
    let d = li - lj;
    Ok((li * li - lj * lj) / (&d * &d))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=7).into())
}

/// Sample points used by [`verify_bracket_consistency`]: `A = 0`, a diagonal matrix, then
/// random rational matrices, `count` in total.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<RMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![rzero(n)];
    let mut diag = rzero(n);
    for (i, row) in diag.iter_mut().enumerate() {
        row[i] = BigRational::from_integer((2 * i as i64 + 3).into());
    }
    out.push(diag);
    while out.len() < count.max(2) {
        out.push((0..n).map(|_| (0..n).map(|_| random_rational(&mut rng)).collect()).collect());
    }
    out.truncate(count.max(2));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketMismatch {
    pub point: usize,
    pub left: String,
    pub right: String,
    pub extracted: String,
    pub geometric: String,
}

/// Compares the extracted table with the geometric bracket at seeded sample points.
pub fn verify_bracket_consistency(n: usize, points: usize, seed: u64) -> Result<CheckRecord> {
    let table = extract_semiclassical(n)?;
    let tensors = ClassicalTensors::new(n);
    let m = n * n;
    let mut witnesses = Vec::new();
    let samples = sample_points(n, points, seed);
    for (k, a) in samples.iter().enumerate() {
        let flat: Vec<BigRational> = a.iter().flatten().cloned().collect();
        for p in 0..m {
            for s in p + 1..m {
                let got = table.evaluate(p, s, &flat);
                // the coordinate x_rc is the linear function Tr(e_cr ·)
                let fp = runit(n, p % n, p / n);
                let fs = runit(n, s % n, s / n);
                let want = tensors.geometric_bracket(a, &fp, &fs);
                if got != want {
                    witnesses.push(format!(
                        "point {k}: {{{}, {}}} = {got} from the relations but {want} from the tensors",
                        coord_name(n, p),
                        coord_name(n, s)
                    ));
                }
            }
        }
    }
    Ok(CheckRecord::new("bracket-consistency", json!({"n": n, "points": samples.len(), "seed": seed}), None, witnesses))
}

/// Antisymmetry, quadratic homogeneity and Jacobi for the extracted table.
pub fn verify_poisson_table(n: usize) -> Result<CheckRecord> {
    let table = extract_semiclassical(n)?;
    let mut witnesses = Vec::new();
    if !table.is_antisymmetric() {
        witnesses.push("the table is not antisymmetric".into());
    }
    if !table.is_quadratic() {
        witnesses.push("some bracket is not homogeneous quadratic".into());
    }
    for (a, b, c) in jacobi_failures(&table) {
        witnesses.push(format!("Jacobi fails on ({}, {}, {})", coord_name(n, a), coord_name(n, b), coord_name(n, c)));
    }
    Ok(CheckRecord::new("poisson-table", json!({"n": n, "entries": table.brackets().len()}), None, witnesses))
}
