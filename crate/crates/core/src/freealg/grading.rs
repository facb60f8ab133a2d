//! Maximal letter-count grading compatible with a set of relations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::element::FreeElement;
use super::word::Word;


pub type Grade = SmallVec<[i32; 6]>;

/// Integer weights per letter; a word's grade is the sum of its letters' weights.
///
/// Every relation is homogeneous for the grading (its constant term counts as the empty word),
/// and no finer letter-count grading has that property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<Grade>,
}

impl Grading {
    pub fn trivial(letters: usize) -> Self {
        Grading { weights: vec![Grade::new(); letters] }
    }

    pub fn detect<C: crate::field::Field>(letters: usize, relations: &[FreeElement<C>]) -> Self {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for r in relations {
            let mut it = r.terms().map(|(w, _)| counts(w, letters));
            let Some(first) = it.next() else { continue };
            for c in it {
                let row: Vec<BigRational> = c
                    .iter()
                    .zip(&first)
                    .map(|(a, b)| BigRational::from_integer(BigInt::from(*a - *b)))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let basis = nullspace(rows, letters);
        let mut weights = vec![Grade::new(); letters];
        for v in basis {
            for (l, x) in v.iter().enumerate() {
                weights[l].push(x.to_i32().expect("small grading weights"));
            }
        }
        Grading { weights }
    }

    pub fn rank(&self) -> usize {
        self.weights.first().map_or(0, |w| w.len())
    }

    pub fn zero(&self) -> Grade {
        smallvec::smallvec![0; self.rank()]
    }

    pub fn of_letter(&self, l: u8) -> &Grade {
        &self.weights[l as usize]
    }

    pub fn of_word(&self, w: &Word) -> Grade {
        let mut g = self.zero();
        for &l in w.letters() {
            add_into(&mut g, &self.weights[l as usize]);
        }
        g
    }
}

pub fn add_into(a: &mut Grade, b: &Grade) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += *y;
    }
}

pub fn sub(a: &Grade, b: &Grade) -> Grade {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn counts(w: &Word, letters: usize) -> Vec<i64> {
    let mut c = vec![0i64; letters];
    for &l in w.letters() {
        c[l as usize] += 1;
    }
    c
}

/// Integer basis of the rational nullspace of `rows` (each of length `n`).
fn nullspace(mut rows: Vec<Vec<BigRational>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                for j in 0..n {
                    let v = &rows[r][j] * &k;
                    rows[i][j] = &rows[i][j] - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        out.push(ints.into_iter().map(|x| if g.is_zero() { x } else { x / &g }).collect::<Vec<_>>());
    }
    for v in out.iter_mut() {
        if let Some(f) = v.iter().find(|x| !x.is_zero()) {
            if f.is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    out
}
