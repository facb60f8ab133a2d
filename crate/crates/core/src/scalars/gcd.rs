//! Multivariate gcd over Q by recursive primitive remainder sequences.

use num_rational::BigRational;
use num_traits::One;

use super::poly::{Poly, Sym, NSYM};

/// Monic gcd of `f` and `g` (zero only when both are zero).
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let m = mf.gcd(&mg);
    let f1 = f.div_monomial(&mf);
    let g1 = g.div_monomial(&mg);
    let core = gcd_rec(&f1, &g1);
    core.mul_monomial(&m).monic()
}

fn gcd_rec(f: &Poly, g: &Poly) -> Poly {
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    if f == g {
        return f.monic();
    }
    if f.is_monomial() || g.is_monomial() {
        let m = f.monomial_content().gcd(&g.monomial_content());
        return Poly::monomial(m, BigRational::one());
    }
    let mf = f.support_mask();
    let mg = g.support_mask();
    // a symbol present in only one argument cannot divide the gcd
    let only_f = mf & !mg;
    if only_f != 0 {
        let s = only_f.trailing_zeros() as Sym;
        return gcd(&content(f, s), g);
    }
    let only_g = mg & !mf;
    if only_g != 0 {
        let s = only_g.trailing_zeros() as Sym;
        return gcd(f, &content(g, s));
    }
    // main variable: the shared symbol of smallest degree keeps remainder sequences short
    let s = (0..NSYM)
        .filter(|&i| mf & (1 << i) != 0)
        .min_by_key(|&i| (f.degree_in(i).max(g.degree_in(i)), i))
        .expect("non-constant polynomial has a symbol");
    let fu = f.to_univariate(s);
    let gu = g.to_univariate(s);
    let cf = content_of(&fu);
    let cg = content_of(&gu);
    let c = gcd(&cf, &cg);
    let mut a = primitive(&fu, &cf);
    let mut b = primitive(&gu, &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            break;
        }
        let cr = content_of(&r);
        b = normalize(primitive(&r, &cr));
    }
    let pa = Poly::from_univariate(s, &a);
    c.mul(&pa).monic()
}

/// Content of `f` viewed as a polynomial in `s`.
fn content(f: &Poly, s: Sym) -> Poly {
    content_of(&f.to_univariate(s))
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut c = Poly::zero();
    // start from the sparsest coefficient to reach 1 early
    let mut order: Vec<&Poly> = coeffs.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| p.terms().len());
    for p in order {
        c = gcd(&c, p);
        if c.is_one() {
            break;
        }
    }
    c
}

fn primitive(coeffs: &[Poly], c: &Poly) -> Vec<Poly> {
    if c.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|p| p.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

fn normalize(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    if let Some(lc) = v.last() {
        let k = lc.leading_coeff();
        if !k.is_one() {
            let inv = k.recip();
            for p in v.iter_mut() {
                *p = p.scale(&inv);
            }
        }
    }
    v
}

/// Pseudo-remainder of univariate sequences (coefficient index = power).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for p in r.iter_mut() {
            *p = p.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            r[k + shift] = r[k + shift].sub(&bk.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(|p| p.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly::{A, B, Q};

    fn x(s: Sym) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn gcd_of_products() {
        let f = x(Q).sub(&Poly::one()).mul(&x(A).add(&x(B)));
        let g = x(Q).sub(&Poly::one()).mul(&x(A).sub(&x(B)));
        assert_eq!(gcd(&f, &g), x(Q).sub(&Poly::one()));
        let h = x(Q).mul(&x(Q)).sub(&Poly::one());
        let k = x(Q).add(&Poly::one()).mul(&x(A));
        assert_eq!(gcd(&h, &k), x(Q).add(&Poly::one()));
        assert!(gcd(&x(Q), &x(A)).is_one());
    }
}
