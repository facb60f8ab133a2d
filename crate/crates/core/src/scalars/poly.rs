//! Sparse multivariate polynomials over Q on the fixed symbol set.
//!
//! Exponents are dense arrays (the symbol set is small and fixed) while terms
//! are kept sparse, sorted by descending graded-lex order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of commuting symbols: `q, a, b, t` followed by the free parameters `l1..l8`.
pub const NSYM: usize = 12;

pub const SYMBOL_NAMES: [&str; NSYM] = [
    "q", "a", "b", "t", "l1", "l2", "l3", "l4", "l5", "l6", "l7", "l8",
];

/// Index of a symbol in [`SYMBOL_NAMES`].
pub type Sym = usize;

pub const Q: Sym = 0;
pub const A: Sym = 1;
pub const B: Sym = 2;
pub const T: Sym = 3;

/// Free parameter `l{k}` for k in 1..=8.
pub fn param(k: usize) -> Sym {
    assert!((1..=8).contains(&k), "parameter index out of range");
    3 + k
}

pub fn symbol_index(name: &str) -> Option<Sym> {
    SYMBOL_NAMES.iter().position(|s| *s == name)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(s: Sym) -> Self {
        let mut e = [0; NSYM];
        e[s] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x = x.checked_add(*y).expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`; caller guarantees `o` divides `self`.
    pub fn div(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x -= *y;
        }
        Monomial(e)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x = (*x).min(*y);
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for i in (0..NSYM).rev() {
                match self.0[i].cmp(&o.0[i]) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", SYMBOL_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with terms sorted by strictly descending monomial; no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(s: Sym) -> Self {
        Self::monomial(Monomial::var(s), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    /// Bitmask of symbols that occur.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn degree_in(&self, s: Sym) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[s]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_monomial(m).scale(c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Divides every term by `mono`, which must divide each of them.
    pub fn div_monomial(&self, mono: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.div(mono), c.clone())).collect() }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let inv = dc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                out.push((m.div(dm), c * &inv));
            }
            return Some(Poly { terms: out });
        }
        let (dm, dc) = d.terms[0].clone();
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = c * &inv;
            rem = rem.sub(&d.mul_monomial(&qm).scale(&qc));
            quot.push((qm, qc));
        }
        // leading terms of the quotient are produced in descending order
        Some(Poly { terms: quot })
    }

    pub fn derivative(&self, s: Sym) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.0[s] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[s];
            e[s] -= 1;
            (Monomial(e), c * rat(k as i64))
        }))
    }

    /// Coefficients as a polynomial in symbol `s`, index = power of `s`.
    pub fn to_univariate(&self, s: Sym) -> Vec<Poly> {
        let deg = self.degree_in(s) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[s] as usize;
            let mut e = m.0;
            e[s] = 0;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_univariate(s: Sym, coeffs: &[Poly]) -> Self {
        let mut acc = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let mut sh = Monomial::one();
            sh.0[s] = k as u16;
            acc.extend(p.mul_monomial(&sh).terms);
        }
        Self::from_terms(acc)
    }

    /// Exact evaluation at a rational point; `point[s]` must be set for every occurring symbol.
    pub fn eval_rational(&self, point: &[Option<BigRational>; NSYM]) -> Result<BigRational, Sym> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point[i].as_ref().ok_or(i)?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Least common multiple of coefficient denominators and gcd of numerators.
    pub fn numeric_content(&self) -> BigRational {
        use num_integer::Integer;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    pub fn max_abs_coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Poly {
    fn cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(o.terms.iter()) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&o.terms.len())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "{m:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
