//! Commutative multivariate polynomials over the rationals, with a small Buchberger routine.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector.
pub type Monomial = Vec<u8>;

/// Monomial orders used by the Gröbner routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// The exponent of the last variable first, then graded reverse lexicographic; eliminates it.
    EliminateLast,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u8], b: &[u8]) -> Ordering {
        let grevlex = || {
            let da: u32 = a.iter().map(|&e| e as u32).sum();
            let db: u32 = b.iter().map(|&e| e as u32).sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        };
        match self {
            MonomialOrder::Grevlex => grevlex(),
            MonomialOrder::EliminateLast => a.last().cmp(&b.last()).then_with(grevlex),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.iter().map(|&e| e as usize).sum::<usize>() == d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        CPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.iter().zip(m2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, m: &[u8], c: &BigRational) -> Self {
        CPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v * c)).collect(),
        }
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut e = m.clone();
                e[i] -= 1;
                r.add_term(e, c * BigRational::from_integer(m[i].into()));
            }
        }
        r
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names[v].clone() } else { format!("{}^{e}", names[v]) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{abs}*{}", mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

fn divides(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u8], b: &[u8]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full reduction of `f` by `basis`.
pub fn reduce(f: &CPoly, basis: &[CPoly], order: MonomialOrder) -> CPoly {
    let mut p = f.clone();
    let mut rem = CPoly::zero(f.nvars);
    while let Some((lm, lc)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let (gm, gc) = g.leading(order)?;
            divides(gm, &lm).then(|| (g, gm.clone(), gc.clone()))
        });
        match divisor {
            Some((g, gm, gc)) => {
                let shift: Monomial = lm.iter().zip(&gm).map(|(a, b)| a - b).collect();
                p = p.sub(&g.mul_term(&shift, &(&lc / &gc)));
            }
            None => {
                p.terms.remove(&lm);
                rem.add_term(lm, lc);
            }
        }
    }
    rem
}

fn s_poly(f: &CPoly, g: &CPoly, order: MonomialOrder) -> CPoly {
    let (fm, fc) = f.leading(order).expect("nonzero");
    let (gm, gc) = g.leading(order).expect("nonzero");
    let l = lcm(fm, gm);
    let sf: Monomial = l.iter().zip(fm).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(gm).map(|(a, b)| a - b).collect();
    f.mul_term(&sf, &fc.recip()).sub(&g.mul_term(&sg, &gc.recip()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[CPoly], order: MonomialOrder) -> Vec<CPoly> {
    let mut basis: Vec<CPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(order)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, mj) = (basis[i].leading(order).unwrap().0, basis[j].leading(order).unwrap().0);
        // coprime leading monomials give a zero remainder
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j], order), &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic(order));
            if basis[k].leading(order).unwrap().0.iter().all(|&e| e == 0) {
                return vec![CPoly::one(basis[k].nvars)];
            }
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimalize, then interreduce
    let mut minimal: Vec<CPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading(order).unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading(order).unwrap().0;
            j != i && divides(hm, m) && (hm != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<CPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<CPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let lead = minimal[i].leading(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let mut tail = minimal[i].clone();
            tail.terms.remove(&lead.0);
            let mut r = reduce(&tail, &others, order);
            r.add_term(lead.0, lead.1);
            r.monic(order)
        })
        .collect();
    out.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    out
}

pub fn is_unit_ideal(basis: &[CPoly]) -> bool {
    basis.iter().any(|g| g.terms.len() == 1 && g.terms.keys().next().is_some_and(|m| m.iter().all(|&e| e == 0)))
}

/// Whether `f` lies in the radical of the ideal generated by `gens`.
pub fn in_radical(f: &CPoly, gens: &[CPoly]) -> bool {
    let n = f.nvars;
    let lift = |p: &CPoly| -> CPoly {
        CPoly {
            nvars: n + 1,
            terms: p.terms.iter().map(|(m, c)| (m.iter().copied().chain([0]).collect(), c.clone())).collect(),
        }
    };
    let mut ext: Vec<CPoly> = gens.iter().map(lift).collect();
    let y = CPoly::var(n + 1, n);
    ext.push(CPoly::one(n + 1).sub(&y.mul(&lift(f))));
    is_unit_ideal(&groebner(&ext, MonomialOrder::Grevlex))
}

/// Gröbner basis of the saturation `I : v^∞`.
pub fn saturate(gens: &[CPoly], v: &CPoly) -> Vec<CPoly> {
    let n = v.nvars;
    let lift = |p: &CPoly| -> CPoly {
        CPoly {
            nvars: n + 1,
            terms: p.terms.iter().map(|(m, c)| (m.iter().copied().chain([0]).collect(), c.clone())).collect(),
        }
    };
    let mut ext: Vec<CPoly> = gens.iter().map(lift).collect();
    let y = CPoly::var(n + 1, n);
    ext.push(CPoly::one(n + 1).sub(&y.mul(&lift(v))));
    let gb = groebner(&ext, MonomialOrder::EliminateLast);
    let kept: Vec<CPoly> = gb
        .into_iter()
        .filter(|g| g.terms.keys().all(|m| m[n] == 0))
        .map(|g| CPoly { nvars: n, terms: g.terms.into_iter().map(|(mut m, c)| (m.pop().map(|_| m).unwrap(), c)).collect() })
        .collect();
    groebner(&kept, MonomialOrder::Grevlex)
}
