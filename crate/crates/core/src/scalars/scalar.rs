//! Canonical rational functions in the symbol set.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Sym, NSYM, Q, SYMBOL_NAMES};
use crate::error::{Error, Result};

/// A reduced fraction `num/den` with a monic denominator (leading coefficient 1 in graded-lex order).
///
/// Reduction makes the representation canonical, so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn sym(s: Sym) -> Self {
        Self::from_poly(Poly::var(s))
    }

    /// The deformation symbol `q`.
    pub fn q() -> Self {
        Self::sym(Q)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        Self::q().powi(k)
    }

    /// Builds `num/den` and reduces it.
    pub fn fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::normalize(num, den)
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value if no symbol occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Bitmask of symbols occurring in numerator or denominator.
    pub fn support_mask(&self) -> u32 {
        self.num.support_mask() | self.den.support_mask()
    }

    pub fn checked_add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = self.num.mul(&o.den).add(&o.num);
            return Scalar { num, den: o.den.clone() };
        }
        if o.den.is_one() {
            let num = o.num.mul(&self.den).add(&self.num);
            return Scalar { num, den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::normalize(num, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        // any common factor of num and d1*d2*g must divide g
        let h = gcd(&num, &g);
        let g2 = g.div_exact(&h).expect("gcd divides");
        let num = num.div_exact(&h).expect("gcd divides");
        Self::normalize(num, d1.mul(&d2).mul(&g2))
    }

    pub fn checked_mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::normalize(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.checked_mul(&o.inv()?))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Scalar { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert (panics on a zero base).
    pub fn powi(&self, k: i32) -> Self {
        let base = if k < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut out = Self::one();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.checked_mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.checked_mul(&b);
            }
        }
        out
    }

    /// Partial derivative with respect to `s`.
    pub fn derivative(&self, s: Sym) -> Self {
        let dn = self.num.derivative(s);
        let dd = self.den.derivative(s);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduce(num, self.den.mul(&self.den))
    }

    /// Replaces symbol `s` by `value`, failing if the denominator vanishes.
    pub fn substitute(&self, s: Sym, value: &Scalar) -> Result<Self> {
        if self.support_mask() & (1 << s) == 0 {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, s, value);
        let d = subst_poly(&self.den, s, value);
        if d.is_zero() {
            return Err(Error::BadSpecialization(format!(
                "denominator of {self} vanishes at {}={value}",
                SYMBOL_NAMES[s]
            )));
        }
        n.checked_div(&d)
    }

    /// Exact value at a full specialization.
    pub fn specialize(&self, sp: &Specialization) -> Result<BigRational> {
        let n = self.num.eval_rational(&sp.values).map_err(missing)?;
        let d = self.den.eval_rational(&sp.values).map_err(missing)?;
        if d.is_zero() {
            return Err(Error::BadSpecialization(format!("denominator of {self} vanishes")));
        }
        Ok(n / d)
    }

    /// Applies every assigned symbol of `sp`, leaving the others symbolic.
    pub fn partial_specialize(&self, sp: &Specialization) -> Result<Self> {
        let mut out = self.clone();
        for (s, v) in sp.values.iter().enumerate() {
            if let Some(v) = v {
                out = out.substitute(s, &Scalar::from_rational(v.clone()))?;
            }
        }
        Ok(out)
    }
}

fn missing(s: Sym) -> Error {
    Error::MissingSymbol(SYMBOL_NAMES[s].to_string())
}

fn subst_poly(p: &Poly, s: Sym, value: &Scalar) -> Scalar {
    let coeffs = p.to_univariate(s);
    // Horner in the substituted symbol
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = acc.checked_mul(value).checked_add(&Scalar::from_poly(c.clone()));
    }
    acc
}

/// The quantum integer `1 + q^-2 + ... + q^(-2k+2)`.
pub fn quantum_integer(k: usize) -> Scalar {
    let mut s = Scalar::zero();
    for i in 0..k {
        s = s.checked_add(&Scalar::q_pow(-2 * i as i32));
    }
    s
}

/// A point at which symbols take rational values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Specialization {
    pub(crate) values: [Option<BigRational>; NSYM],
    allow_classical: bool,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    /// A specialization that may put `q` at 0 or plus/minus 1 (classical-limit mode).
    pub fn classical() -> Self {
        Specialization { allow_classical: true, ..Self::default() }
    }

    pub fn with(mut self, s: Sym, v: BigRational) -> Result<Self> {
        self.set(s, v)?;
        Ok(self)
    }

    pub fn set(&mut self, s: Sym, v: BigRational) -> Result<()> {
        if s == Q && !self.allow_classical {
            let one = BigRational::one();
            if v.is_zero() || v == one || v == -one {
                return Err(Error::BadSpecialization(format!("q = {v} is not generic")));
            }
        }
        self.values[s] = Some(v);
        Ok(())
    }

    pub fn get(&self, s: Sym) -> Option<&BigRational> {
        self.values[s].as_ref()
    }

    pub fn values(&self) -> &[Option<BigRational>; NSYM] {
        &self.values
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let plain_den = match self.den.terms() {
            [(m, c)] => c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1,
            _ => false,
        };
        if plain_den {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $imp(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $imp(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $imp(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $imp(self, &o)
            }
        }
    };
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_add(b)
}
fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_add(&-b)
}
fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_mul(b)
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

