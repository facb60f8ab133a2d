//! Coefficient fields for linear algebra: a word-size prime field, exact rationals, and the
//! symbolic [`Scalar`] field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Poly, Scalar, NSYM, SYMBOL_NAMES};

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Image of a rational number, `None` if its denominator is not invertible.
    fn from_rational(r: &BigRational) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n))).expect("integers embed")
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// The Mersenne prime 2^61 - 1.
pub const MODULUS: u64 = (1 << 61) - 1;

/// Residue modulo [`MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(pub u64);

impl Fp {
    #[inline]
    fn reduce128(x: u128) -> u64 {
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & MODULUS) + (hi >> 61);
        while s >= MODULUS {
            s -= MODULUS;
        }
        s
    }

    fn from_bigint(n: &BigInt) -> Fp {
        let m = BigInt::from(MODULUS);
        let mut r = n % &m;
        if r < BigInt::zero() {
            r += &m;
        }
        Fp(r.to_u64().expect("reduced residue fits"))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MODULUS - o.0 })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::reduce128(self.0 as u128 * o.0 as u128))
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        d.inv().map(|di| n.mul(&di))
    }
    fn from_i64(n: i64) -> Self {
        if n >= 0 {
            Fp(n as u64 % MODULUS)
        } else {
            Fp(n.unsigned_abs() % MODULUS).neg()
        }
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(Scalar::from_rational(r.clone()))
    }
}

/// Symbol values in a target field; unassigned symbols are `None`.
#[derive(Clone, Debug)]
pub struct FieldPoint<F: Field> {
    values: Vec<Option<F>>,
}

impl<F: Field> FieldPoint<F> {
    pub fn new(values: Vec<Option<F>>) -> Self {
        assert_eq!(values.len(), NSYM);
        FieldPoint { values }
    }

    pub fn from_rationals(vals: &[Option<BigRational>; NSYM]) -> Result<Self> {
        let mut values = Vec::with_capacity(NSYM);
        for (i, v) in vals.iter().enumerate() {
            values.push(match v {
                None => None,
                Some(r) => Some(F::from_rational(r).ok_or_else(|| {
                    Error::BadSpecialization(format!("{} not representable", SYMBOL_NAMES[i]))
                })?),
            });
        }
        Ok(FieldPoint { values })
    }

    pub fn eval_poly(&self, p: &Poly) -> Result<F> {
        let mut acc = F::zero();
        for (m, c) in p.terms() {
            let mut t = F::from_rational(c)
                .ok_or_else(|| Error::BadSpecialization("coefficient not representable".into()))?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = self.values[i]
                    .as_ref()
                    .ok_or_else(|| Error::MissingSymbol(SYMBOL_NAMES[i].to_string()))?;
                t = t.mul(&v.pow(e as u64));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn eval(&self, s: &Scalar) -> Result<F> {
        let n = self.eval_poly(s.numer())?;
        let d = self.eval_poly(s.denom())?;
        let di = d
            .inv()
            .ok_or_else(|| Error::BadSpecialization(format!("denominator of {s} vanishes")))?;
        Ok(n.mul(&di))
    }
}
