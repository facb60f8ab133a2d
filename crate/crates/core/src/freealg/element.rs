use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::word::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalars::{parse_with, symbol_index, ExprValue, Scalar};

/// A finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct FreeElement<C: Field = Scalar> {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, C>,
}

impl<C: Field> FreeElement<C> {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        FreeElement { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: C) -> Self {
        Self::term(alphabet, Word::empty(), c)
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::constant(alphabet, C::one())
    }

    pub fn term(alphabet: &Arc<Alphabet>, w: Word, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElement { alphabet: alphabet.clone(), terms }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, l: Letter) -> Self {
        assert!((l as usize) < alphabet.len(), "letter outside the alphabet");
        Self::term(alphabet, Word::letter(l), C::one())
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, it: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut e = Self::zero(alphabet);
        for (w, c) in it {
            e.add_term(w, &c);
        }
        e
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal word length; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map(Word::len).unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().next().map(Word::len).unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &o.alphabet) || self.alphabet == o.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(&self.alphabet);
        }
        FreeElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FreeElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(&self.alphabet);
        for _ in 0..k {
            out = out.try_mul(self).expect("same alphabet");
        }
        out
    }

    /// `[self, o] = self·o - o·self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    /// Applies `f` to every coefficient (dropping terms that become zero).
    pub fn map_coeffs<D: Field>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<FreeElement<D>> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(w.clone(), d);
            }
        }
        Ok(FreeElement { alphabet: self.alphabet.clone(), terms })
    }

    /// Moves the element to another alphabet by renaming letters.
    pub fn relabel(&self, target: &Arc<Alphabet>, map: impl Fn(Letter) -> Letter) -> Self {
        let mut out = FreeElement::zero(target);
        for (w, c) in &self.terms {
            let nw = Word(w.0.iter().map(|&l| map(l)).collect());
            out.add_term(nw, c);
        }
        out
    }

    /// Replaces each generator by an element over `target`, multiplying in word order.
    pub fn substitute(&self, target: &Arc<Alphabet>, images: &[FreeElement<C>]) -> Result<FreeElement<C>> {
        assert_eq!(images.len(), self.alphabet.len(), "one image per generator");
        let mut out = FreeElement::zero(target);
        for (w, c) in &self.terms {
            let mut t = FreeElement::constant(target, c.clone());
            for &l in w.letters() {
                t = t.try_mul(&images[l as usize])?;
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Commutative evaluation at generator values (a character).
    pub fn evaluate(&self, values: &[C]) -> C {
        assert_eq!(values.len(), self.alphabet.len(), "one value per generator");
        let mut acc = C::zero();
        for (w, c) in &self.terms {
            let mut t = c.clone();
            for &l in w.letters() {
                t = t.mul(&values[l as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl FreeElement<Scalar> {
    /// Parses the text grammar with generator names as noncommuting atoms.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let resolve = |name: &str| -> Option<Parsed> {
            if let Some(l) = alphabet.index(name) {
                return Some(Parsed(Ok(FreeElement::generator(alphabet, l))));
            }
            symbol_index(name).map(|s| Parsed(Ok(FreeElement::constant(alphabet, Scalar::sym(s)))))
        };
        let p: Parsed = parse_with(text, &resolve)?;
        p.0.map_err(|msg| Error::Parse { pos: 0, msg })
            .map(|e| e.rebind(alphabet))
    }

    fn rebind(self, alphabet: &Arc<Alphabet>) -> Self {
        FreeElement { alphabet: alphabet.clone(), terms: self.terms }
    }
}

/// Parse-time value: constants are created without knowing the alphabet, so they are
/// carried with a placeholder alphabet and rebound on completion.
struct Parsed(std::result::Result<FreeElement<Scalar>, String>);

fn placeholder() -> Arc<Alphabet> {
    Alphabet::new(Vec::<String>::new()).expect("empty alphabet")
}

impl Parsed {
    fn lift2(self, o: Parsed, f: impl FnOnce(FreeElement, FreeElement) -> Result<FreeElement>) -> Parsed {
        match (self.0, o.0) {
            (Ok(a), Ok(b)) => {
                // constants carry the placeholder alphabet; adopt the real one from the other side
                let (a, b) = unify(a, b);
                Parsed(f(a, b).map_err(|e| e.to_string()))
            }
            (Err(e), _) | (_, Err(e)) => Parsed(Err(e)),
        }
    }
}

fn unify(a: FreeElement, b: FreeElement) -> (FreeElement, FreeElement) {
    if a.alphabet.is_empty() && !b.alphabet.is_empty() {
        let al = b.alphabet.clone();
        (a.rebind(&al), b)
    } else if b.alphabet.is_empty() && !a.alphabet.is_empty() {
        let al = a.alphabet.clone();
        (a, b.rebind(&al))
    } else {
        (a, b)
    }
}

impl ExprValue for Parsed {
    fn from_scalar(s: Scalar) -> Self {
        Parsed(Ok(FreeElement::constant(&placeholder(), s)))
    }
    fn add(self, o: Self) -> Self {
        self.lift2(o, |a, b| a.try_add(&b))
    }
    fn sub(self, o: Self) -> Self {
        self.lift2(o, |a, b| a.try_sub(&b))
    }
    fn mul(self, o: Self) -> Self {
        self.lift2(o, |a, b| a.try_mul(&b))
    }
    fn neg(self) -> Self {
        Parsed(self.0.map(|a| a.neg()))
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        let b = o.0?;
        if b.degree() > 0 {
            return Err("division by a non-scalar element".into());
        }
        let c = b.coefficient(&Word::empty());
        let inv = c.inv().map_err(|e| e.to_string())?;
        Ok(Parsed(self.0.map(|a| a.scale(&inv))))
    }
    fn powi(self, k: i64) -> std::result::Result<Self, String> {
        let a = self.0?;
        if k >= 0 {
            return Ok(Parsed(Ok(a.pow(k as usize))));
        }
        if a.degree() > 0 {
            return Err("negative power of a non-scalar element".into());
        }
        let c = Scalar::powi(&a.coefficient(&Word::empty()), k as i32);
        Ok(Parsed(Ok(FreeElement::constant(&a.alphabet, c))))
    }
}

impl<C: Field> fmt::Display for FreeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let simple = cs.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^' || ch == '*' || ch == '_')
                || (cs.starts_with('-') && cs[1..].chars().all(|ch| ch.is_ascii_digit()));
            let cs = if simple { cs } else { format!("({cs})") };
            let term = if w.is_empty() {
                cs
            } else if *c == C::one() {
                self.alphabet.render_word(w)
            } else if *c == C::one().neg() {
                format!("-{}", self.alphabet.render_word(w))
            } else {
                format!("{cs}*{}", self.alphabet.render_word(w))
            };
            match (k, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for FreeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! ops {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<C: Field> std::ops::$tr<&FreeElement<C>> for &FreeElement<C> {
            type Output = FreeElement<C>;
            /// Panics on mismatched alphabets; use the `try_` form to get an error instead.
            fn $m(self, o: &FreeElement<C>) -> FreeElement<C> {
                self.$try(o).expect("alphabets agree")
            }
        }
    };
}

ops!(Add, add, try_add);
ops!(Sub, sub, try_sub);
ops!(Mul, mul, try_mul);
