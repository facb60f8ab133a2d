use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Letter = u8;

/// A word in the generators; ordered degree-lexicographically (length first, then letters).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        Word(SmallVec::from_slice(ls))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn concat3(a: &Word, b: &Word, c: &Word) -> Word {
        let mut v: SmallVec<[Letter; 8]> = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&b.0);
        v.extend_from_slice(&c.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Named generators; the position of a name is its letter and its rank in the monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > Letter::MAX as usize {
            return Err(Error::InvalidParameters("too many generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || crate::scalars::symbol_index(n).is_some() {
                return Err(Error::InvalidParameters(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidParameters(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.0.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("*")
    }
}
