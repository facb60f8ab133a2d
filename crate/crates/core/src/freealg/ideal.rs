use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::FreeElement;
use super::word::Alphabet;
use crate::error::{Error, Result};

/// Generators of a two-sided ideal; zero relations are dropped on construction.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    alphabet: Arc<Alphabet>,
    generators: Vec<FreeElement>,
    homogeneous: bool,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    generators: Vec<String>,
    relations: Vec<String>,
}

impl IdealSpec {
    pub fn new(alphabet: &Arc<Alphabet>, generators: impl IntoIterator<Item = FreeElement>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if **g.alphabet() != **alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let homogeneous = gens.iter().all(FreeElement::is_homogeneous);
        Ok(IdealSpec { alphabet: alphabet.clone(), generators: gens, homogeneous })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generators(&self) -> &[FreeElement] {
        &self.generators
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(FreeElement::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.generators.iter().map(FreeElement::degree).min().unwrap_or(0)
    }

    /// A new ideal with extra generators appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = FreeElement>) -> Result<Self> {
        IdealSpec::new(&self.alphabet, self.generators.iter().cloned().chain(extra))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            generators: self.alphabet.names().to_vec(),
            relations: self.generators.iter().map(|g| g.to_string()).collect(),
        })
        .expect("plain strings serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: IdealJson = serde_json::from_value(v.clone())?;
        let alphabet = Alphabet::new(j.generators)?;
        let rels = j
            .relations
            .iter()
            .map(|r| FreeElement::parse(r, &alphabet))
            .collect::<Result<Vec<_>>>()?;
        IdealSpec::new(&alphabet, rels)
    }
}
