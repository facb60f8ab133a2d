use super::element::FreeElement;
use super::engine::{Engine, EngineConfig};
use super::ideal::IdealSpec;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// The quotient of the free algebra truncated at word length `bound`, with a basis of normal words.
pub struct DegreeBoundedQuotient {
    ideal: IdealSpec,
    bound: usize,
    cfg: EngineConfig,
    basis: Vec<Word>,
    filtered: Vec<u64>,
}

impl DegreeBoundedQuotient {
    pub fn new(ideal: &IdealSpec, bound: usize, cfg: &EngineConfig) -> Result<Self> {
        let pivots = Engine::new(ideal, cfg).pivot_words(bound)?;
        let g = ideal.alphabet().len();
        let mut basis = Vec::new();
        let mut layer = vec![Word::empty()];
        let mut filtered = Vec::with_capacity(bound + 1);
        for k in 0..=bound {
            basis.extend(layer.iter().filter(|w| !pivots.contains(w)).cloned());
            filtered.push(basis.len() as u64);
            if k < bound {
                layer = layer
                    .iter()
                    .flat_map(|w| (0..g as Letter).map(move |l| w.concat(&Word::letter(l))))
                    .collect();
            }
        }
        Ok(DegreeBoundedQuotient { ideal: ideal.clone(), bound, cfg: cfg.clone(), basis, filtered })
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Normal words in deglex order.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn filtered_dims(&self) -> &[u64] {
        &self.filtered
    }

    pub fn graded_dims(&self) -> Vec<u64> {
        (0..self.filtered.len())
            .map(|k| if k == 0 { self.filtered[0] } else { self.filtered[k] - self.filtered[k - 1] })
            .collect()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.basis.binary_search(w).is_ok()
    }

    /// The unique combination of normal words congruent to `x` modulo the truncated ideal.
    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement> {
        if x.degree() > self.bound {
            return Err(Error::BoundTooSmall { needed: x.degree(), bound: self.bound });
        }
        Engine::new(&self.ideal, &self.cfg).exact_remainder(x, self.bound)
    }
}
