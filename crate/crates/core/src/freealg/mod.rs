//! Free associative algebras on named generators and the degree-bounded ideal engine.

mod element;
mod engine;
mod fmat;
mod grading;
mod ideal;
mod quotient;
mod word;

pub use element::FreeElement;
pub use engine::{
    filtered_dimension, graded_dimension, ideal_membership, words_up_to, Backend, Engine, EngineConfig,
    DEFAULT_WORD_CAP,
};
pub use fmat::FMat;
pub use grading::{Grade, Grading};
pub use ideal::IdealSpec;
pub use quotient::DegreeBoundedQuotient;
pub use word::{Alphabet, Letter, Word};
