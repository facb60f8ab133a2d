//! Exact coefficient field: rational functions over Q in `q`, `a`, `b`, `t` and free parameters.

mod gcd;
mod parse;
mod poly;
mod scalar;

pub use gcd::gcd as poly_gcd;
pub use parse::{parse_scalar, parse_with, ExprValue};
pub use poly::{param, symbol_index, Monomial, Poly, Sym, A, B, NSYM, Q, SYMBOL_NAMES, T};
pub use scalar::{quantum_integer, Scalar, Specialization};
