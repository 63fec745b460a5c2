//! Exact-arithmetic polynomial kernel.
//!
//! Everything symbolic in the crate is expressed with [`MultiPoly`]:
//! sparse polynomials over ℚ in a named, ordered set of variables.

mod gcd;
mod matrix;
mod monomial;
mod order;
mod parse;
mod poly;
mod rat;

pub use gcd::{gcd, gcd_with_order};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{Assignment, MultiPoly, Ring};
pub use rat::{int, rat, to_f64, Rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("polynomials live in incompatible rings")]
    RingMismatch,
    #[error("gcd of a zero polynomial is undefined")]
    ZeroInput,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
