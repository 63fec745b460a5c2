//! Structural identifiability of linear time-invariant state-space
//! structures.
//!
//! The pipeline reads a model structure ([`model`]), derives the transfer
//! matrices symbolically and collects their canonical-form coefficients as
//! invariants ([`transfer`]), builds the test system `φ(θ′) = φ(θ*)` at a
//! random rational specialization and classifies it with a Gröbner basis
//! engine ([`sgi`], [`groebner`]). [`simcheck`] re-checks candidate
//! solutions by simulating outputs numerically.

pub mod groebner;
pub mod model;
pub mod polycore;
pub mod sgi;
pub mod simcheck;
pub mod transfer;

pub use polycore::{MultiPoly, PolyError, Rat, Ring};
