//! Exact computation of Newton–Okounkov bodies.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, Hermite normal forms, lex-ordered groups;
//! * [`geometry`]: exact polytopes, slices, volumes, concave envelopes and
//!   piecewise-linear integration;
//! * [`semigroup`]: graded semigroups, their Hilbert functions and bodies;
//! * [`valuation`]: monomial, flag and composite valuations on Laurent polynomials;
//! * [`series`]: toric linear series and their bodies;
//! * [`filtration`]: multiplicative filtrations and concave transforms;
//! * [`seshadri`]: the toric-surface Seshadri pipeline and the P¹-bundle model.
//!
//! No floating point is used outside of [`exact::rational::to_f64`], which
//! only feeds human-readable output.

pub mod error;
pub mod exact;
pub mod filtration;
pub mod geometry;
pub mod semigroup;
pub mod series;
pub mod seshadri;
pub mod suite;
pub mod valuation;

pub use error::{Error, Result};
