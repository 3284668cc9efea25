//! Exact arithmetic: rationals, integer lattices, lex-ordered groups.

pub mod json;
pub mod lattice;
pub mod lex;
pub mod linalg;
pub mod matrix;
pub mod rational;

pub use lattice::{degree_one_covolume, Lattice};
pub use lex::LexValue;
pub use matrix::{hnf, Hnf, IntegerMatrix};
pub use rational::{int, qvec, rat, QVec, Rational};
