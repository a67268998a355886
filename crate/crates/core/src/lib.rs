//! Graded Betti numbers of monomial ideals and their powers, Betti table
//! shapes, and stabilization sequences of `I^d` as `d` grows.
//!
//! The coefficient field has characteristic zero throughout; all linear algebra
//! is exact.

pub mod betti;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod simplicial;
pub mod stabilization;
pub mod table;

pub use betti::{betti_koszul, betti_taylor, hilbert_consistency, lcm_closure, MultigradedBetti};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, RingContext};

pub use table::{same_shape, shape_key, BettiTable, ShapeKey};
pub use stabilization::{family_sweep, stab_seq, LinearExponentFamily, StabReport};
