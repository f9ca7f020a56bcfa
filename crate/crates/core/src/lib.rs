//! Exact computations with monomial ideals in polynomial rings over a field.

pub mod binomial;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod homology;
pub mod monomial;
pub mod powers;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, MonomialPrime, Ring};
