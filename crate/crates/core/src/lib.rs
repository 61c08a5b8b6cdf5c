//! Exact verification of twisted L-value relations for Dirichlet and
//! abelian Artin characters over Q.

pub mod arith;
pub mod brauer;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod gauss;
pub mod lvalues;
pub mod verifier;

pub use characters::DirichletCharacter;
pub use cyclotomic::{CycNumber, GaloisElement};
pub use error::{Error, Result};
