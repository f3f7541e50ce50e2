//! Exact back stable Schubert calculus.
//!
//! Permutations of Z with finite support index Schubert polynomials,
//! Stanley symmetric functions, double Schur functions and their homology
//! duals. Every computation is over Q (or Q[a]) with no tolerances.

pub mod error;
pub mod permgroup;
pub mod polyring;
pub mod symfunc;
pub mod schubert;
pub mod doublesym;
pub mod pipedream;
pub mod gkm;
pub mod homology;

pub use error::{Error, Result};
pub use permgroup::{Partition, Permutation, Word};
pub use polyring::{Alphabet, Monomial, Poly, Var, Q};
