//! Exact computations in Hecke algebras, their fused braidings and Baxterised
//! R-matrices, and the corresponding matrices on tensor powers of `C^N`.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fusedhecke;
pub mod heckecore;
pub mod symgroup;
pub mod tensorrep;

pub use error::{Error, Result};
pub use exactnum::BigRational;
pub use heckecore::AlgebraElement;
pub use symgroup::Permutation;
