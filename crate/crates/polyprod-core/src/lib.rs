//! Exact cohomology groups and cup-product rings of polyhedral products
//! `Z(K; X, A)` built from a simplicial complex and algebraic pair data.

pub mod engine;
pub mod error;
pub mod exactlinalg;
pub mod indexed;
pub mod kalgebra;
pub mod koszul_oracle;
pub mod pairs;
pub mod par;
pub mod ring;
pub mod simplicial;

pub use error::{Error, Result};
