//! Graded super vector spaces with exact vertex-operator mode calculus.

mod algebra;
pub mod checks;
mod fermion;
mod grading;
mod state;

pub use algebra::VertexAlgebra;
pub use fermion::{FermionMonomial, FreeFermion};
pub use grading::{Parity, Weight};
pub use state::State;
