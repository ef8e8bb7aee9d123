//! Tensor powers `V^{(x) k}` and their slot-permutation automorphisms.

mod automorphism;
mod product;

pub use automorphism::{SlotAutomorphism, Twist};
pub use product::{TensorAlgebra, TensorMonomial, TensorState};
