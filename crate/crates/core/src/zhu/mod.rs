//! Twisted Zhu products, truncated relation spans and finite quotients.

mod cache;
mod ospan;
mod products;
mod quotient;

use std::sync::Arc;

use crate::tensor::{TensorAlgebra, Twist};
use crate::vosa::VertexAlgebra;

pub use cache::{load_or_build, CacheOutcome};
pub use ospan::OSpan;
pub use quotient::FiniteAlgebra;

/// `V^{(x) k}` together with an automorphism twist.
pub struct TwistedZhu<A: VertexAlgebra> {
    alg: Arc<TensorAlgebra<A>>,
    twist: Twist,
}

#[cfg(test)]
mod tests;
