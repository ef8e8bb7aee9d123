//! The isomorphism between `A_g(V^{(x) k})` and `A(V)` or `A_sigma(V)`.

mod classes;
pub mod linalg;
mod verify;

pub use classes::{GeneratorClass, IsoSetup};
pub use verify::{general_cycle_type, quotient_dim, CycleTypeReport, IsoReport, PairCheck, Truncation};
