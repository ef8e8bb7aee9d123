//! Exact computation of twisted Zhu algebras of permutation orbifolds.

// matrix code indexes rows and columns in parallel
#![allow(clippy::needless_range_loop)]

pub mod delta;
pub mod error;
pub mod iso;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod vosa;
pub mod zhu;

pub use error::{Result, ZhuError};
