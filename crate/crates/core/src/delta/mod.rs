//! The `Delta_k` operator: coefficients `a_j`, `Delta_k(1)` and its inverse,
//! and the conjugation formula at truncated order.

mod coeffs;
mod conjugation;
mod operator;
mod series;

pub use coeffs::{exp_flow_of_x, solve_a_coeffs, target_series, ACoeffs};
pub use conjugation::{verify_conjugation, ConjugationReport};
pub use operator::{apply_delta1, apply_delta1_inverse, exp_virasoro, k_power_half, k_power_l0};
pub use series::{SeriesCoeff, TruncatedSeries};

#[cfg(test)]
mod tests;
