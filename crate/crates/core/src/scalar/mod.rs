//! Exact scalars: rationals and cyclotomic field elements.

mod cyclo;
mod rational;

pub use cyclo::{cyclotomic_polynomial, totient, CycloScalar};
pub use rational::{binomial, factorial, int, parse_fraction, rat, to_fraction_string, Rational};
