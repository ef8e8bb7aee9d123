use std::collections::BTreeMap;

use crate::scalar::{binomial, int, CycloScalar, Rational};
use crate::vosa::State;

/// Coefficient types a truncated series can carry.
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_scaled_coeff(&mut self, other: &Self, c: &CycloScalar);
}

impl SeriesCoeff for CycloScalar {
    fn zero_like() -> Self {
        CycloScalar::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_scaled_coeff(&mut self, other: &Self, c: &CycloScalar) {
        *self += &(other * c);
    }
}

impl<B: Ord + Clone + std::fmt::Debug> SeriesCoeff for State<B> {
    fn zero_like() -> Self {
        State::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_scaled_coeff(&mut self, other: &Self, c: &CycloScalar) {
        self.add_scaled(other, c);
    }
}

/// `sum_e c_e var^e` with rational exponents `e < order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    pub var: String,
    pub order: Rational,
    coeffs: BTreeMap<Rational, T>,
}

impl<T: SeriesCoeff> TruncatedSeries<T> {
    pub fn new(var: &str, order: Rational) -> Self {
        TruncatedSeries { var: var.into(), order, coeffs: BTreeMap::new() }
    }

    /// Adds `c * x var^e`; terms at or beyond the order are dropped.
    pub fn add_term(&mut self, e: Rational, x: &T, c: &CycloScalar) {
        if e >= self.order {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_insert_with(T::zero_like);
        slot.add_scaled_coeff(x, c);
        if slot.is_zero_coeff() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: &Rational) -> T {
        self.coeffs.get(e).cloned().unwrap_or_else(T::zero_like)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent at which the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Rational> {
        let mut keys: Vec<&Rational> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|e| self.coeff(e) != other.coeff(e)).cloned()
    }
}

impl TruncatedSeries<CycloScalar> {
    /// `(1 + var)^alpha` through integer exponents below `order`.
    pub fn binomial_power(var: &str, alpha: &Rational, order: i64) -> Self {
        let mut s = TruncatedSeries::new(var, int(order));
        for i in 0..order.max(0) {
            let c = binomial(alpha, i as u32);
            s.add_term(int(i), &CycloScalar::one(), &CycloScalar::from_rational(&c));
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.clone().min(other.order.clone());
        let mut out = TruncatedSeries::new(&self.var, order);
        for (e, a) in &self.coeffs {
            for (f, b) in &other.coeffs {
                out.add_term(e + f, a, b);
            }
        }
        out
    }

    /// `self^e` for a series with constant term 1 and integer exponents.
    pub fn pow_unit(&self, e: i64) -> Self {
        let order = self.order.clone();
        let mut rest = self.clone();
        rest.add_term(int(0), &CycloScalar::one(), &CycloScalar::from_int(-1));
        // (1 + rest)^e = sum_i C(e, i) rest^i
        let mut out = TruncatedSeries::new(&self.var, order.clone());
        let mut power = TruncatedSeries::new(&self.var, order.clone());
        power.add_term(int(0), &CycloScalar::one(), &CycloScalar::one());
        let mut i = 0u32;
        while !power.is_zero() {
            let c = CycloScalar::from_rational(&binomial(&int(e), i));
            for (x, v) in power.iter() {
                out.add_term(x.clone(), v, &c);
            }
            power = power.mul(&rest);
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn binomial_series_multiply() {
        let a = TruncatedSeries::binomial_power("z", &rat(1, 3), 6);
        let cube = a.mul(&a).mul(&a);
        assert_eq!(cube, TruncatedSeries::binomial_power("z", &int(1), 6));
        let inv = a.pow_unit(-3);
        assert_eq!(inv, TruncatedSeries::binomial_power("z", &int(-1), 6));
        assert_eq!(inv.coeff(&int(2)), CycloScalar::one());
    }

    #[test]
    fn mismatch_reports_lowest_exponent() {
        let a = TruncatedSeries::binomial_power("z", &rat(1, 2), 4);
        let b = TruncatedSeries::binomial_power("z", &rat(1, 3), 4);
        assert_eq!(a.first_mismatch(&b), Some(int(1)));
        assert_eq!(a.first_mismatch(&a), None);
    }
}
