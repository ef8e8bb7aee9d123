use std::collections::BTreeMap;

use serde::Serialize;

use super::{apply_delta1, apply_delta1_inverse, ACoeffs, TruncatedSeries};
use crate::error::Result;
use crate::scalar::{int, rat, CycloScalar, Rational};
use crate::vosa::{State, VertexAlgebra, Weight};

use super::operator::k_power_half;

/// Outcome of comparing both sides of the conjugation formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub holds: bool,
    pub coefficients_checked: usize,
    pub mismatch: Option<String>,
}

/// `Delta_k(z) u` at `z = 1 + z_0` for homogeneous `u` of weight `m`, grouped
/// by how far `exp(sum_j a_j z^{-j/k} L(j))` lowers the weight:
/// returns `d -> (exponent of (1 + z_0), state)`.
fn delta_at_shifted_point<A: VertexAlgebra>(
    alg: &A,
    coeffs: &ACoeffs,
    u: &State<A::Basis>,
    m: Weight,
) -> BTreeMap<i64, (Rational, State<A::Basis>)> {
    let k = coeffs.k as i64;
    let scale = k_power_half(coeffs.k, -1, m.half_units());
    let mut levels: BTreeMap<i64, State<A::Basis>> = BTreeMap::new();
    levels.insert(0, u.scaled(&scale));
    let mut term = levels.clone();
    let mut n = 1i64;
    while !term.is_empty() {
        let mut next: BTreeMap<i64, State<A::Basis>> = BTreeMap::new();
        for (d, s) in &term {
            for j in 1..=coeffs.j_max {
                let a = coeffs.get(j) / int(n);
                if a == int(0) {
                    continue;
                }
                let img = alg.virasoro(j as i64, s);
                if !img.is_zero() {
                    next.entry(d + j as i64).or_default().add_scaled(&img, &CycloScalar::from_rational(&a));
                }
            }
        }
        next.retain(|_, s| !s.is_zero());
        for (d, s) in &next {
            levels.entry(*d).or_default().add_assign(s);
        }
        term = next;
        n += 1;
    }
    levels
        .into_iter()
        .map(|(d, s)| {
            // z^{-(k-1) m / k} z^{-d / k}
            let beta = -(int(k - 1) * m.to_rational() + int(d)) / int(k);
            (d, (beta, s))
        })
        .collect()
}

/// Checks `Delta_k(1) Y(u, z_0) Delta_k(1)^{-1} t = Y(Delta_k(1 + z_0) u, (1 + z_0)^{1/k} - 1) t`
/// coefficientwise in `z_0` through `z_0^order`, for every test state `t`.
pub fn verify_conjugation<A: VertexAlgebra>(
    alg: &A,
    coeffs: &ACoeffs,
    u: &State<A::Basis>,
    tests: &[State<A::Basis>],
    order: i64,
) -> Result<ConjugationReport> {
    let k = coeffs.k as i64;
    let bound = int(order + 1);
    // y = ((1 + z_0)^{1/k} - 1) / z_0, a unit with constant term 1/k
    let root = TruncatedSeries::binomial_power("z0", &rat(1, k), 64);
    let mut y = TruncatedSeries::new("z0", int(63));
    for (e, c) in root.iter() {
        if *e >= int(1) {
            y.add_term(e - int(1), c, &CycloScalar::from_int(k));
        }
    }
    let mut checked = 0;
    for t in tests {
        let ht = alg.max_weight(t).map(|w| w.half_units()).unwrap_or(0);
        let mut lhs = TruncatedSeries::new("z0", bound.clone());
        let mut rhs = TruncatedSeries::new("z0", bound.clone());
        let t_inv = apply_delta1_inverse(alg, coeffs, t)?;
        for (m, um) in alg.weight_components(u) {
            let hu = m.half_units();
            let n_max = (hu + ht - 2).div_euclid(2);
            for n in (-order - 1)..=n_max {
                let p = alg.nth_product(&um, n, &t_inv);
                if !p.is_zero() {
                    lhs.add_term(int(-n - 1), &apply_delta1(alg, coeffs, &p)?, &CycloScalar::one());
                }
            }
            for (_, (beta, w)) in delta_at_shifted_point(alg, coeffs, &um, m) {
                for n in (-order - 1)..=n_max {
                    let p = alg.nth_product(&w, n, t);
                    if p.is_zero() {
                        continue;
                    }
                    let len = order + n + 2;
                    // x^{-n-1} = z_0^{-n-1} y^{-n-1}, with y = (1/k)(k y)
                    let ky = truncate(&y, len);
                    let factor = TruncatedSeries::binomial_power("z0", &beta, len)
                        .mul(&ky.pow_unit(-n - 1))
                        .mul(&constant(k_scalar(k, n + 1), len));
                    for (e, c) in factor.iter() {
                        rhs.add_term(e + int(-n - 1), &p, c);
                    }
                }
            }
        }
        checked += lhs.iter().count().max(rhs.iter().count());
        if let Some(e) = lhs.first_mismatch(&rhs) {
            return Ok(ConjugationReport {
                holds: false,
                coefficients_checked: checked,
                mismatch: Some(format!(
                    "z0^{e} on {t:?}: left {:?}, right {:?}",
                    lhs.coeff(&e),
                    rhs.coeff(&e)
                )),
            });
        }
    }
    Ok(ConjugationReport { holds: true, coefficients_checked: checked, mismatch: None })
}

fn truncate(s: &TruncatedSeries<CycloScalar>, len: i64) -> TruncatedSeries<CycloScalar> {
    let mut out = TruncatedSeries::new(&s.var, int(len));
    for (e, c) in s.iter() {
        out.add_term(e.clone(), c, &CycloScalar::one());
    }
    out
}

fn constant(c: CycloScalar, len: i64) -> TruncatedSeries<CycloScalar> {
    let mut out = TruncatedSeries::new("z0", int(len));
    out.add_term(int(0), &CycloScalar::one(), &c);
    out
}

/// `k^e` as an exact scalar.
fn k_scalar(k: i64, e: i64) -> CycloScalar {
    let base = Rational::from_integer(k.into());
    let r = if e >= 0 { num_traits::pow(base, e as usize) } else { num_traits::pow(base.recip(), (-e) as usize) };
    CycloScalar::from_rational(&r)
}
