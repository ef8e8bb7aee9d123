use super::ACoeffs;
use crate::error::{Result, ZhuError};
use crate::scalar::{int, CycloScalar, Rational};
use crate::vosa::{State, VertexAlgebra};

/// `k^{e h / 2}` for a weight of `h` half-units, exact.
pub fn k_power_half(k: u32, e: i64, h: i64) -> CycloScalar {
    let p = e * h;
    if p % 2 == 0 {
        let base = Rational::from_integer((k as i64).into());
        let r = if p >= 0 { num_traits::pow(base, (p / 2) as usize) } else { num_traits::pow(base.recip(), (-p / 2) as usize) };
        CycloScalar::from_rational(&r)
    } else {
        CycloScalar::sqrt_of_integer(k).pow(p).expect("sqrt k is nonzero")
    }
}

fn check_truncation<A: VertexAlgebra>(alg: &A, coeffs: &ACoeffs, s: &State<A::Basis>) -> Result<()> {
    if let Some(w) = alg.max_weight(s) {
        if (w.floor().max(0) as usize) > coeffs.j_max {
            return Err(ZhuError::TruncationTooSmall(format!(
                "state of weight {w} needs at least {} coefficients a_j, have {}",
                w.floor(),
                coeffs.j_max
            )));
        }
    }
    Ok(())
}

/// `exp(sign * sum_j a_j L(j)) s`; the exponent strictly lowers weight, so the series stops.
pub fn exp_virasoro<A: VertexAlgebra>(alg: &A, coeffs: &ACoeffs, sign: i64, s: &State<A::Basis>) -> State<A::Basis> {
    let scaled: Vec<CycloScalar> =
        (1..=coeffs.j_max).map(|j| CycloScalar::from_rational(&(coeffs.get(j) * int(sign)))).collect();
    let mut total = s.clone();
    let mut term = s.clone();
    let mut n = 1i64;
    while !term.is_zero() {
        let mut next = State::zero();
        for (j, c) in scaled.iter().enumerate() {
            if !c.is_zero() {
                next.add_scaled(&alg.virasoro(j as i64 + 1, &term), c);
            }
        }
        term = next.scaled(&CycloScalar::from_rational(&Rational::new(1.into(), n.into())));
        total.add_assign(&term);
        n += 1;
    }
    total
}

/// `k^{e L(0)} s`.
pub fn k_power_l0<A: VertexAlgebra>(alg: &A, k: u32, e: i64, s: &State<A::Basis>) -> State<A::Basis> {
    let mut out = State::zero();
    for (m, c) in s.iter() {
        out.add_term(m.clone(), &(c * &k_power_half(k, e, alg.weight(m).half_units())));
    }
    out
}

/// `Delta_k(1) s = exp(sum_j a_j L(j)) k^{-L(0)} s`.
pub fn apply_delta1<A: VertexAlgebra>(alg: &A, coeffs: &ACoeffs, s: &State<A::Basis>) -> Result<State<A::Basis>> {
    check_truncation(alg, coeffs, s)?;
    Ok(exp_virasoro(alg, coeffs, 1, &k_power_l0(alg, coeffs.k, -1, s)))
}

/// `Delta_k(1)^{-1} s = k^{L(0)} exp(-sum_j a_j L(j)) s`.
pub fn apply_delta1_inverse<A: VertexAlgebra>(
    alg: &A,
    coeffs: &ACoeffs,
    s: &State<A::Basis>,
) -> Result<State<A::Basis>> {
    check_truncation(alg, coeffs, s)?;
    Ok(k_power_l0(alg, coeffs.k, 1, &exp_virasoro(alg, coeffs, -1, s)))
}
