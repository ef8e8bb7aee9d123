//! Exact identity checks for a [`VertexAlgebra`] on low-weight basis states.
//!
//! Each check returns `Err` with a description of the first violation.

use super::{State, VertexAlgebra, Weight};
use crate::scalar::{binomial, int, rat, CycloScalar};

fn scalar(n: i64) -> CycloScalar {
    CycloScalar::from_int(n)
}

/// Pairs `(u, v)` of basis monomials with `wt u + wt v <= total`.
fn pairs<A: VertexAlgebra>(alg: &A, total: Weight) -> Vec<(A::Basis, A::Basis)> {
    let basis = alg.basis_upto(total);
    let mut out = Vec::new();
    for u in &basis {
        for v in &basis {
            if alg.weight(u) + alg.weight(v) <= total {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// `wt(u_n v) = wt u + wt v - n - 1` and parity additivity for all pairs.
pub fn check_grading<A: VertexAlgebra>(alg: &A, total: Weight) -> Result<(), String> {
    for (u, v) in pairs(alg, total) {
        let top = (alg.weight(&u) + alg.weight(&v)).half_units();
        for n in -3..=(top / 2 + 1) {
            let p = alg.nth_product_basis(&u, n, &v);
            for b in p.support() {
                let expect = top - 2 * n - 2;
                if alg.weight(b).half_units() != expect {
                    return Err(format!("weight of {u:?}_({n}) {v:?} term {b:?}"));
                }
                if alg.parity(b) != alg.parity(&u) + alg.parity(&v) {
                    return Err(format!("parity of {u:?}_({n}) {v:?} term {b:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Skew-symmetry `u_n v = (-1)^{|u||v|} sum_j (-1)^{n+1+j} L(-1)^{(j)} v_{n+j} u`.
pub fn check_skew_symmetry<A: VertexAlgebra>(alg: &A, total: Weight) -> Result<(), String> {
    for (u, v) in pairs(alg, total) {
        let top = (alg.weight(&u) + alg.weight(&v)).half_units();
        let sign = if alg.parity(&u).koszul(alg.parity(&v)) { -1 } else { 1 };
        for n in -3..=(top / 2) {
            let lhs = alg.nth_product_basis(&u, n, &v);
            let mut rhs = State::zero();
            let mut j = 0i64;
            while top - 2 * (n + j) - 2 >= 0 {
                let inner = alg.nth_product_basis(&v, n + j, &u);
                let t = alg.translation_power(j as u32, &inner);
                let s = if (n + 1 + j) % 2 == 0 { sign } else { -sign };
                rhs.add_scaled(&t, &scalar(s));
                j += 1;
            }
            if lhs != rhs {
                return Err(format!("skew-symmetry fails for {u:?}_({n}) {v:?}"));
            }
        }
    }
    Ok(())
}

/// Super commutator formula
/// `u_m v_n w - (-1)^{|u||v|} v_n u_m w = sum_j C(m, j) (u_j v)_{m+n-j} w`.
pub fn check_commutator<A: VertexAlgebra>(
    alg: &A,
    total: Weight,
    test_weight: Weight,
    modes: std::ops::RangeInclusive<i64>,
) -> Result<(), String> {
    let tests = alg.basis_upto(test_weight);
    for (u, v) in pairs(alg, total) {
        let su = State::basis(u.clone());
        let sv = State::basis(v.clone());
        let sign = if alg.parity(&u).koszul(alg.parity(&v)) { -1 } else { 1 };
        let top = (alg.weight(&u) + alg.weight(&v)).half_units();
        let products: Vec<State<A::Basis>> = (0..=(top / 2).max(0))
            .map(|j| alg.nth_product_basis(&u, j, &v))
            .collect();
        for w in &tests {
            let sw = State::basis(w.clone());
            for m in modes.clone() {
                for n in modes.clone() {
                    let a = alg.nth_product(&su, m, &alg.nth_product(&sv, n, &sw));
                    let b = alg.nth_product(&sv, n, &alg.nth_product(&su, m, &sw));
                    let mut lhs = a;
                    lhs.add_scaled(&b, &scalar(-sign));
                    let mut rhs = State::zero();
                    for (j, p) in products.iter().enumerate() {
                        let c = binomial(&int(m), j as u32);
                        let t = alg.nth_product(p, m + n - j as i64, &sw);
                        rhs.add_scaled(&t, &CycloScalar::from_rational(&c));
                    }
                    if lhs != rhs {
                        return Err(format!("commutator fails: u={u:?} v={v:?} m={m} n={n} w={w:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[L(m), L(n)] = (m - n) L(m + n) + (m^3 - m)/12 delta_{m+n,0} c`.
pub fn check_virasoro<A: VertexAlgebra>(alg: &A, test_weight: Weight, range: i64) -> Result<(), String> {
    let c = alg.central_charge();
    for w in alg.basis_upto(test_weight) {
        let s = State::basis(w.clone());
        for m in -range..=range {
            for n in -range..=range {
                let mut lhs = alg.virasoro(m, &alg.virasoro(n, &s));
                lhs.add_scaled(&alg.virasoro(n, &alg.virasoro(m, &s)), &scalar(-1));
                let mut rhs = alg.virasoro(m + n, &s).scaled(&scalar(m - n));
                if m + n == 0 {
                    let central = rat(m * m * m - m, 12) * &c;
                    rhs.add_scaled(&s, &CycloScalar::from_rational(&central));
                }
                if lhs != rhs {
                    return Err(format!("Virasoro relation fails at m={m} n={n} on {w:?}"));
                }
            }
        }
    }
    Ok(())
}

/// `L(0)` acts by the weight on every basis monomial.
pub fn check_l0_grading<A: VertexAlgebra>(alg: &A, test_weight: Weight) -> Result<(), String> {
    for w in alg.basis_upto(test_weight) {
        let s = State::basis(w.clone());
        let expect = s.scaled(&CycloScalar::from_rational(&alg.weight(&w).to_rational()));
        if alg.virasoro(0, &s) != expect {
            return Err(format!("L(0) is not the weight on {w:?}"));
        }
    }
    Ok(())
}

/// Vacuum and creation axioms.
pub fn check_vacuum_axioms<A: VertexAlgebra>(alg: &A, test_weight: Weight) -> Result<(), String> {
    let vac = alg.vacuum();
    for v in alg.basis_upto(test_weight) {
        for n in -3..=3 {
            let p = alg.nth_product_basis(&vac, n, &v);
            let expect = if n == -1 { State::basis(v.clone()) } else { State::zero() };
            if p != expect {
                return Err(format!("1_({n}) {v:?} is wrong"));
            }
            if n >= 0 && !alg.nth_product_basis(&v, n, &vac).is_zero() {
                return Err(format!("{v:?}_({n}) 1 should vanish"));
            }
        }
        if alg.nth_product_basis(&v, -1, &vac) != State::basis(v.clone()) {
            return Err(format!("creation property fails for {v:?}"));
        }
    }
    Ok(())
}
