use super::*;
use crate::scalar::{rat, CycloScalar};
use crate::vosa::{FermionMonomial, FreeFermion, State, VertexAlgebra, Weight};

fn st(m: &[u32]) -> State<FermionMonomial> {
    State::basis(FermionMonomial::new(m.to_vec()).unwrap())
}

fn q(n: i64, d: i64) -> CycloScalar {
    CycloScalar::from_rational(&rat(n, d))
}

#[test]
fn delta_examples() {
    let f = FreeFermion::new();
    for k in 1..=4 {
        let c = solve_a_coeffs(k, 8).unwrap();
        assert_eq!(apply_delta1(&f, &c, &st(&[])).unwrap(), st(&[]));
        let root = CycloScalar::sqrt_of_integer(k);
        assert_eq!(apply_delta1(&f, &c, &st(&[1])).unwrap(), st(&[1]).scaled(&root.inv().unwrap()));
        assert_eq!(apply_delta1_inverse(&f, &c, &st(&[1])).unwrap(), st(&[1]).scaled(&root));
    }
    let omega = f.conformal_vector();
    let c2 = solve_a_coeffs(2, 4).unwrap();
    let expect = omega.scaled(&q(1, 4)).plus(&st(&[]).scaled(&q(1, 64)));
    assert_eq!(apply_delta1(&f, &c2, &omega).unwrap(), expect);
    let c3 = solve_a_coeffs(3, 4).unwrap();
    let expect = omega.scaled(&q(1, 3)).plus(&st(&[]).scaled(&q(1, 18)));
    assert_eq!(apply_delta1(&f, &c3, &omega).unwrap().scaled(&q(3, 1)), expect);
}

#[test]
fn delta_round_trips() {
    let f = FreeFermion::new();
    for k in 1..=3 {
        let c = solve_a_coeffs(k, 8).unwrap();
        for m in f.basis_upto(Weight::from_int(4)) {
            let s = State::basis(m);
            let there = apply_delta1(&f, &c, &s).unwrap();
            assert_eq!(apply_delta1_inverse(&f, &c, &there).unwrap(), s);
            assert_eq!(apply_delta1(&f, &c, &apply_delta1_inverse(&f, &c, &s).unwrap()).unwrap(), s);
            // weight-filtered with diagonal k^{-wt}
            let top = f.weight_components(&there).into_iter().next_back().unwrap();
            assert_eq!(top.0, f.max_weight(&s).unwrap());
        }
    }
}

#[test]
fn delta_needs_enough_coefficients() {
    let f = FreeFermion::new();
    let c = solve_a_coeffs(2, 1).unwrap();
    assert!(apply_delta1(&f, &c, &f.conformal_vector()).is_err());
    assert!(apply_delta1_inverse(&f, &c, &st(&[3, 1])).is_err());
}

#[test]
fn conjugation_examples() {
    let f = FreeFermion::new();
    let tests: Vec<_> = f.basis_upto(Weight::from_half_units(3)).into_iter().map(State::basis).collect();
    for k in [2, 3] {
        let c = solve_a_coeffs(k, 12).unwrap();
        for u in [st(&[]), st(&[1]), f.conformal_vector()] {
            let r = verify_conjugation(&f, &c, &u, &tests, 2).unwrap();
            assert!(r.holds, "k={k} u={u:?}: {:?}", r.mismatch);
        }
    }
}
