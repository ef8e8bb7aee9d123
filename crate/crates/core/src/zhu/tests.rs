use std::sync::Arc;

use super::*;
use crate::scalar::{rat, CycloScalar};
use crate::tensor::{TensorAlgebra, TensorMonomial, TensorState, Twist};
use crate::vosa::{FermionMonomial, FreeFermion, State, VertexAlgebra, Weight};

type Zhu = TwistedZhu<FreeFermion>;

fn zhu(k: usize, twist: Twist) -> Zhu {
    TwistedZhu::new(Arc::new(TensorAlgebra::new(Arc::new(FreeFermion::new()), k)), twist)
}

fn tm(parts: &[&[u32]]) -> TensorState<FermionMonomial> {
    State::basis(TensorMonomial(parts.iter().map(|p| FermionMonomial::new(p.to_vec()).unwrap()).collect()))
}

fn q(n: i64, d: i64) -> CycloScalar {
    CycloScalar::from_rational(&rat(n, d))
}

fn w(h: i64) -> Weight {
    Weight::from_half_units(h)
}

#[test]
fn circle_examples() {
    let z = zhu(1, Twist::untwisted());
    let vac = tm(&[&[]]);
    for v in [tm(&[&[]]), tm(&[&[1]]), tm(&[&[3, 1]])] {
        assert!(z.circle(&vac, &v).is_zero());
    }
    // u o 1 = L(-1)u + wt(u) u for even u
    let omega = z.algebra().conformal_vector();
    let expect = z.algebra().virasoro(-1, &omega).plus(&omega.scaled(&q(2, 1)));
    assert_eq!(z.circle(&omega, &vac), expect);
    // sigma twist: u o v = sum_i C(wt u, i) u_{i-2} v
    let zs = zhu(1, Twist::parity());
    let psi = tm(&[&[1]]);
    let mut expect = State::zero();
    for (i, c) in [(0u32, q(1, 1)), (1, q(1, 2)), (2, q(-1, 8))] {
        expect.add_scaled(&zs.algebra().nth_product(&psi, i as i64 - 2, &psi), &c);
    }
    assert_eq!(zs.circle(&psi, &psi), expect);
}

#[test]
fn star_examples() {
    for z in [zhu(1, Twist::untwisted()), zhu(1, Twist::parity())] {
        let vac = tm(&[&[]]);
        let omega = z.algebra().conformal_vector();
        for v in [vac.clone(), tm(&[&[1]]), tm(&[&[3, 1]]), omega.clone()] {
            assert_eq!(z.star(&vac, &v), v);
        }
        assert_eq!(z.star(&omega, &vac), omega);
    }
    let z = zhu(2, Twist::cyclic(2));
    let odd = tm(&[&[1], &[]]).plus(&tm(&[&[], &[1]]));
    assert!(z.star(&odd, &tm(&[&[2], &[1]])).is_zero());
    let t = zhu(1, Twist::untwisted());
    assert!(t.star(&tm(&[&[1]]), &tm(&[&[2]])).is_zero());
}

#[test]
fn ospan_examples() {
    let z = zhu(1, Twist::untwisted());
    let span = z.build_ospan(w(4), w(6)).unwrap();
    let row = z.algebra().virasoro(-1, &tm(&[&[1]])).plus(&tm(&[&[1]]).scaled(&q(1, 2)));
    assert!(span.contains(&row).unwrap());
    // psi is odd, so it is itself a relation and L(-1)psi reduces all the way to 0
    assert!(span.reduce(&tm(&[&[2]])).unwrap().is_zero());
    let s = tm(&[&[3]]).plus(&z.algebra().conformal_vector());
    let r = span.reduce(&s).unwrap();
    assert_eq!(span.reduce(&r).unwrap(), r);
    assert!(span.reduce(&tm(&[&[9]])).is_err());

    for tw in [Twist::untwisted(), Twist::parity()] {
        let z = zhu(1, tw);
        assert_eq!(z.build_ospan(w(0), w(2)).unwrap().rank(), 0);
    }
    assert!(z.build_ospan(w(2), w(3)).is_err());
}

#[test]
fn nontrivial_eigenspaces_are_relations() {
    let z = zhu(2, Twist::cyclic(2));
    let span = z.build_ospan(w(4), w(6)).unwrap();
    for m in z.algebra().basis_upto(w(3)) {
        for (r, p) in z.eigen_components(&m) {
            if r != 0 {
                assert!(span.contains(&p).unwrap(), "P_{r}({m:?}) not in the span");
            }
        }
    }
}

#[test]
fn ordinary_zhu_of_fermion_is_one_dimensional() {
    let z = zhu(1, Twist::untwisted());
    let span = z.build_ospan(w(10), w(12)).unwrap();
    let fa = z.quotient_algebra(&span, w(6)).unwrap();
    assert_eq!(fa.dim(), 1);
    assert_eq!(fa.constants[0][0], vec![CycloScalar::one()]);
}

#[test]
fn parity_twisted_zhu_of_fermion() {
    let z = zhu(1, Twist::parity());
    let mut dims = Vec::new();
    for n in [2, 4, 6] {
        let span = z.build_ospan(w(n + 4), w(n + 6)).unwrap();
        let fa = z.quotient_algebra(&span, w(n)).unwrap();
        dims.push(fa.dim());
        if n == 2 {
            // [psi] * [psi] = 1/2 [1]
            let psi = z.coordinates(&span, &fa, &tm(&[&[1]])).unwrap();
            let sq = fa.multiply(&psi, &psi);
            let half = z.coordinates(&span, &fa, &tm(&[&[]]).scaled(&q(1, 2))).unwrap();
            assert_eq!(sq, half);
        }
    }
    assert_eq!(dims, vec![2, 2, 2]);
}

#[test]
fn dimension_is_monotone_in_generation_weight() {
    let z = zhu(2, Twist::cyclic(2));
    let n = w(2);
    let mut dims = Vec::new();
    for g in [2, 3, 4] {
        let span = z.build_ospan(w(g), w(g + 2)).unwrap();
        dims.push(z.quotient_algebra(&span, n).unwrap().dim());
    }
    assert!(dims.windows(2).all(|p| p[0] >= p[1]), "{dims:?}");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let z = zhu(2, Twist::cyclic(2));
    let (a, first) = load_or_build(&z, w(3), w(5), Some(dir.path())).unwrap();
    assert!(!first.hit);
    let (b, second) = load_or_build(&z, w(3), w(5), Some(dir.path())).unwrap();
    assert!(second.hit && second.warnings.is_empty());
    assert_eq!(a.rank(), b.rank());
    let probe = tm(&[&[2], &[1]]).plus(&tm(&[&[2, 1], &[]]));
    assert_eq!(a.reduce(&probe).unwrap(), b.reduce(&probe).unwrap());

    // corrupt every cached file
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        v["checksum"] = "0".repeat(64).into();
        std::fs::write(&p, v.to_string()).unwrap();
    }
    let (_, third) = load_or_build(&z, w(3), w(5), Some(dir.path())).unwrap();
    assert!(!third.hit && !third.warnings.is_empty());

    // another k never collides
    let z3 = zhu(3, Twist::cyclic(3));
    let (_, other) = load_or_build(&z3, w(3), w(5), Some(dir.path())).unwrap();
    assert!(!other.hit);
}
