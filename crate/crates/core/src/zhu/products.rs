use std::sync::Arc;

use super::TwistedZhu;
use crate::scalar::{binomial, int, rat, CycloScalar, Rational};
use crate::tensor::{TensorAlgebra, TensorMonomial, TensorState, Twist};
use crate::vosa::{State, VertexAlgebra};

impl<A: VertexAlgebra> TwistedZhu<A> {
    pub fn new(alg: Arc<TensorAlgebra<A>>, twist: Twist) -> Self {
        assert_eq!(alg.k(), twist.k(), "twist acts on a different tensor power");
        TwistedZhu { alg, twist }
    }

    pub fn algebra(&self) -> &TensorAlgebra<A> {
        &self.alg
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    /// `P_r(m)` for a single monomial and all `r`, skipping zero components.
    pub fn eigen_components(&self, m: &TensorMonomial<A::Basis>) -> Vec<(i64, TensorState<A::Basis>)> {
        let s = State::basis(m.clone());
        (0..self.twist.t as i64)
            .filter_map(|r| {
                let p = self.twist.eigenprojector(&self.alg, r, &s).expect("r in range");
                (!p.is_zero()).then_some((r, p))
            })
            .collect()
    }

    /// `sum_i C(alpha, i) u_{i - 1 - shift} v` for homogeneous `u` of half-weight `hu`.
    fn residue_sum(
        &self,
        u: &TensorState<A::Basis>,
        hu: i64,
        alpha: &Rational,
        shift: i64,
        v: &TensorMonomial<A::Basis>,
    ) -> TensorState<A::Basis> {
        let hv = self.alg.weight(v).half_units();
        let sv = State::basis(v.clone());
        let mut out = State::zero();
        let mut i = 0u32;
        loop {
            let n = i as i64 - 1 - shift;
            if hu + hv - 2 * n - 2 < 0 {
                break;
            }
            let c = binomial(alpha, i);
            if c != int(0) {
                let p = self.alg.nth_product(u, n, &sv);
                out.add_scaled(&p, &CycloScalar::from_rational(&c));
            }
            i += 1;
        }
        out
    }

    /// The `r`-component of `u o_g v` for `u` already in the `r` eigenspace and
    /// homogeneous of the given half-weight.
    pub fn circle_component(
        &self,
        r: i64,
        u: &TensorState<A::Basis>,
        hu: i64,
        v: &TensorMonomial<A::Basis>,
    ) -> TensorState<A::Basis> {
        let delta = if r == 0 { 1 } else { 0 };
        let alpha = rat(hu, 2) - int(1) + int(delta) + rat(r, self.twist.t as i64);
        self.residue_sum(u, hu, &alpha, delta, v)
    }

    /// `u o_g v`, extended by (eigenspace, weight) decomposition of `u`.
    pub fn circle(&self, u: &TensorState<A::Basis>, v: &TensorState<A::Basis>) -> TensorState<A::Basis> {
        let mut out = State::zero();
        for (w, uw) in self.alg.weight_components(u) {
            for r in 0..self.twist.t as i64 {
                let p = self.twist.eigenprojector(&self.alg, r, &uw).expect("r in range");
                if p.is_zero() {
                    continue;
                }
                for (vm, c) in v.iter() {
                    out.add_scaled(&self.circle_component(r, &p, w.half_units(), vm), c);
                }
            }
        }
        out
    }

    /// `u *_g v`: zero on nontrivial eigenspaces, `sum_i C(wt u, i) u_{i-1} v` on the fixed one.
    pub fn star(&self, u: &TensorState<A::Basis>, v: &TensorState<A::Basis>) -> TensorState<A::Basis> {
        let u0 = self.twist.eigenprojector(&self.alg, 0, u).expect("r = 0");
        let mut out = State::zero();
        for (w, uw) in self.alg.weight_components(&u0) {
            let alpha = w.to_rational();
            for (vm, c) in v.iter() {
                out.add_scaled(&self.residue_sum(&uw, w.half_units(), &alpha, 0, vm), c);
            }
        }
        out
    }
}
