use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::delta::{apply_delta1, apply_delta1_inverse, solve_a_coeffs, ACoeffs};
use crate::error::{Result, ZhuError};
use crate::scalar::{binomial, int, rat, CycloScalar};
use crate::tensor::{TensorAlgebra, TensorState, Twist};
use crate::vosa::{State, VertexAlgebra, Weight};
use crate::zhu::TwistedZhu;

/// A spanning class `sum_a u^a` (even `u`) or `sum_a (-1)^{a-1} u^a` (odd `u`, even `k`).
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorClass<B: Ord> {
    pub label: B,
    pub odd: bool,
    pub source: TensorState<B>,
}

/// Source `V^{(x) k}` with the k-cycle twist, and target `V` with the trivial
/// twist (odd `k`) or the parity twist (even `k`).
pub struct IsoSetup<A: VertexAlgebra> {
    pub k: usize,
    pub coeffs: ACoeffs,
    pub source: TwistedZhu<A>,
    pub target: TwistedZhu<A>,
}

impl<A: VertexAlgebra> IsoSetup<A> {
    pub fn new(base: Arc<A>, k: usize, j_max: usize) -> Result<Self> {
        if k == 0 {
            return Err(ZhuError::InvalidArgument("k must be positive".into()));
        }
        let coeffs = solve_a_coeffs(k as u32, j_max)?;
        let source = TwistedZhu::new(Arc::new(TensorAlgebra::new(base.clone(), k)), Twist::cyclic(k));
        let target_twist = if k.is_multiple_of(2) { Twist::parity() } else { Twist::untwisted() };
        let target = TwistedZhu::new(Arc::new(TensorAlgebra::new(base, 1)), target_twist);
        Ok(IsoSetup { k, coeffs, source, target })
    }

    pub fn base(&self) -> &A {
        self.source.algebra().base()
    }

    pub fn target_name(&self) -> &'static str {
        if self.k.is_multiple_of(2) {
            "A_sigma(V)"
        } else {
            "A(V)"
        }
    }

    fn tensor(&self) -> &TensorAlgebra<A> {
        self.source.algebra()
    }

    pub fn lift_target(&self, s: &State<A::Basis>) -> TensorState<A::Basis> {
        self.target.algebra().place(s, 1)
    }

    pub fn drop_target(&self, s: &TensorState<A::Basis>) -> State<A::Basis> {
        State::from_terms(s.iter().map(|(m, c)| (m.0[0].clone(), c.clone())))
    }

    /// Orbit sign at 1-based slot `a`: `(-1)^{a-1}` for odd vectors when `k` is even.
    pub fn eps(&self, odd: bool, a: usize) -> i64 {
        if odd && self.k.is_multiple_of(2) && a.is_multiple_of(2) {
            -1
        } else {
            1
        }
    }

    fn slot(&self, p: usize) -> usize {
        (p - 1) % self.k + 1
    }

    fn is_odd(&self, b: &A::Basis) -> bool {
        self.base().parity(b).is_odd()
    }

    pub fn generator(&self, u: &A::Basis) -> Result<TensorState<A::Basis>> {
        self.source.twist().one_tensor_orbit(self.tensor(), &State::basis(u.clone()))
    }

    /// One class per base monomial of weight `<= n`; odd ones only for even `k`.
    pub fn generator_classes(&self, n: Weight) -> Result<Vec<GeneratorClass<A::Basis>>> {
        self.base()
            .basis_upto(n)
            .into_iter()
            .filter(|u| self.k.is_multiple_of(2) || !self.is_odd(u))
            .map(|u| Ok(GeneratorClass { odd: self.is_odd(&u), source: self.generator(&u)?, label: u }))
            .collect()
    }

    /// `phi[gen u] = k Delta_k(1) u`.
    pub fn phi_on_generator(&self, u: &A::Basis) -> Result<State<A::Basis>> {
        let d = apply_delta1(self.base(), &self.coeffs, &State::basis(u.clone()))?;
        Ok(d.scaled(&CycloScalar::from_int(self.k as i64)))
    }

    pub fn phi_on_classes(&self, classes: &BTreeMap<A::Basis, CycloScalar>) -> Result<State<A::Basis>> {
        let mut out = State::zero();
        for (u, c) in classes {
            out.add_scaled(&self.phi_on_generator(u)?, c);
        }
        Ok(out)
    }

    /// `psi(u) = (1/k) sum_a (Delta_k(1)^{-1} u)^a` with orbit signs; for odd `k`
    /// the odd part is dropped, since odd classes vanish there.
    pub fn psi_on_state(&self, u: &State<A::Basis>) -> Result<TensorState<A::Basis>> {
        let d = apply_delta1_inverse(self.base(), &self.coeffs, u)?;
        let (even, odd) = self.base().parity_components(&d);
        let tw = self.source.twist();
        let mut out = tw.one_tensor_orbit(self.tensor(), &even)?;
        if self.k.is_multiple_of(2) && !odd.is_zero() {
            out.add_assign(&tw.one_tensor_orbit(self.tensor(), &odd)?);
        }
        Ok(out.scaled(&CycloScalar::from_rational(&rat(1, self.k as i64))))
    }

    /// `y_j = sum_q eps_u(q+j) eps_v(q) u^{q+j} (x) v^q`, the product taken as the
    /// `-1` mode so the Koszul sign is included.
    pub fn two_tensor_orbit(&self, u: &A::Basis, v: &A::Basis, j: usize) -> Result<TensorState<A::Basis>> {
        if j == 0 || j >= self.k {
            return Err(ZhuError::InvalidArgument(format!("offset {j} outside 1..{}", self.k)));
        }
        let (su, sv) = (State::basis(u.clone()), State::basis(v.clone()));
        let (ou, ov) = (self.is_odd(u), self.is_odd(v));
        let t = self.tensor();
        let mut out = State::zero();
        for q in 1..=self.k {
            let p = self.slot(q + j);
            let sign = self.eps(ou, p) * self.eps(ov, q);
            let term = t.nth_product(&t.place(&su, p), -1, &t.place(&sv, q));
            out.add_scaled(&term, &CycloScalar::from_int(sign));
        }
        Ok(out)
    }

    /// Eigenspace index of `A_s = sum_p eta^{ps} eps_u(p) u^p` under `g sigma`.
    pub fn orbit_eigen_index(&self, odd: bool, s: usize) -> i64 {
        let k = self.k as i64;
        let s = s as i64;
        match (k % 2 == 0, odd) {
            (true, _) => s,
            (false, false) => 2 * s,
            (false, true) => (2 * s + k).rem_euclid(2 * k),
        }
    }

    /// The 1-tensor combination `sum_{s=1}^{k-1} (1/k)(eta^{-js} - 1) u_s` congruent to `y_j`, where
    /// `u_s = -sum_p eps(p) (Res_z Y(u,z) v (1+z)^{wt u - 1 + r_s/T} z^{-1})^p`.
    pub fn reduce_two_tensor(&self, u: &A::Basis, v: &A::Basis, j: usize) -> Result<TensorState<A::Basis>> {
        if j == 0 || j >= self.k {
            return Err(ZhuError::InvalidArgument(format!("offset {j} outside 1..{}", self.k)));
        }
        let base = self.base();
        let (su, sv) = (State::basis(u.clone()), State::basis(v.clone()));
        let hu = base.weight(u).half_units();
        let hv = base.weight(v).half_units();
        let t_order = self.source.twist().t as i64;
        let odd_uv = self.is_odd(u) != self.is_odd(v);
        let k = self.k as i64;
        let mut out = State::zero();
        for s in 1..self.k {
            let r = self.orbit_eigen_index(self.is_odd(u), s);
            let alpha = rat(hu, 2) - int(1) + rat(r, t_order);
            let mut vs = State::zero();
            let mut i = 0u32;
            while hu + hv - 2 * (i as i64 - 1) - 2 >= 0 {
                let c = binomial(&alpha, i);
                vs.add_scaled(&base.nth_product(&su, i as i64 - 1, &sv), &CycloScalar::from_rational(&c));
                i += 1;
            }
            let eta = CycloScalar::root_of_unity(self.k as u32, -((j as i64 * s as i64) % k));
            let w = (eta - CycloScalar::one()) * CycloScalar::from_rational(&rat(-1, k));
            for p in 1..=self.k {
                let placed = self.tensor().place(&vs, p);
                out.add_scaled(&placed, &(&w * &CycloScalar::from_int(self.eps(odd_uv, p))));
            }
        }
        Ok(out)
    }

    /// Writes an `h`-invariant state with tensor length `<= 2` as a combination of
    /// generator classes, replacing 2-tensor orbits by their 1-tensor equivalents.
    pub fn decompose(&self, x: &TensorState<A::Basis>) -> Result<BTreeMap<A::Basis, CycloScalar>> {
        let t = self.tensor();
        let vac = self.base().vacuum();
        let mut rest = x.clone();
        let mut ones: TensorState<A::Basis> = State::zero();
        loop {
            let Some(m) = rest.support().find(|m| t.tensor_length(m) >= 2).cloned() else {
                break;
            };
            let slots: Vec<usize> = (0..self.k).filter(|&i| m.0[i] != vac).collect();
            if slots.len() > 2 {
                return Err(ZhuError::Verification(format!("{m:?} has more than two nontrivial factors")));
            }
            let (a, b) = (slots[0], slots[1]);
            let y = self.two_tensor_orbit(&m.0[b], &m.0[a], b - a)?;
            let kappa = y.coeff(&m);
            if kappa.is_zero() {
                return Err(ZhuError::Verification(format!("{m:?} is not in the span of invariant 2-tensor orbits")));
            }
            let c = &rest.coeff(&m) * &kappa.inv()?;
            rest.add_scaled(&y, &-&c);
            ones.add_scaled(&self.reduce_two_tensor(&m.0[b], &m.0[a], b - a)?, &c);
        }
        ones.add_assign(&rest);
        let mut classes = BTreeMap::new();
        let inv_k = CycloScalar::from_rational(&rat(1, self.k as i64));
        for (m, c) in ones.iter() {
            if m.0.iter().all(|f| *f == vac) {
                classes.insert(vac.clone(), c * &inv_k);
            } else if m.0[0] != vac && (self.k.is_multiple_of(2) || !self.is_odd(&m.0[0])) {
                classes.insert(m.0[0].clone(), c.clone());
            }
        }
        let mut check = ones.clone();
        for (u, c) in &classes {
            check.add_scaled(&self.generator(u)?, &-c);
        }
        if !check.is_zero() {
            return Err(ZhuError::Verification(format!(
                "1-tensor part is not a combination of orbit sums; residue {:?}",
                check.iter().next().map(|(m, _)| m)
            )));
        }
        Ok(classes)
    }
}
