use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{TensorAlgebra, TensorMonomial, TensorState};
use crate::error::{Result, ZhuError};
use crate::scalar::{rat, CycloScalar};
use crate::vosa::{State, VertexAlgebra};

/// Slot permutation `new[i] = old[perm[i]]`, optionally followed by the parity
/// automorphism, acting on `V^{(x) k}` with Koszul signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotAutomorphism {
    perm: Vec<usize>,
    sigma: bool,
}

impl SlotAutomorphism {
    pub fn identity(k: usize) -> Self {
        SlotAutomorphism { perm: (0..k).collect(), sigma: false }
    }

    /// The parity automorphism of `V^{(x) k}`.
    pub fn sigma(k: usize) -> Self {
        SlotAutomorphism { perm: (0..k).collect(), sigma: true }
    }

    /// `v_1 (x) ... (x) v_k -> v_2 (x) ... (x) v_k (x) v_1`.
    pub fn cyclic(k: usize) -> Self {
        SlotAutomorphism { perm: (0..k).map(|i| (i + 1) % k).collect(), sigma: false }
    }

    /// Disjoint cycles on consecutive blocks of slots, e.g. `[2, 1]` is `(1 2)(3)`.
    pub fn from_cycles(cycles: &[usize]) -> Result<Self> {
        if cycles.is_empty() || cycles.contains(&0) {
            return Err(ZhuError::InvalidArgument(format!("bad cycle type {cycles:?}")));
        }
        let mut perm = Vec::new();
        let mut start = 0;
        for &c in cycles {
            perm.extend((0..c).map(|i| start + (i + 1) % c));
            start += c;
        }
        Ok(SlotAutomorphism { perm, sigma: false })
    }

    pub fn from_parts(perm: Vec<usize>, sigma: bool) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(ZhuError::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(SlotAutomorphism { perm, sigma })
    }

    pub fn k(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma
    }

    /// `self` composed with the parity automorphism (they commute).
    pub fn times_sigma(&self) -> Self {
        SlotAutomorphism { perm: self.perm.clone(), sigma: !self.sigma }
    }

    /// Cycle lengths of the slot permutation, in order of first slot.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let k = self.k();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Order as an automorphism of `V^{(x) k}`, assuming `V` has odd vectors.
    pub fn order(&self) -> u32 {
        let l = self.cycle_lengths().into_iter().fold(1usize, |a, c| a.lcm(&c));
        let l = if self.sigma { l.lcm(&2) } else { l };
        l as u32
    }

    /// Image of a monomial, with `true` meaning a sign flip.
    pub fn act_monomial<A: VertexAlgebra>(
        &self,
        alg: &TensorAlgebra<A>,
        m: &TensorMonomial<A::Basis>,
    ) -> (bool, TensorMonomial<A::Basis>) {
        let base = alg.base();
        let odd: Vec<bool> = m.0.iter().map(|b| base.parity(b).is_odd()).collect();
        let mut negate = false;
        for i in 0..self.perm.len() {
            for j in (i + 1)..self.perm.len() {
                if self.perm[i] > self.perm[j] && odd[self.perm[i]] && odd[self.perm[j]] {
                    negate = !negate;
                }
            }
        }
        if self.sigma && odd.iter().filter(|&&o| o).count() % 2 == 1 {
            negate = !negate;
        }
        let f = self.perm.iter().map(|&p| m.0[p].clone()).collect();
        (negate, TensorMonomial(f))
    }

    pub fn apply<A: VertexAlgebra>(&self, alg: &TensorAlgebra<A>, s: &TensorState<A::Basis>) -> TensorState<A::Basis> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            let (neg, img) = self.act_monomial(alg, m);
            if neg {
                out.add_term(img, &-c);
            } else {
                out.add_term(img, c);
            }
        }
        out
    }

    /// `f^a` for `a >= 0`.
    pub fn apply_power<A: VertexAlgebra>(
        &self,
        alg: &TensorAlgebra<A>,
        a: u32,
        s: &TensorState<A::Basis>,
    ) -> TensorState<A::Basis> {
        (0..a).fold(s.clone(), |acc, _| self.apply(alg, &acc))
    }
}

/// An automorphism `g` of `V^{(x) k}` together with `h = g sigma`, their orders
/// and the eigenvalue root `e^{2 pi i / T}` of `h`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub g: SlotAutomorphism,
    pub h: SlotAutomorphism,
    pub t0: u32,
    pub t: u32,
    pub root: CycloScalar,
    pub label: String,
}

impl Twist {
    pub fn new(g: SlotAutomorphism, label: impl Into<String>) -> Self {
        let h = g.times_sigma();
        let t0 = g.order();
        let t = h.order();
        Twist { root: CycloScalar::root_of_unity(t, 1), g, h, t0, t, label: label.into() }
    }

    /// The k-cycle on `V^{(x) k}`.
    pub fn cyclic(k: usize) -> Self {
        Twist::new(SlotAutomorphism::cyclic(k), format!("cycle{k}"))
    }

    /// Trivial twist on `V`, giving the ordinary Zhu algebra.
    pub fn untwisted() -> Self {
        Twist::new(SlotAutomorphism::identity(1), "identity")
    }

    /// Parity twist on `V`.
    pub fn parity() -> Self {
        Twist::new(SlotAutomorphism::sigma(1), "sigma")
    }

    /// Block permutation with the given cycle type.
    pub fn cycle_type(cycles: &[usize]) -> Result<Self> {
        let label = cycles.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        Ok(Twist::new(SlotAutomorphism::from_cycles(cycles)?, format!("cycles[{label}]")))
    }

    pub fn k(&self) -> usize {
        self.g.k()
    }

    /// Orbit of a monomial under `h`, as `(sign-flip, h^a m)` for `a = 0..T`.
    pub fn h_orbit<A: VertexAlgebra>(
        &self,
        alg: &TensorAlgebra<A>,
        m: &TensorMonomial<A::Basis>,
    ) -> Vec<(bool, TensorMonomial<A::Basis>)> {
        let mut out = Vec::with_capacity(self.t as usize);
        let mut cur = (false, m.clone());
        for _ in 0..self.t {
            out.push(cur.clone());
            let (n, img) = self.h.act_monomial(alg, &cur.1);
            cur = (cur.0 ^ n, img);
        }
        out
    }

    /// `P_r(s) = (1/T) sum_a root^{-ra} h^a(s)`.
    pub fn eigenprojector<A: VertexAlgebra>(
        &self,
        alg: &TensorAlgebra<A>,
        r: i64,
        s: &TensorState<A::Basis>,
    ) -> Result<TensorState<A::Basis>> {
        if r < 0 || r >= self.t as i64 {
            return Err(ZhuError::InvalidArgument(format!("eigenspace index {r} outside 0..{}", self.t)));
        }
        let inv_t = CycloScalar::from_rational(&rat(1, self.t as i64));
        let mut out = State::zero();
        for (m, c) in s.iter() {
            for (a, (neg, img)) in self.h_orbit(alg, m).into_iter().enumerate() {
                let mut w = CycloScalar::root_of_unity(self.t, -r * a as i64) * c * &inv_t;
                if neg {
                    w = -w;
                }
                out.add_term(img, &w);
            }
        }
        Ok(out)
    }

    /// The 1-tensor orbit sum of `u`: `sum_a u^a` for even `u`,
    /// `sum_a (-1)^{a-1} u^a` for odd `u` when `k` is even.
    pub fn one_tensor_orbit<A: VertexAlgebra>(
        &self,
        alg: &TensorAlgebra<A>,
        u: &State<A::Basis>,
    ) -> Result<TensorState<A::Basis>> {
        let (even, odd) = alg.base().parity_components(u);
        let k = alg.k();
        if !even.is_zero() && !odd.is_zero() {
            return Err(ZhuError::InvalidArgument("orbit sum needs a parity-homogeneous vector".into()));
        }
        if !odd.is_zero() && k % 2 == 1 {
            return Err(ZhuError::InvalidArgument(
                "odd vectors have no invariant 1-tensor orbit sum for odd k; their classes vanish".into(),
            ));
        }
        let mut out = State::zero();
        for a in 1..=k {
            let sign = if !odd.is_zero() && a % 2 == 0 { -1 } else { 1 };
            out.add_scaled(&alg.place(u, a), &CycloScalar::from_int(sign));
        }
        Ok(out)
    }
}
