use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZhuError};
use crate::scalar::{CycloScalar, Rational};
use crate::vosa::{Parity, State, VertexAlgebra, Weight};

/// `v_1 (x) ... (x) v_k` with factors kept in slot order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TensorMonomial<B>(pub Vec<B>);

impl<B> TensorMonomial<B> {
    pub fn factors(&self) -> &[B] {
        &self.0
    }
}

impl<B: fmt::Debug> fmt::Debug for TensorMonomial<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| format!("{b:?}")).collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

pub type TensorState<B> = State<TensorMonomial<B>>;

type MemoKey<B> = (TensorMonomial<B>, i64, TensorMonomial<B>);
type Memo<B> = RwLock<HashMap<MemoKey<B>, TensorState<B>>>;

/// The tensor product vertex operator superalgebra `V^{(x) k}`.
pub struct TensorAlgebra<A: VertexAlgebra> {
    base: Arc<A>,
    k: usize,
    memo: Memo<A::Basis>,
}

impl<A: VertexAlgebra> TensorAlgebra<A> {
    pub fn new(base: Arc<A>, k: usize) -> Self {
        assert!(k >= 1, "tensor power must be positive");
        TensorAlgebra { base, k, memo: RwLock::new(HashMap::new()) }
    }

    pub fn base(&self) -> &Arc<A> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The 1-tensor vector `u^a` (1-based slot `a`), extended linearly.
    pub fn place(&self, u: &State<A::Basis>, slot: usize) -> TensorState<A::Basis> {
        assert!((1..=self.k).contains(&slot), "slot {slot} out of range");
        u.map_linear(|b| {
            let mut f = vec![self.base.vacuum(); self.k];
            f[slot - 1] = b.clone();
            State::basis(TensorMonomial(f))
        })
    }

    /// The tensor monomial with the given factors in the given 1-based slots.
    pub fn monomial(&self, entries: &[(usize, A::Basis)]) -> TensorMonomial<A::Basis> {
        let mut f = vec![self.base.vacuum(); self.k];
        for (slot, b) in entries {
            f[slot - 1] = b.clone();
        }
        TensorMonomial(f)
    }

    /// Number of non-vacuum factors.
    pub fn tensor_length(&self, m: &TensorMonomial<A::Basis>) -> usize {
        let vac = self.base.vacuum();
        m.0.iter().filter(|b| **b != vac).count()
    }

    /// Checks that two tensor states live in a `k`-fold product.
    pub fn check_arity(&self, s: &TensorState<A::Basis>) -> Result<()> {
        match s.support().find(|m| m.0.len() != self.k) {
            Some(m) => Err(ZhuError::InvalidArgument(format!(
                "tensor monomial with {} factors used in a {}-fold product",
                m.0.len(),
                self.k
            ))),
            None => Ok(()),
        }
    }

    /// `u_n v` with an arity check on both arguments.
    pub fn tensor_nth_product(
        &self,
        u: &TensorState<A::Basis>,
        n: i64,
        v: &TensorState<A::Basis>,
    ) -> Result<TensorState<A::Basis>> {
        self.check_arity(u)?;
        self.check_arity(v)?;
        Ok(self.nth_product(u, n, v))
    }

    fn compute_product(
        &self,
        u: &TensorMonomial<A::Basis>,
        n: i64,
        v: &TensorMonomial<A::Basis>,
    ) -> TensorState<A::Basis> {
        let k = self.k;
        let vac = self.base.vacuum();
        // Koszul sign: sum_{i>=2} |u_i| (|v_1| + ... + |v_{i-1}|)
        let mut negate = false;
        let mut prefix = Parity::Even;
        for i in 0..k {
            if i > 0 && self.base.parity(&u.0[i]).koszul(prefix) {
                negate = !negate;
            }
            prefix = prefix + self.base.parity(&v.0[i]);
        }
        let max_modes: Vec<i64> = (0..k)
            .map(|i| {
                if u.0[i] == vac {
                    -1
                } else {
                    (self.base.weight(&u.0[i]).half_units() + self.base.weight(&v.0[i]).half_units() - 2)
                        .div_euclid(2)
                }
            })
            .collect();
        let mut suffix = vec![0i64; k + 1];
        for i in (0..k).rev() {
            suffix[i] = suffix[i + 1] + max_modes[i];
        }
        let target = n - k as i64 + 1;
        if target > suffix[0] {
            return State::zero();
        }
        let mut out: TensorState<A::Basis> = State::zero();
        let mut partial: Vec<State<A::Basis>> = Vec::with_capacity(k);
        self.convolve(u, v, 0, target, &max_modes, &suffix, &mut partial, &mut out);
        if negate {
            out.neg()
        } else {
            out
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn convolve(
        &self,
        u: &TensorMonomial<A::Basis>,
        v: &TensorMonomial<A::Basis>,
        slot: usize,
        remaining: i64,
        max_modes: &[i64],
        suffix: &[i64],
        partial: &mut Vec<State<A::Basis>>,
        out: &mut TensorState<A::Basis>,
    ) {
        if slot == self.k {
            if remaining == 0 {
                expand_tensor(partial, out);
            }
            return;
        }
        let lo = remaining - suffix[slot + 1];
        let hi = max_modes[slot];
        let lo = if u.0[slot] == self.base.vacuum() { -1 } else { lo };
        for ni in lo..=hi {
            let rest = remaining - ni;
            if rest > suffix[slot + 1] {
                continue;
            }
            let f = self.base.nth_product_basis(&u.0[slot], ni, &v.0[slot]);
            if f.is_zero() {
                continue;
            }
            partial.push(f);
            self.convolve(u, v, slot + 1, rest, max_modes, suffix, partial, out);
            partial.pop();
        }
    }
}

fn expand_tensor<B: Ord + Clone>(factors: &[State<B>], out: &mut State<TensorMonomial<B>>) {
    let mut acc: Vec<(Vec<B>, CycloScalar)> = vec![(Vec::new(), CycloScalar::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (prefix, c) in &acc {
            for (b, x) in f.iter() {
                let mut p = prefix.clone();
                p.push(b.clone());
                next.push((p, c * x));
            }
        }
        acc = next;
    }
    for (m, c) in acc {
        out.add_term(TensorMonomial(m), &c);
    }
}

impl<A: VertexAlgebra> VertexAlgebra for TensorAlgebra<A> {
    type Basis = TensorMonomial<A::Basis>;

    fn name(&self) -> String {
        format!("{}^{}", self.base.name(), self.k)
    }

    fn vacuum(&self) -> Self::Basis {
        TensorMonomial(vec![self.base.vacuum(); self.k])
    }

    fn weight(&self, b: &Self::Basis) -> Weight {
        b.0.iter().fold(Weight::ZERO, |acc, x| acc + self.base.weight(x))
    }

    fn parity(&self, b: &Self::Basis) -> Parity {
        b.0.iter().fold(Parity::Even, |acc, x| acc + self.base.parity(x))
    }

    fn basis_upto(&self, w: Weight) -> Vec<Self::Basis> {
        let base = self.base.basis_upto(w);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.k);
        fn rec<A: VertexAlgebra>(
            alg: &A,
            base: &[A::Basis],
            k: usize,
            budget: i64,
            cur: &mut Vec<A::Basis>,
            out: &mut Vec<TensorMonomial<A::Basis>>,
        ) {
            if cur.len() == k {
                out.push(TensorMonomial(cur.clone()));
                return;
            }
            for b in base {
                let w = alg.weight(b).half_units();
                if w <= budget {
                    cur.push(b.clone());
                    rec(alg, base, k, budget - w, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self.base.as_ref(), &base, self.k, w.half_units(), &mut cur, &mut out);
        out.sort_by(|a, b| self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b)));
        out
    }

    fn generators(&self) -> Vec<(Weight, Parity)> {
        let g = self.base.generators();
        (0..self.k).flat_map(|_| g.clone()).collect()
    }

    fn conformal_vector(&self) -> State<Self::Basis> {
        let omega = self.base.conformal_vector();
        let mut out = State::zero();
        for a in 1..=self.k {
            out.add_assign(&self.place(&omega, a));
        }
        out
    }

    fn central_charge(&self) -> Rational {
        self.base.central_charge() * Rational::from_integer((self.k as i64).into())
    }

    fn nth_product_basis(&self, u: &Self::Basis, n: i64, v: &Self::Basis) -> State<Self::Basis> {
        if self.weight(u).half_units() + self.weight(v).half_units() - 2 * n - 2 < 0 {
            return State::zero();
        }
        let key = (u.clone(), n, v.clone());
        if let Some(s) = self.memo.read().get(&key) {
            return s.clone();
        }
        let s = self.compute_product(u, n, v);
        self.memo.write().entry(key).or_insert(s).clone()
    }
}
