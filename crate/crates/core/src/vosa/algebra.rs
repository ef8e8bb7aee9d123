use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use super::{Parity, State, Weight};
use crate::scalar::{CycloScalar, Rational};

/// A vertex operator superalgebra with a graded monomial basis and an exact
/// `n`-th product `Y(u, z) v = sum_n u_n v z^{-n-1}`.
///
/// Implementations must satisfy `1_n v = delta_{n,-1} v`, the creation
/// property, and `wt(u_n v) = wt u + wt v - n - 1` for homogeneous inputs.
pub trait VertexAlgebra: Send + Sync {
    type Basis: Clone + Ord + Hash + Eq + Debug + Send + Sync + Serialize;

    /// Short identifier used in cache keys and reports.
    fn name(&self) -> String;

    fn vacuum(&self) -> Self::Basis;

    fn weight(&self, b: &Self::Basis) -> Weight;

    fn parity(&self, b: &Self::Basis) -> Parity;

    /// All basis monomials of weight at most `w`, ordered by weight and then
    /// lexicographically.
    fn basis_upto(&self, w: Weight) -> Vec<Self::Basis>;

    /// Weights and parities of the strong generators.
    fn generators(&self) -> Vec<(Weight, Parity)>;

    fn conformal_vector(&self) -> State<Self::Basis>;

    fn central_charge(&self) -> Rational;

    fn nth_product_basis(&self, u: &Self::Basis, n: i64, v: &Self::Basis) -> State<Self::Basis>;

    fn vacuum_state(&self) -> State<Self::Basis> {
        State::basis(self.vacuum())
    }

    fn nth_product(&self, u: &State<Self::Basis>, n: i64, v: &State<Self::Basis>) -> State<Self::Basis> {
        let mut out = State::zero();
        for (a, ca) in u.iter() {
            let wa = self.weight(a).half_units();
            for (b, cb) in v.iter() {
                if wa + self.weight(b).half_units() - 2 * n - 2 < 0 {
                    continue;
                }
                let p = self.nth_product_basis(a, n, b);
                if !p.is_zero() {
                    out.add_scaled(&p, &(ca * cb));
                }
            }
        }
        out
    }

    /// `L(m) s = omega_{m+1} s`.
    fn virasoro(&self, m: i64, s: &State<Self::Basis>) -> State<Self::Basis> {
        self.nth_product(&self.conformal_vector(), m + 1, s)
    }

    fn max_weight(&self, s: &State<Self::Basis>) -> Option<Weight> {
        s.support().map(|b| self.weight(b)).max()
    }

    fn weight_components(&self, s: &State<Self::Basis>) -> BTreeMap<Weight, State<Self::Basis>> {
        let mut out: BTreeMap<Weight, State<Self::Basis>> = BTreeMap::new();
        for (b, c) in s.iter() {
            out.entry(self.weight(b)).or_default().add_term(b.clone(), c);
        }
        out
    }

    fn parity_components(&self, s: &State<Self::Basis>) -> (State<Self::Basis>, State<Self::Basis>) {
        (
            s.filtered(|b| !self.parity(b).is_odd()),
            s.filtered(|b| self.parity(b).is_odd()),
        )
    }

    /// `L(-1)^j / j!` applied to `s`.
    fn translation_power(&self, j: u32, s: &State<Self::Basis>) -> State<Self::Basis> {
        let mut cur = s.clone();
        for i in 1..=j {
            cur = self.virasoro(-1, &cur).scaled(&CycloScalar::from_rational(&crate::scalar::rat(1, i as i64)));
        }
        cur
    }
}
