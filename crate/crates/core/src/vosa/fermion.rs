use std::collections::HashMap;
use std::fmt;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use super::{Parity, State, VertexAlgebra, Weight};
use crate::scalar::{rat, CycloScalar, Rational};

/// `psi_{-m_1} ... psi_{-m_r} 1` with `m_1 > ... > m_r >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FermionMonomial(Vec<u32>);

impl FermionMonomial {
    pub fn vacuum() -> Self {
        FermionMonomial(Vec::new())
    }

    /// Builds from mode labels in any order; `None` if a label repeats or is zero.
    pub fn new(mut modes: Vec<u32>) -> Option<Self> {
        modes.sort_unstable_by(|a, b| b.cmp(a));
        if modes.contains(&0) || modes.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(FermionMonomial(modes))
    }

    pub fn modes(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> Weight {
        Weight::from_half_units(self.0.iter().map(|&m| 2 * m as i64 - 1).sum())
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.0.len() % 2 == 1)
    }

    /// Applies the mode `psi_n`; returns the sign flag and resulting monomial.
    pub fn apply_mode(&self, n: i64) -> Option<(bool, FermionMonomial)> {
        if n >= 0 {
            // annihilator: pairs with psi_{-(n+1)}
            let target = (n + 1) as u32;
            let pos = self.0.iter().position(|&m| m == target)?;
            let mut rest = self.0.clone();
            rest.remove(pos);
            Some((pos % 2 == 1, FermionMonomial(rest)))
        } else {
            let m = (-n) as u32;
            if self.0.contains(&m) {
                return None;
            }
            let pos = self.0.iter().take_while(|&&x| x > m).count();
            let mut out = self.0.clone();
            out.insert(pos, m);
            Some((pos % 2 == 1, FermionMonomial(out)))
        }
    }
}

impl fmt::Debug for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|m| format!("psi(-{m})")).collect();
        write!(f, "{}", parts.join(""))
    }
}

type MemoKey = (FermionMonomial, i64, FermionMonomial);

/// The free fermion vertex operator superalgebra of central charge 1/2,
/// generated by `psi` of weight 1/2 with `{psi_m, psi_n} = delta_{m+n,-1}`.
#[derive(Default)]
pub struct FreeFermion {
    memo: RwLock<HashMap<MemoKey, State<FermionMonomial>>>,
}

impl FreeFermion {
    pub fn new() -> Self {
        Self::default()
    }

    /// `psi` itself, i.e. `psi_{-1} 1`.
    pub fn psi(&self) -> FermionMonomial {
        FermionMonomial(vec![1])
    }

    pub fn apply_generator_mode(&self, n: i64, s: &State<FermionMonomial>) -> State<FermionMonomial> {
        let mut out = State::zero();
        for (b, c) in s.iter() {
            if let Some((neg, m)) = b.apply_mode(n) {
                out.add_term(m, &if neg { -c } else { c.clone() });
            }
        }
        out
    }

    fn compute_product(&self, u: &FermionMonomial, n: i64, v: &FermionMonomial) -> State<FermionMonomial> {
        // u = psi_{(-m)} b; iterate formula
        // (a_{(p)} b)_{(n)} = sum_j (-1)^j C(p, j) [a_{(p-j)} b_{(n+j)} - (-1)^p (-1)^{|a||b|} b_{(p+n-j)} a_{(j)}]
        let m = u.0[0] as i64;
        let b = FermionMonomial(u.0[1..].to_vec());
        let wb = b.weight().half_units();
        let wv = v.weight().half_units();
        let b_odd = b.parity().is_odd();
        let second_sign_negative = (m % 2 == 1) != b_odd; // (-1)^m (-1)^{|b|}
        let v_state = State::basis(v.clone());
        let mut out = State::zero();
        // first term needs wb + wv - 2(n+j) - 2 >= 0; second needs 1 + wv - 2j - 2 >= 0
        let j_first = (wb + wv - 2 * n - 2).div_euclid(2);
        let j_second = (wv - 1).div_euclid(2);
        let j_max = j_first.max(j_second);
        for j in 0..=j_max.max(-1) {
            // (-1)^j C(-m, j) = C(m + j - 1, j)
            let coeff = binom_int(m + j - 1, j);
            if j <= j_first {
                let inner = self.nth_product(&State::basis(b.clone()), n + j, &v_state);
                let t = self.apply_generator_mode(-m - j, &inner);
                out.add_scaled(&t, &CycloScalar::from_int(coeff));
            }
            if j <= j_second {
                let inner = self.apply_generator_mode(j, &v_state);
                if inner.is_zero() {
                    continue;
                }
                let t = self.nth_product(&State::basis(b.clone()), -m + n - j, &inner);
                let c = if second_sign_negative { coeff } else { -coeff };
                out.add_scaled(&t, &CycloScalar::from_int(c));
            }
        }
        out
    }
}

fn binom_int(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return if k == 0 { 1 } else { 0 };
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl VertexAlgebra for FreeFermion {
    type Basis = FermionMonomial;

    fn name(&self) -> String {
        "fermion".into()
    }

    fn vacuum(&self) -> FermionMonomial {
        FermionMonomial::vacuum()
    }

    fn weight(&self, b: &FermionMonomial) -> Weight {
        b.weight()
    }

    fn parity(&self, b: &FermionMonomial) -> Parity {
        b.parity()
    }

    fn basis_upto(&self, w: Weight) -> Vec<FermionMonomial> {
        // strict partitions into parts m >= 1 with sum of (2m - 1) <= 2w
        fn rec(max_part: u32, budget: i64, cur: &mut Vec<u32>, out: &mut Vec<FermionMonomial>) {
            out.push(FermionMonomial(cur.clone()));
            for m in (1..max_part).rev() {
                let cost = 2 * m as i64 - 1;
                if cost <= budget {
                    cur.push(m);
                    rec(m, budget - cost, cur, out);
                    cur.pop();
                }
            }
        }
        let budget = w.half_units();
        if budget < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec((budget as u32).div_ceil(2) + 1, budget, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        out
    }

    fn generators(&self) -> Vec<(Weight, Parity)> {
        vec![(Weight::from_half_units(1), Parity::Odd)]
    }

    fn conformal_vector(&self) -> State<FermionMonomial> {
        State::term(FermionMonomial(vec![2, 1]), CycloScalar::from_rational(&rat(1, 2)))
    }

    fn central_charge(&self) -> Rational {
        rat(1, 2)
    }

    fn nth_product_basis(&self, u: &FermionMonomial, n: i64, v: &FermionMonomial) -> State<FermionMonomial> {
        if u.0.is_empty() {
            return if n == -1 { State::basis(v.clone()) } else { State::zero() };
        }
        if u.weight().half_units() + v.weight().half_units() - 2 * n - 2 < 0 {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vosa::checks;

    fn mono(m: &[u32]) -> FermionMonomial {
        FermionMonomial::new(m.to_vec()).unwrap()
    }

    fn st(m: &[u32]) -> State<FermionMonomial> {
        State::basis(mono(m))
    }

    #[test]
    fn generator_modes() {
        let f = FreeFermion::new();
        assert_eq!(f.apply_generator_mode(0, &st(&[1])), st(&[]));
        assert!(f.apply_generator_mode(3, &st(&[])).is_zero());
        assert!(f.apply_generator_mode(-1, &st(&[1])).is_zero());
        // psi_{-1} psi_{-2} 1 = -psi_{-2} psi_{-1} 1
        assert_eq!(f.apply_generator_mode(-1, &st(&[2])), st(&[2, 1]).neg());
        // anticommutator on a random state: {psi_1, psi_{-2}} = 1
        let s = st(&[3, 1]);
        let a = f.apply_generator_mode(1, &f.apply_generator_mode(-2, &s));
        let b = f.apply_generator_mode(-2, &f.apply_generator_mode(1, &s));
        assert_eq!(a.plus(&b), s);
    }

    #[test]
    fn nth_product_examples() {
        let f = FreeFermion::new();
        let v = st(&[3, 1]);
        for n in -3..3 {
            let p = f.nth_product(&st(&[]), n, &v);
            assert_eq!(p, if n == -1 { v.clone() } else { State::zero() });
        }
        assert_eq!(f.nth_product(&st(&[1]), 0, &st(&[1])), st(&[]));
        assert!(f.nth_product(&st(&[1]), -1, &st(&[1])).is_zero());
        // psi_{-2} 1 = L(-1) psi
        assert_eq!(f.virasoro(-1, &st(&[1])), st(&[2]));
    }

    #[test]
    fn virasoro_examples() {
        let f = FreeFermion::new();
        assert_eq!(f.virasoro(0, &st(&[1])), st(&[1]).scaled(&CycloScalar::from_rational(&rat(1, 2))));
        assert!(f.virasoro(-1, &st(&[])).is_zero());
        let omega = f.conformal_vector();
        assert_eq!(f.virasoro(2, &omega), st(&[]).scaled(&CycloScalar::from_rational(&rat(1, 4))));
        assert!(f.virasoro(1, &omega).is_zero());
        assert_eq!(f.virasoro(0, &omega), omega.scaled(&CycloScalar::from_int(2)));
    }

    #[test]
    fn basis_enumeration() {
        let f = FreeFermion::new();
        assert_eq!(f.basis_upto(Weight::from_half_units(1)), vec![mono(&[]), mono(&[1])]);
        assert_eq!(
            f.basis_upto(Weight::from_int(2)),
            vec![mono(&[]), mono(&[1]), mono(&[2]), mono(&[2, 1])]
        );
        assert_eq!(f.basis_upto(Weight::ZERO), vec![mono(&[])]);
        // strict partitions into odd parts: 1,1,0,1,1,1,1,1,2,2 for 0..=9 half-units
        let counts: Vec<usize> = (0..=9)
            .map(|h| {
                f.basis_upto(Weight::from_half_units(h))
                    .iter()
                    .filter(|m| m.weight().half_units() == h)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 0, 1, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn axioms_hold_at_low_weight() {
        let f = FreeFermion::new();
        let w2 = Weight::from_int(2);
        checks::check_vacuum_axioms(&f, w2).unwrap();
        checks::check_l0_grading(&f, Weight::from_int(3)).unwrap();
        checks::check_grading(&f, Weight::from_int(3)).unwrap();
        checks::check_skew_symmetry(&f, Weight::from_int(2)).unwrap();
    }
}
