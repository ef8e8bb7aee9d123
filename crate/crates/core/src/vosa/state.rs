use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::CycloScalar;

/// A sparse exact linear combination of basis monomials.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "B: Serialize", deserialize = "B: Deserialize<'de> + Ord"))]
pub struct State<B: Ord> {
    #[serde(with = "terms_as_list")]
    terms: BTreeMap<B, CycloScalar>,
}

mod terms_as_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<B: Serialize + Ord, S: Serializer>(
        m: &BTreeMap<B, CycloScalar>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, B: Deserialize<'de> + Ord, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<B, CycloScalar>, D::Error> {
        let v: Vec<(B, CycloScalar)> = Vec::deserialize(d)?;
        Ok(v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

impl<B: Ord> Default for State<B> {
    fn default() -> Self {
        State { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> State<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, CycloScalar::one())
    }

    pub fn term(b: B, c: CycloScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(b, &c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (B, CycloScalar)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (b, c) in it {
            s.add_term(b, &c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> CycloScalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &State<B>, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (b, x) in &other.terms {
            if unit {
                self.add_term(b.clone(), x);
            } else {
                self.add_term(b.clone(), &(x * c));
            }
        }
    }

    pub fn add_assign(&mut self, other: &State<B>) {
        self.add_scaled(other, &CycloScalar::one());
    }

    pub fn scaled(&self, c: &CycloScalar) -> State<B> {
        if c.is_zero() {
            return Self::zero();
        }
        State { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> State<B> {
        State { terms: self.terms.iter().map(|(b, x)| (b.clone(), -x)).collect() }
    }

    pub fn sub(&self, other: &State<B>) -> State<B> {
        let mut s = self.clone();
        s.add_scaled(other, &CycloScalar::from_int(-1));
        s
    }

    pub fn plus(&self, other: &State<B>) -> State<B> {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    /// Applies a linear map defined on basis elements.
    pub fn map_linear<C: Ord + Clone, F: FnMut(&B) -> State<C>>(&self, mut f: F) -> State<C> {
        let mut out = State::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Keeps only the terms satisfying the predicate.
    pub fn filtered<F: Fn(&B) -> bool>(&self, keep: F) -> State<B> {
        State { terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (b.clone(), c.clone())).collect() }
    }
}
