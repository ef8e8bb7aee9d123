use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use rayon::prelude::*;

use super::TwistedZhu;
use crate::error::{Result, ZhuError};
use crate::scalar::CycloScalar;
use crate::tensor::TensorMonomial;
use crate::vosa::{State, VertexAlgebra, Weight};

pub(crate) type SparseRow = BTreeMap<usize, CycloScalar>;

/// `x -= c * row`
fn axpy(x: &mut SparseRow, c: &CycloScalar, row: &SparseRow) {
    for (j, v) in row {
        let d = c * v;
        match x.get_mut(j) {
            Some(e) => {
                *e -= &d;
                if e.is_zero() {
                    x.remove(j);
                }
            }
            None => {
                x.insert(*j, -d);
            }
        }
    }
}

/// Reduced row echelon basis of a subspace of `span(columns)`.
///
/// Every row has leading coefficient 1 at its pivot, which is its largest
/// column index, and no other row touches a pivot column. Columns are listed
/// in (weight, lex) order, so coset representatives sit at low weight.
#[derive(Clone, Debug)]
pub struct OSpan<C> {
    pub algebra: String,
    pub twist: String,
    pub w_gen: Weight,
    pub w_store: Weight,
    columns: Vec<C>,
    weights: Vec<Weight>,
    index: HashMap<C, usize>,
    rows: Vec<SparseRow>,
    pivots: BTreeMap<usize, usize>,
}

impl<C: Clone + Ord + Hash + std::fmt::Debug> OSpan<C> {
    pub fn empty(
        algebra: String,
        twist: String,
        w_gen: Weight,
        w_store: Weight,
        columns: Vec<C>,
        weights: Vec<Weight>,
    ) -> Self {
        let index = columns.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        OSpan { algebra, twist, w_gen, w_store, columns, weights, index, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn columns(&self) -> &[C] {
        &self.columns
    }

    pub fn column_weight(&self, j: usize) -> Weight {
        self.weights[j]
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, j: usize) -> bool {
        self.pivots.contains_key(&j)
    }

    pub(crate) fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn to_sparse(&self, s: &State<C>) -> Result<SparseRow> {
        let mut out = SparseRow::new();
        for (m, c) in s.iter() {
            let j = self.index.get(m).ok_or_else(|| {
                ZhuError::OutsideCutoff(format!("{m:?} is above the stored weight {}", self.w_store))
            })?;
            out.insert(*j, c.clone());
        }
        Ok(out)
    }

    pub fn from_sparse(&self, x: &SparseRow) -> State<C> {
        State::from_terms(x.iter().map(|(j, c)| (self.columns[*j].clone(), c.clone())))
    }

    pub(crate) fn reduce_sparse(&self, mut x: SparseRow) -> SparseRow {
        let hits: Vec<usize> = x.keys().filter(|j| self.pivots.contains_key(j)).copied().collect();
        for p in hits {
            if let Some(c) = x.get(&p).cloned() {
                axpy(&mut x, &c, &self.rows[self.pivots[&p]]);
            }
        }
        x
    }

    /// Canonical coset representative of `s`.
    pub fn reduce(&self, s: &State<C>) -> Result<State<C>> {
        Ok(self.from_sparse(&self.reduce_sparse(self.to_sparse(s)?)))
    }

    pub fn contains(&self, s: &State<C>) -> Result<bool> {
        Ok(self.reduce_sparse(self.to_sparse(s)?).is_empty())
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, s: &State<C>) -> Result<bool> {
        let x = self.to_sparse(s)?;
        Ok(self.insert_sparse(x))
    }

    pub(crate) fn insert_sparse(&mut self, x: SparseRow) -> bool {
        let x = self.reduce_sparse(x);
        let Some((&p, lead)) = x.iter().next_back() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        let row: SparseRow = x.iter().map(|(j, c)| (*j, c * &inv)).collect();
        for r in self.rows.iter_mut() {
            if let Some(c) = r.get(&p).cloned() {
                axpy(r, &c, &row);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Rebuilds from stored rows, checking that they form a valid echelon basis.
    pub(crate) fn restore_rows(&mut self, rows: Vec<SparseRow>) -> Result<()> {
        let mut pivots = BTreeMap::new();
        for (i, r) in rows.iter().enumerate() {
            let Some((&p, lead)) = r.iter().next_back() else {
                return Err(ZhuError::Verification("empty stored row".into()));
            };
            if !lead.is_one() || r.keys().any(|&j| j >= self.columns.len()) || pivots.insert(p, i).is_some() {
                return Err(ZhuError::Verification("stored rows are not in echelon form".into()));
            }
        }
        for r in &rows {
            if r.keys().filter(|j| pivots.contains_key(j)).count() != 1 {
                return Err(ZhuError::Verification("stored rows are not fully reduced".into()));
            }
        }
        self.rows = rows;
        self.pivots = pivots;
        Ok(())
    }
}

impl<A: VertexAlgebra> TwistedZhu<A> {
    /// Monomials `u` that are the smallest in their `h`-orbit.
    fn is_orbit_representative(&self, u: &TensorMonomial<A::Basis>) -> bool {
        self.twist.h_orbit(&self.alg, u).iter().all(|(_, m)| m >= u)
    }

    pub fn empty_ospan(&self, w_gen: Weight, w_store: Weight) -> OSpan<TensorMonomial<A::Basis>> {
        let columns = self.alg.basis_upto(w_store);
        let weights = columns.iter().map(|m| self.alg.weight(m)).collect();
        OSpan::empty(self.alg.name(), self.twist.label.clone(), w_gen, w_store, columns, weights)
    }

    /// Row-reduced span of all `u o_g v` over basis pairs with `wt u + wt v <= W_gen`.
    ///
    /// Only one `u` per `h`-orbit is used: `P_r(h u)` is a multiple of `P_r(u)`.
    pub fn build_ospan(&self, w_gen: Weight, w_store: Weight) -> Result<OSpan<TensorMonomial<A::Basis>>> {
        if w_store < w_gen + Weight::from_int(1) {
            return Err(ZhuError::InvalidArgument(format!(
                "stored weight {w_store} must be at least generation weight {w_gen} + 1"
            )));
        }
        let mut span = self.empty_ospan(w_gen, w_store);
        let basis = self.alg.basis_upto(w_gen);
        let mut pairs = Vec::new();
        for u in basis.iter().filter(|u| self.is_orbit_representative(u)) {
            for v in &basis {
                if self.alg.weight(u) + self.alg.weight(v) <= w_gen {
                    pairs.push((u, v));
                }
            }
        }
        let rows: Vec<Vec<TensorStateRow<A>>> = pairs
            .par_iter()
            .map(|(u, v)| {
                let hu = self.alg.weight(u).half_units();
                self.eigen_components(u)
                    .into_iter()
                    .map(|(r, p)| self.circle_component(r, &p, hu, v))
                    .filter(|s| !s.is_zero())
                    .collect()
            })
            .collect();
        for s in rows.iter().flatten() {
            span.insert(s)?;
        }
        Ok(span)
    }
}

type TensorStateRow<A> = State<TensorMonomial<<A as VertexAlgebra>::Basis>>;
