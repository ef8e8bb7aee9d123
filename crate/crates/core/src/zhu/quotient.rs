use serde::{Deserialize, Serialize};

use super::{OSpan, TwistedZhu};
use crate::error::{Result, ZhuError};
use crate::scalar::CycloScalar;
use crate::tensor::{TensorMonomial, TensorState};
use crate::vosa::{State, VertexAlgebra, Weight};

/// A finite-dimensional truncated quotient with exact structure constants
/// `e_i e_j = sum_l constants[i][j][l] e_l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub labels: Vec<String>,
    pub weights: Vec<Weight>,
    pub columns: Vec<usize>,
    pub identity: usize,
    pub cutoff: Weight,
    pub constants: Vec<Vec<Vec<CycloScalar>>>,
    /// Whether `[omega]` was checked to be central; skipped when `omega * x`
    /// exceeds the generation weight, where the span is incomplete.
    pub omega_central_checked: bool,
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn multiply(&self, x: &[CycloScalar], y: &[CycloScalar]) -> Vec<CycloScalar> {
        let d = self.dim();
        let mut out = vec![CycloScalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (l, o) in out.iter_mut().enumerate() {
                    if !self.constants[i][j][l].is_zero() {
                        *o += &(&c * &self.constants[i][j][l]);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<CycloScalar> {
        (0..self.dim()).map(|j| if i == j { CycloScalar::one() } else { CycloScalar::zero() }).collect()
    }

    pub fn check_identity(&self) -> Result<()> {
        for i in 0..self.dim() {
            let e = self.unit(i);
            let id = self.unit(self.identity);
            if self.multiply(&id, &e) != e || self.multiply(&e, &id) != e {
                return Err(ZhuError::Verification(format!("[1] is not a two-sided identity on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.constants[i][j];
                for l in 0..d {
                    let lhs = self.multiply(ij, &self.unit(l));
                    let rhs = self.multiply(&self.unit(i), &self.constants[j][l]);
                    if lhs != rhs {
                        return Err(ZhuError::Verification(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl<A: VertexAlgebra> TwistedZhu<A> {
    /// Coordinates of a state in the quotient basis after reduction.
    pub fn coordinates(
        &self,
        span: &OSpan<TensorMonomial<A::Basis>>,
        fa: &FiniteAlgebra,
        s: &TensorState<A::Basis>,
    ) -> Result<Vec<CycloScalar>> {
        let x = span.reduce_sparse(span.to_sparse(s)?);
        let mut out = vec![CycloScalar::zero(); fa.dim()];
        for (j, c) in x {
            match fa.columns.iter().position(|&b| b == j) {
                Some(i) => out[i] = c,
                None => {
                    return Err(ZhuError::InsufficientCutoff(format!(
                        "class has a component at {:?} of weight {}, beyond the quotient cutoff {}",
                        span.columns()[j],
                        span.column_weight(j),
                        fa.cutoff
                    )))
                }
            }
        }
        Ok(out)
    }

    /// The state represented by a coordinate vector.
    pub fn from_coordinates(
        &self,
        span: &OSpan<TensorMonomial<A::Basis>>,
        fa: &FiniteAlgebra,
        x: &[CycloScalar],
    ) -> TensorState<A::Basis> {
        State::from_terms(
            fa.columns.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(j, c)| (span.columns()[*j].clone(), c.clone())),
        )
    }

    /// Quotient by the span in weights `<= N`, with identity, centrality of
    /// `[omega]` and associativity validated.
    pub fn quotient_algebra(&self, span: &OSpan<TensorMonomial<A::Basis>>, n: Weight) -> Result<FiniteAlgebra> {
        if n > span.w_gen {
            return Err(ZhuError::InvalidArgument(format!("cutoff {n} exceeds generation weight {}", span.w_gen)));
        }
        let columns: Vec<usize> = (0..span.columns().len())
            .filter(|&j| span.column_weight(j) <= n && !span.is_pivot(j))
            .collect();
        let vacuum = self.alg.vacuum();
        let identity = columns
            .iter()
            .position(|&j| span.columns()[j] == vacuum)
            .ok_or_else(|| ZhuError::Verification("the vacuum lies in the relation span".into()))?;
        let mut fa = FiniteAlgebra {
            labels: columns.iter().map(|&j| format!("{:?}", span.columns()[j])).collect(),
            weights: columns.iter().map(|&j| span.column_weight(j)).collect(),
            columns,
            identity,
            cutoff: n,
            constants: Vec::new(),
            omega_central_checked: false,
        };
        let reps: Vec<TensorState<A::Basis>> =
            fa.columns.iter().map(|&j| State::basis(span.columns()[j].clone())).collect();
        let mut constants = Vec::with_capacity(reps.len());
        for x in &reps {
            let mut row = Vec::with_capacity(reps.len());
            for y in &reps {
                row.push(self.coordinates(span, &fa, &self.star(x, y))?);
            }
            constants.push(row);
        }
        fa.constants = constants;
        fa.check_identity()?;
        let omega = self.alg.conformal_vector();
        fa.omega_central_checked = Weight::from_int(2) + n <= span.w_gen;
        for (x, label) in reps.iter().zip(&fa.labels).filter(|_| fa.omega_central_checked) {
            let a = span.reduce(&self.star(&omega, x))?;
            let b = span.reduce(&self.star(x, &omega))?;
            if a != b {
                return Err(ZhuError::Verification(format!("[omega] does not commute with {label}")));
            }
        }
        fa.check_associativity()?;
        Ok(fa)
    }
}
