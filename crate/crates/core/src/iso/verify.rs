use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{self, Matrix};
use super::IsoSetup;
use crate::error::{Result, ZhuError};
use crate::scalar::CycloScalar;
use crate::tensor::{TensorAlgebra, TensorMonomial, Twist};
use crate::vosa::{State, VertexAlgebra, Weight};
use crate::zhu::{load_or_build, CacheOutcome, FiniteAlgebra, OSpan, TwistedZhu};

/// Relation spans and quotients of both sides at one pair of cutoffs.
pub struct Truncation<B: Ord> {
    pub cutoff: Weight,
    pub gen_cutoff: Weight,
    pub source_span: OSpan<TensorMonomial<B>>,
    pub target_span: OSpan<TensorMonomial<B>>,
    pub source: FiniteAlgebra,
    pub target: FiniteAlgebra,
    pub cache: Vec<CacheOutcome>,
}

/// Result of a sweep over generator pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub passed: bool,
    pub pairs_checked: usize,
    pub parity_cases: BTreeSet<String>,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub k: usize,
    pub target: String,
    pub cutoff: Weight,
    pub gen_cutoff: Weight,
    pub dim_source: usize,
    pub dim_target: usize,
    pub source_basis: Vec<String>,
    pub target_basis: Vec<String>,
    pub phi_matrix: Matrix,
    pub psi_matrix: Matrix,
    pub well_defined: bool,
    pub homomorphism: bool,
    pub invertible: bool,
    pub inverse_roundtrip: bool,
    pub unit_preserved: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTypeReport {
    pub cycles: Vec<usize>,
    pub cutoff: Weight,
    pub gen_cutoff: Weight,
    pub dim_source: usize,
    pub cycle_dims: Vec<usize>,
    pub product: usize,
    pub holds: bool,
}

fn parity_case(odd_x: bool, odd_y: bool) -> String {
    let p = |o: bool| if o { "odd" } else { "even" };
    format!("{}-{}", p(odd_x), p(odd_y))
}

fn store_cutoff(w_gen: Weight) -> Weight {
    w_gen + Weight::from_int(1)
}

/// Dimension of a truncated quotient for a twist on `V^{(x) k}`.
pub fn quotient_dim<A: VertexAlgebra>(
    base: Arc<A>,
    twist: Twist,
    cutoff: Weight,
    w_gen: Weight,
    cache_dir: Option<&Path>,
) -> Result<(FiniteAlgebra, CacheOutcome)> {
    let zhu = TwistedZhu::new(Arc::new(TensorAlgebra::new(base, twist.k())), twist);
    let (span, outcome) = load_or_build(&zhu, w_gen, store_cutoff(w_gen), cache_dir)?;
    Ok((zhu.quotient_algebra(&span, cutoff)?, outcome))
}

impl<A: VertexAlgebra> IsoSetup<A> {
    pub fn truncate(&self, cutoff: Weight, w_gen: Weight, cache_dir: Option<&Path>) -> Result<Truncation<A::Basis>> {
        let (source_span, a) = load_or_build(&self.source, w_gen, store_cutoff(w_gen), cache_dir)?;
        let (target_span, b) = load_or_build(&self.target, w_gen, store_cutoff(w_gen), cache_dir)?;
        let source = self.source.quotient_algebra(&source_span, cutoff)?;
        let target = self.target.quotient_algebra(&target_span, cutoff)?;
        Ok(Truncation { cutoff, gen_cutoff: w_gen, source_span, target_span, source, target, cache: vec![a, b] })
    }

    fn generator_pairs(&self, total: Weight) -> Vec<(A::Basis, A::Basis)> {
        let gens: Vec<A::Basis> = self
            .base()
            .basis_upto(total)
            .into_iter()
            .filter(|u| self.k.is_multiple_of(2) || !self.base().parity(u).is_odd())
            .collect();
        let mut out = Vec::new();
        for u in &gens {
            for v in &gens {
                if self.base().weight(u) + self.base().weight(v) <= total {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        out
    }

    fn sweep<F>(&self, total: Weight, check: F) -> PairCheck
    where
        F: Fn(&A::Basis, &A::Basis) -> Result<Option<String>> + Sync,
    {
        let pairs = self.generator_pairs(total);
        let results: Vec<Result<Option<String>>> = pairs.par_iter().map(|(u, v)| check(u, v)).collect();
        let mut report = PairCheck { passed: true, ..Default::default() };
        for ((u, v), r) in pairs.iter().zip(results) {
            report.pairs_checked += 1;
            report.parity_cases.insert(parity_case(self.base().parity(u).is_odd(), self.base().parity(v).is_odd()));
            let failure = match r {
                Ok(None) => None,
                Ok(Some(msg)) => Some(msg),
                Err(e) => Some(e.to_string()),
            };
            if let Some(msg) = failure {
                if report.passed {
                    report.passed = false;
                    report.counterexample = Some(format!("x = [{u:?}], y = [{v:?}]: {msg}"));
                }
            }
        }
        report
    }

    /// `phi(x o_g y)` lies in the target relation span for generator pairs with
    /// `wt x + wt y <= W_gen`.
    pub fn verify_well_defined(&self, tr: &Truncation<A::Basis>) -> PairCheck {
        self.sweep(tr.gen_cutoff, |u, v| {
            let x = self.generator(u)?;
            let y = self.generator(v)?;
            let classes = self.decompose(&self.source.circle(&x, &y))?;
            let image = self.lift_target(&self.phi_on_classes(&classes)?);
            let rem = tr.target_span.reduce(&image)?;
            Ok((!rem.is_zero()).then(|| format!("image reduces to {rem:?}, not 0")))
        })
    }

    /// `phi(x *_g y) = phi(x) * phi(y)` on canonical representatives for generator
    /// pairs with `wt x + wt y <= N`.
    pub fn verify_homomorphism(&self, tr: &Truncation<A::Basis>) -> PairCheck {
        self.sweep(tr.cutoff, |u, v| {
            let x = self.generator(u)?;
            let y = self.generator(v)?;
            let classes = self.decompose(&self.source.star(&x, &y))?;
            let lhs = tr.target_span.reduce(&self.lift_target(&self.phi_on_classes(&classes)?))?;
            let pu = self.lift_target(&self.phi_on_generator(u)?);
            let pv = self.lift_target(&self.phi_on_generator(v)?);
            let rhs = tr.target_span.reduce(&self.target.star(&pu, &pv))?;
            Ok((lhs != rhs).then(|| format!("phi(x*y) = {lhs:?} but phi(x)*phi(y) = {rhs:?}")))
        })
    }

    /// Matrices of `phi` and `psi` on the coset bases, with invertibility,
    /// round trips and multiplicativity on all basis pairs.
    pub fn build_iso_matrix(&self, tr: &Truncation<A::Basis>) -> Result<IsoReport> {
        let (ds, dt) = (tr.source.dim(), tr.target.dim());
        let classes = self.generator_classes(tr.cutoff)?;
        let mut counterexample = None;
        let mut g: Matrix = linalg::zeros(ds, classes.len());
        let mut h: Matrix = linalg::zeros(dt, classes.len());
        for (c, class) in classes.iter().enumerate() {
            let src = self.source.coordinates(&tr.source_span, &tr.source, &class.source)?;
            let img = self.lift_target(&self.phi_on_generator(&class.label)?);
            let tgt = self.target.coordinates(&tr.target_span, &tr.target, &img)?;
            for i in 0..ds {
                g[i][c] = src[i].clone();
            }
            for i in 0..dt {
                h[i][c] = tgt[i].clone();
            }
        }
        // relations among generator classes must map to relations
        let mut well_defined = true;
        for kvec in linalg::kernel(&g, classes.len()) {
            if linalg::apply(&h, &kvec).iter().any(|x| !x.is_zero()) {
                well_defined = false;
                counterexample.get_or_insert_with(|| "a relation among generator classes has nonzero image".into());
            }
        }
        let mut phi = linalg::zeros(dt, ds);
        let mut spanned = true;
        for i in 0..ds {
            let e: Vec<CycloScalar> =
                (0..ds).map(|j| if i == j { CycloScalar::one() } else { CycloScalar::zero() }).collect();
            match linalg::solve(&g, &e) {
                Some(c) => {
                    for (r, x) in linalg::apply(&h, &c).into_iter().enumerate() {
                        phi[r][i] = x;
                    }
                }
                None => {
                    spanned = false;
                    counterexample
                        .get_or_insert_with(|| format!("source basis {} is not spanned by generators", tr.source.labels[i]));
                }
            }
        }
        let mut psi = linalg::zeros(ds, dt);
        for i in 0..dt {
            let t = State::basis(tr.target_span.columns()[tr.target.columns[i]].0[0].clone());
            let img = self.psi_on_state(&t)?;
            for (r, x) in self.source.coordinates(&tr.source_span, &tr.source, &img)?.into_iter().enumerate() {
                psi[r][i] = x;
            }
        }
        let invertible = spanned && ds == dt && linalg::rank(&phi) == ds;
        let inverse_roundtrip =
            linalg::mul(&phi, &psi) == linalg::identity(dt) && linalg::mul(&psi, &phi) == linalg::identity(ds);
        if !invertible {
            counterexample.get_or_insert_with(|| format!("phi is {dt} x {ds} of rank {}", linalg::rank(&phi)));
        } else if !inverse_roundtrip {
            counterexample.get_or_insert_with(|| "psi is not inverse to phi".into());
        }
        let mut homomorphism = true;
        for i in 0..ds {
            for j in 0..ds {
                let lhs = linalg::apply(&phi, &tr.source.constants[i][j]);
                let col = |c: usize| phi.iter().map(|r| r[c].clone()).collect::<Vec<_>>();
                let rhs = tr.target.multiply(&col(i), &col(j));
                if lhs != rhs {
                    homomorphism = false;
                    counterexample.get_or_insert_with(|| {
                        format!("phi is not multiplicative on ({}, {})", tr.source.labels[i], tr.source.labels[j])
                    });
                }
            }
        }
        let unit_col: Vec<CycloScalar> = phi.iter().map(|r| r[tr.source.identity].clone()).collect();
        let unit_preserved = (0..dt).all(|r| {
            unit_col[r] == if r == tr.target.identity { CycloScalar::one() } else { CycloScalar::zero() }
        });
        Ok(IsoReport {
            k: self.k,
            target: self.target_name().into(),
            cutoff: tr.cutoff,
            gen_cutoff: tr.gen_cutoff,
            dim_source: ds,
            dim_target: dt,
            source_basis: tr.source.labels.clone(),
            target_basis: tr.target.labels.clone(),
            phi_matrix: phi,
            psi_matrix: psi,
            well_defined,
            homomorphism,
            invertible,
            inverse_roundtrip,
            unit_preserved,
            counterexample,
        })
    }
}

/// Compares `dim A_g(V^{(x) k})` for a block permutation with the product of
/// `dim A(V)` over odd cycles and `dim A_sigma(V)` over even cycles.
pub fn general_cycle_type<A: VertexAlgebra>(
    base: Arc<A>,
    cycles: &[usize],
    cutoff: Weight,
    w_gen: Weight,
    cache_dir: Option<&Path>,
) -> Result<CycleTypeReport> {
    if cycles.is_empty() {
        return Err(ZhuError::InvalidArgument("empty cycle type".into()));
    }
    let (source, _) = quotient_dim(base.clone(), Twist::cycle_type(cycles)?, cutoff, w_gen, cache_dir)?;
    let mut cycle_dims = Vec::new();
    for &c in cycles {
        let twist = if c % 2 == 0 { Twist::parity() } else { Twist::untwisted() };
        cycle_dims.push(quotient_dim(base.clone(), twist, cutoff, w_gen, cache_dir)?.0.dim());
    }
    let product = cycle_dims.iter().product();
    Ok(CycleTypeReport {
        cycles: cycles.to_vec(),
        cutoff,
        gen_cutoff: w_gen,
        dim_source: source.dim(),
        cycle_dims,
        product,
        holds: source.dim() == product,
    })
}
