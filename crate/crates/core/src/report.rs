//! Run configuration and machine-readable reports for the command line.
//!
//! A report has a deterministic `report` body and a separate `run` section with
//! timings and cache activity, which vary between runs.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::delta::{solve_a_coeffs, verify_conjugation, ACoeffs, ConjugationReport};
use crate::error::{Result, ZhuError};
use crate::iso::{general_cycle_type, quotient_dim, CycleTypeReport, IsoReport, IsoSetup, PairCheck};
use crate::tensor::Twist;
use crate::vosa::{FreeFermion, State, VertexAlgebra, Weight};
use crate::zhu::{CacheOutcome, FiniteAlgebra};

/// Optional checks selectable with `--checks`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    WellDefined,
    Homomorphism,
    Iso,
    Cycles,
    Reductions,
    Conjugation,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::WellDefined, Check::Homomorphism, Check::Iso, Check::Cycles, Check::Reductions, Check::Conjugation];

    pub fn name(self) -> &'static str {
        match self {
            Check::WellDefined => "well-defined",
            Check::Homomorphism => "homomorphism",
            Check::Iso => "iso",
            Check::Cycles => "cycles",
            Check::Reductions => "reductions",
            Check::Conjugation => "conjugation",
        }
    }

    pub fn parse(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ZhuError::Parse(format!("unknown check '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub algebra: String,
    pub k: usize,
    pub cycles: Vec<usize>,
    pub cutoff: Weight,
    pub gen_cutoff: Weight,
    pub checks: BTreeSet<Check>,
}

impl RunConfig {
    /// Resolves `k` and the cycle type from whichever was given, and checks the cutoffs.
    pub fn new(
        algebra: &str,
        k: Option<usize>,
        cycles: Option<Vec<usize>>,
        cutoff: Option<Weight>,
        gen_cutoff: Option<Weight>,
        checks: BTreeSet<Check>,
    ) -> Result<RunConfig> {
        if algebra != "fermion" {
            return Err(ZhuError::InvalidArgument(format!("unknown algebra '{algebra}' (available: fermion)")));
        }
        let cycles = match (k, cycles) {
            (None, None) => return Err(ZhuError::InvalidArgument("one of --k or --cycles is required".into())),
            (Some(k), None) => vec![k],
            (k, Some(c)) => {
                if let Some(k) = k {
                    if c.iter().sum::<usize>() != k {
                        return Err(ZhuError::InvalidArgument(format!("cycle type {c:?} does not sum to k = {k}")));
                    }
                }
                c
            }
        };
        if cycles.is_empty() || cycles.contains(&0) {
            return Err(ZhuError::InvalidArgument("cycle lengths must be positive".into()));
        }
        let two = Weight::from_int(2);
        let (cutoff, gen_cutoff) = match (cutoff, gen_cutoff) {
            (Some(n), Some(g)) => (n, g),
            (Some(n), None) => (n, n + two),
            (None, Some(g)) => (Weight::from_half_units((g.half_units() - 4).max(0)), g),
            (None, None) => (Weight::from_int(1), Weight::from_int(3)),
        };
        if cutoff < Weight::ZERO {
            return Err(ZhuError::InvalidArgument(format!("cutoff {cutoff} is negative")));
        }
        if gen_cutoff < cutoff {
            return Err(ZhuError::InvalidArgument(format!(
                "generation cutoff {gen_cutoff} must be at least the cutoff {cutoff}"
            )));
        }
        Ok(RunConfig { algebra: algebra.into(), k: cycles.iter().sum(), cycles, cutoff, gen_cutoff, checks })
    }

    pub fn is_composite(&self) -> bool {
        self.cycles.len() > 1
    }

    /// Number of `a_j` kept: twice the largest weight any computation touches.
    pub fn j_max(&self) -> usize {
        2 * (self.gen_cutoff.floor() as usize + 2)
    }

    fn distinct_lengths(&self) -> Vec<usize> {
        self.cycles.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.gen_cutoff < self.cutoff + Weight::from_int(2) {
            w.push(format!(
                "cutoff too small: generation cutoff {} is below cutoff {} + 2; the relation span may be incomplete and \
                 well_defined may report a false negative",
                self.gen_cutoff, self.cutoff
            ));
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraSummary {
    pub role: String,
    pub algebra: String,
    pub twist: String,
    pub t0: u32,
    pub t: u32,
    pub dim: usize,
    pub dims_by_cutoff: Vec<(Weight, Weight, usize)>,
    pub stable: bool,
    pub quotient: FiniteAlgebra,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComputeBody {
    pub command: String,
    pub config: RunConfig,
    pub a_coeffs: Vec<ACoeffs>,
    pub algebras: Vec<AlgebraSummary>,
    pub all_stable: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionCheck {
    pub k: usize,
    pub pairs_checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleChecks {
    pub length: usize,
    pub well_defined: Option<PairCheck>,
    pub homomorphism: Option<PairCheck>,
    pub iso: Option<IsoReport>,
    pub reductions: Option<ReductionCheck>,
    pub conjugation: Option<Vec<(String, ConjugationReport)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyBody {
    pub command: String,
    pub config: RunConfig,
    pub per_cycle: Vec<CycleChecks>,
    pub cycle_type: Option<CycleTypeReport>,
    pub all_passed: bool,
    pub warnings: Vec<String>,
}

/// Non-deterministic run metadata.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunInfo {
    pub timing_ms: Vec<(String, u128)>,
    pub cache_hit: bool,
    pub cache: Vec<CacheOutcome>,
}

impl RunInfo {
    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timing_ms.push((label.into(), t.elapsed().as_millis()));
        out
    }

    fn record(&mut self, c: CacheOutcome) {
        self.cache.push(c);
        self.cache_hit = !self.cache.is_empty() && self.cache.iter().all(|c| c.hit);
    }
}

#[derive(Serialize)]
pub struct Report<B> {
    pub report: B,
    pub run: RunInfo,
}

fn summarize(
    base: &Arc<FreeFermion>,
    role: String,
    twist: Twist,
    cfg: &RunConfig,
    cache_dir: Option<&Path>,
    run: &mut RunInfo,
) -> Result<AlgebraSummary> {
    let half = Weight::from_half_units(1);
    let mut dims = Vec::new();
    let mut first = None;
    for step in 0..3 {
        let n = Weight::from_half_units(cfg.cutoff.half_units() + step * half.half_units());
        let g = Weight::from_half_units(cfg.gen_cutoff.half_units() + step * half.half_units());
        let (fa, cache) =
            run.time(&format!("{role} N={n} W_gen={g}"), || quotient_dim(base.clone(), twist.clone(), n, g, cache_dir))?;
        run.record(cache);
        dims.push((n, g, fa.dim()));
        first.get_or_insert(fa);
    }
    let quotient = first.expect("three steps");
    Ok(AlgebraSummary {
        role,
        algebra: format!("{}^{}", base.name(), twist.k()),
        twist: twist.label.clone(),
        t0: twist.t0,
        t: twist.t,
        dim: quotient.dim(),
        stable: dims.iter().all(|d| d.2 == dims[0].2),
        dims_by_cutoff: dims,
        quotient,
    })
}

/// Quotient algebras of the source and each target with stabilization flags.
pub fn compute(cfg: &RunConfig, cache_dir: Option<&Path>) -> Result<Report<ComputeBody>> {
    let base = Arc::new(FreeFermion::new());
    let mut run = RunInfo::default();
    let a_coeffs = cfg
        .distinct_lengths()
        .into_iter()
        .map(|c| solve_a_coeffs(c as u32, cfg.j_max()))
        .collect::<Result<Vec<_>>>()?;
    let source = Twist::cycle_type(&cfg.cycles)?;
    let mut algebras = vec![summarize(&base, "source".into(), source, cfg, cache_dir, &mut run)?];
    for c in cfg.distinct_lengths() {
        let (twist, name) = if c % 2 == 0 { (Twist::parity(), "A_sigma(V)") } else { (Twist::untwisted(), "A(V)") };
        algebras.push(summarize(&base, format!("target {name} for cycle length {c}"), twist, cfg, cache_dir, &mut run)?);
    }
    let all_stable = algebras.iter().all(|a| a.stable);
    let mut warnings = cfg.warnings();
    for a in algebras.iter().filter(|a| !a.stable) {
        warnings.push(format!("dimension of {} has not stabilized: {:?}", a.role, a.dims_by_cutoff));
    }
    Ok(Report {
        report: ComputeBody { command: "compute".into(), config: cfg.clone(), a_coeffs, algebras, all_stable, warnings },
        run,
    })
}

fn reductions(setup: &IsoSetup<FreeFermion>, cfg: &RunConfig) -> Result<ReductionCheck> {
    let span = setup.source.build_ospan(cfg.gen_cutoff, cfg.gen_cutoff + Weight::from_int(1))?;
    let basis = setup.base().basis_upto(cfg.cutoff);
    let mut out = ReductionCheck { k: setup.k, pairs_checked: 0, passed: true, counterexample: None };
    for u in &basis {
        for v in &basis {
            if setup.base().weight(u) + setup.base().weight(v) > cfg.cutoff {
                continue;
            }
            for j in 1..setup.k {
                out.pairs_checked += 1;
                let y = setup.two_tensor_orbit(u, v, j)?;
                let r = setup.reduce_two_tensor(u, v, j)?;
                if !span.contains(&y.sub(&r))? && out.passed {
                    out.passed = false;
                    out.counterexample = Some(format!("u = {u:?}, v = {v:?}, j = {j}"));
                }
            }
        }
    }
    Ok(out)
}

fn conjugation(setup: &IsoSetup<FreeFermion>, cfg: &RunConfig) -> Result<Vec<(String, ConjugationReport)>> {
    let base = setup.base();
    let tests: Vec<_> = base.basis_upto(cfg.cutoff).into_iter().map(State::basis).collect();
    let mut out = Vec::new();
    for u in base.basis_upto(cfg.cutoff) {
        let r = verify_conjugation(base, &setup.coeffs, &State::basis(u.clone()), &tests, 2)?;
        out.push((format!("{u:?}"), r));
    }
    Ok(out)
}

/// Runs the selected checks for every distinct cycle length, plus the
/// cycle-type dimension comparison when the permutation has several cycles.
pub fn verify(cfg: &RunConfig, cache_dir: Option<&Path>) -> Result<Report<VerifyBody>> {
    let base = Arc::new(FreeFermion::new());
    let mut run = RunInfo::default();
    let checks = if cfg.checks.is_empty() {
        [Check::WellDefined, Check::Homomorphism, Check::Iso, Check::Cycles].into_iter().collect()
    } else {
        cfg.checks.clone()
    };
    let mut per_cycle = Vec::new();
    let mut all_passed = true;
    for c in cfg.distinct_lengths() {
        let setup = IsoSetup::new(base.clone(), c, cfg.j_max())?;
        let tr = run.time(&format!("spans for cycle length {c}"), || setup.truncate(cfg.cutoff, cfg.gen_cutoff, cache_dir))?;
        for o in tr.cache.clone() {
            run.record(o);
        }
        let mut entry =
            CycleChecks { length: c, well_defined: None, homomorphism: None, iso: None, reductions: None, conjugation: None };
        if checks.contains(&Check::WellDefined) {
            let r = run.time("well-defined", || setup.verify_well_defined(&tr));
            all_passed &= r.passed;
            entry.well_defined = Some(r);
        }
        if checks.contains(&Check::Homomorphism) {
            let r = run.time("homomorphism", || setup.verify_homomorphism(&tr));
            all_passed &= r.passed;
            entry.homomorphism = Some(r);
        }
        if checks.contains(&Check::Iso) {
            let r = run.time("iso", || setup.build_iso_matrix(&tr))?;
            all_passed &= r.well_defined && r.homomorphism && r.invertible && r.inverse_roundtrip && r.unit_preserved;
            entry.iso = Some(r);
        }
        if checks.contains(&Check::Reductions) {
            let r = run.time("reductions", || reductions(&setup, cfg))?;
            all_passed &= r.passed;
            entry.reductions = Some(r);
        }
        if checks.contains(&Check::Conjugation) {
            let r = run.time("conjugation", || conjugation(&setup, cfg))?;
            all_passed &= r.iter().all(|(_, c)| c.holds);
            entry.conjugation = Some(r);
        }
        per_cycle.push(entry);
    }
    let cycle_type = if cfg.is_composite() && checks.contains(&Check::Cycles) {
        let r = run.time("cycle type", || general_cycle_type(base.clone(), &cfg.cycles, cfg.cutoff, cfg.gen_cutoff, cache_dir))?;
        all_passed &= r.holds;
        Some(r)
    } else {
        None
    };
    Ok(Report {
        report: VerifyBody {
            command: "verify".into(),
            config: cfg.clone(),
            per_cycle,
            cycle_type,
            all_passed,
            warnings: cfg.warnings(),
        },
        run,
    })
}
