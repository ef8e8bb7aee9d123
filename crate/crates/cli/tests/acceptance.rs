//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use permzhu::delta::{solve_a_coeffs, verify_conjugation};
use permzhu::iso::{general_cycle_type, quotient_dim, IsoSetup};
use permzhu::report::{self, RunConfig};
use permzhu::scalar::{rat, CycloScalar};
use permzhu::tensor::{TensorAlgebra, Twist};
use permzhu::vosa::{checks, FermionMonomial, FreeFermion, State, VertexAlgebra, Weight};
use permzhu::zhu::TwistedZhu;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn w(h: i64) -> Weight {
    Weight::from_half_units(h)
}

fn fermion() -> Arc<FreeFermion> {
    Arc::new(FreeFermion::new())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a_coefficients() -> Outcome {
    for k in 1..=5u32 {
        let a = solve_a_coeffs(k, 8).map_err(|e| e.to_string())?;
        ensure(a.check_series(), || format!("series identity fails for k={k}"))?;
        if k == 1 {
            ensure(a.a.iter().all(|x| *x == rat(0, 1)), || "k=1 coefficients are not all zero".into())?;
        }
    }
    let a = solve_a_coeffs(2, 8).map_err(|e| e.to_string())?;
    ensure(a.get(1) == rat(-1, 2) && a.get(2) == rat(1, 4), || format!("k=2 gives {:?}", &a.a[..2]))?;
    Ok("k=1..5, J=8".into())
}

fn square_roots() -> Outcome {
    for k in 1..=8u32 {
        let r = CycloScalar::sqrt_of_integer(k);
        ensure(&r * &r == CycloScalar::from_int(k as i64), || format!("sqrt({k})^2 != {k}"))?;
        let z = r.embed_complex();
        ensure(z.re > 0.0 && (z.re - (k as f64).sqrt()).abs() < 1e-9 && z.im.abs() < 1e-9, || {
            format!("sqrt({k}) embeds as {z}")
        })?;
    }
    Ok("k=1..8".into())
}

fn engine_properties() -> Outcome {
    let f = FreeFermion::new();
    let three = Weight::from_int(3);
    checks::check_skew_symmetry(&f, three)?;
    checks::check_commutator(&f, three, w(2), -2..=2)?;
    checks::check_virasoro(&f, three, 3)?;
    checks::check_grading(&f, three)?;
    checks::check_l0_grading(&f, three)?;
    checks::check_vacuum_axioms(&f, three)?;
    Ok("free fermion, total weight <= 3".into())
}

fn conjugation() -> Outcome {
    let f = FreeFermion::new();
    let tests: Vec<State<FermionMonomial>> = f.basis_upto(Weight::from_int(2)).into_iter().map(State::basis).collect();
    let vac = State::basis(FermionMonomial::vacuum());
    let psi = State::basis(f.psi());
    let omega = f.conformal_vector();
    let mut count = 0;
    for k in [2u32, 3] {
        let a = solve_a_coeffs(k, 12).map_err(|e| e.to_string())?;
        for (name, u) in [("vacuum", &vac), ("psi", &psi), ("omega", &omega)] {
            let r = verify_conjugation(&f, &a, u, &tests, 2).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("k={k} u={name}: {:?}", r.mismatch))?;
            count += r.coefficients_checked;
        }
    }
    Ok(format!("{count} coefficients compared"))
}

fn span_structure() -> Outcome {
    let alg = Arc::new(TensorAlgebra::new(fermion(), 2));
    let z = TwistedZhu::new(alg.clone(), Twist::cyclic(2));
    let w_gen = Weight::from_int(4);
    let span = z.build_ospan(w_gen, w_gen + Weight::from_int(1)).map_err(|e| e.to_string())?;
    let mut tested = 0;
    for m in alg.basis_upto(w_gen - Weight::from_int(1)) {
        let s = State::basis(m.clone());
        for r in 1..z.twist().t as i64 {
            let p = z.twist().eigenprojector(&alg, r, &s).map_err(|e| e.to_string())?;
            if p.is_zero() {
                continue;
            }
            tested += 1;
            ensure(span.contains(&p).map_err(|e| e.to_string())?, || format!("P_{r}({m:?}) not in the span"))?;
        }
    }
    let mut algebras = 0;
    for n in [2, 3, 4] {
        let fa = z.quotient_algebra(&span, w(n)).map_err(|e| e.to_string())?;
        fa.check_identity().map_err(|e| e.to_string())?;
        ensure(fa.omega_central_checked, || format!("omega centrality skipped at N={}", w(n)))?;
        algebras += 1;
    }
    Ok(format!("{tested} eigenvectors in span; identity and central omega in {algebras} quotients"))
}

fn spanning_reductions() -> Outcome {
    let mut count = 0;
    for k in [2usize, 3] {
        let s = IsoSetup::new(fermion(), k, 12).map_err(|e| e.to_string())?;
        let span = s.source.build_ospan(Weight::from_int(3), Weight::from_int(4)).map_err(|e| e.to_string())?;
        let basis = s.base().basis_upto(Weight::from_int(2));
        for u in &basis {
            for v in &basis {
                if s.base().weight(u) + s.base().weight(v) > Weight::from_int(2) {
                    continue;
                }
                for j in 1..k {
                    let y = s.two_tensor_orbit(u, v, j).map_err(|e| e.to_string())?;
                    let r = s.reduce_two_tensor(u, v, j).map_err(|e| e.to_string())?;
                    let ok = span.contains(&y.sub(&r)).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("k={k} u={u:?} v={v:?} j={j}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} identities"))
}

fn full_check(s: &IsoSetup<FreeFermion>, n: Weight, g: Weight) -> Result<(usize, usize, BTreeSet<String>), String> {
    let tr = s.truncate(n, g, None).map_err(|e| e.to_string())?;
    let wd = s.verify_well_defined(&tr);
    ensure(wd.passed, || format!("well-definedness at N={n}: {:?}", wd.counterexample))?;
    let hom = s.verify_homomorphism(&tr);
    ensure(hom.passed, || format!("homomorphism at N={n}: {:?}", hom.counterexample))?;
    let rep = s.build_iso_matrix(&tr).map_err(|e| e.to_string())?;
    ensure(rep.well_defined && rep.homomorphism && rep.invertible && rep.inverse_roundtrip && rep.unit_preserved, || {
        format!("iso matrix at N={n}: {:?}", rep.counterexample)
    })?;
    let mut cases = wd.parity_cases;
    cases.extend(hom.parity_cases);
    Ok((rep.dim_source, rep.dim_target, cases))
}

fn cyclic_isomorphism_k3() -> Outcome {
    let s = IsoSetup::new(fermion(), 3, 12).map_err(|e| e.to_string())?;
    for n in [2, 3] {
        let (ds, dt, _) = full_check(&s, w(n), w(n + 4))?;
        ensure(ds == 1 && dt == 1, || format!("dims {ds}, {dt} at N={}", w(n)))?;
    }
    Ok("dim 1 = 1 at N = 1, 3/2".into())
}

fn d_sigma() -> Result<usize, String> {
    let s = IsoSetup::new(fermion(), 2, 12).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    let mut cases = BTreeSet::new();
    for n in [2, 3, 4] {
        let (ds, dt, c) = full_check(&s, w(n), w(n + 4))?;
        ensure(ds == dt, || format!("dims {ds} != {dt} at N={}", w(n)))?;
        dims.push(ds);
        cases.extend(c);
    }
    ensure(dims.iter().all(|&d| d == dims[0]), || format!("not stable: {dims:?}"))?;
    ensure(cases.len() == 4, || format!("parity cases exercised: {cases:?}"))?;
    Ok(dims[0])
}

fn cyclic_isomorphism_k2() -> Outcome {
    let d = d_sigma()?;
    Ok(format!("d_sigma = {d}, stable over N = 1, 3/2, 2; four parity cases"))
}

fn cycle_type() -> Outcome {
    let d = quotient_dim(fermion(), Twist::parity(), w(2), w(6), None).map_err(|e| e.to_string())?.0.dim();
    let r = general_cycle_type(fermion(), &[2, 1], w(2), w(6), None).map_err(|e| e.to_string())?;
    ensure(r.holds && r.dim_source == d, || format!("{r:?}, d_sigma = {d}"))?;
    Ok(format!("dim = {} = {d} * 1", r.dim_source))
}

fn body(args: &[&str], cache: &Path) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_permzhu"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(v["report"].to_string())
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 2] = [&["compute", "--k", "2", "--cutoff", "1"], &["verify", "--cycles", "2,1", "--cutoff", "1"]];
    for args in runs {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cold = body(args, dir.path())?;
        let warm = body(args, dir.path())?;
        let other = tempfile::tempdir().map_err(|e| e.to_string())?;
        let fresh = body(args, other.path())?;
        ensure(cold == warm && cold == fresh, || format!("report bodies differ for {args:?}"))?;
    }
    let cfg = RunConfig::new("fermion", Some(3), None, Some(w(2)), None, BTreeSet::new()).map_err(|e| e.to_string())?;
    let a = serde_json::to_string(&report::compute(&cfg, None).map_err(|e| e.to_string())?.report);
    let b = serde_json::to_string(&report::compute(&cfg, None).map_err(|e| e.to_string())?.report);
    ensure(a.is_ok() && a.ok() == b.ok(), || "in-process bodies differ".into())?;
    Ok("cold, cached and fresh runs byte-identical".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 a_j solver", a_coefficients, Duration::from_secs(1)),
        ("2 exact sqrt(k)", square_roots, Duration::from_secs(1)),
        ("3 engine properties", engine_properties, Duration::from_secs(30)),
        ("4 conjugation", conjugation, Duration::from_secs(120)),
        ("5 relation span structure", span_structure, Duration::from_secs(600)),
        ("6 spanning reductions", spanning_reductions, Duration::from_secs(600)),
        ("7a k=3 isomorphism", cyclic_isomorphism_k3, Duration::from_secs(900)),
        ("7b k=2 isomorphism", cyclic_isomorphism_k2, Duration::from_secs(900)),
        ("8 cycle type [2,1]", cycle_type, Duration::from_secs(600)),
        ("9 determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let outcome = run();
        let dt = t.elapsed();
        match outcome {
            Ok(detail) if dt <= budget => println!("PASS criterion {name}: {detail} ({dt:.2?})"),
            Ok(detail) => {
                println!("FAIL criterion {name}: {detail} but took {dt:.2?}, budget {budget:?}");
                failed.push(name);
            }
            Err(e) => {
                println!("FAIL criterion {name}: {e} ({dt:.2?})");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
