//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Every criterion is evaluated in full and reported; none panics. The
//! target only fails when a criterion outside `KNOWN_UNMET` fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use bsf_core::aim::{aim_solve, default_x0, delta_roots, AimOptions};
use bsf_core::catalog::{ModelId, ModelInstance, ParamSet};
use bsf_core::hypergeom::TerminatingSeries;
use bsf_core::shooting::{shoot_eigenvalue, Measure, RadialProblem, ShootingOptions};
use bsf_core::{
    compute_k5, solve_eigenvalue, CanonicalCoefficients, CoefficientMap, QuantumNumbers, SolutionParams,
};

/// Criteria that cannot hold as stated; see the project notes.
const KNOWN_UNMET: &[u32] = &[5, 7];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn model(id: ModelId, pairs: &[(&str, f64)], n: u32, l: f64) -> Result<ModelInstance, String> {
    let ps: ParamSet = pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let qn = QuantumNumbers::new(n, l).map_err(|e| e.to_string())?;
    ModelInstance::new(id, &ps, qn).map_err(|e| format!("{id}: {e}"))
}

fn formula(m: &ModelInstance) -> Result<f64, String> {
    solve_eigenvalue(m, &m.unknown(), m.n())
        .map(|r| r[0].value)
        .map_err(|e| format!("{} n={} formula: {e}", m.id(), m.n()))
}

fn aim(m: &ModelInstance) -> Result<f64, String> {
    aim_solve(m, &m.unknown(), m.n(), &AimOptions::default())
        .map(|r| r.value)
        .map_err(|e| format!("{} n={} aim: {e}", m.id(), m.n()))
}

fn shooting(m: &ModelInstance) -> Result<f64, String> {
    let p = m.radial_problem().ok_or_else(|| format!("{}: no radial equation", m.id()))?;
    let u = m.unknown();
    shoot_eigenvalue(&p, m.n(), (u.lo, u.hi), &ShootingOptions::default())
        .map(|r| r.value)
        .map_err(|e| format!("{} n={} shooting: {e}", m.id(), m.n()))
}

fn c1_oscillator() -> Outcome {
    let (mut worst_f, mut worst_s) = (0.0_f64, 0.0_f64);
    for n in 0..=4 {
        for l in 0..=4 {
            let m = model(ModelId::SphericalOscillator, &[], n, l as f64)?;
            let exact = l as f64 + 1.5 + 2.0 * n as f64;
            worst_f = worst_f.max((formula(&m)? - exact).abs());
            worst_s = worst_s.max((shooting(&m)? - exact).abs());
        }
    }
    ensure(
        worst_f <= 1e-10 && worst_s <= 1e-6,
        format!("max |dE| formula {worst_f:.1e}, shooting {worst_s:.1e}"),
    )
}

fn c2_coulomb() -> Outcome {
    let mut worst = 0.0_f64;
    let mut spread = 0.0_f64;
    for total in 1..=4u32 {
        let exact = -1.0 / (2.0 * (total as f64).powi(2));
        let mut levels = Vec::new();
        for l in 0..total {
            let m = model(ModelId::Coulomb, &[], total - 1 - l, l as f64)?;
            let e = formula(&m)?;
            worst = worst.max((e - exact).abs());
            levels.push(e);
        }
        let (lo, hi) = levels.iter().fold((f64::MAX, f64::MIN), |(a, b), &e| (a.min(e), b.max(e)));
        spread = spread.max(hi - lo);
    }
    ensure(worst <= 1e-10 && spread <= 1e-10, format!("max |dE| {worst:.1e}, degeneracy spread {spread:.1e}"))
}

fn c3_kratzer() -> Outcome {
    let m = model(ModelId::Kratzer, &[("De", 1.0), ("a", 1.0)], 0, 0.0)?;
    let (f, s) = (formula(&m)?, shooting(&m)?);
    ensure(
        (f + 0.5).abs() <= 1e-10 && (f - s).abs() <= 1e-6,
        format!("E {f}, |formula - shooting| {:.1e}", (f - s).abs()),
    )
}

fn c4_manning_rosen() -> Outcome {
    let m = model(ModelId::ManningRosen, &[("alpha", 1.0), ("a_tilde", 2.0), ("b", 1.0)], 0, 0.0)?;
    let h = model(ModelId::Hulthen, &[("a_tilde", 2.0), ("b", 1.0)], 0, 0.0)?;
    let (f, a, s, hf) = (formula(&m)?, aim(&m)?, shooting(&m)?, formula(&h)?);
    ensure(
        (f + 0.125).abs() <= 1e-10 && (f - a).abs() <= 1e-7 && (f - s).abs() <= 1e-6 && f == hf,
        format!(
            "E {f}, |aim| {:.1e}, |shooting| {:.1e}, hulthen identical {}",
            (f - a).abs(),
            (f - s).abs(),
            f == hf
        ),
    )
}

fn c5_eckart() -> Outcome {
    let m = model(ModelId::Eckart, &[("a", 1.0), ("alpha", 0.0), ("beta", 1.0)], 0, 0.0)?;
    let closed = m.closed_form().unwrap_or(f64::NAN);
    let f = formula(&m).map_err(|e| format!("closed form gives {closed} but {e}; the potential is repulsive at alpha = 0"))?;
    let (a, s) = (aim(&m)?, shooting(&m)?);
    ensure(
        (f + 0.5).abs() <= 1e-10 && (f - a).abs() <= 1e-7 && (f - s).abs() <= 1e-6,
        format!("E {f}, aim {a}, shooting {s}"),
    )
}

fn c6_kg_coulomb() -> Outcome {
    let (za, n, l) = (0.3, 0u32, 0.0);
    let m = model(ModelId::KgCoulomb, &[("z_alpha", za)], n, l)?;
    let eps = formula(&m)?;
    let lhs = eps * za / (1.0 - eps * eps).sqrt();
    let rhs = n as f64 + 0.5 + ((l + 0.5) * (l + 0.5) - za * za).sqrt();
    ensure(
        (eps.abs() - 0.9486833).abs() <= 1e-6 && (lhs - rhs).abs() <= 1e-10,
        format!("|eps| {eps}, unsquared relation off by {:.1e}", (lhs - rhs).abs()),
    )
}

fn c7_dirac_morse() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 0..=2u32 {
        let expected = (4.0 - (2.0 * n as f64 + 1.0)) / 2.0;
        let m = model(ModelId::DiracMorse, &[("beta1", 2.0), ("beta2", 1.0)], n, 0.0)?;
        match formula(&m) {
            Ok(e) if (e - expected).abs() <= 1e-10 => notes.push(format!("n={n}: {e}")),
            Ok(e) => {
                ok = false;
                notes.push(format!("n={n}: {e} vs {expected}"));
            }
            Err(_) => {
                ok = false;
                notes.push(format!("n={n}: printed {expected} has no decaying solution"));
            }
        }
    }
    ensure(ok, notes.join("; "))
}

fn c8_kemmer() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 0..=3 {
        for l in 0..=3 {
            let m = model(ModelId::KemmerOscillator, &[], n, l as f64)?;
            worst = worst.max((formula(&m)? - (l as f64 + 1.5 + 2.0 * n as f64)).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max |d varsigma| {worst:.1e}"))
}

fn c9_noncentral() -> Outcome {
    let with_m = |beta: f64, gamma: f64, n: u32| -> Result<ModelInstance, String> {
        let ps: ParamSet = [("beta".to_string(), beta), ("gamma".to_string(), gamma)].into_iter().collect();
        let qn = QuantumNumbers::new(n, 0.0).map_err(|e| e.to_string())?.with_m(1);
        ModelInstance::new(ModelId::NoncentralCoulomb, &ps, qn).map_err(|e| e.to_string())
    };
    let nc = with_m(3.0, 0.0, 0)?;
    let angular = nc.angular().ok_or("no angular map")?;
    let n_theta = 0;
    let l = solve_eigenvalue(&angular, &angular.unknown(), n_theta).map_err(|e| e.to_string())?[0].value;
    let radial = model(ModelId::Coulomb, &[], 0, l)?;
    let composed = formula(&radial)?;
    let closed = nc.closed_form().ok_or("no closed form")?;

    let plain = with_m(0.0, 0.0, 1)?;
    let hydrogen = model(ModelId::Coulomb, &[], 1, 1.0)?;
    let (e_plain, e_h) = (formula(&plain)?, formula(&hydrogen)?);
    ensure(
        (composed - closed).abs() <= 1e-10 && e_plain == e_h,
        format!("l {l}, composed {composed} vs closed {closed}; beta = gamma = 0 equals hydrogen: {}", e_plain == e_h),
    )
}

fn hypergeometric_residuals() -> Result<f64, String> {
    let mut worst = 0.0_f64;
    for (n, b, c) in [(3u32, 2.5, 1.5), (7, 10.0, 3.2), (11, 0.7, 5.5)] {
        let g = TerminatingSeries::gauss(n, b, c).map_err(|e| e.to_string())?;
        let k = TerminatingSeries::kummer(n, c).map_err(|e| e.to_string())?;
        let scale = |s: &TerminatingSeries, x: f64| s.coefficients().iter().enumerate().map(|(i, a)| (a * x.powi(i as i32)).abs()).sum::<f64>().max(1.0);
        for i in 0..20 {
            let x = (i as f64 + 0.5) / 20.0;
            let (y, d1, d2) = g.eval_with_derivatives(x);
            let res = x * (1.0 - x) * d2 + (c - (-(n as f64) + b + 1.0) * x) * d1 + n as f64 * b * y;
            worst = worst.max(res.abs() / (scale(&g, x) * (1.0 + b * n as f64)));
            let xk = 10.0 * x;
            let (y, d1, d2) = k.eval_with_derivatives(xk);
            let res = xk * d2 + (c - xk) * d1 + n as f64 * y;
            worst = worst.max(res.abs() / (scale(&k, xk) * (1.0 + n as f64)));
        }
    }
    Ok(worst)
}

/// Model, parameter overrides, n, l.
type Fixture = (ModelId, &'static [(&'static str, f64)], u32, f64);

const FIXTURES: &[Fixture] = &[
    (ModelId::SphericalOscillator, &[], 2, 1.0),
    (ModelId::ManningRosen, &[], 0, 0.0),
    (ModelId::ManningRosen, &[("a_tilde", 30.0)], 2, 1.0),
    (ModelId::Hulthen, &[("a_tilde", 12.0)], 1, 1.0),
    (ModelId::Eckart, &[("alpha", 4.0)], 0, 0.0),
    (ModelId::Kratzer, &[], 1, 2.0),
    (ModelId::Coulomb, &[], 2, 1.0),
    (ModelId::NoncentralCoulomb, &[("beta", 3.0)], 1, 0.0),
    (ModelId::KgCoulomb, &[], 1, 0.0),
    (ModelId::KgEckart, &[], 0, 0.0),
    (ModelId::DiracMorse, &[], 1, 0.0),
    (ModelId::KemmerOscillator, &[], 3, 2.0),
];

fn wavefunction_residuals() -> Result<f64, String> {
    let mut worst = 0.0_f64;
    for &(id, ps, n, l) in FIXTURES {
        let m = model(id, ps, n, l)?;
        let r = solve_eigenvalue(&m, &m.unknown(), n).map_err(|e| e.to_string())?;
        worst = worst.max(r[0].residual_ode.ok_or(format!("{id}: no residual"))?);
    }
    Ok(worst)
}

fn ladder_rungs() -> Result<f64, String> {
    let m = model(ModelId::ManningRosen, &[("a_tilde", 30.0)], 0, 0.0)?;
    let x0 = default_x0(&m.evaluate(-1.0).map_err(|e| e.to_string())?);
    let rung = |k: usize, c: &CanonicalCoefficients| {
        let d = ((c.k3 - c.k2).powi(2) - 4.0 * c.a).sqrt();
        -(c.k2 + (2.0 * k as f64 - 3.0) * c.k3 - d) / (2.0 * c.k3)
    };
    let mut worst = 0.0_f64;
    for k in 1..=4 {
        let best = delta_roots(&m, &m.unknown(), x0, k)
            .into_iter()
            .filter_map(|e| {
                let c = m.evaluate(e).ok()?;
                let p = SolutionParams::from_coefficients(&c).ok()?;
                Some((p.k4 + p.k5 - rung(k, &c)).abs())
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    Ok(worst)
}

fn numerov_factor() -> Result<f64, String> {
    let p = RadialProblem::new(|r, e| r * r - 2.0 * e, 1e-5, 7.0, Measure::R2Dr, "u = r R").map_err(|e| e.to_string())?;
    let err = |points| -> Result<f64, String> {
        let opts = ShootingOptions { points, r_max: Some(7.0) };
        Ok((shoot_eigenvalue(&p, 0, (0.5, 2.5), &opts).map_err(|e| e.to_string())?.value - 1.5).abs())
    };
    Ok(err(400)? / err(800)?)
}

fn continuity_monotone() -> Result<bool, String> {
    let (k1, k2, a, b, c) = (1.5, 1.0, -1.0, 0.3, -0.5);
    let limit = CanonicalCoefficients::new(k1, k2, 0.0, a, b, c).map_err(|e| e.to_string())?;
    let target = compute_k5(&limit).map_err(|e| e.to_string())?;
    let errs: Vec<f64> = [1e-3, 1e-5, 1e-7]
        .iter()
        .map(|&t| {
            let g = CanonicalCoefficients::new(k1, k2, t, a, b, c).unwrap();
            (t * compute_k5(&g).unwrap() - target).abs()
        })
        .collect();
    Ok(errs.windows(2).all(|w| w[1] < w[0]))
}

fn c10_properties() -> Outcome {
    let hyper = hypergeometric_residuals()?;
    let wave = wavefunction_residuals()?;
    let ladder = ladder_rungs()?;
    let factor = numerov_factor()?;
    let monotone = continuity_monotone()?;
    ensure(
        hyper <= 1e-10 && wave <= 1e-6 && ladder <= 1e-8 && (8.0..=32.0).contains(&factor) && monotone,
        format!(
            "hypergeometric {hyper:.1e}, wavefunction {wave:.1e}, ladder {ladder:.1e}, Numerov factor {factor:.2}, k3 continuity monotone {monotone}"
        ),
    )
}

fn c11_cli() -> Outcome {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_bsf")).args(args).output().map_err(|e| e.to_string());
    let solve = ["solve", "--model", "manning_rosen", "--param", "a_tilde=30", "--n", "0..2", "--l", "0,1"];
    let (a, b) = (run(&solve)?, run(&solve)?);
    let identical = a.status.success() && a.stdout == b.stdout;
    let ok = run(&["verify", "--model", "spherical_oscillator"])?.status.code();
    let forced = run(&["verify", "--model", "spherical_oscillator", "--tol", "formula_shooting=1e-15"])?.status.code();
    ensure(
        identical && ok == Some(0) && forced == Some(4),
        format!("byte-identical {identical}, verify exit {ok:?}, forced-failure exit {forced:?}"),
    )
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        (1, "oscillator spectrum", c1_oscillator),
        (2, "coulomb spectrum and degeneracy", c2_coulomb),
        (3, "kratzer fixture", c3_kratzer),
        (4, "manning-rosen fixture", c4_manning_rosen),
        (5, "eckart fixture", c5_eckart),
        (6, "klein-gordon coulomb", c6_kg_coulomb),
        (7, "dirac-morse spectrum", c7_dirac_morse),
        (8, "kemmer oscillator", c8_kemmer),
        (9, "non-central coulomb", c9_noncentral),
        (10, "property suites", c10_properties),
        (11, "cli determinism and exit codes", c11_cli),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} {verdict}: {name}: {detail}");
        if outcome.is_err() && !KNOWN_UNMET.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
