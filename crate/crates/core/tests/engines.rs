//! Formula, AIM and shooting agree on every catalog fixture.

use bsf_core::aim::{aim_solve, AimOptions};
use bsf_core::catalog::{ModelId, ModelInstance, ParamSet};
use bsf_core::formula::build_wavefunction;
use bsf_core::shooting::{shoot_eigenvalue, ShootingOptions};
use bsf_core::{solve_eigenvalue, CoefficientMap, QuantumNumbers, SolutionParams};

struct Fixture {
    id: ModelId,
    params: &'static [(&'static str, f64)],
    n: u32,
    l: f64,
    m: i32,
}

const fn fx(id: ModelId, params: &'static [(&'static str, f64)], n: u32, l: f64) -> Fixture {
    Fixture { id, params, n, l, m: 1 }
}

fn fixtures() -> Vec<Fixture> {
    use ModelId::*;
    vec![
        fx(SphericalOscillator, &[], 0, 0.0),
        fx(SphericalOscillator, &[], 2, 1.0),
        fx(ManningRosen, &[], 0, 0.0),
        fx(ManningRosen, &[("a_tilde", 30.0)], 1, 0.0),
        fx(ManningRosen, &[("a_tilde", 30.0)], 2, 1.0),
        fx(Hulthen, &[("a_tilde", 12.0)], 1, 1.0),
        fx(Eckart, &[("alpha", 4.0)], 0, 0.0),
        fx(Eckart, &[("alpha", 20.0)], 2, 2.0),
        fx(Kratzer, &[], 0, 0.0),
        fx(Kratzer, &[("De", 3.0)], 1, 2.0),
        fx(Coulomb, &[], 0, 0.0),
        fx(Coulomb, &[("Z", 2.0)], 2, 1.0),
        fx(NoncentralCoulomb, &[("beta", 3.0)], 0, 0.0),
        fx(NoncentralCoulomb, &[("beta", 1.0), ("gamma", 0.5), ("n_theta", 1.0)], 1, 0.0),
        fx(KgCoulomb, &[], 0, 0.0),
        fx(KgCoulomb, &[("branch", -1.0)], 1, 1.0),
        fx(KgEckart, &[], 0, 0.0),
        fx(KgEckart, &[], 1, 0.0),
        fx(DiracMorse, &[], 0, 0.0),
        fx(DiracMorse, &[], 1, 0.0),
        fx(KemmerOscillator, &[], 1, 2.0),
    ]
}

fn instance(f: &Fixture) -> ModelInstance {
    let ps: ParamSet = f.params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let qn = QuantumNumbers::new(f.n, f.l).unwrap().with_m(f.m);
    ModelInstance::new(f.id, &ps, qn).unwrap()
}

fn tol(scale: f64, e: f64) -> f64 {
    scale * e.abs().max(1.0)
}

#[test]
fn formula_matches_aim() {
    for f in fixtures() {
        let m = instance(&f);
        let formula = solve_eigenvalue(&m, &m.unknown(), f.n).unwrap();
        assert_eq!(formula.len(), 1, "{}: {formula:?}", f.id);
        let e = formula[0].value;
        let aim = aim_solve(&m, &m.unknown(), f.n, &AimOptions::default()).unwrap();
        assert!((aim.value - e).abs() <= tol(1e-7, e), "{} n={}: aim {} formula {e}", f.id, f.n, aim.value);
    }
}

#[test]
fn formula_matches_shooting_and_node_theorem() {
    for f in fixtures() {
        let m = instance(&f);
        let Some(problem) = m.radial_problem() else { continue };
        let unknown = m.unknown();
        let e = solve_eigenvalue(&m, &unknown, f.n).unwrap()[0].value;
        let shot = shoot_eigenvalue(&problem, f.n, (unknown.lo, unknown.hi), &ShootingOptions::default()).unwrap();
        assert!((shot.value - e).abs() <= tol(1e-6, e), "{} n={}: shooting {} formula {e}", f.id, f.n, shot.value);
        assert_eq!(shot.node_count, Some(f.n), "{}", f.id);

        let c = m.evaluate(e).unwrap();
        let params = SolutionParams::from_coefficients(&c).unwrap();
        let wf = build_wavefunction(&c, &params, f.n).unwrap();
        assert_eq!(wf.node_count(), f.n as usize, "{}: polynomial roots", f.id);
    }
}

#[test]
fn converged_states_are_regular_and_decaying() {
    for f in fixtures() {
        let m = instance(&f);
        let r = &solve_eigenvalue(&m, &m.unknown(), f.n).unwrap()[0];
        let p = r.params.unwrap();
        assert!(p.k4 >= 0.0 && p.k5 > 0.0, "{}: {p:?}", f.id);
        let res = r.residual_ode.unwrap();
        assert!(res <= 1e-6, "{} n={}: ODE residual {res:e}", f.id, f.n);
    }
}

#[test]
fn exact_centrifugal_term_shifts_manning_rosen_levels() {
    let ps: ParamSet = [("a_tilde".to_string(), 30.0)].into_iter().collect();
    let m = ModelInstance::new(ModelId::ManningRosen, &ps, QuantumNumbers::new(0, 2.0).unwrap()).unwrap();
    let u = m.unknown();
    let approx = shoot_eigenvalue(&m.radial_problem().unwrap(), 0, (u.lo, u.hi), &ShootingOptions::default()).unwrap();
    let exact = shoot_eigenvalue(&m.radial_problem_exact().unwrap(), 0, (u.lo, u.hi), &ShootingOptions::default()).unwrap();
    // reported, not bounded: the closed form is only exact for the approximated equation
    println!(
        "manning_rosen l=2: approximated {} exact {} difference {:e}",
        approx.value,
        exact.value,
        exact.value - approx.value
    );
    assert!((approx.value - m.closed_form().unwrap()).abs() <= 1e-6 * approx.value.abs().max(1.0));
}
