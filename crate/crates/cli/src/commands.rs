//! The four subcommands, each producing a report value.

use std::collections::BTreeMap;

use bsf_core::aim::{aim_solve, AimOptions};
use bsf_core::catalog::{catalog_list, kemmer_energy, model_spec, ModelId, ModelInstance};
use bsf_core::formula::build_wavefunction;
use bsf_core::shooting::{normalize, shoot_eigenvalue, ShootingOptions};
use bsf_core::{solve_eigenvalue, CoefficientMap, EigenResult, Engine, QuantumNumbers};

use crate::config::RunConfig;
use crate::error::{classify, CliError, CliResult};
use crate::report::*;

/// Samples used to locate where a state has decayed.
const DECAY_SCAN: usize = 20_000;
const DECAY_FLOOR: f64 = 1e-9;

fn run_engine(inst: &ModelInstance, engine: Engine) -> CliResult<Vec<EigenResult>> {
    let unknown = inst.unknown();
    let n = inst.n();
    match engine {
        Engine::Formula => solve_eigenvalue(inst, &unknown, n).map_err(classify),
        Engine::Aim => Ok(vec![aim_solve(inst, &unknown, n, &AimOptions::default()).map_err(classify)?]),
        Engine::Shooting => {
            let problem = inst.radial_problem().ok_or_else(|| {
                CliError::Config(format!("{} has no radial equation for the shooting engine", inst.id()))
            })?;
            let r = shoot_eigenvalue(&problem, n, (unknown.lo, unknown.hi), &ShootingOptions::default())
                .map_err(classify)?;
            Ok(vec![r])
        }
    }
}

fn physical_energy(inst: &ModelInstance, value: f64) -> Option<f64> {
    let qn = inst.quantum_numbers();
    match (inst.id(), qn.j) {
        (ModelId::KemmerOscillator, Some(j)) => {
            let p = inst.params();
            Some(kemmer_energy(value, qn.l, j, p["M"], p["omega"], p["hbar"], p["c"]))
        }
        _ => None,
    }
}

fn record(inst: &ModelInstance, r: &EigenResult) -> StateRecord {
    let qn = inst.quantum_numbers();
    StateRecord {
        n: r.n,
        l: inst.l(),
        m: qn.m,
        j: qn.j,
        engine: r.engine.as_str().to_string(),
        value: r.value,
        k4: r.params.map(|p| p.k4),
        k5: r.params.map(|p| p.k5),
        residual: r.residual,
        residual_ode: r.residual_ode,
        node_count: r.node_count,
        closed_form: inst.closed_form(),
        energy: physical_energy(inst, r.value),
    }
}

pub fn solve(cfg: &RunConfig) -> CliResult<SolveReport> {
    let spec = model_spec(cfg.model);
    let mut states = Vec::new();
    for &qn in &cfg.states {
        let inst = cfg.instance(qn)?;
        for &engine in &cfg.engines {
            for r in run_engine(&inst, engine)? {
                log::info!("{} n={} l={} {}: {}", cfg.model, r.n, inst.l(), engine.as_str(), r.value);
                states.push(record(&inst, &r));
            }
        }
    }
    Ok(SolveReport {
        schema: SCHEMA,
        command: "solve".into(),
        model: cfg.model.to_string(),
        unknown: spec.unknown.into(),
        units: spec.units.into(),
        params: resolved_params(cfg)?,
        states,
    })
}

fn resolved_params(cfg: &RunConfig) -> CliResult<BTreeMap<String, f64>> {
    let qn = cfg.states.first().copied().unwrap_or(QuantumNumbers { n: 0, l: 0.0, m: None, j: None });
    Ok(cfg.instance(qn)?.params().clone())
}

fn engines_for(id: ModelId) -> Vec<Engine> {
    let mut engines = vec![Engine::Formula, Engine::Aim];
    if model_spec(id).has_radial {
        engines.push(Engine::Shooting);
    }
    engines
}

pub fn verify(cfg: &RunConfig) -> CliResult<VerifyReport> {
    let engines = engines_for(cfg.model);
    let mut states = Vec::new();
    for &qn in &cfg.states {
        let inst = cfg.instance(qn)?;
        let aim = run_engine(&inst, Engine::Aim)?.remove(0);
        let mut values = BTreeMap::new();
        values.insert(Engine::Aim, aim.value);
        // with several admissible roots, compare the one AIM converged to
        let formula = run_engine(&inst, Engine::Formula)?
            .into_iter()
            .min_by(|a, b| (a.value - aim.value).abs().total_cmp(&(b.value - aim.value).abs()))
            .expect("formula returns at least one root");
        values.insert(Engine::Formula, formula.value);
        let mut node_count = None;
        if engines.contains(&Engine::Shooting) {
            let shot = run_engine(&inst, Engine::Shooting)?.remove(0);
            node_count = shot.node_count;
            values.insert(Engine::Shooting, shot.value);
        }
        let mut checks = Vec::new();
        for (i, &a) in engines.iter().enumerate() {
            for &b in &engines[i + 1..] {
                let (va, vb) = (values[&a], values[&b]);
                let limit = cfg.tolerances.for_pair(a, b) * va.abs().max(1.0);
                let delta = (va - vb).abs();
                checks.push(PairCheck {
                    pair: format!("{}_{}", a.as_str(), b.as_str()),
                    a: a.as_str().into(),
                    b: b.as_str().into(),
                    delta,
                    limit,
                    pass: delta <= limit,
                });
            }
        }
        let pass = checks.iter().all(|c| c.pass);
        if !pass {
            log::warn!("{} n={} l={}: engines disagree", cfg.model, qn.n, inst.l());
        }
        states.push(VerifyState {
            n: qn.n,
            l: inst.l(),
            m: qn.m,
            values: values.into_iter().map(|(k, v)| (k.as_str().to_string(), v)).collect(),
            node_count,
            checks,
            pass,
        });
    }
    let t = cfg.tolerances;
    Ok(VerifyReport {
        schema: SCHEMA,
        command: "verify".into(),
        model: cfg.model.to_string(),
        params: resolved_params(cfg)?,
        tolerances: [
            ("aim_shooting", t.aim_shooting),
            ("formula_aim", t.formula_aim),
            ("formula_shooting", t.formula_shooting),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect(),
        pass: states.iter().all(|s| s.pass),
        states,
    })
}

pub fn wavefunction(cfg: &RunConfig, points: usize, r_max: Option<f64>) -> CliResult<WavefunctionReport> {
    if points < 2 {
        return Err(CliError::Config(format!("grid of {points} samples is empty; need at least 2")));
    }
    let [qn] = cfg.states[..] else {
        return Err(CliError::Config("wavefunction takes a single (n, l) state".into()));
    };
    let inst = cfg.instance(qn)?;
    let root = run_engine(&inst, Engine::Formula)?.remove(0);
    let c = inst.evaluate(root.value).map_err(classify)?;
    let params = root.params.ok_or_else(|| CliError::Solver("formula root without exponents".into()))?;
    let wf = build_wavefunction(&c, &params, qn.n).map_err(classify)?;
    let psi = |r: f64| wf.eval(inst.to_s(r));

    let (s_lo, s_hi) = wf.extent();
    let (ra, rb) = (inst.to_r(s_lo), inst.to_r(s_hi));
    let r_lo = ra.min(rb).max(0.0);
    let r_hi = match r_max {
        Some(r) if r.is_finite() && r > r_lo => r,
        Some(r) => return Err(CliError::Config(format!("--r-max {r} must exceed {r_lo}"))),
        None => {
            let far = ra.max(rb);
            let cap = if far.is_finite() {
                far
            } else {
                inst.radial_problem().map(|p| p.r_max).ok_or_else(|| {
                    CliError::Solver("cannot bound the radial extent of this state".into())
                })?
            };
            decay_radius(&psi, r_lo, cap)
        }
    };
    let norm = normalize(psi, r_lo, r_hi, inst.measure()).map_err(classify)?;
    let samples = (0..points)
        .map(|i| {
            let r = r_lo + (r_hi - r_lo) * i as f64 / (points - 1) as f64;
            let u = psi(r);
            Sample {
                r,
                s: inst.to_s(r),
                psi_unnormalized: u,
                psi_normalized: norm * u,
            }
        })
        .collect();
    Ok(WavefunctionReport {
        schema: SCHEMA,
        command: "wavefunction".into(),
        model: cfg.model.to_string(),
        params: inst.params().clone(),
        n: qn.n,
        l: inst.l(),
        unknown: model_spec(cfg.model).unknown.into(),
        value: root.value,
        measure: inst.measure().as_str().into(),
        norm,
        samples,
    })
}

/// Radius beyond which `|ψ|` stays below `DECAY_FLOOR` of its peak.
fn decay_radius(psi: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let step = (hi - lo) / DECAY_SCAN as f64;
    let values: Vec<f64> = (0..=DECAY_SCAN).map(|i| psi(lo + step * i as f64).abs()).collect();
    let peak = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let last = values.iter().rposition(|&v| v > DECAY_FLOOR * peak).unwrap_or(DECAY_SCAN);
    lo + step * (last + 1).min(DECAY_SCAN) as f64
}

pub fn catalog(model: Option<&str>) -> CliResult<CatalogReport> {
    let specs = match model {
        Some(name) => vec![model_spec(name.parse().map_err(classify)?)],
        None => catalog_list(),
    };
    let models = specs
        .into_iter()
        .map(|s| ModelEntry {
            id: s.id.to_string(),
            kind: s.kind.as_str().into(),
            summary: s.summary.into(),
            unknown: s.unknown.into(),
            units: s.units.into(),
            transform: s.transform.into(),
            measure: s.measure.as_str().into(),
            has_radial: s.has_radial,
            notes: s.notes.into(),
            params: s
                .params
                .iter()
                .map(|p| ParamEntry {
                    name: p.name.into(),
                    default: p.default,
                    rule: p.rule.as_str().into(),
                    doc: p.doc.into(),
                })
                .collect(),
        })
        .collect();
    Ok(CatalogReport {
        schema: SCHEMA,
        command: "catalog".into(),
        models,
    })
}
