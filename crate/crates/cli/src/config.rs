//! Validated run configuration built from command-line arguments.

use std::path::PathBuf;

use bsf_core::catalog::{ModelId, ModelInstance, ParamSet};
use bsf_core::{Engine, QuantumNumbers};

use crate::args::{EngineArg, Format, StateArgs};
use crate::error::{classify, CliError, CliResult};

/// Agreement limits between engine pairs, applied as `tol · max(1, |E|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub formula_aim: f64,
    pub formula_shooting: f64,
    pub aim_shooting: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            formula_aim: 1e-7,
            formula_shooting: 1e-6,
            aim_shooting: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn for_pair(&self, a: Engine, b: Engine) -> f64 {
        use Engine::*;
        match (a.min(b), a.max(b)) {
            (Formula, Aim) => self.formula_aim,
            (Formula, Shooting) => self.formula_shooting,
            _ => self.aim_shooting,
        }
    }

    fn set(&mut self, name: &str, value: f64) -> CliResult<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(CliError::Config(format!("tolerance {name} = {value} must be finite and >= 0")));
        }
        match name {
            "formula_aim" => self.formula_aim = value,
            "formula_shooting" => self.formula_shooting = value,
            "aim_shooting" => self.aim_shooting = value,
            _ => return Err(CliError::Config(format!("unknown tolerance `{name}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelId,
    pub params: ParamSet,
    /// Requested `(n, l)` pairs in output order.
    pub states: Vec<QuantumNumbers>,
    pub engines: Vec<Engine>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn from_args(args: &StateArgs, default_format: Format) -> CliResult<Self> {
        let model: ModelId = args.model.parse().map_err(classify)?;
        let params = parse_pairs(&args.params, "--param")?.into_iter().collect::<ParamSet>();
        let ns = parse_list(&args.n, "--n")?;
        let ls = parse_list(&args.l, "--l")?;
        let mut states = Vec::new();
        for &n in &ns {
            if n < 0.0 || n.fract() != 0.0 || n > u32::MAX as f64 {
                return Err(CliError::Config(format!("--n {n} is not a non-negative integer")));
            }
            for &l in &ls {
                let mut qn = QuantumNumbers::new(n as u32, l).map_err(classify)?;
                if let Some(m) = args.m {
                    qn = qn.with_m(m);
                }
                if let Some(j) = args.j {
                    qn = qn.with_j(j);
                }
                // surfaces parameter errors before any solving starts
                ModelInstance::new(model, &params, qn).map_err(classify)?;
                states.push(qn);
            }
        }
        let mut tolerances = Tolerances::default();
        for (name, value) in parse_pairs(&args.tol, "--tol")? {
            tolerances.set(&name, value)?;
        }
        let mut engines: Vec<Engine> = args
            .engine
            .iter()
            .map(|e| match e {
                EngineArg::Formula => Engine::Formula,
                EngineArg::Aim => Engine::Aim,
                EngineArg::Shooting => Engine::Shooting,
            })
            .collect();
        engines.sort();
        engines.dedup();
        if engines.is_empty() {
            engines.push(Engine::Formula);
        }
        Ok(Self {
            model,
            params,
            states,
            engines,
            format: args.format.unwrap_or(default_format),
            out: args.out.clone(),
            tolerances,
        })
    }

    pub fn instance(&self, qn: QuantumNumbers) -> CliResult<ModelInstance> {
        ModelInstance::new(self.model, &self.params, qn).map_err(classify)
    }
}

fn parse_pairs(items: &[String], flag: &str) -> CliResult<Vec<(String, f64)>> {
    items
        .iter()
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("{flag} `{item}`: expected NAME=VAL")))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{flag} `{item}`: `{value}` is not a number")))?;
            Ok((name.trim().to_string(), v))
        })
        .collect()
}

/// `3`, `0.5`, `0..3` (inclusive integer range) or a comma list of these.
pub fn parse_list(text: &str, flag: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Config(format!("{flag} `{text}`: expected a number, a range a..b or a comma list"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            out.extend((a..=b).map(f64::from));
        } else {
            let v: f64 = part.parse().map_err(|_| bad())?;
            if !v.is_finite() {
                return Err(bad());
            }
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}
