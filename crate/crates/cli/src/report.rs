//! Report types and their JSON / CSV renderings.
//!
//! Field order is fixed by the struct definitions and maps are ordered, so
//! identical runs render byte-identical output. Floats use the shortest
//! representation that round-trips.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub n: u32,
    pub l: f64,
    pub m: Option<i32>,
    pub j: Option<f64>,
    pub engine: String,
    pub value: f64,
    pub k4: Option<f64>,
    pub k5: Option<f64>,
    pub residual: f64,
    pub residual_ode: Option<f64>,
    pub node_count: Option<u32>,
    pub closed_form: Option<f64>,
    /// Physical energy, for models whose unknown is a proxy for it.
    pub energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub command: String,
    pub model: String,
    pub unknown: String,
    pub units: String,
    pub params: BTreeMap<String, f64>,
    pub states: Vec<StateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub pair: String,
    pub a: String,
    pub b: String,
    pub delta: f64,
    /// Largest admissible `|a − b|`.
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyState {
    pub n: u32,
    pub l: f64,
    pub m: Option<i32>,
    pub values: BTreeMap<String, f64>,
    pub node_count: Option<u32>,
    pub checks: Vec<PairCheck>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub states: Vec<VerifyState>,
    pub pass: bool,
}

impl VerifyReport {
    /// Verdicts recomputed from the stored engine values and limits, one
    /// per state; used to check a report re-read from disk.
    pub fn recompute_verdicts(&self) -> Vec<bool> {
        self.states
            .iter()
            .map(|s| {
                s.checks.iter().all(|c| match (s.values.get(&c.a), s.values.get(&c.b)) {
                    (Some(a), Some(b)) => (a - b).abs() <= c.limit,
                    _ => false,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub r: f64,
    pub s: f64,
    pub psi_unnormalized: f64,
    pub psi_normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionReport {
    pub schema: u32,
    pub command: String,
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub n: u32,
    pub l: f64,
    pub unknown: String,
    pub value: f64,
    pub measure: String,
    pub norm: f64,
    pub samples: Vec<Sample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub name: String,
    pub default: f64,
    pub rule: String,
    pub doc: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelEntry {
    pub id: String,
    pub kind: String,
    pub summary: String,
    pub unknown: String,
    pub units: String,
    pub transform: String,
    pub measure: String,
    pub has_radial: bool,
    pub notes: String,
    pub params: Vec<ParamEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema: u32,
    pub command: String,
    pub models: Vec<ModelEntry>,
}

pub fn to_json<T: Serialize>(report: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Shortest round-trip text for a float; empty for a missing value.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn params_line(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect::<Vec<_>>().join(";")
}

impl SolveReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let rows = self
            .states
            .iter()
            .map(|s| {
                vec![
                    s.n.to_string(),
                    num(s.l),
                    opt(s.m),
                    opt_num(s.j),
                    s.engine.clone(),
                    num(s.value),
                    opt_num(s.k4),
                    opt_num(s.k5),
                    num(s.residual),
                    opt_num(s.residual_ode),
                    opt(s.node_count),
                    opt_num(s.closed_form),
                    opt_num(s.energy),
                ]
            })
            .collect();
        let header = [
            "n", "l", "m", "j", "engine", "value", "k4", "k5", "residual", "residual_ode", "node_count",
            "closed_form", "energy",
        ];
        let mut out = format!("# model={}\n# params={}\n# unknown={} [{}]\n", self.model, params_line(&self.params), self.unknown, self.units);
        out.push_str(&csv_table(&header, rows)?);
        Ok(out)
    }
}

impl VerifyReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let mut rows = Vec::new();
        for s in &self.states {
            for c in &s.checks {
                rows.push(vec![
                    s.n.to_string(),
                    num(s.l),
                    c.pair.clone(),
                    num(s.values[&c.a]),
                    num(s.values[&c.b]),
                    num(c.delta),
                    num(c.limit),
                    c.pass.to_string(),
                ]);
            }
        }
        let mut out = format!("# model={}\n# params={}\n# pass={}\n", self.model, params_line(&self.params), self.pass);
        out.push_str(&csv_table(&["n", "l", "pair", "a", "b", "delta", "limit", "pass"], rows)?);
        Ok(out)
    }
}

impl WavefunctionReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let rows = self
            .samples
            .iter()
            .map(|p| vec![num(p.r), num(p.s), num(p.psi_unnormalized), num(p.psi_normalized)])
            .collect();
        let mut out = format!(
            "# model={}\n# params={}\n# n={} l={}\n# {}={}\n# N_n={}\n# measure={}\n",
            self.model,
            params_line(&self.params),
            self.n,
            num(self.l),
            self.unknown,
            num(self.value),
            num(self.norm),
            self.measure,
        );
        out.push_str(&csv_table(&["r", "s", "psi_unnormalized", "psi_normalized"], rows)?);
        Ok(out)
    }
}

impl CatalogReport {
    pub fn to_csv(&self) -> CliResult<String> {
        let mut rows = Vec::new();
        for m in &self.models {
            for p in &m.params {
                rows.push(vec![
                    m.id.clone(),
                    m.kind.clone(),
                    m.unknown.clone(),
                    p.name.clone(),
                    num(p.default),
                    p.rule.clone(),
                    p.doc.clone(),
                ]);
            }
        }
        csv_table(&["model", "kind", "unknown", "param", "default", "rule", "doc"], rows)
    }
}
