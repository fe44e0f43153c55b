//! Numeric asymptotic iteration method.
//!
//! After factoring out the asymptotic behaviour, `Ψ = s^k4 (1 − k3 s)^k5 F`
//! (or `s^k4 e^{−k5 s} F`), the polynomial part obeys
//! `F'' = λ0 F' + s0 F`. Iterating
//!
//! ```text
//! λ_k = λ'_{k−1} + s_{k−1} + λ0 λ_{k−1}
//! s_k = s'_{k−1} + s0 λ_{k−1}
//! ```
//!
//! with truncated Taylor series about `x0`, the level-`n` eigenvalue is a
//! root of `δ_k = λ_k s_{k−1} − λ_{k−1} s_k` for every `k > n`.

mod series;

pub use series::{series_arith, SeriesOp, TruncatedSeries};

use crate::canonical::{
    CanonicalCoefficients, CoefficientMap, Regime, SolutionParams, SpectralUnknown,
};
use crate::error::{Error, Result};
use crate::formula::{EigenResult, Engine};
use crate::roots::{brent, linspace, sign_changes};

/// Absolute drift between successive-`k` roots accepted as converged.
pub const AIM_TOL: f64 = 1e-9;
pub const DEFAULT_K_MAX: usize = 60;
/// Extra Taylor orders carried beyond the iteration depth.
const ORDER_MARGIN: usize = 4;
const SCAN_POINTS: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct AimOptions {
    /// Expansion point; defaults to the middle of `(0, 1/k3)` or to 1 in
    /// the confluent regime.
    pub x0: Option<f64>,
    pub k_max: usize,
    pub tol: f64,
    /// Preferred eigenvalue when several candidates appear for one level.
    pub hint: Option<f64>,
}

impl Default for AimOptions {
    fn default() -> Self {
        Self {
            x0: None,
            k_max: DEFAULT_K_MAX,
            tol: AIM_TOL,
            hint: None,
        }
    }
}

pub fn default_x0(c: &CanonicalCoefficients) -> f64 {
    match c.regime() {
        Regime::General => 0.5 / c.k3,
        Regime::Limit => 1.0,
    }
}

/// `(λ0, s0)` of the reduced equation as series of the given order about `x0`.
pub fn reduced_coefficients(
    c: &CanonicalCoefficients,
    params: &SolutionParams,
    x0: f64,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let SolutionParams { k4, k5 } = *params;
    let gamma = 2.0 * k4 + c.k1;
    let x = TruncatedSeries::variable(x0, order);
    let one = |v: f64| TruncatedSeries::constant(x0, order, v);
    match c.regime() {
        Regime::General => {
            let big_k = k4 + k5;
            let w = one(1.0).add(&x.scale(-c.k3))?;
            let inv = x.mul(&w)?.recip()?;
            let num = x.scale(2.0 * c.k3 * big_k + c.k2).add(&one(-gamma))?;
            let lambda0 = num.mul(&inv)?;
            let s0 = inv.scale(c.k3 * big_k * big_k + big_k * (c.k2 - c.k3) + c.a / c.k3);
            Ok((lambda0, s0))
        }
        Regime::Limit => {
            let inv = x.recip()?;
            let num = x.scale(2.0 * k5 + c.k2).add(&one(-gamma))?;
            let lambda0 = num.mul(&inv)?;
            let s0 = inv.scale(k5 * gamma + c.k2 * k4 - c.b);
            Ok((lambda0, s0))
        }
    }
}

/// The pair `(λ_k, s_k)` together with `(λ_{k−1}, s_{k−1})` and the seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct AimState {
    lambda0: TruncatedSeries,
    s0: TruncatedSeries,
    pub lambda_k: TruncatedSeries,
    pub s_k: TruncatedSeries,
    lambda_prev: TruncatedSeries,
    s_prev: TruncatedSeries,
    pub k: usize,
}

impl AimState {
    /// State at `k = 1`.
    pub fn new(lambda0: TruncatedSeries, s0: TruncatedSeries) -> Result<Self> {
        if lambda0.value() == 0.0 {
            return Err(Error::ZeroDenominator { what: "λ0 at the expansion point" });
        }
        let lambda_k = lambda0.derivative()?.add(&s0)?.add(&lambda0.mul(&lambda0)?)?;
        let s_k = s0.derivative()?.add(&s0.mul(&lambda0)?)?;
        Ok(Self {
            lambda_prev: lambda0.clone(),
            s_prev: s0.clone(),
            lambda0,
            s0,
            lambda_k,
            s_k,
            k: 1,
        })
    }

    /// Divides the current and previous pair by one positive factor. The
    /// recursion is linear in `(λ, s)`, so later iterates and the signs and
    /// roots of `δ_k` are unaffected.
    pub fn rescaled(mut self) -> Self {
        let f = self.lambda_k.max_abs().max(self.s_k.max_abs());
        if f.is_finite() && f > 0.0 {
            let inv = 1.0 / f;
            self.lambda_k = self.lambda_k.scale(inv);
            self.s_k = self.s_k.scale(inv);
            self.lambda_prev = self.lambda_prev.scale(inv);
            self.s_prev = self.s_prev.scale(inv);
        }
        self
    }
}

/// One step of the recursion.
pub fn aim_iterate(state: &AimState) -> Result<AimState> {
    let lambda_k = state
        .lambda_k
        .derivative()?
        .add(&state.s_k)?
        .add(&state.lambda0.mul(&state.lambda_k)?)?;
    let s_k = state.s_k.derivative()?.add(&state.s0.mul(&state.lambda_k)?)?;
    Ok(AimState {
        lambda0: state.lambda0.clone(),
        s0: state.s0.clone(),
        lambda_prev: state.lambda_k.clone(),
        s_prev: state.s_k.clone(),
        lambda_k,
        s_k,
        k: state.k + 1,
    })
}

/// `δ_k = λ_k s_{k−1} − λ_{k−1} s_k` at the expansion point.
pub fn aim_delta(state: &AimState) -> f64 {
    state.lambda_k.value() * state.s_prev.value() - state.lambda_prev.value() * state.s_k.value()
}

/// `δ_k` for the coefficient map at trial value `x`, rescaled per step.
pub fn aim_delta_at<M: CoefficientMap + ?Sized>(map: &M, x: f64, x0: f64, k: usize) -> Result<f64> {
    let c = map.evaluate(x)?;
    let params = SolutionParams::from_coefficients(&c)?;
    let (lambda0, s0) = reduced_coefficients(&c, &params, x0, k + ORDER_MARGIN)?;
    let mut state = AimState::new(lambda0, s0)?.rescaled();
    while state.k < k {
        state = aim_iterate(&state)?.rescaled();
    }
    let d = aim_delta(&state);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::NonConvergent {
            engine: "aim",
            detail: format!("δ_{k} overflowed at {x}"),
        })
    }
}

/// All sign-change roots of `δ_k` over the bracket.
pub fn delta_roots<M: CoefficientMap + ?Sized>(
    map: &M,
    unknown: &SpectralUnknown,
    x0: f64,
    k: usize,
) -> Vec<f64> {
    let samples: Vec<(f64, Option<f64>)> = linspace(unknown.lo, unknown.hi, SCAN_POINTS)
        .map(|x| (x, aim_delta_at(map, x, x0, k).ok()))
        .collect();
    let mut roots: Vec<f64> = Vec::new();
    for (a, fa, b, fb) in sign_changes(&samples) {
        let (x, _) = brent(
            |x| aim_delta_at(map, x, x0, k).unwrap_or(f64::NAN),
            a,
            b,
            fa,
            fb,
            1e-13,
            1.0,
        );
        if !roots.iter().any(|r| (r - x).abs() <= 1e-10 * x.abs().max(1.0)) {
            roots.push(x);
        }
    }
    roots
}

/// Degrees of the polynomial solutions the reduced equation admits at
/// these coefficients, from the balance of leading powers at large `s`:
/// `k3 d² + (2k3K + k2 − k3) d + S = 0`, or `(2k5 + k2) d + Q = 0` when
/// `k3 → 0`. Only used to label a root of `δ_k` with its level.
pub fn terminating_degrees(c: &CanonicalCoefficients, params: &SolutionParams) -> Vec<f64> {
    let SolutionParams { k4, k5 } = *params;
    match c.regime() {
        Regime::General => {
            let big_k = k4 + k5;
            let b = 2.0 * c.k3 * big_k + c.k2 - c.k3;
            let s = c.k3 * big_k * big_k + big_k * (c.k2 - c.k3) + c.a / c.k3;
            let disc = b * b - 4.0 * c.k3 * s;
            if disc < 0.0 {
                return Vec::new();
            }
            let r = disc.sqrt();
            vec![(-b - r) / (2.0 * c.k3), (-b + r) / (2.0 * c.k3)]
        }
        Regime::Limit => {
            let p = 2.0 * k5 + c.k2;
            let q = k5 * (2.0 * k4 + c.k1) + c.k2 * k4 - c.b;
            if p == 0.0 {
                Vec::new()
            } else {
                vec![-q / p]
            }
        }
    }
}

fn has_degree<M: CoefficientMap + ?Sized>(map: &M, e: f64, n: u32) -> bool {
    let Ok(c) = map.evaluate(e) else { return false };
    let Ok(params) = SolutionParams::from_coefficients(&c) else { return false };
    terminating_degrees(&c, &params)
        .iter()
        .any(|d| (d - n as f64).abs() <= 1e-6 * (1.0 + n as f64))
}

fn regime_probe<M: CoefficientMap + ?Sized>(map: &M, unknown: &SpectralUnknown) -> Result<CanonicalCoefficients> {
    linspace(unknown.lo, unknown.hi, 65)
        .find_map(|x| map.evaluate(x).ok())
        .ok_or_else(|| Error::NonConvergent {
            engine: "aim",
            detail: "coefficient map undefined across the bracket".into(),
        })
}

/// Eigenvalue of level `n` from the roots of `δ_k`.
///
/// `δ_{n+1}` vanishes on level `n` (and on some neighbouring levels); the
/// root whose terminating polynomial has degree `n` is tracked through
/// `k = n+2, n+3, …` until two successive estimates agree to `opts.tol`.
pub fn aim_solve<M: CoefficientMap + ?Sized>(
    map: &M,
    unknown: &SpectralUnknown,
    n: u32,
    opts: &AimOptions,
) -> Result<EigenResult> {
    let k_first = n as usize + 1;
    if opts.k_max <= k_first {
        return Err(Error::Unsupported(format!(
            "k_max = {} must exceed n + 1 = {k_first}",
            opts.k_max
        )));
    }
    let x0 = match opts.x0 {
        Some(x0) => x0,
        None => default_x0(&regime_probe(map, unknown)?),
    };

    let mut candidates: Vec<f64> = delta_roots(map, unknown, x0, k_first)
        .into_iter()
        .filter(|&e| has_degree(map, e, n))
        .collect();
    if let Some(hint) = opts.hint {
        candidates.sort_by(|a, b| (a - hint).abs().total_cmp(&(b - hint).abs()));
    }
    if candidates.len() > 1 {
        log::debug!("aim: {} candidates for n = {n}: {candidates:?}", candidates.len());
    }
    let mut estimate = *candidates.first().ok_or_else(|| Error::NonConvergent {
        engine: "aim",
        detail: format!("δ_{k_first} has no new root for n = {n} in [{}, {}]", unknown.lo, unknown.hi),
    })?;

    for k in k_first + 1..=opts.k_max {
        let next = delta_roots(map, unknown, x0, k)
            .into_iter()
            .min_by(|a, b| (a - estimate).abs().total_cmp(&(b - estimate).abs()));
        let Some(next) = next else { continue };
        let drift = (next - estimate).abs();
        log::trace!("aim: k = {k}, root = {next}, drift = {drift:e}");
        estimate = next;
        if drift <= opts.tol {
            let c = map.evaluate(estimate)?;
            return Ok(EigenResult {
                value: estimate,
                n,
                params: SolutionParams::from_coefficients(&c).ok(),
                residual: drift,
                residual_ode: None,
                node_count: None,
                engine: Engine::Aim,
            });
        }
    }
    Err(Error::NonConvergent {
        engine: "aim",
        detail: format!("successive roots still drifting at k_max = {}", opts.k_max),
    })
}

/// Parameters of the reference form `λ0 = −2(m+1)/s + 2a/(1 − b s)` with
/// `b = k3`, and the hypergeometric parameters they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AimIdentification {
    pub m: f64,
    pub a: f64,
    pub sigma: f64,
    pub rho: f64,
}

/// Recovers `(m, a)` from the value and slope of `λ0` at `x0`.
pub fn identify_parameters(
    c: &CanonicalCoefficients,
    params: &SolutionParams,
    x0: f64,
) -> Result<AimIdentification> {
    if c.regime() != Regime::General {
        return Err(Error::Unsupported(
            "parameter identification needs k3 != 0".into(),
        ));
    }
    let (lambda0, _) = reduced_coefficients(c, params, x0, 2)?;
    let (v, d) = (lambda0.value(), lambda0.derivative_at(1)?);
    let b = c.k3;
    let u = 1.0 / (1.0 - b * x0);
    // [-2/x0, 2u; 2/x0^2, 2b u^2] [M; a] = [v; d]
    let (m11, m12, m21, m22) = (-2.0 / x0, 2.0 * u, 2.0 / (x0 * x0), 2.0 * b * u * u);
    let det = m11 * m22 - m12 * m21;
    if det == 0.0 {
        return Err(Error::ZeroDenominator { what: "identification system" });
    }
    let big_m = (v * m22 - m12 * d) / det;
    let a = (m11 * d - m21 * v) / det;
    let m = big_m - 1.0;
    Ok(AimIdentification {
        m,
        a,
        sigma: 2.0 * m + 2.0,
        rho: ((2.0 * m + 1.0) * b + 2.0 * a) / b,
    })
}
