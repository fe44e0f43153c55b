//! The formula method: closed-form quantization conditions solved as root
//! problems over the spectral unknown, and the hypergeometric eigenfunction.
//!
//! The root function is always the *linear* condition. The squared forms
//! vanish on the linear roots but also where `k5` flips sign, so they are
//! kept for conformance checks only.

use crate::canonical::{
    compute_k4, compute_k5, CanonicalCoefficients, CoefficientMap, Regime, SolutionParams,
    SpectralUnknown,
};
use crate::error::{Error, Result};
use crate::hypergeom::TerminatingSeries;
use crate::roots::{brent, linspace, sign_changes};

/// Relative tolerance of the bracketing root refinement.
pub const ROOT_TOL: f64 = 1e-12;
/// Number of points in the initial sign-change scan.
pub const SCAN_POINTS: usize = 2000;
/// A refined sign change whose residual exceeds this (relative to `k4 + k5`)
/// is a pole of the condition, not a root.
const POLE_RESIDUAL: f64 = 1e-8;
const RESIDUAL_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionForm {
    GeneralLinear,
    GeneralSquared,
    LimitLinear,
    LimitSquared,
}

impl ConditionForm {
    pub fn regime(self) -> Regime {
        match self {
            ConditionForm::GeneralLinear | ConditionForm::GeneralSquared => Regime::General,
            ConditionForm::LimitLinear | ConditionForm::LimitSquared => Regime::Limit,
        }
    }
}

/// A quantization condition for level `n` in one of its four forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenCondition {
    pub form: ConditionForm,
    pub n: u32,
}

impl EigenCondition {
    /// The linear condition appropriate to the regime of `c`.
    pub fn linear_for(c: &CanonicalCoefficients, n: u32) -> Self {
        let form = match c.regime() {
            Regime::General => ConditionForm::GeneralLinear,
            Regime::Limit => ConditionForm::LimitLinear,
        };
        Self { form, n }
    }

    pub fn evaluate(&self, c: &CanonicalCoefficients) -> Result<f64> {
        if c.regime() != self.form.regime() {
            return Err(Error::Unsupported(format!(
                "{:?} condition applied to a {:?}-regime instance",
                self.form,
                c.regime()
            )));
        }
        match self.form {
            ConditionForm::GeneralLinear => condition_general(c, self.n),
            ConditionForm::GeneralSquared => condition_general_squared(c, self.n),
            ConditionForm::LimitLinear => condition_limit(c, self.n),
            ConditionForm::LimitSquared => condition_limit_squared(c, self.n),
        }
    }
}

/// Which engine produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    Formula,
    Aim,
    Shooting,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Formula => "formula",
            Engine::Aim => "aim",
            Engine::Shooting => "shooting",
        }
    }
}

/// A converged value of the spectral unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub value: f64,
    pub n: u32,
    /// Exponents at the root; absent for the shooting oracle, which never
    /// forms the canonical equation.
    pub params: Option<SolutionParams>,
    /// Engine-specific residual at the root: the linear condition for the
    /// formula method, the drift between the last two iterations for AIM,
    /// the matching mismatch for shooting.
    pub residual: f64,
    /// Relative residual of the canonical equation for the assembled
    /// eigenfunction.
    pub residual_ode: Option<f64>,
    pub node_count: Option<u32>,
    pub engine: Engine,
}

fn general_discriminant(c: &CanonicalCoefficients) -> Result<f64> {
    let d = c.k3 - c.k2;
    let disc = d * d - 4.0 * c.a;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant {
            what: "(k3 - k2)^2 - 4A",
            value: disc,
        });
    }
    Ok(disc.sqrt())
}

/// Value of `k4 + k5` demanded by termination at degree `n`.
///
/// The hypergeometric parameters of the reduced equation are
/// `K − 1/2 + k2/(2k3) ∓ D/(2|k3|)`; the smaller one must equal `−n`.
/// Using `|k3|` makes the choice independent of the sign of `k3`.
fn general_target(c: &CanonicalCoefficients, n: u32) -> Result<f64> {
    let d = general_discriminant(c)?;
    Ok(0.5 - n as f64 - c.k2 / (2.0 * c.k3) + d / (2.0 * c.k3.abs()))
}

/// Linear quantization condition for `k3 ≠ 0`: `g = k4 + k5 − target(n)`.
pub fn condition_general(c: &CanonicalCoefficients, n: u32) -> Result<f64> {
    let target = general_target(c, n)?;
    Ok(compute_k4(c)? + compute_k5(c)? - target)
}

/// The squared condition `[(k4² − k5² − T²) / 2T]² − k5²` with `T` the
/// termination target.
pub fn condition_general_squared(c: &CanonicalCoefficients, n: u32) -> Result<f64> {
    let t = general_target(c, n)?;
    if t == 0.0 {
        return Err(Error::ZeroDenominator {
            what: "termination target of the squared condition",
        });
    }
    let (k4, k5) = (compute_k4(c)?, compute_k5(c)?);
    let inner = (k4 * k4 - k5 * k5 - t * t) / (2.0 * t);
    Ok(inner * inner - k5 * k5)
}

fn limit_ratio(c: &CanonicalCoefficients, n: u32, k4: f64) -> Result<f64> {
    let nf = n as f64;
    let den = 2.0 * k4 + c.k1 + 2.0 * nf;
    if den == 0.0 {
        return Err(Error::ZeroDenominator { what: "2k4 + k1 + 2n" });
    }
    Ok((c.b - k4 * c.k2 - nf * c.k2) / den)
}

/// Linear quantization condition for `k3 → 0`:
/// `g = (B − k4 k2 − n k2) / (2k4 + k1 + 2n) − k5`.
pub fn condition_limit(c: &CanonicalCoefficients, n: u32) -> Result<f64> {
    let k4 = compute_k4(c)?;
    Ok(limit_ratio(c, n, k4)? - compute_k5(c)?)
}

pub fn condition_limit_squared(c: &CanonicalCoefficients, n: u32) -> Result<f64> {
    let k4 = compute_k4(c)?;
    let ratio = limit_ratio(c, n, k4)?;
    let k5 = compute_k5(c)?;
    Ok(ratio * ratio - k5 * k5)
}

fn linear_residual<M: CoefficientMap + ?Sized>(map: &M, x: f64, n: u32) -> Result<f64> {
    let c = map.evaluate(x)?;
    EigenCondition::linear_for(&c, n).evaluate(&c)
}

/// Solves the linear condition for level `n` over the bracket of `unknown`.
///
/// Every sign change on a uniform scan is refined with Brent's method.
/// Refined points that are poles, or where `k5 ≤ 0`, are discarded. All
/// remaining roots are returned in ascending order.
pub fn solve_eigenvalue<M: CoefficientMap + ?Sized>(
    map: &M,
    unknown: &SpectralUnknown,
    n: u32,
) -> Result<Vec<EigenResult>> {
    let samples: Vec<(f64, Option<f64>)> = linspace(unknown.lo, unknown.hi, SCAN_POINTS)
        .map(|x| (x, linear_residual(map, x, n).ok()))
        .collect();

    let mut roots: Vec<EigenResult> = Vec::new();
    for (x0, f0, x1, f1) in sign_changes(&samples) {
        let (x, _) = brent(
            |x| linear_residual(map, x, n).unwrap_or(f64::NAN),
            x0,
            x1,
            f0,
            f1,
            ROOT_TOL,
            1.0,
        );
        let Ok(c) = map.evaluate(x) else { continue };
        let Ok(params) = SolutionParams::from_coefficients(&c) else { continue };
        let Ok(g) = EigenCondition::linear_for(&c, n).evaluate(&c) else { continue };
        if !(params.k5 > 0.0) {
            log::debug!("rejecting root {x}: k5 = {} is not decaying", params.k5);
            continue;
        }
        let scale = 1.0 + params.k4.abs() + params.k5.abs();
        if !(g.abs() <= POLE_RESIDUAL * scale) {
            log::debug!("rejecting sign change at {x}: residual {g:e} (pole)");
            continue;
        }
        if roots.iter().any(|r| (r.value - x).abs() <= 1e-9 * x.abs().max(1.0)) {
            continue;
        }
        let residual_ode = build_wavefunction(&c, &params, n)
            .and_then(|wf| ode_residual(&c, &wf))
            .ok();
        roots.push(EigenResult {
            value: x,
            n,
            params: Some(params),
            residual: g,
            residual_ode,
            node_count: None,
            engine: Engine::Formula,
        });
    }

    if roots.is_empty() {
        return Err(Error::NoRootInBracket {
            n,
            lo: unknown.lo,
            hi: unknown.hi,
        });
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(roots)
}

/// The (unnormalized) eigenfunction of the canonical equation.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSpec {
    pub regime: Regime,
    pub params: SolutionParams,
    pub k3: f64,
    /// Multiplier taking `s` to the hypergeometric argument.
    pub arg_scale: f64,
    pub polynomial: TerminatingSeries,
}

impl WavefunctionSpec {
    pub fn eval(&self, s: f64) -> f64 {
        let SolutionParams { k4, k5 } = self.params;
        let poly = self.polynomial.eval(self.arg_scale * s);
        match self.regime {
            Regime::General => s.abs().powf(k4) * (1.0 - self.k3 * s).abs().powf(k5) * poly,
            Regime::Limit => s.powf(k4) * (-k5 * s).exp() * poly,
        }
    }

    /// Value and first two derivatives in `s`, exact from the envelope's
    /// logarithmic derivative and the polynomial coefficients.
    pub fn eval_with_derivatives(&self, s: f64) -> (f64, f64, f64) {
        let SolutionParams { k4, k5 } = self.params;
        let a = self.arg_scale;
        let (p, dp, d2p) = self.polynomial.eval_with_derivatives(a * s);
        let (env, g1, g2) = match self.regime {
            Regime::General => {
                let w = 1.0 - self.k3 * s;
                (
                    s.abs().powf(k4) * w.abs().powf(k5),
                    k4 / s - k5 * self.k3 / w,
                    -k4 / (s * s) - k5 * self.k3 * self.k3 / (w * w),
                )
            }
            Regime::Limit => (s.powf(k4) * (-k5 * s).exp(), k4 / s - k5, -k4 / (s * s)),
        };
        let (d_env, d2_env) = (env * g1, env * (g1 * g1 + g2));
        (
            env * p,
            d_env * p + env * a * dp,
            d2_env * p + 2.0 * d_env * a * dp + env * a * a * d2p,
        )
    }

    /// Interval of `s` that carries the eigenfunction: the whole domain in
    /// the general regime, and up to where the exponential envelope has
    /// decayed far below its peak in the limit regime.
    pub fn extent(&self) -> (f64, f64) {
        match self.regime {
            Regime::General if self.k3 > 0.0 => (0.0, 1.0 / self.k3),
            Regime::General => (1.0 / self.k3, 0.0),
            Regime::Limit => {
                let SolutionParams { k4, k5 } = self.params;
                let degree = self.polynomial.degree() as f64;
                (0.0, (k4 + degree + 1.0) / k5 + 30.0 / k5)
            }
        }
    }

    /// Number of zeros of the polynomial factor inside the extent.
    pub fn node_count(&self) -> usize {
        let (lo, hi) = self.extent();
        let (a, b) = (self.arg_scale * lo, self.arg_scale * hi);
        self.polynomial.count_roots_in(a.min(b), a.max(b))
    }
}

/// Assembles `s^k4 (1 − k3 s)^k5 ₂F₁(...)` or `s^k4 e^{−k5 s} ₁F₁(...)`.
pub fn build_wavefunction(
    c: &CanonicalCoefficients,
    params: &SolutionParams,
    n: u32,
) -> Result<WavefunctionSpec> {
    let gamma = 2.0 * params.k4 + c.k1;
    if gamma <= 0.0 && (gamma - gamma.round()).abs() < 1e-12 {
        return Err(Error::InvalidHypergeomParams { gamma });
    }
    let (polynomial, arg_scale) = match c.regime() {
        Regime::General => {
            let b = n as f64 + 2.0 * (params.k4 + params.k5) + c.k2 / c.k3 - 1.0;
            (TerminatingSeries::gauss(n, b, gamma)?, c.k3)
        }
        Regime::Limit => (
            TerminatingSeries::kummer(n, gamma)?,
            2.0 * params.k5 + c.k2,
        ),
    };
    Ok(WavefunctionSpec {
        regime: c.regime(),
        params: *params,
        k3: c.k3,
        arg_scale,
        polynomial,
    })
}

/// Largest `|residual · s²(1 − k3 s)²|` of the canonical equation over 50
/// interior points, relative to the largest `|Ψ|` there. Derivatives are
/// exact; a central difference at step `1e-5` has a rounding floor near
/// `1e-6` for the higher states, which is the size of the tolerance.
pub fn ode_residual(c: &CanonicalCoefficients, wf: &WavefunctionSpec) -> Result<f64> {
    let (lo, hi) = wf.extent();
    let length = hi - lo;
    let mut max_res: f64 = 0.0;
    let mut max_psi: f64 = 0.0;
    for t in linspace(0.02, 0.98, RESIDUAL_SAMPLES) {
        let s = lo + t * length;
        let (z, d1, d2) = wf.eval_with_derivatives(s);
        max_res = max_res.max(c.scaled_residual(s, z, d1, d2).abs());
        max_psi = max_psi.max(z.abs());
    }
    if !(max_psi > 0.0 && max_res.is_finite()) {
        return Err(Error::NonConvergent {
            engine: "formula",
            detail: "eigenfunction vanishes or overflows on the sampled interval".into(),
        });
    }
    Ok(max_res / max_psi)
}
