//! Potential models reducible to the canonical equation.
//!
//! Each entry fixes a coordinate map `s(r)`, a coefficient map from the
//! spectral unknown to `(k1, k2, k3, A, B, C)`, a bracket for the unknown,
//! and where possible the original radial equation for the shooting
//! oracle. Defaults are natural units; every parameter can be overridden.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::canonical::{CanonicalCoefficients, CoefficientMap, QuantumNumbers, SpectralUnknown};
use crate::error::{Error, Result};
use crate::roots::{brent, linspace, sign_changes};
use crate::shooting::{Measure, RadialProblem};

/// Named model parameters. Ordered so that reports are deterministic.
pub type ParamSet = BTreeMap<String, f64>;

/// Inner cut-off of every radial grid, relative to the model's length scale.
const R_MIN_SCALE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    SphericalOscillator,
    ManningRosen,
    Hulthen,
    Eckart,
    Kratzer,
    Coulomb,
    NoncentralCoulomb,
    KgCoulomb,
    KgEckart,
    DiracMorse,
    KemmerOscillator,
}

impl ModelId {
    pub const ALL: [ModelId; 11] = [
        ModelId::SphericalOscillator,
        ModelId::ManningRosen,
        ModelId::Hulthen,
        ModelId::Eckart,
        ModelId::Kratzer,
        ModelId::Coulomb,
        ModelId::NoncentralCoulomb,
        ModelId::KgCoulomb,
        ModelId::KgEckart,
        ModelId::DiracMorse,
        ModelId::KemmerOscillator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::SphericalOscillator => "spherical_oscillator",
            ModelId::ManningRosen => "manning_rosen",
            ModelId::Hulthen => "hulthen",
            ModelId::Eckart => "eckart",
            ModelId::Kratzer => "kratzer",
            ModelId::Coulomb => "coulomb",
            ModelId::NoncentralCoulomb => "noncentral_coulomb",
            ModelId::KgCoulomb => "kg_coulomb",
            ModelId::KgEckart => "kg_eckart",
            ModelId::DiracMorse => "dirac_morse",
            ModelId::KemmerOscillator => "kemmer_oscillator",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Schrodinger,
    KleinGordon,
    Dirac,
    Kemmer,
}

impl EquationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EquationKind::Schrodinger => "schrodinger",
            EquationKind::KleinGordon => "klein_gordon",
            EquationKind::Dirac => "dirac",
            EquationKind::Kemmer => "kemmer",
        }
    }
}

/// Admissible values of a single parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Any,
    Positive,
    NonNegativeInteger,
    /// Exactly `+1` or `-1`.
    Sign,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Any => "any",
            Rule::Positive => "positive",
            Rule::NonNegativeInteger => "non_negative_integer",
            Rule::Sign => "sign",
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Rule::Any => "finite",
            Rule::Positive => "must be > 0",
            Rule::NonNegativeInteger => "must be a non-negative integer",
            Rule::Sign => "must be +1 or -1",
        }
    }

    fn admits(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                Rule::Any => true,
                Rule::Positive => v > 0.0,
                Rule::NonNegativeInteger => v >= 0.0 && v.fract() == 0.0,
                Rule::Sign => v == 1.0 || v == -1.0,
            }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamDef {
    pub name: &'static str,
    pub default: f64,
    pub rule: Rule,
    pub doc: &'static str,
}

const fn p(name: &'static str, default: f64, rule: Rule, doc: &'static str) -> ParamDef {
    ParamDef {
        name,
        default,
        rule,
        doc,
    }
}

const HBAR: ParamDef = p("hbar", 1.0, Rule::Positive, "reduced Planck constant");
const MU: ParamDef = p("mu", 1.0, Rule::Positive, "reduced mass");

/// Static description of a catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub id: ModelId,
    pub kind: EquationKind,
    pub summary: &'static str,
    pub unknown: &'static str,
    pub units: &'static str,
    pub transform: &'static str,
    pub measure: Measure,
    pub params: Vec<ParamDef>,
    /// Whether the shooting oracle has an r-space equation for this entry.
    pub has_radial: bool,
    pub notes: &'static str,
}

pub fn catalog_list() -> Vec<ModelSpec> {
    ModelId::ALL.into_iter().map(model_spec).collect()
}

pub fn model_spec(id: ModelId) -> ModelSpec {
    use ModelId::*;
    use Rule::*;
    let centrifugal = [
        p("d0", 1.0 / 12.0, Any, "constant term of the centrifugal approximation"),
        p("d1", 1.0, Any, "first-order term of the centrifugal approximation"),
        p("d2", 1.0, Any, "second-order term of the centrifugal approximation"),
    ];
    let (kind, summary, unknown, units, transform, measure, params, has_radial, notes): (
        EquationKind,
        &str,
        &str,
        &str,
        &str,
        Measure,
        Vec<ParamDef>,
        bool,
        &str,
    ) = match id {
        SphericalOscillator => (
            EquationKind::Schrodinger,
            "three-dimensional isotropic harmonic oscillator",
            "E",
            "hbar*omega",
            "s = r^2",
            Measure::R2Dr,
            vec![HBAR, p("m", 1.0, Positive, "mass"), p("omega", 1.0, Positive, "angular frequency")],
            true,
            "limit regime; E = (l + 3/2 + 2n) hbar omega",
        ),
        ManningRosen => (
            EquationKind::Schrodinger,
            "Manning-Rosen potential",
            "E",
            "hbar^2/(mu b^2)",
            "s = exp(-r/b)",
            Measure::Dr,
            [
                vec![
                    HBAR,
                    MU,
                    p("b", 1.0, Positive, "range"),
                    p("alpha", 1.0, Any, "short-range exponent"),
                    p("a_tilde", 2.0, Any, "well depth"),
                ],
                centrifugal.to_vec(),
            ]
            .concat(),
            true,
            "l > 0 uses 1/r^2 ~ (d0 + d1 z/(1-z) + d2 z^2/(1-z)^2)/b^2, also in the oracle",
        ),
        Hulthen => (
            EquationKind::Schrodinger,
            "Hulthen potential (Manning-Rosen with alpha = 1)",
            "E",
            "hbar^2/(mu b^2)",
            "s = exp(-r/b)",
            Measure::Dr,
            [
                vec![HBAR, MU, p("b", 1.0, Positive, "range"), p("a_tilde", 2.0, Any, "well depth")],
                centrifugal.to_vec(),
            ]
            .concat(),
            true,
            "identical to manning_rosen with alpha = 1",
        ),
        Eckart => (
            EquationKind::Schrodinger,
            "Eckart potential, hbar = mu = 1",
            "E",
            "hbar^2/mu",
            "s = exp(-r/a)",
            Measure::Dr,
            vec![
                p("a", 1.0, Positive, "range"),
                p("alpha", 0.0, Any, "attractive strength"),
                p("beta", 1.0, Any, "repulsive strength"),
                p("d0", 0.0, Any, "constant term of the centrifugal approximation"),
                p("d1", 1.0, Any, "first-order term of the centrifugal approximation"),
                p("d2", 1.0, Any, "second-order term of the centrifugal approximation"),
            ],
            true,
            "default alpha = 0 makes the potential purely repulsive: no bound states",
        ),
        Kratzer => (
            EquationKind::Schrodinger,
            "Kratzer molecular potential",
            "E",
            "De",
            "s = r",
            Measure::Dr,
            vec![
                HBAR,
                MU,
                p("De", 1.0, Positive, "dissociation energy"),
                p("a", 1.0, Positive, "equilibrium distance"),
            ],
            true,
            "limit regime",
        ),
        Coulomb => (
            EquationKind::Schrodinger,
            "hydrogen-like Coulomb potential",
            "E",
            "mu (Z e^2)^2 / hbar^2",
            "s = r",
            Measure::R2Dr,
            vec![HBAR, MU, p("Z", 1.0, Positive, "nuclear charge"), p("e2", 1.0, Positive, "squared elementary charge")],
            true,
            "limit regime; E = -mu Z^2 e^4 / (2 hbar^2 (N + l + 1)^2)",
        ),
        NoncentralCoulomb => (
            EquationKind::Schrodinger,
            "Coulomb plus ring-shaped non-central terms",
            "E",
            "mu (Z e^2)^2 / hbar^2",
            "s = r (radial), s = (cos(theta) - 1)/2 (angular)",
            Measure::R2Dr,
            vec![
                HBAR,
                MU,
                p("Z", 1.0, Positive, "nuclear charge"),
                p("e2", 1.0, Positive, "squared elementary charge"),
                p("beta", 0.0, Any, "1/(r sin(theta))^2 strength"),
                p("gamma", 0.0, Any, "cos(theta)/(r sin(theta))^2 strength"),
                p("n_theta", 0.0, NonNegativeInteger, "angular quantum number"),
            ],
            true,
            "the angular equation fixes a non-integer l that feeds the radial equation; --l is ignored",
        ),
        KgCoulomb => (
            EquationKind::KleinGordon,
            "Klein-Gordon particle in a Coulomb field",
            "epsilon",
            "m0 c^2",
            "s = r",
            Measure::Dr,
            vec![
                HBAR,
                p("c", 1.0, Positive, "speed of light"),
                p("m0", 1.0, Positive, "rest mass"),
                p("z_alpha", 0.3, Positive, "coupling Z alpha"),
                p("branch", 1.0, Sign, "+1 for the positive-energy root, -1 for the negative one"),
            ],
            true,
            "branch = -1 flips the sign of the Coulomb term so the negative root is bound",
        ),
        KgEckart => (
            EquationKind::KleinGordon,
            "Klein-Gordon particle with equal vector and scalar Eckart potentials",
            "E",
            "M c^2",
            "s = exp(-r/a)",
            Measure::Dr,
            vec![
                p("a", 1.0, Positive, "range"),
                p("M", 1.0, Positive, "mass"),
                p("alpha", 5.0, Any, "attractive strength"),
                p("beta", 1.0, Any, "repulsive strength"),
            ],
            true,
            "bound states lie in (-M, M)",
        ),
        DiracMorse => (
            EquationKind::Dirac,
            "Dirac equation with the Morse potential, already reduced to one component",
            "epsilon",
            "dimensionless",
            "s = y",
            Measure::Dr,
            vec![p("beta1", 2.0, Positive, "beta_1"), p("beta2", 1.0, Positive, "beta_2")],
            false,
            "verified by formula and AIM only; epsilon > 0 keeps the y^epsilon factor regular",
        ),
        KemmerOscillator => (
            EquationKind::Kemmer,
            "Kemmer equation for the Dirac oscillator",
            "varsigma",
            "dimensionless",
            "s = (M omega / hbar) r^2",
            Measure::Dr,
            vec![
                HBAR,
                p("c", 1.0, Positive, "speed of light"),
                p("M", 1.0, Positive, "mass"),
                p("omega", 1.0, Positive, "oscillator frequency"),
            ],
            true,
            "energy follows from varsigma and j via kemmer_energy",
        ),
    };
    ModelSpec {
        id,
        kind,
        summary,
        unknown,
        units,
        transform,
        measure,
        params,
        has_radial,
        notes,
    }
}

/// Effective orbital index from the angular quantization of the
/// non-central Coulomb problem.
pub fn effective_l_noncentral(m: i32, beta: f64, gamma: f64, n_theta: u32) -> Result<f64> {
    let mb = (m as f64).powi(2) + beta;
    let disc = mb * mb - gamma * gamma;
    if disc < 0.0 || mb + gamma < 0.0 || mb - gamma < 0.0 {
        return Err(Error::ComplexAngularRoot {
            detail: format!("m^2 + beta = {mb}, gamma = {gamma}"),
        });
    }
    Ok(n_theta as f64 + ((mb + disc.sqrt()) / 2.0).sqrt())
}

/// Physical energy of the Kemmer oscillator for a given `varsigma`.
pub fn kemmer_energy(varsigma: f64, l: f64, j: f64, mass: f64, omega: f64, hbar: f64, c: f64) -> f64 {
    let rest = mass * c * c;
    let spin = j * (j + 1.0) - l * (l + 1.0) + 1.0;
    ((rest / 2.0).powi(2) + 2.0 * hbar * omega * rest * (varsigma + 0.5 * spin)).sqrt()
}

/// The explicit printed energy of the Kemmer oscillator in terms of `n`.
pub fn kemmer_energy_explicit(n: u32, l: f64, j: f64, mass: f64, omega: f64, hbar: f64, c: f64) -> f64 {
    let rest = mass * c * c;
    let bracket = 4.0 * (n as f64 + 1.0) + j * (j + 1.0) - l * (l - 1.0);
    0.5 * rest * (1.0 + 4.0 * bracket * hbar * omega / rest).sqrt()
}

/// Angular equation of the non-central Coulomb model, with `l` unknown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMap {
    pub m: i32,
    pub beta: f64,
    pub gamma: f64,
    pub n_theta: u32,
}

impl CoefficientMap for AngularMap {
    fn evaluate(&self, l: f64) -> Result<CanonicalCoefficients> {
        let ll = l * (l + 1.0);
        let m2 = (self.m as f64).powi(2);
        CanonicalCoefficients::new(
            1.0,
            -2.0,
            -1.0,
            -ll,
            -ll - self.gamma / 2.0,
            -(m2 + self.beta + self.gamma) / 4.0,
        )
    }
}

impl AngularMap {
    pub fn unknown(&self) -> SpectralUnknown {
        let m2 = (self.m as f64).powi(2);
        let hi = self.n_theta as f64 + (m2 + self.beta.abs() + self.gamma.abs()).sqrt() + 10.0;
        SpectralUnknown::new("l", 0.0, hi, "dimensionless").expect("static bracket")
    }
}

/// A catalog entry with parameters and quantum numbers fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelInstance {
    id: ModelId,
    params: ParamSet,
    qn: QuantumNumbers,
    /// Orbital index used by the radial equation (effective for the
    /// non-central model, `qn.l` otherwise).
    l: f64,
}

impl ModelInstance {
    pub fn new(id: ModelId, overrides: &ParamSet, qn: QuantumNumbers) -> Result<Self> {
        let spec = model_spec(id);
        let mut params = ParamSet::new();
        for def in &spec.params {
            params.insert(def.name.to_string(), def.default);
        }
        for (name, &value) in overrides {
            let def = spec.params.iter().find(|d| d.name == name).ok_or_else(|| Error::UnknownParameter {
                model: id.to_string(),
                name: name.clone(),
            })?;
            if !def.rule.admits(value) {
                return Err(Error::ParameterOutOfRange {
                    name: name.clone(),
                    value,
                    rule: def.rule.describe(),
                });
            }
            params.insert(name.clone(), value);
        }
        for def in &spec.params {
            if !def.rule.admits(params[def.name]) {
                return Err(Error::ParameterOutOfRange {
                    name: def.name.to_string(),
                    value: params[def.name],
                    rule: def.rule.describe(),
                });
            }
        }
        let mut inst = Self { id, params, qn, l: qn.l };
        if id == ModelId::NoncentralCoulomb {
            let a = inst.angular().expect("non-central model");
            inst.l = effective_l_noncentral(a.m, a.beta, a.gamma, a.n_theta)?;
        }
        inst.validate()?;
        Ok(inst)
    }

    /// Instance with every parameter at its default.
    pub fn with_defaults(id: ModelId, qn: QuantumNumbers) -> Result<Self> {
        Self::new(id, &ParamSet::new(), qn)
    }

    fn validate(&self) -> Result<()> {
        let out_of_range = |name: &str, value: f64, rule: &'static str| {
            Err(Error::ParameterOutOfRange {
                name: name.to_string(),
                value,
                rule,
            })
        };
        let ll = self.ll();
        match self.id {
            ModelId::ManningRosen | ModelId::Hulthen => {
                let beta2 = self.alpha() * (self.alpha() - 1.0) + ll * self.p("d2");
                if 1.0 + 4.0 * beta2 < 0.0 {
                    return out_of_range("alpha", self.alpha(), "1 + 4(alpha(alpha - 1) + l(l + 1) d2) >= 0");
                }
            }
            ModelId::Eckart => {
                let a = self.p("a");
                if 0.25 + 2.0 * a * a * self.p("beta") + ll * self.p("d2") < 0.0 {
                    return out_of_range("beta", self.p("beta"), "1/4 + 2 a^2 beta + l(l + 1) d2 >= 0");
                }
            }
            ModelId::KgCoulomb => {
                if self.p("z_alpha") >= self.l + 0.5 {
                    return out_of_range("z_alpha", self.p("z_alpha"), "z_alpha < l + 1/2");
                }
            }
            ModelId::NoncentralCoulomb if self.qn.m.is_none() => {
                log::debug!("noncentral_coulomb: m not given, using 0");
            }
            _ => {}
        }
        Ok(())
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn spec(&self) -> ModelSpec {
        model_spec(self.id)
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.qn
    }

    /// Orbital index seen by the radial equation.
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.qn.n
    }

    fn p(&self, name: &str) -> f64 {
        self.params[name]
    }

    fn ll(&self) -> f64 {
        self.l * (self.l + 1.0)
    }

    fn alpha(&self) -> f64 {
        match self.id {
            ModelId::Hulthen => 1.0,
            _ => self.p("alpha"),
        }
    }

    /// The angular sub-problem of the non-central model.
    pub fn angular(&self) -> Option<AngularMap> {
        (self.id == ModelId::NoncentralCoulomb).then(|| AngularMap {
            m: self.qn.m.unwrap_or(0),
            beta: self.p("beta"),
            gamma: self.p("gamma"),
            n_theta: self.p("n_theta") as u32,
        })
    }

    fn coulomb_strength(&self) -> f64 {
        self.p("mu") * self.p("Z") * self.p("e2") / self.p("hbar").powi(2)
    }

    /// Canonical coefficients at a trial value of the spectral unknown.
    pub fn coefficients(&self, x: f64) -> Result<CanonicalCoefficients> {
        let ll = self.ll();
        match self.id {
            ModelId::SphericalOscillator => {
                let (hbar, m, w) = (self.p("hbar"), self.p("m"), self.p("omega"));
                CanonicalCoefficients::new(
                    1.5,
                    0.0,
                    0.0,
                    -(m * w / hbar).powi(2) / 4.0,
                    m * x / (2.0 * hbar * hbar),
                    -ll / 4.0,
                )
            }
            ModelId::ManningRosen | ModelId::Hulthen => {
                let (hbar, mu, b) = (self.p("hbar"), self.p("mu"), self.p("b"));
                let xi2 = -2.0 * mu * b * b * x / (hbar * hbar) + ll * self.p("d0");
                let beta1 = self.p("a_tilde") - ll * self.p("d1");
                let beta2 = self.alpha() * (self.alpha() - 1.0) + ll * self.p("d2");
                CanonicalCoefficients::new(1.0, 1.0, 1.0, -xi2 - beta1 - beta2, 2.0 * xi2 + beta1, -xi2)
            }
            ModelId::Eckart => {
                let a2 = self.p("a").powi(2);
                let (alpha, beta) = (self.p("alpha"), self.p("beta"));
                let (d0, d1, d2) = (self.p("d0"), self.p("d1"), self.p("d2"));
                CanonicalCoefficients::new(
                    1.0,
                    1.0,
                    1.0,
                    2.0 * a2 * (x - alpha) - ll * (d0 - d1 + d2),
                    2.0 * a2 * (alpha - beta - 2.0 * x) - ll * (d1 - 2.0 * d0),
                    2.0 * a2 * x - ll * d0,
                )
            }
            ModelId::Kratzer => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                let (de, a) = (self.p("De"), self.p("a"));
                CanonicalCoefficients::new(0.0, 0.0, 0.0, u * x, 2.0 * u * de * a, -u * de * a * a - ll)
            }
            ModelId::Coulomb | ModelId::NoncentralCoulomb => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                CanonicalCoefficients::new(2.0, 0.0, 0.0, u * x, 2.0 * self.coulomb_strength(), -ll)
            }
            ModelId::KgCoulomb => {
                let hc = self.p("hbar") * self.p("c");
                let rest = self.p("m0") * self.p("c").powi(2);
                let za = self.p("z_alpha");
                CanonicalCoefficients::new(
                    0.0,
                    0.0,
                    0.0,
                    (x * x - rest * rest) / (hc * hc),
                    self.p("branch") * 2.0 * x * za / hc,
                    za * za - ll,
                )
            }
            ModelId::KgEckart => {
                let (a, m) = (self.p("a"), self.p("M"));
                let lambda2 = a * a * (m * m - x * x);
                let k2 = 2.0 * (m + x) * a * a;
                let (alpha, beta) = (self.p("alpha"), self.p("beta"));
                CanonicalCoefficients::new(
                    1.0,
                    1.0,
                    1.0,
                    -lambda2 - k2 * alpha,
                    2.0 * lambda2 + k2 * (alpha - beta) - ll,
                    -lambda2,
                )
            }
            ModelId::DiracMorse => {
                let (b1, b2) = (self.p("beta1"), self.p("beta2"));
                CanonicalCoefficients::new(1.0, 0.0, 0.0, -b2 * b2, b1 * b1, -x * x)
            }
            ModelId::KemmerOscillator => CanonicalCoefficients::new(0.5, 0.0, 0.0, -0.25, x / 2.0, -ll / 4.0),
        }
    }

    /// Search bracket for the spectral unknown, wide enough for the level
    /// `n` of this instance.
    pub fn unknown(&self) -> SpectralUnknown {
        let spec = self.spec();
        let n = self.qn.n as f64;
        let ll = self.ll();
        let (lo, hi) = match self.id {
            ModelId::SphericalOscillator => {
                let hw = self.p("hbar") * self.p("omega");
                (0.0, hw * (self.l + 2.0 * n + 4.0))
            }
            ModelId::ManningRosen | ModelId::Hulthen => {
                let unit = self.p("hbar").powi(2) / (2.0 * self.p("mu") * self.p("b").powi(2));
                let beta1 = self.p("a_tilde") - ll * self.p("d1");
                let beta2 = self.alpha() * (self.alpha() - 1.0) + ll * self.p("d2");
                let threshold = unit * ll * self.p("d0");
                (threshold - unit * (beta1.abs() + beta2.abs() + 2.0).powi(2), threshold)
            }
            ModelId::Eckart => {
                let a = self.p("a");
                let threshold = ll * self.p("d0") / (2.0 * a * a);
                (threshold - 2.0 * (self.p("alpha").abs() * a + 1.0 / a).powi(2), threshold)
            }
            ModelId::Kratzer => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                let (de, a) = (self.p("De"), self.p("a"));
                (-4.0 * u * de * de * a * a - 1.0, 0.0)
            }
            ModelId::Coulomb | ModelId::NoncentralCoulomb => {
                let s = self.coulomb_strength();
                (-s * s * self.p("hbar").powi(2) / self.p("mu"), 0.0)
            }
            ModelId::KgCoulomb => {
                let rest = self.p("m0") * self.p("c").powi(2);
                if self.p("branch") > 0.0 {
                    (0.0, rest)
                } else {
                    (-rest, 0.0)
                }
            }
            ModelId::KgEckart => {
                let m = self.p("M");
                (-m, m)
            }
            ModelId::DiracMorse => (0.0, self.p("beta1").powi(2) / self.p("beta2") + 1.0),
            ModelId::KemmerOscillator => (0.0, self.l + 2.0 * n + 6.0),
        };
        SpectralUnknown::new(spec.unknown, lo, hi, spec.units).expect("catalog brackets are ordered")
    }

    /// The closed-form value printed for this model, where one exists.
    pub fn closed_form(&self) -> Option<f64> {
        let n = self.qn.n as f64;
        let l = self.l;
        let ll = self.ll();
        match self.id {
            ModelId::SphericalOscillator => Some((l + 1.5 + 2.0 * n) * self.p("hbar") * self.p("omega")),
            ModelId::ManningRosen | ModelId::Hulthen => {
                let unit = self.p("hbar").powi(2) / (2.0 * self.p("mu") * self.p("b").powi(2));
                let beta1 = self.p("a_tilde") - ll * self.p("d1");
                let beta2 = self.alpha() * (self.alpha() - 1.0) + ll * self.p("d2");
                let x = n + 0.5 + 0.5 * (1.0 + 4.0 * beta2).sqrt();
                let xi = (beta1 + beta2 - x * x) / (2.0 * x);
                Some(unit * (ll * self.p("d0") - xi * xi))
            }
            ModelId::Eckart => {
                let a2 = self.p("a").powi(2);
                let (d0, d1, d2) = (self.p("d0"), self.p("d1"), self.p("d2"));
                let x = n + 0.5 + (0.25 + 2.0 * a2 * self.p("beta") + ll * d2).sqrt();
                let w = 2.0 * a2 * self.p("alpha") + ll * (d2 - d1);
                let k4 = (w - x * x) / (2.0 * x);
                Some((ll * d0 - k4 * k4) / (2.0 * a2))
            }
            ModelId::Kratzer => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                let (de, a) = (self.p("De"), self.p("a"));
                let x = n + 0.5 + ((0.5 + l).powi(2) + u * de * a * a).sqrt();
                Some(-u * de * de * a * a / (x * x))
            }
            ModelId::Coulomb | ModelId::NoncentralCoulomb => {
                let s = self.coulomb_strength();
                let hbar2_over_mu = self.p("hbar").powi(2) / self.p("mu");
                Some(-s * s * hbar2_over_mu / (2.0 * (n + l + 1.0).powi(2)))
            }
            ModelId::KgCoulomb => {
                let za = self.p("z_alpha");
                let rest = self.p("m0") * self.p("c").powi(2);
                let x = n + 0.5 + ((l + 0.5).powi(2) - za * za).sqrt();
                Some(self.p("branch") * rest / (1.0 + za * za / (x * x)).sqrt())
            }
            ModelId::KgEckart => self.kg_eckart_closed_form(),
            ModelId::DiracMorse => {
                let (b1, b2) = (self.p("beta1"), self.p("beta2"));
                Some((b1 * b1 - (2.0 * n + 1.0) * b2) / (2.0 * b2))
            }
            ModelId::KemmerOscillator => Some(l + 1.5 + 2.0 * n),
        }
    }

    /// Lowest root of the explicit KG-Eckart quantization relation.
    fn kg_eckart_closed_form(&self) -> Option<f64> {
        let (a, m) = (self.p("a"), self.p("M"));
        let (alpha, beta) = (self.p("alpha"), self.p("beta"));
        let (n, l) = (self.qn.n as f64, self.l);
        let f = |e: f64| {
            let r1 = m * m - e * e;
            let r2 = (l + 0.5).powi(2) + 2.0 * a * a * beta * (m + e);
            let r3 = m * m - e * e + 2.0 * alpha * (m + e);
            if r1 < 0.0 || r2 < 0.0 || r3 < 0.0 {
                return None;
            }
            Some(a * r1.sqrt() + r2.sqrt() - a * r3.sqrt() + 0.5 + n)
        };
        let samples: Vec<(f64, Option<f64>)> = linspace(-m, m, 2001).map(|e| (e, f(e))).collect();
        sign_changes(&samples).first().map(|&(x0, f0, x1, f1)| {
            brent(|e| f(e).unwrap_or(f64::NAN), x0, x1, f0, f1, 1e-14, 1.0).0
        })
    }

    /// Length scale used to size radial grids.
    fn length_scale(&self) -> f64 {
        match self.id {
            ModelId::SphericalOscillator => (self.p("hbar") / (self.p("m") * self.p("omega"))).sqrt(),
            ModelId::ManningRosen | ModelId::Hulthen => self.p("b"),
            ModelId::Eckart | ModelId::KgEckart => self.p("a"),
            ModelId::Kratzer => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                1.0 / (u * self.p("De") * self.p("a")).max(1e-300)
            }
            ModelId::Coulomb | ModelId::NoncentralCoulomb => 1.0 / (2.0 * self.coulomb_strength()),
            ModelId::KgCoulomb => self.p("hbar") * self.p("c") / (self.p("z_alpha") * self.p("m0") * self.p("c").powi(2)),
            ModelId::DiracMorse => 1.0,
            ModelId::KemmerOscillator => (self.p("hbar") / (self.p("M") * self.p("omega"))).sqrt(),
        }
    }

    /// Coordinate map `r -> s`.
    pub fn to_s(&self, r: f64) -> f64 {
        match self.id {
            ModelId::SphericalOscillator => r * r,
            ModelId::ManningRosen | ModelId::Hulthen => (-r / self.p("b")).exp(),
            ModelId::Eckart | ModelId::KgEckart => (-r / self.p("a")).exp(),
            ModelId::KemmerOscillator => self.p("M") * self.p("omega") / self.p("hbar") * r * r,
            _ => r,
        }
    }

    /// Inverse coordinate map `s -> r`.
    pub fn to_r(&self, s: f64) -> f64 {
        match self.id {
            ModelId::SphericalOscillator => s.sqrt(),
            ModelId::ManningRosen | ModelId::Hulthen => -self.p("b") * s.ln(),
            ModelId::Eckart | ModelId::KgEckart => -self.p("a") * s.ln(),
            ModelId::KemmerOscillator => (s * self.p("hbar") / (self.p("M") * self.p("omega"))).sqrt(),
            _ => s,
        }
    }

    pub fn measure(&self) -> Measure {
        self.spec().measure
    }

    /// Original radial equation `u'' = q(r, x) u`, with the same centrifugal
    /// approximation the coefficient map uses.
    pub fn radial_problem(&self) -> Option<RadialProblem> {
        self.radial(false)
    }

    /// As [`radial_problem`](Self::radial_problem) but with the exact
    /// `l(l + 1)/r²` term. Only differs for the approximated models.
    pub fn radial_problem_exact(&self) -> Option<RadialProblem> {
        match self.id {
            ModelId::ManningRosen | ModelId::Hulthen | ModelId::Eckart => self.radial(true),
            _ => None,
        }
    }

    fn radial(&self, exact_centrifugal: bool) -> Option<RadialProblem> {
        let ll = self.ll();
        let scale = self.length_scale();
        let r_min = R_MIN_SCALE * scale;
        let reach = (self.qn.n as f64 + self.l + 2.0).powi(2);
        let problem = |q: Box<dyn Fn(f64, f64) -> f64 + Send + Sync>, r_max: f64, substitution| {
            RadialProblem::new(q, r_min, r_max, self.measure(), substitution).ok()
        };
        match self.id {
            ModelId::SphericalOscillator => {
                let (hbar, m, w) = (self.p("hbar"), self.p("m"), self.p("omega"));
                let k = m * w / hbar;
                let u = 2.0 * m / (hbar * hbar);
                let r_max = scale * ((4.0 * reach).sqrt() + 12.0);
                problem(Box::new(move |r, e| k * k * r * r + ll / (r * r) - u * e), r_max, "u = r R")
            }
            ModelId::ManningRosen | ModelId::Hulthen => {
                let (hbar, mu, b) = (self.p("hbar"), self.p("mu"), self.p("b"));
                let u = 2.0 * mu / (hbar * hbar);
                let (aa, at) = (self.alpha() * (self.alpha() - 1.0), self.p("a_tilde"));
                let (d0, d1, d2) = (self.p("d0"), self.p("d1"), self.p("d2"));
                problem(
                    Box::new(move |r, e| {
                        let y = 1.0 / (r / b).exp_m1();
                        let cent = if exact_centrifugal {
                            ll / (r * r)
                        } else {
                            ll * (d0 + d1 * y + d2 * y * y) / (b * b)
                        };
                        -u * e + (aa * y * y - at * y) / (b * b) + cent
                    }),
                    400.0 * b,
                    "none",
                )
            }
            ModelId::Eckart => {
                let a = self.p("a");
                let (alpha, beta) = (self.p("alpha"), self.p("beta"));
                let (d0, d1, d2) = (self.p("d0"), self.p("d1"), self.p("d2"));
                problem(
                    Box::new(move |r, e| {
                        // z/(1 - z) = 1/(e^{r/a} - 1)
                        let y = 1.0 / (r / a).exp_m1();
                        let cent = if exact_centrifugal {
                            ll / (r * r)
                        } else {
                            ll * (d0 + d1 * y + d2 * y * y) / (a * a)
                        };
                        -2.0 * e + 2.0 * beta * y * (1.0 + y) - 2.0 * alpha * y + cent
                    }),
                    400.0 * a,
                    "none",
                )
            }
            ModelId::Kratzer => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                let (de, a) = (self.p("De"), self.p("a"));
                let r_max = (8.0 * reach + 100.0) * scale.max(a);
                problem(
                    Box::new(move |r, e| -u * e - 2.0 * u * de * a / r + (u * de * a * a + ll) / (r * r)),
                    r_max,
                    "none",
                )
            }
            ModelId::Coulomb | ModelId::NoncentralCoulomb => {
                let u = 2.0 * self.p("mu") / self.p("hbar").powi(2);
                let s2 = 2.0 * self.coulomb_strength();
                let r_max = (8.0 * reach + 100.0) * scale;
                problem(Box::new(move |r, e| -u * e - s2 / r + ll / (r * r)), r_max, "u = r R")
            }
            ModelId::KgCoulomb => {
                let hc = self.p("hbar") * self.p("c");
                let rest = self.p("m0") * self.p("c").powi(2);
                let za = self.p("z_alpha");
                let sign = self.p("branch");
                let r_max = (8.0 * reach + 100.0) * scale;
                problem(
                    Box::new(move |r, e| {
                        (ll - za * za) / (r * r) - sign * 2.0 * e * za / (hc * r) + (rest * rest - e * e) / (hc * hc)
                    }),
                    r_max,
                    "none",
                )
            }
            ModelId::KgEckart => {
                let (a, m) = (self.p("a"), self.p("M"));
                let (alpha, beta) = (self.p("alpha"), self.p("beta"));
                problem(
                    Box::new(move |r, e| {
                        let y = 1.0 / (r / a).exp_m1();
                        let k2 = 2.0 * (m + e);
                        (m * m - e * e) - k2 * alpha * y + (k2 * beta + ll / (a * a)) * y * (1.0 + y)
                    }),
                    400.0 * a,
                    "none",
                )
            }
            ModelId::DiracMorse => None,
            ModelId::KemmerOscillator => {
                let k = self.p("M") * self.p("omega") / self.p("hbar");
                let r_max = scale * ((8.0 * reach).sqrt() + 12.0);
                problem(Box::new(move |r, x| k * k * r * r + ll / (r * r) - 2.0 * k * x), r_max, "none")
            }
        }
    }
}

impl CoefficientMap for ModelInstance {
    fn evaluate(&self, x: f64) -> Result<CanonicalCoefficients> {
        self.coefficients(x)
    }
}
