//! Data model for the canonical second-order equation
//!
//! ```text
//! Ψ''(s) + (k1 − k2 s) / (s (1 − k3 s)) Ψ'(s) + (A s² + B s + C) / (s² (1 − k3 s)²) Ψ(s) = 0
//! ```
//!
//! and the exponents `k4` (behaviour at `s → 0`) and `k5` (behaviour at
//! `s → 1/k3`, or the exponential decay rate when `k3 → 0`).

use crate::error::{Error, Result};

/// `|k3|` below this value is treated as the confluent (`k3 → 0`) limit.
pub const K3_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `k3 ≠ 0`: Gauss hypergeometric solutions on `(0, 1/k3)`.
    General,
    /// `k3 → 0`: confluent solutions on `(0, ∞)`.
    Limit,
}

/// The six numbers defining one instance of the canonical equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalCoefficients {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CanonicalCoefficients {
    pub fn new(k1: f64, k2: f64, k3: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        let coeffs = Self { k1, k2, k3, a, b, c };
        coeffs.check_finite()?;
        Ok(coeffs)
    }

    pub fn check_finite(&self) -> Result<()> {
        for (name, value) in [
            ("k1", self.k1),
            ("k2", self.k2),
            ("k3", self.k3),
            ("A", self.a),
            ("B", self.b),
            ("C", self.c),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.k3.abs() < K3_EPSILON {
            Regime::Limit
        } else {
            Regime::General
        }
    }

    /// Open interval of `s` on which the equation is posed.
    pub fn domain(&self) -> (f64, f64) {
        match self.regime() {
            Regime::Limit => (0.0, f64::INFINITY),
            Regime::General if self.k3 > 0.0 => (0.0, 1.0 / self.k3),
            Regime::General => (1.0 / self.k3, 0.0),
        }
    }

    /// Left-hand side of the canonical equation multiplied by `s²(1 − k3 s)²`,
    /// given `Ψ`, `Ψ'` and `Ψ''` at `s`.
    pub fn scaled_residual(&self, s: f64, psi: f64, dpsi: f64, d2psi: f64) -> f64 {
        let w = 1.0 - self.k3 * s;
        s * s * w * w * d2psi
            + (self.k1 - self.k2 * s) * s * w * dpsi
            + (self.a * s * s + self.b * s + self.c) * psi
    }
}

/// Exponents governing the solution near the two singular points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionParams {
    pub k4: f64,
    pub k5: f64,
}

impl SolutionParams {
    pub fn from_coefficients(c: &CanonicalCoefficients) -> Result<Self> {
        Ok(Self {
            k4: compute_k4(c)?,
            k5: compute_k5(c)?,
        })
    }
}

/// Indicial exponent at `s = 0`, "+" branch.
pub fn compute_k4(c: &CanonicalCoefficients) -> Result<f64> {
    let one_minus_k1 = 1.0 - c.k1;
    let disc = one_minus_k1 * one_minus_k1 - 4.0 * c.c;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant {
            what: "k4",
            value: disc,
        });
    }
    Ok(0.5 * (one_minus_k1 + disc.sqrt()))
}

/// Exponent at the second singular point, "+" branch.
///
/// In the general regime this is the indicial exponent of `(1 − k3 s)^k5`;
/// in the limit regime it is the decay rate of `exp(−k5 s)`.
pub fn compute_k5(c: &CanonicalCoefficients) -> Result<f64> {
    match c.regime() {
        Regime::General => {
            let p = 0.5 + 0.5 * c.k1 - c.k2 / (2.0 * c.k3);
            let q = c.a / (c.k3 * c.k3) + c.b / c.k3 + c.c;
            let disc = p * p - q;
            if disc < 0.0 {
                return Err(Error::NegativeDiscriminant {
                    what: "k5",
                    value: disc,
                });
            }
            Ok(p + disc.sqrt())
        }
        Regime::Limit => {
            let half_k2 = 0.5 * c.k2;
            let disc = half_k2 * half_k2 - c.a;
            if disc < 0.0 {
                return Err(Error::NegativeDiscriminant {
                    what: "k5 (k3 -> 0)",
                    value: disc,
                });
            }
            Ok(-half_k2 + disc.sqrt())
        }
    }
}

/// The scalar a coefficient map is solved for, with its search bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralUnknown {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub units: String,
}

impl SpectralUnknown {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, units: impl Into<String>) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Self {
            name: name.into(),
            lo,
            hi,
            units: units.into(),
        })
    }
}

/// Maps a trial value of the spectral unknown to canonical coefficients.
///
/// Implementations must be deterministic and defined everywhere on the
/// bracket they are solved over.
pub trait CoefficientMap {
    fn evaluate(&self, x: f64) -> Result<CanonicalCoefficients>;
}

impl<F> CoefficientMap for F
where
    F: Fn(f64) -> CanonicalCoefficients,
{
    fn evaluate(&self, x: f64) -> Result<CanonicalCoefficients> {
        let c = self(x);
        c.check_finite()?;
        Ok(c)
    }
}

/// Quantum numbers labelling a state. `l` is real so that a non-integer
/// effective orbital index can be fed through the radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: f64,
    pub m: Option<i32>,
    pub j: Option<f64>,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: f64) -> Result<Self> {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::InvalidQuantumNumbers(format!("l = {l} must be >= 0")));
        }
        Ok(Self {
            n,
            l,
            m: None,
            j: None,
        })
    }

    pub fn with_m(mut self, m: i32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_j(mut self, j: f64) -> Self {
        self.j = Some(j);
        self
    }
}
