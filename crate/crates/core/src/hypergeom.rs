//! Terminating hypergeometric polynomials `₂F₁(−n, b; c; x)` and `₁F₁(−n; c; x)`.
//!
//! With a first parameter of `−n` both series stop after `n + 1` terms, so
//! they are evaluated as exact finite sums. Successive terms are generated
//! from the ratio `t_{k+1}/t_k`; for degrees above 20 the terms are added
//! with Neumaier's compensated summation.

use crate::error::{Error, Result};

const COMPENSATED_ABOVE: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Gauss2F1,
    Kummer1F1,
}

/// A degree-`n` terminating hypergeometric polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminatingSeries {
    kind: SeriesKind,
    n: u32,
    b: f64,
    c: f64,
}

impl TerminatingSeries {
    pub fn gauss(n: u32, b: f64, c: f64) -> Result<Self> {
        Self::validate(n, c)?;
        Ok(Self {
            kind: SeriesKind::Gauss2F1,
            n,
            b,
            c,
        })
    }

    pub fn kummer(n: u32, c: f64) -> Result<Self> {
        Self::validate(n, c)?;
        Ok(Self {
            kind: SeriesKind::Kummer1F1,
            n,
            b: f64::NAN,
            c,
        })
    }

    fn validate(n: u32, c: f64) -> Result<()> {
        // (c)_k = c (c+1) ... (c+k-1) for k <= n
        if (0..n).any(|k| (c + k as f64).abs() < 1e-12) || !c.is_finite() {
            return Err(Error::PochhammerZero { n, c });
        }
        Ok(())
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Ratio `t_{k+1} / t_k` divided by `x`.
    fn ratio(&self, k: u32) -> f64 {
        let kf = k as f64;
        let upper = (kf - self.n as f64)
            * match self.kind {
                SeriesKind::Gauss2F1 => self.b + kf,
                SeriesKind::Kummer1F1 => 1.0,
            };
        upper / ((self.c + kf) * (kf + 1.0))
    }

    /// Monomial coefficients `a_0 .. a_n` of the polynomial in `x`.
    pub fn coefficients(&self) -> Vec<f64> {
        let mut coeffs = Vec::with_capacity(self.n as usize + 1);
        let mut term = 1.0;
        coeffs.push(term);
        for k in 0..self.n {
            term *= self.ratio(k);
            coeffs.push(term);
        }
        coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut term = 1.0;
        if self.n > COMPENSATED_ABOVE {
            let mut sum = 1.0;
            let mut comp = 0.0;
            for k in 0..self.n {
                term *= self.ratio(k) * x;
                let t = sum + term;
                if sum.abs() >= term.abs() {
                    comp += (sum - t) + term;
                } else {
                    comp += (term - t) + sum;
                }
                sum = t;
            }
            sum + comp
        } else {
            let mut sum = 1.0;
            for k in 0..self.n {
                term *= self.ratio(k) * x;
                sum += term;
            }
            sum
        }
    }

    /// Value and first two derivatives, from the monomial coefficients.
    pub fn eval_with_derivatives(&self, x: f64) -> (f64, f64, f64) {
        let coeffs = self.coefficients();
        let (mut p, mut dp, mut d2p) = (0.0, 0.0, 0.0);
        for &a in coeffs.iter().rev() {
            d2p = d2p * x + 2.0 * dp;
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp, d2p)
    }

    /// Number of sign changes of the polynomial on the open interval
    /// `(lo, hi)`, sampled on a grid fine enough to separate the simple
    /// zeros of the orthogonal-polynomial families used here.
    pub fn count_roots_in(&self, lo: f64, hi: f64) -> usize {
        if self.n == 0 {
            return 0;
        }
        let points = 400 * (self.n as usize + 1);
        let step = (hi - lo) / points as f64;
        let mut count = 0;
        let mut prev = self.eval(lo + 0.5 * step);
        for i in 1..points {
            let v = self.eval(lo + (i as f64 + 0.5) * step);
            if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        count
    }
}

/// `₂F₁(−n, b; c; x)` as a finite sum.
pub fn eval_2f1_terminating(n: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(TerminatingSeries::gauss(n, b, c)?.eval(x))
}

/// `₁F₁(−n; c; x)` as a finite sum.
pub fn eval_1f1_terminating(n: u32, c: f64, x: f64) -> Result<f64> {
    Ok(TerminatingSeries::kummer(n, c)?.eval(x))
}
