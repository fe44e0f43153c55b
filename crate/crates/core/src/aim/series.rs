//! Fixed-order Taylor polynomials about a common centre.
//!
//! Each AIM iteration differentiates once, so a series loses one order per
//! step; arithmetic between series of different orders truncates to the
//! smaller one.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    center: f64,
    coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Derivative,
}

impl TruncatedSeries {
    /// A series from Taylor coefficients `c_0 .. c_order`.
    pub fn new(center: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { center, coeffs }
    }

    pub fn constant(center: f64, order: usize, value: f64) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    /// The identity function `x` expanded about `center`.
    pub fn variable(center: f64, order: usize) -> Self {
        let mut s = Self::constant(center, order, center);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value at the centre.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `d`-th derivative at the centre.
    pub fn derivative_at(&self, d: usize) -> Result<f64> {
        let c = *self.coeffs.get(d).ok_or(Error::OrderExhausted { k: d })?;
        Ok(c * (1..=d).map(|i| i as f64).product::<f64>())
    }

    fn check_center(&self, other: &Self) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch {
                left: self.center,
                right: other.center,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        Ok(Self::new(self.center, coeffs))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (0..=i).map(|j| self.coeffs[j] * other.coeffs[i - j]).sum())
            .collect();
        Ok(Self::new(self.center, coeffs))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.center, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Term-wise derivative; the result has one order less.
    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() < 2 {
            return Err(Error::OrderExhausted { k: self.order() });
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * (i + 1) as f64)
            .collect();
        Ok(Self::new(self.center, coeffs))
    }

    /// Multiplicative inverse; requires a non-zero value at the centre.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(Error::ZeroDenominator {
                what: "series reciprocal at its centre",
            });
        }
        let mut out = vec![0.0; self.coeffs.len()];
        out[0] = 1.0 / c0;
        for i in 1..out.len() {
            let acc: f64 = (1..=i).map(|j| self.coeffs[j] * out[i - j]).sum();
            out[i] = -acc / c0;
        }
        Ok(Self::new(self.center, out))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Binary-operation front end; `b` is ignored for [`SeriesOp::Derivative`].
pub fn series_arith(a: &TruncatedSeries, b: &TruncatedSeries, op: SeriesOp) -> Result<TruncatedSeries> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Derivative => a.derivative(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = TruncatedSeries::constant(0.3, 4, 2.5);
        let d = series_arith(&c, &c, SeriesOp::Derivative).unwrap();
        assert_eq!(d.order(), 3);
        assert!(d.coeffs().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::new(0.0, vec![1.0, 1.0, 0.0]);
        let b = TruncatedSeries::new(0.0, vec![1.0, -1.0, 0.0]);
        let p = series_arith(&a, &b, SeriesOp::Mul).unwrap();
        assert_eq!(p.coeffs(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn exponential_is_its_own_derivative() {
        let mut fact = 1.0;
        let coeffs: Vec<f64> = (0..=5)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                1.0 / fact
            })
            .collect();
        let e = TruncatedSeries::new(0.0, coeffs.clone());
        let d = e.derivative().unwrap();
        assert_eq!(d.order(), 4);
        for (k, c) in d.coeffs().iter().enumerate() {
            assert!((c - coeffs[k]).abs() < 1e-15, "c_{k} = {c}");
        }
    }

    #[test]
    fn mismatched_centres_rejected() {
        let a = TruncatedSeries::constant(0.0, 2, 1.0);
        let b = TruncatedSeries::constant(1.0, 2, 1.0);
        assert!(matches!(a.add(&b), Err(Error::CenterMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::CenterMismatch { .. })));
    }

    #[test]
    fn derivative_exhausts_order() {
        let c = TruncatedSeries::constant(0.0, 0, 1.0);
        assert!(matches!(c.derivative(), Err(Error::OrderExhausted { .. })));
    }

    #[test]
    fn reciprocal_of_geometric_factor() {
        // 1 / (1 - x) = 1 + x + x^2 + ...
        let s = TruncatedSeries::new(0.0, vec![1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.recip().unwrap().coeffs(), &[1.0; 5]);
    }

    #[test]
    fn variable_expansion_and_derivatives() {
        let x = TruncatedSeries::variable(2.0, 3);
        let cube = x.mul(&x).unwrap().mul(&x).unwrap();
        assert_eq!(cube.value(), 8.0);
        assert_eq!(cube.derivative_at(1).unwrap(), 12.0);
        assert_eq!(cube.derivative_at(2).unwrap(), 12.0);
        assert_eq!(cube.derivative_at(3).unwrap(), 6.0);
        assert!(cube.derivative_at(4).is_err());
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = TruncatedSeries::new(0.0, vec![1.0, 2.0, 3.0]);
        let b = TruncatedSeries::new(0.0, vec![1.0, 1.0]);
        assert_eq!(a.add(&b).unwrap().coeffs(), &[2.0, 3.0]);
        assert_eq!(a.mul(&b).unwrap().coeffs(), &[1.0, 3.0]);
    }
}
