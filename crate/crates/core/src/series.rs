//! Truncated power series at the origin with complex double coefficients.
//!
//! A [`TruncatedSeries`] of order `M` stores `c_0..=c_M` and represents
//! `c_0 + c_1 t + ... + c_M t^M + O(t^{M+1})`. Binary operations truncate to
//! the smaller of the two orders; nothing beyond the shared order is ever
//! claimed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default truncation order for every analytic function in the crate.
pub const DEFAULT_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_M`. Rejects empty input and non-finite
    /// coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coefficient {k} is not finite"
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::zero(); order + 1],
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::one(), order)
    }

    /// The series variable `t` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Pads with zero coefficients up to `order`; used only where the missing
    /// coefficients provably cannot reach the retained range.
    pub(crate) fn extend_zero(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, Complex64::zero());
        Self { coeffs }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Adds a constant to `c_0`.
    pub fn add_constant(&self, value: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] + other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] - other.coeffs[k])
                .collect(),
        }
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k)
                    .map(|j| self.coeffs[j] * other.coeffs[k - j])
                    .sum::<Complex64>()
            })
            .collect();
        Self { coeffs }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn powi(&self, exponent: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Pole("reciprocal of a series vanishing at 0"));
        }
        let inv0 = a0.inv();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0);
        for k in 1..=self.order() {
            let acc: Complex64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out.push(-acc * inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Termwise derivative, order `M - 1` (order 0 stays a zero constant).
    pub fn diff(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (1..=self.order())
                .map(|k| self.coeffs[k] * k as f64)
                .collect(),
        }
    }

    /// Termwise antiderivative with zero constant term, order `M + 1`.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Self { coeffs }
    }

    /// `self ∘ inner`. The inner series must vanish at the origin.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if !c0.is_zero() {
            return Err(Error::NonzeroConstantTerm(format!("{c0}")));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner).add_constant(self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse at the origin by Newton iteration on series,
    /// seeded with `t / x_1`. Each step doubles the number of correct
    /// coefficients.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible("constant term is nonzero"));
        }
        let order = self.order();
        if order == 0 {
            return Err(Error::NotInvertible("order-0 series has no linear term"));
        }
        let x1 = self.coeffs[1];
        if x1.is_zero() {
            return Err(Error::NotInvertible("linear coefficient vanishes"));
        }
        let ident = Self::variable(order);
        // x' is known through t^{M-1}; its t^M coefficient only influences
        // products landing beyond order M because the Newton residual starts
        // at t^2.
        let slope = self.diff().extend_zero(order);
        let mut y = ident.scale(x1.inv());
        let steps = usize::BITS - order.leading_zeros() + 1;
        for _ in 0..steps {
            let residual = self.compose(&y)?.sub(&ident);
            if residual.max_abs() == 0.0 {
                break;
            }
            let correction = residual.div(&slope.compose(&y)?)?;
            y = y.sub(&correction);
        }
        Ok(y)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// Largest `|u|` for which the retained tail stays below `tol`: the
    /// smallest `(tol / |c_k|)^(1/k)` over the last four coefficients,
    /// capped at `cap`. Zero coefficients (parity) are skipped.
    pub fn trusted_radius(&self, tol: f64, cap: f64) -> f64 {
        let m = self.order();
        let lo = m.saturating_sub(3).max(1);
        (lo..=m)
            .filter_map(|k| {
                let mag = self.coeffs[k].norm();
                (mag > 0.0).then(|| (tol / mag).powf(1.0 / k as f64))
            })
            .fold(cap, f64::min)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})t^{k}")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale_real(-1.0)
    }
}

/// Elementary functions with a built-in Maclaurin expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Sin,
    Cos,
    Arcsin,
    /// `sqrt(1 + t)`
    Sqrt1p,
}

impl FromStr for Elementary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin" => Ok(Self::Sin),
            "cos" => Ok(Self::Cos),
            "arcsin" | "asin" => Ok(Self::Arcsin),
            "sqrt1p" => Ok(Self::Sqrt1p),
            other => Err(Error::Unknown {
                kind: "elementary function",
                name: other.to_string(),
            }),
        }
    }
}

/// Maclaurin series of `kind` through `t^order`.
pub fn elementary(kind: Elementary, order: usize) -> TruncatedSeries {
    let mut c = vec![0.0f64; order + 1];
    match kind {
        Elementary::Sin | Elementary::Cos => {
            let start = if kind == Elementary::Sin { 1 } else { 0 };
            // running value of (-1)^j / k!
            let mut term = 1.0;
            for k in 1..=start {
                term /= k as f64;
            }
            let mut k = start;
            while k <= order {
                c[k] = term;
                term = -term / ((k + 1) * (k + 2)) as f64;
                k += 2;
            }
        }
        Elementary::Arcsin => {
            // (2j)! / (4^j (j!)^2) accumulated as a product of (2j-1)/(2j)
            let mut central = 1.0;
            let mut j = 0usize;
            while 2 * j < order {
                if j > 0 {
                    central *= (2 * j - 1) as f64 / (2 * j) as f64;
                }
                c[2 * j + 1] = central / (2 * j + 1) as f64;
                j += 1;
            }
        }
        Elementary::Sqrt1p => {
            let mut b = 1.0;
            for (k, slot) in c.iter_mut().enumerate() {
                if k > 0 {
                    b *= (0.5 - (k - 1) as f64) / k as f64;
                }
                *slot = b;
            }
        }
    }
    TruncatedSeries {
        coeffs: c.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
    }
}
