//! The Gauss function `F_a(z) = 2F1(1/2 - a, 1/2 + a; 1/2; z)`.
//!
//! Inside the unit disk it is summed directly from the Gauss series. The
//! term ratio `((1/2 + k)^2 - a^2) / ((1/2 + k)(k + 1))` depends on `a` only
//! through `a^2`, so the function is even in `a`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Hard cap on the number of Gauss-series terms.
pub const MAX_TERMS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    pub a: f64,
    pub series_order: usize,
    pub tol: f64,
}

impl HypergeomParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidParameter(format!(
                "a = {a} must lie in [0, 1]"
            )));
        }
        Ok(Self {
            a,
            series_order: crate::series::DEFAULT_ORDER,
            tol: 1e-17,
        })
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.series_order = order;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Ratio `t_{k+1} / (t_k z)` of consecutive Gauss-series terms.
    fn term_ratio(&self, k: usize) -> f64 {
        let half_k = 0.5 + k as f64;
        (half_k * half_k - self.a * self.a) / (half_k * (k as f64 + 1.0))
    }
}

/// Sums the Gauss series of `F_a` at `z`, `|z| < 1`.
///
/// Stops once three consecutive terms fall below `tol * |partial sum|`.
pub fn f_a_value(p: &HypergeomParams, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk(format!("{z}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        term *= z * p.term_ratio(k);
        sum += term;
        if term.norm() <= p.tol * sum.norm() {
            small_run += 1;
            if small_run == 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence {
        tol: p.tol,
        terms: MAX_TERMS,
    })
}

/// Maclaurin coefficients of `F_a` through `z^order`.
pub fn f_a_series(p: &HypergeomParams, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = 1.0;
    for k in 0..=order {
        coeffs.push(c);
        c *= p.term_ratio(k);
    }
    TruncatedSeries::from_real(&coeffs).expect("Pochhammer ratios are finite")
}

/// `|F_a(sin^2 z) - cos(2az) / cos z|`.
pub fn identity_residual(p: &HypergeomParams, z: Complex64) -> Result<f64> {
    let cos_z = z.cos();
    if cos_z.norm() < 1e-300 {
        return Err(Error::Pole("cos z vanishes"));
    }
    let sin_z = z.sin();
    let lhs = f_a_value(p, sin_z * sin_z)?;
    let rhs = (z * (2.0 * p.a)).cos() / cos_z;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn value_examples() {
        let p = HypergeomParams::new(0.25).unwrap();
        assert_eq!(f_a_value(&p, c(0.0)).unwrap(), c(1.0));

        let classical = HypergeomParams::new(0.0).unwrap();
        let v = f_a_value(&classical, c(0.75)).unwrap();
        assert!((v - c(2.0)).norm() < 1e-13, "{v}");

        let z = 0.3f64;
        let v = f_a_value(&p, c(z.sin().powi(2))).unwrap();
        assert!((v.re - (0.15f64).cos() / z.cos()).abs() < 1e-15);
    }

    #[test]
    fn value_errors() {
        let p = HypergeomParams::new(0.25).unwrap();
        assert!(matches!(f_a_value(&p, c(1.0)), Err(Error::OutsideDisk(_))));
        assert!(matches!(
            f_a_value(&p, Complex64::new(0.0, -1.5)),
            Err(Error::OutsideDisk(_))
        ));
        let slow = p.with_tol(0.0);
        assert!(matches!(
            f_a_value(&slow, c(0.999)),
            Err(Error::NoConvergence { .. })
        ));
        assert!(HypergeomParams::new(1.5).is_err());
    }

    #[test]
    fn series_coefficients() {
        for a in [0.0, 1.0 / 6.0, 0.25, 1.0 / 3.0] {
            let p = HypergeomParams::new(a).unwrap();
            let s = f_a_series(&p, 6);
            assert_eq!(s.coeff(0).re, 1.0);
            assert!((s.coeff(1).re - (1.0 - 4.0 * a * a) / 2.0).abs() < 1e-16);
        }
        let half = HypergeomParams::new(0.5).unwrap();
        let s = f_a_series(&half, 8);
        assert!(s.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
        // classical: binomial series of (1 - z)^(-1/2)
        let s = f_a_series(&HypergeomParams::new(0.0).unwrap(), 3);
        let expect = [1.0, 0.5, 0.375, 0.3125];
        for (k, e) in expect.iter().enumerate() {
            assert!((s.coeff(k).re - e).abs() < 1e-16);
        }
    }

    #[test]
    fn identity_examples() {
        let p = HypergeomParams::new(0.0).unwrap();
        assert_eq!(identity_residual(&p, c(0.0)).unwrap(), 0.0);
        assert!(identity_residual(&p, c(0.5)).unwrap() < 1e-12);
        let p = HypergeomParams::new(1.0 / 6.0).unwrap();
        assert!(identity_residual(&p, c(0.4)).unwrap() < 1e-12);
    }

    #[test]
    fn identity_rejects_pole() {
        let p = HypergeomParams::new(0.25).unwrap();
        assert!(identity_residual(&p, c(std::f64::consts::FRAC_PI_2)).is_err());
        assert!(identity_residual(&p, c(0.0)).is_ok());
    }
}
