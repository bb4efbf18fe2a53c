//! Weierstrass `℘` near its double pole at the origin, and the closed forms
//! of the signature-3 and signature-4 analogues in terms of it.
//!
//! `℘(z) = 1/z^2 + Σ_{k≥2} c_k z^{2k-2}` with `c_2 = g2/20`, `c_3 = g3/28`
//! and `c_k = 3/((2k+1)(k-3)) Σ_{i=2}^{k-2} c_i c_{k-i}` for `k ≥ 4`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chebyshev::{rat, RationalPoly};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Default Laurent truncation: 40 even-order terms.
pub const DEFAULT_LAURENT_ORDER: usize = 80;
/// Tail magnitude defining the trusted annulus.
pub const TAIL_TOL: f64 = 1e-15;
/// Outer bound on the trusted annulus.
pub const ANNULUS_CAP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassInvariants {
    pub g2: f64,
    pub g3: f64,
}

impl WeierstrassInvariants {
    pub fn new(g2: f64, g3: f64) -> Self {
        Self { g2, g3 }
    }

    /// `g2^3 - 27 g3^2`.
    pub fn modular_discriminant(&self) -> f64 {
        self.g2.powi(3) - 27.0 * self.g3 * self.g3
    }

    pub fn is_degenerate(&self) -> bool {
        self.modular_discriminant() == 0.0
    }

    /// `4t^3 - g2 t - g3`.
    pub fn cubic(&self, t: Complex64) -> Complex64 {
        4.0 * t * t * t - self.g2 * t - self.g3
    }
}

/// Taylor coefficients of `℘(z) - 1/z^2` through `z^order`.
pub fn wp_series(inv: &WeierstrassInvariants, order: usize) -> TruncatedSeries {
    let kmax = order / 2 + 1;
    let mut c = vec![0.0f64; kmax.max(3) + 1];
    c[2] = inv.g2 / 20.0;
    c[3] = inv.g3 / 28.0;
    for k in 4..=kmax {
        let sum: f64 = (2..=k - 2).map(|i| c[i] * c[k - i]).sum();
        c[k] = 3.0 / (((2 * k + 1) * (k - 3)) as f64) * sum;
    }
    let mut coeffs = vec![0.0; order + 1];
    for k in 2..=kmax {
        let power = 2 * k - 2;
        if power <= order {
            coeffs[power] = c[k];
        }
    }
    TruncatedSeries::from_real(&coeffs).expect("finite invariants give finite coefficients")
}

/// Series of `z^6 [(℘')^2 - 4℘^3 + g2 ℘ + g3]`, which vanishes identically
/// for the exact `℘`. Valid through `z^order`.
pub fn ode_residual_series(inv: &WeierstrassInvariants, order: usize) -> TruncatedSeries {
    let tail = wp_series(inv, order);
    let z = TruncatedSeries::variable(order);
    let z2 = z.square();
    // z^2 ℘ and z^3 ℘'
    let p = z2.mul(&tail).add_constant(Complex64::new(1.0, 0.0));
    let dp = z2
        .mul(&z)
        .mul(&tail.diff().extend_zero(order))
        .add_constant(Complex64::new(-2.0, 0.0));
    let z4 = z2.square();
    let z6 = z4.mul(&z2);
    dp.square()
        .sub(&p.powi(3).scale_real(4.0))
        .add(&z4.mul(&p).scale_real(inv.g2))
        .add(&z6.scale_real(inv.g3))
}

/// `℘` and `℘'` from a truncated Laurent expansion, on the annulus where the
/// truncated tail is trustworthy.
#[derive(Debug, Clone)]
pub struct Weierstrass {
    inv: WeierstrassInvariants,
    tail: TruncatedSeries,
    tail_prime: TruncatedSeries,
    radius: f64,
}

impl Weierstrass {
    pub fn new(inv: WeierstrassInvariants, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidParameter(
                "Laurent order must be at least 2".into(),
            ));
        }
        let tail = wp_series(&inv, order);
        let radius = tail.trusted_radius(TAIL_TOL, ANNULUS_CAP);
        Ok(Self {
            inv,
            tail_prime: tail.diff(),
            tail,
            radius,
        })
    }

    pub fn invariants(&self) -> &WeierstrassInvariants {
        &self.inv
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if z.norm() == 0.0 {
            return Err(Error::Pole("℘ has a double pole at 0"));
        }
        if z.norm() > self.radius {
            return Err(Error::BeyondRadius {
                radius_requested: z.norm(),
                trusted: self.radius,
            });
        }
        Ok(())
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok((z * z).inv() + self.tail.eval(z))
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok(-2.0 * (z * z * z).inv() + self.tail_prime.eval(z))
    }

    /// `|(℘')^2 - 4℘^3 + g2 ℘ + g3|` at `z`, divided by
    /// `max(1, |℘'|^2, |4℘^3|)`: near the pole the individual terms grow like
    /// `|z|^-6`, so only the relative size of the residual is meaningful.
    pub fn ode_residual_at(&self, z: Complex64) -> Result<f64> {
        let p = self.value(z)?;
        let dp = self.derivative(z)?;
        let lhs = dp * dp;
        let scale = 1f64.max(lhs.norm()).max((4.0 * p * p * p).norm());
        Ok((lhs - self.inv.cubic(p)).norm() / scale)
    }
}

pub fn wp_eval(inv: &WeierstrassInvariants, z: Complex64) -> Result<Complex64> {
    Weierstrass::new(*inv, DEFAULT_LAURENT_ORDER)?.value(z)
}

pub fn wp_prime_eval(inv: &WeierstrassInvariants, z: Complex64) -> Result<Complex64> {
    Weierstrass::new(*inv, DEFAULT_LAURENT_ORDER)?.derivative(z)
}

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa > 0.0 && kappa < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("kappa must lie in (0,1)".into()))
    }
}

/// `g2 = 4/3 - κ^2`, `g3 = 8/27 - κ^2/3`.
pub fn sig4_invariants(kappa: f64) -> Result<WeierstrassInvariants> {
    check_kappa(kappa)?;
    let k2 = kappa * kappa;
    Ok(WeierstrassInvariants::new(
        4.0 / 3.0 - k2,
        8.0 / 27.0 - k2 / 3.0,
    ))
}

/// `g2 = 4(9 - 8κ^2)/27`, `g3 = 8(8κ^4 - 36κ^2 + 27)/729`.
pub fn sig3_invariants(kappa: f64) -> Result<WeierstrassInvariants> {
    check_kappa(kappa)?;
    let k2 = kappa * kappa;
    Ok(WeierstrassInvariants::new(
        4.0 * (9.0 - 8.0 * k2) / 27.0,
        8.0 * (8.0 * k2 * k2 - 36.0 * k2 + 27.0) / 729.0,
    ))
}

/// The signature-4 cubic `4t^3 - g2 t - g3` with exact coefficients for an
/// exact `κ^2`.
pub fn sig4_cubic_exact(kappa_sq: &BigRational) -> RationalPoly {
    let g2 = rat(4, 3) - kappa_sq;
    let g3 = rat(8, 27) - kappa_sq * rat(1, 3);
    RationalPoly::new(vec![-g3, -g2, BigRational::zero(), rat(4, 1)])
}

/// Closed forms evaluated on one `℘`, so a sweep over `u` reuses the
/// Laurent expansion.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    kappa: f64,
    wp: Weierstrass,
}

impl ClosedForms {
    pub fn signature4(kappa: f64) -> Result<Self> {
        Ok(Self {
            kappa,
            wp: Weierstrass::new(sig4_invariants(kappa)?, DEFAULT_LAURENT_ORDER)?,
        })
    }

    pub fn signature3(kappa: f64) -> Result<Self> {
        Ok(Self {
            kappa,
            wp: Weierstrass::new(sig3_invariants(kappa)?, DEFAULT_LAURENT_ORDER)?,
        })
    }

    pub fn weierstrass(&self) -> &Weierstrass {
        &self.wp
    }

    /// `1 - coef · κ^2 / (℘(u) + 1/3)`, extended by 1 at `u = 0`.
    fn shifted_reciprocal_form(&self, coef: f64, u: Complex64) -> Result<Complex64> {
        if u.norm() == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let p = self.wp.value(u)?;
        Ok(1.0 - coef * self.kappa * self.kappa / (p + 1.0 / 3.0))
    }

    /// Signature 4: `d = 1 - (κ^2/2) / (℘ + 1/3)`.
    pub fn d(&self, u: Complex64) -> Result<Complex64> {
        self.shifted_reciprocal_form(0.5, u)
    }

    /// Signature 4: `c^2 = (℘')^2 / (4 (℘ + 1/3)^3)`.
    pub fn c_squared(&self, u: Complex64) -> Result<Complex64> {
        if u.norm() == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let p = self.wp.value(u)? + 1.0 / 3.0;
        let dp = self.wp.derivative(u)?;
        Ok(0.25 * dp * dp / (p * p * p))
    }

    /// Signature 3: `dn_3 = 1 - (4κ^2/9) / (℘ + 1/3)`.
    pub fn dn3(&self, u: Complex64) -> Result<Complex64> {
        self.shifted_reciprocal_form(4.0 / 9.0, u)
    }
}

pub fn sig4_d_closed(kappa: f64, u: Complex64) -> Result<Complex64> {
    ClosedForms::signature4(kappa)?.d(u)
}

pub fn sig4_c2_closed(kappa: f64, u: Complex64) -> Result<Complex64> {
    ClosedForms::signature4(kappa)?.c_squared(u)
}

pub fn sig3_dn3_closed(kappa: f64, u: Complex64) -> Result<Complex64> {
    ClosedForms::signature3(kappa)?.dn3(u)
}
