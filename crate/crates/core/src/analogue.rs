//! The Jacobi-analogue family built from `F_a`.
//!
//! For modulus `κ`, the amplitude `φ` is the local inverse at the origin of
//! `φ ↦ ∫_0^φ F_a(κ^2 sin^2 θ) dθ`, and `sin ψ = κ sin φ`. From these:
//!
//! ```text
//! s = sin φ    c = cos φ    d = cos ψ
//! ∂ = cos 2aψ  ∇ = ∂^2      δ = d / ∂ = φ'
//! ```
//!
//! Every function is carried as a truncated series in `u`; evaluation is
//! refused outside the disk where the retained tail is negligible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{f_a_series, f_a_value, HypergeomParams};
use crate::quadrature;
use crate::series::{elementary, Elementary, TruncatedSeries};

/// Coefficient magnitude defining the trusted evaluation radius.
pub const RADIUS_TOL: f64 = 1e-14;
/// Upper bound on any trusted radius.
pub const RADIUS_CAP: f64 = 0.5;
/// Smallest order at which the leading behavior of every series is visible.
pub const MIN_ORDER: usize = 4;

/// How `N = 1/a` splits the theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `a = 0`: the Jacobian sn, cn, dn.
    Classical,
    /// `1/a = 2n`.
    Even { n: u32 },
    /// `1/a = n = 2m + 1`.
    Odd { n: u32, m: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModulusParams {
    a: BigRational,
    reciprocal: u32,
    kappa: f64,
    lambda: f64,
    lambda_cap: f64,
}

impl ModulusParams {
    /// `a` must be `0` or `1/N` for a positive integer `N`; `0 < κ < 1`.
    pub fn new(a: BigRational, kappa: f64) -> Result<Self> {
        let reciprocal = if a.is_zero() {
            0
        } else if a.numer().is_one() && a.denom() > &BigInt::zero() {
            a.denom().to_u32().ok_or_else(|| {
                Error::InvalidParameter(format!("a = {a} has too large a denominator"))
            })?
        } else {
            return Err(Error::InvalidParameter(format!(
                "a = {a} must be 0 or the reciprocal of a positive integer"
            )));
        };
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::InvalidParameter("kappa must lie in (0,1)".into()));
        }
        let lambda = (1.0 - kappa * kappa).sqrt();
        Ok(Self {
            a,
            reciprocal,
            kappa,
            lambda,
            lambda_cap: 2.0 * kappa * kappa - 1.0,
        })
    }

    /// `a = 1/N`, or the classical case for `N = 0`.
    pub fn from_reciprocal(reciprocal: u32, kappa: f64) -> Result<Self> {
        let a = if reciprocal == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::one(), BigInt::from(reciprocal))
        };
        Self::new(a, kappa)
    }

    /// Parses `a` from `"p/q"` (or an integer) text, keeping it exact.
    pub fn parse(a: &str, kappa: f64) -> Result<Self> {
        let a: BigRational = a
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot parse a = `{a}` as p/q")))?;
        Self::new(a, kappa)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn a_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(0.0)
    }

    /// `N = 1/a`, zero in the classical case.
    pub fn reciprocal(&self) -> u32 {
        self.reciprocal
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `Λ = 1 - 2λ^2 = 2κ^2 - 1`.
    pub fn lambda_cap(&self) -> f64 {
        self.lambda_cap
    }

    pub fn family(&self) -> Family {
        match self.reciprocal {
            0 => Family::Classical,
            r if r % 2 == 0 => Family::Even { n: r / 2 },
            r => Family::Odd { n: r, m: r / 2 },
        }
    }
}

impl fmt::Display for ModulusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, kappa={}", self.a, self.kappa)
    }
}

/// Names of the stored analogue series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnalogueFn {
    Phi,
    Psi,
    S,
    C,
    D,
    Partial,
    Nabla,
    Delta,
}

impl AnalogueFn {
    pub const ALL: [AnalogueFn; 8] = [
        Self::Phi,
        Self::Psi,
        Self::S,
        Self::C,
        Self::D,
        Self::Partial,
        Self::Nabla,
        Self::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::Psi => "psi",
            Self::S => "s",
            Self::C => "c",
            Self::D => "d",
            Self::Partial => "partial",
            Self::Nabla => "nabla",
            Self::Delta => "delta",
        }
    }
}

impl fmt::Display for AnalogueFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnalogueFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "function",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone)]
pub struct AnalogueSet {
    params: ModulusParams,
    phi: TruncatedSeries,
    psi: TruncatedSeries,
    s: TruncatedSeries,
    c: TruncatedSeries,
    d: TruncatedSeries,
    partial: TruncatedSeries,
    nabla: TruncatedSeries,
    delta: TruncatedSeries,
}

impl AnalogueSet {
    /// Integrates `F_a(κ^2 sin^2 θ)` termwise, reverts the result to get `φ`,
    /// and derives the rest of the family by composition.
    pub fn build(params: &ModulusParams, order: usize) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {order} is below the minimum {MIN_ORDER}"
            )));
        }
        let a = params.a_f64();
        let kappa = params.kappa();
        let hyper = HypergeomParams {
            a,
            series_order: order,
            tol: 1e-17,
        };

        let sin = elementary(Elementary::Sin, order);
        let cos = elementary(Elementary::Cos, order);
        let arcsin = elementary(Elementary::Arcsin, order);

        let arg = sin.square().scale_real(kappa * kappa);
        let integrand = f_a_series(&hyper, order).compose(&arg)?;
        let u_of_phi = integrand.integrate().truncate(order);
        let phi = u_of_phi.revert()?;

        let s = sin.compose(&phi)?;
        let c = cos.compose(&phi)?;
        let psi = arcsin.compose(&s.scale_real(kappa))?;
        let d = cos.compose(&psi)?;
        let partial = cos.compose(&psi.scale_real(2.0 * a))?;
        let nabla = partial.square();
        let delta = d.div(&partial)?;

        Ok(Self {
            params: params.clone(),
            phi,
            psi,
            s,
            c,
            d,
            partial,
            nabla,
            delta,
        })
    }

    pub fn params(&self) -> &ModulusParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.phi.order()
    }

    pub fn get(&self, which: AnalogueFn) -> &TruncatedSeries {
        match which {
            AnalogueFn::Phi => &self.phi,
            AnalogueFn::Psi => &self.psi,
            AnalogueFn::S => &self.s,
            AnalogueFn::C => &self.c,
            AnalogueFn::D => &self.d,
            AnalogueFn::Partial => &self.partial,
            AnalogueFn::Nabla => &self.nabla,
            AnalogueFn::Delta => &self.delta,
        }
    }

    pub fn phi(&self) -> &TruncatedSeries {
        &self.phi
    }
    pub fn psi(&self) -> &TruncatedSeries {
        &self.psi
    }
    pub fn s(&self) -> &TruncatedSeries {
        &self.s
    }
    pub fn c(&self) -> &TruncatedSeries {
        &self.c
    }
    pub fn d(&self) -> &TruncatedSeries {
        &self.d
    }
    pub fn partial(&self) -> &TruncatedSeries {
        &self.partial
    }
    pub fn nabla(&self) -> &TruncatedSeries {
        &self.nabla
    }
    pub fn delta(&self) -> &TruncatedSeries {
        &self.delta
    }

    /// `D = d^2`, `C = c^2`, `S = s^2` and friends, formed on demand.
    pub fn square(&self, which: AnalogueFn) -> TruncatedSeries {
        self.get(which).square()
    }

    pub fn trusted_radius(&self, which: AnalogueFn) -> f64 {
        self.get(which).trusted_radius(RADIUS_TOL, RADIUS_CAP)
    }

    /// Radius inside which every stored series may be evaluated.
    pub fn shared_radius(&self) -> f64 {
        AnalogueFn::ALL
            .iter()
            .map(|&f| self.trusted_radius(f))
            .fold(RADIUS_CAP, f64::min)
    }

    pub fn eval(&self, which: AnalogueFn, u: Complex64) -> Result<Complex64> {
        let trusted = self.trusted_radius(which);
        if u.norm() > trusted {
            return Err(Error::BeyondRadius {
                radius_requested: u.norm(),
                trusted,
            });
        }
        Ok(self.get(which).eval(u))
    }
}

/// Amplitude by direct inversion of the integral: Newton on
/// `G(φ) = ∫_0^φ F_a(κ^2 sin^2 θ) dθ - u` with `G'(φ) = F_a(κ^2 sin^2 φ)`,
/// the integral taken by 64-node Gauss–Legendre refined once by halving.
/// Uses neither the series engine nor the reversion.
pub fn phi_oracle(params: &ModulusParams, u: f64) -> Result<f64> {
    const MAX_STEPS: usize = 50;
    let hyper = HypergeomParams {
        a: params.a_f64(),
        series_order: 0,
        tol: 1e-17,
    };
    let k2 = params.kappa() * params.kappa();
    let integrand = |theta: f64| -> Result<f64> {
        let z = k2 * theta.sin().powi(2);
        Ok(f_a_value(&hyper, Complex64::new(z, 0.0))?.re)
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut phi = u;
    for _ in 0..MAX_STEPS {
        if phi.abs() >= half_pi || !phi.is_finite() {
            return Err(Error::NewtonFailure(format!(
                "amplitude {phi} left (-pi/2, pi/2)"
            )));
        }
        let f = |theta: f64| integrand(theta).unwrap_or(f64::NAN);
        let (value, _err) = quadrature::integrate_refined(&f, 0.0, phi);
        let slope = integrand(phi)?;
        if !value.is_finite() {
            return Err(Error::NewtonFailure(format!(
                "quadrature failed on [0, {phi}]"
            )));
        }
        let step = (value - u) / slope;
        phi -= step;
        if step.abs() <= 1e-15 * phi.abs() || step == 0.0 {
            return Ok(phi);
        }
    }
    Err(Error::NewtonFailure(format!(
        "no convergence in {MAX_STEPS} steps at u = {u}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, kappa: f64) -> ModulusParams {
        ModulusParams::from_reciprocal(n, kappa).unwrap()
    }

    #[test]
    fn parameter_validation() {
        let p = ModulusParams::parse("1/6", 0.8).unwrap();
        assert_eq!(p.reciprocal(), 6);
        assert_eq!(p.family(), Family::Even { n: 3 });
        assert!((p.lambda() - 0.6).abs() < 1e-15);
        assert!((p.lambda_cap() - (1.0 - 2.0 * 0.36)).abs() < 1e-15);
        assert_eq!(params(5, 0.3).family(), Family::Odd { n: 5, m: 2 });
        assert_eq!(params(0, 0.3).family(), Family::Classical);
        assert!(ModulusParams::parse("2/6", 0.5).is_ok());
        assert!(ModulusParams::parse("2/3", 0.5).is_err());
        assert!(ModulusParams::parse("-1/3", 0.5).is_err());
        assert!(ModulusParams::parse("abc", 0.5).is_err());
        let err = ModulusParams::parse("1/4", 1.5).unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid parameter: kappa must lie in (0,1)"
        );
        assert!(ModulusParams::parse("1/4", 0.0).is_err());
        assert!(ModulusParams::parse("1/4", f64::NAN).is_err());
    }

    #[test]
    fn build_rejects_small_order() {
        assert!(AnalogueSet::build(&params(4, 0.5), 3).is_err());
        assert!(AnalogueSet::build(&params(4, 0.5), 4).is_ok());
    }

    #[test]
    fn values_at_origin() {
        let set = AnalogueSet::build(&params(6, 0.8), 16).unwrap();
        let at0 = |f| set.get(f).coeff(0).re;
        assert_eq!(at0(AnalogueFn::Phi), 0.0);
        assert!((set.phi().coeff(1).re - 1.0).abs() < 1e-15);
        assert_eq!(at0(AnalogueFn::Psi), 0.0);
        assert_eq!(at0(AnalogueFn::S), 0.0);
        for f in [
            AnalogueFn::C,
            AnalogueFn::D,
            AnalogueFn::Partial,
            AnalogueFn::Nabla,
            AnalogueFn::Delta,
        ] {
            assert!((at0(f) - 1.0).abs() < 1e-15, "{f}");
        }
        assert_eq!(set.d().coeff(1).re, 0.0);
    }

    #[test]
    fn cubic_term_of_amplitude() {
        // φ = u - (1 - 4a^2) κ^2 u^3 / 6 + O(u^5)
        for n in [0, 3, 4, 6, 8] {
            let p = params(n, 0.7);
            let a = p.a_f64();
            let set = AnalogueSet::build(&p, 12).unwrap();
            let expect = -(1.0 - 4.0 * a * a) * 0.49 / 6.0;
            assert!((set.phi().coeff(3).re - expect).abs() < 1e-15);
            assert_eq!(set.phi().coeff(2).re, 0.0);
        }
    }

    #[test]
    fn classical_dn_series() {
        // dn(u) = 1 - k^2 u^2/2 + k^2 (4 + k^2) u^4 / 24 - ...
        let k: f64 = 0.8;
        let set = AnalogueSet::build(&params(0, k), 12).unwrap();
        let d = set.d();
        assert!((d.coeff(2).re + k * k / 2.0).abs() < 1e-15);
        assert!((d.coeff(4).re - k * k * (4.0 + k * k) / 24.0).abs() < 1e-15);
        let k2 = k * k;
        let c6 = -k2 * (16.0 + 44.0 * k2 + k2 * k2) / 720.0;
        assert!((d.coeff(6).re - c6).abs() < 1e-14);
    }

    #[test]
    fn delta_is_amplitude_derivative() {
        let set = AnalogueSet::build(&params(6, 0.8), 32).unwrap();
        let diff = set.phi().diff().sub(set.delta());
        assert!(diff.max_abs() < 1e-13, "{}", diff.max_abs());
    }

    #[test]
    fn eval_refuses_beyond_radius() {
        let set = AnalogueSet::build(&params(4, 0.8), 32).unwrap();
        let r = set.trusted_radius(AnalogueFn::D);
        assert!(r > 0.0 && r <= RADIUS_CAP);
        assert_eq!(
            set.eval(AnalogueFn::D, Complex64::new(0.0, 0.0))
                .unwrap()
                .re,
            1.0
        );
        assert!(matches!(
            set.eval(AnalogueFn::D, Complex64::new(r * 1.01, 0.0)),
            Err(Error::BeyondRadius { .. })
        ));
        let u = Complex64::new(0.2, 0.1);
        let s = set.eval(AnalogueFn::S, u).unwrap();
        let c = set.eval(AnalogueFn::C, u).unwrap();
        assert!((s * s + c * c - 1.0).norm() < 1e-10);
    }

    #[test]
    fn oracle_basics() {
        assert_eq!(phi_oracle(&params(6, 0.8), 0.0).unwrap(), 0.0);
        let p = params(4, 0.8);
        let set = AnalogueSet::build(&p, 32).unwrap();
        for u in [-0.2, 0.1, 0.15] {
            let oracle = phi_oracle(&p, u).unwrap();
            let series = set
                .eval(AnalogueFn::Phi, Complex64::new(u, 0.0))
                .unwrap()
                .re;
            assert!((oracle - series).abs() < 1e-12, "u = {u}");
        }
        assert!(phi_oracle(&params(4, 0.8), 50.0).is_err());
    }

    #[test]
    fn function_names_round_trip() {
        for f in AnalogueFn::ALL {
            assert_eq!(f.name().parse::<AnalogueFn>().unwrap(), f);
        }
        assert!("sn".parse::<AnalogueFn>().is_err());
    }
}
