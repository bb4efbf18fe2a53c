//! Exact rational polynomials and the Chebyshev families built on them.
//!
//! Coefficients are arbitrary-precision rationals stored lowest degree
//! first; the coefficient vector never carries trailing zeros, so the zero
//! polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + to_f64(c))
    }

    /// Evaluates the polynomial on a truncated series (Horner in the series
    /// ring), so `T_n(∂)` is formed without any composition constraint.
    pub fn eval_series(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let order = s.order();
        self.coeffs
            .iter()
            .rev()
            .fold(TruncatedSeries::zero(order), |acc, c| {
                acc.mul(s).add_constant(Complex64::new(to_f64(c), 0.0))
            })
    }

    /// Returns `S` with `self(x) = S(x^2)`, or `None` if an odd power of `x`
    /// survives.
    pub fn even_part_in_square(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: Self) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: Self) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: Self) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs the shared three-term recurrence `P_{k+1} = 2x P_k - P_{k-1}`.
fn three_term(p0: RationalPoly, p1: RationalPoly, index: u32) -> RationalPoly {
    if index == 0 {
        return p0;
    }
    let two_x = RationalPoly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..index {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind, `T_n(cos θ) = cos nθ`.
pub fn cheb_t(n: u32) -> RationalPoly {
    three_term(RationalPoly::one(), RationalPoly::x(), n)
}

/// Chebyshev polynomial of the third kind, `V_0 = 1`, `V_1 = 2x - 1`.
pub fn cheb_v(m: u32) -> RationalPoly {
    three_term(RationalPoly::one(), RationalPoly::from_ints(&[-1, 2]), m)
}

/// The degree-`n` polynomial `S_n` with `T_n(x)^2 = S_n(x^2)`.
pub fn s_n_poly(n: u32) -> Result<RationalPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("S_n needs n >= 1".into()));
    }
    cheb_t(n)
        .pow(2)
        .even_part_in_square()
        .ok_or_else(|| Error::Internal(format!("T_{n}^2 has an odd power of x")))
}

/// `2x^2 - 1`, i.e. `T_2`.
pub fn double_angle() -> RationalPoly {
    RationalPoly::from_ints(&[-1, 0, 2])
}

/// Whether `T_{2m+1}(x) = x · V_m(2x^2 - 1)` holds exactly.
pub fn odd_factorization_check(m: u32) -> bool {
    let rhs = &RationalPoly::x() * &cheb_v(m).compose(&double_angle());
    cheb_t(2 * m + 1) == rhs
}

/// `q(z) = z (z - 1)^2 V_m(2z - 1)^2`.
pub fn q_poly(m: u32) -> RationalPoly {
    let z = RationalPoly::x();
    let z_minus_one = RationalPoly::from_ints(&[-1, 1]);
    let v = cheb_v(m).compose(&RationalPoly::from_ints(&[-1, 2]));
    &(&z * &z_minus_one.pow(2)) * &v.pow(2)
}

/// Discriminant of a cubic `a x^3 + b x^2 + c x + d`:
/// `18abcd - 4b^3 d + b^2 c^2 - 4a c^3 - 27 a^2 d^2`.
pub fn cubic_discriminant(cubic: &RationalPoly) -> Result<BigRational> {
    if cubic.degree() != Some(3) {
        return Err(Error::NotCubic(cubic.degree().map_or(-1, |d| d as i64)));
    }
    let (a, b, c, d) = (
        cubic.coeff(3),
        cubic.coeff(2),
        cubic.coeff(1),
        cubic.coeff(0),
    );
    Ok(
        int(18) * &a * &b * &c * &d - int(4) * &b * &b * &b * &d + &b * &b * &c * &c
            - int(4) * &a * &c * &c * &c
            - int(27) * &a * &a * &d * &d,
    )
}
