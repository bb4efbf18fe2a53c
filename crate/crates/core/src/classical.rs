//! Classical Jacobi functions by the arithmetic-geometric mean, for real
//! argument. Independent of the series machinery; used to anchor the
//! `a = 0` analogues to `sn`, `cn`, `dn` and the amplitude `am`.

/// `(sn, cn, dn, am)` of `u` for modulus `k`, `0 ≤ k < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub am: f64,
}

/// Descending Landen/AGM scheme: run `a_{j+1} = (a_j + b_j)/2`,
/// `b_{j+1} = sqrt(a_j b_j)`, `c_{j+1} = (a_j - b_j)/2` from `(1, k', k)`
/// until `c` vanishes, set `φ_N = 2^N a_N u`, then descend with
/// `φ_{j-1} = (φ_j + asin(c_j sin φ_j / a_j)) / 2`.
pub fn jacobi(u: f64, k: f64) -> Jacobi {
    assert!((0.0..1.0).contains(&k), "modulus must lie in [0, 1)");
    let mut a = vec![1.0f64];
    let mut c = vec![k];
    let mut b = (1.0 - k * k).sqrt();
    while c.last().copied().unwrap_or(0.0).abs() > f64::EPSILON && a.len() < 32 {
        let (aj, bj) = (*a.last().unwrap(), b);
        a.push(0.5 * (aj + bj));
        c.push(0.5 * (aj - bj));
        b = (aj * bj).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] * phi.sin() / a[j]).asin());
    }
    let (sn, cn) = phi.sin_cos();
    Jacobi {
        sn,
        cn,
        dn: (1.0 - k * k * sn * sn).sqrt(),
        am: phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_modulus_is_circular() {
        let j = jacobi(0.7, 0.0);
        assert!((j.sn - 0.7f64.sin()).abs() < 1e-15);
        assert!((j.cn - 0.7f64.cos()).abs() < 1e-15);
        assert_eq!(j.dn, 1.0);
    }

    #[test]
    fn reference_values() {
        // m = 0.64, values from scipy.special.ellipj
        let j = jacobi(0.5, 0.8);
        assert!((j.sn - 0.468_328_835_388_214_57).abs() < 1e-15, "{}", j.sn);
        assert!((j.dn - 0.927_161_035_227_488_4).abs() < 1e-15);
        assert!((jacobi(0.3, 0.8).am - 0.297_178_924_269_167_7).abs() < 1e-15);
        assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_of_amplitude_is_dn() {
        let (u, k, h) = (0.4, 0.6, 1e-5);
        let fd = (jacobi(u + h, k).am - jacobi(u - h, k).am) / (2.0 * h);
        assert!((fd - jacobi(u, k).dn).abs() < 1e-9);
    }
}
