//! Trigonometric Rosen-Morse comparator: potential, Cornell expansion,
//! hydrogen-like spectrum and the closed-form charge form factor.

use std::f64::consts::PI;

use crate::eigen::lowest_levels;
use crate::error::{domain, Error, Result};

/// Strength b (dimensionless, b = dG), box scale d (fm), angular number ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMParams {
    pub b: f64,
    pub d: f64,
    pub l: usize,
}

impl RMParams {
    pub fn new(b: f64, d: f64, l: usize) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) || !(d > 0.0 && d.is_finite()) {
            return Err(Error::Invalid(format!("need b > 0 and d > 0, got b = {b}, d = {d}")));
        }
        Ok(Self { b, d, l })
    }

    /// G = b/d.
    pub fn g(&self) -> f64 {
        self.b / self.d
    }

    fn barrier(&self) -> f64 {
        (self.l * (self.l + 1)) as f64
    }
}

/// (1/d²)[ℓ(ℓ+1)csc²(r/d) − 2b cot(r/d)] on 0 < r < πd.
pub fn rmt_potential(r: f64, p: &RMParams) -> Result<f64> {
    if !(r > 0.0 && r < PI * p.d) {
        return domain("rmt_potential", format!("r = {r} outside (0, {})", PI * p.d));
    }
    let x = r / p.d;
    Ok((p.barrier() / x.sin().powi(2) - 2.0 * p.b / x.tan()) / (p.d * p.d))
}

/// Coefficients of r⁻², r⁻¹ and r in the small-r expansion.
pub fn rmt_cornell_coeffs(p: &RMParams) -> (f64, f64, f64) {
    (p.barrier(), -2.0 * p.b / p.d, 2.0 * p.b / (3.0 * p.d.powi(3)))
}

/// −b²/(d²N²) + N²/d² with N = n + ℓ + 1.
pub fn rmt_energy(n: usize, l: usize, p: &RMParams) -> f64 {
    let big_n = (n + l + 1) as f64;
    let d2 = p.d * p.d;
    -p.b * p.b / (d2 * big_n * big_n) + big_n * big_n / d2
}

/// Lowest `k` levels of the discretized potential on (0, πd).
pub fn rmt_levels_fd(p: &RMParams, points: usize, k: usize) -> Vec<f64> {
    let x = *p;
    lowest_levels(0.0, PI * p.d, points, 1.0, move |r| rmt_potential(r, &x).unwrap_or(f64::INFINITY), k)
}

/// (b(b²+1)/(Qd)) arctan(16bdQ / ((Qd)⁴ + 4(2b²−1)(Qd)² + 16b²(b²+1))),
/// equal to 1 at Q = 0.
pub fn rmt_formfactor(q: f64, p: &RMParams) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::Invalid(format!("Q must be finite, got {q}")));
    }
    let x = (q * p.d).abs();
    let b = p.b;
    let c0 = 16.0 * b * b * (b * b + 1.0);
    if x < 1e-8 {
        // arctan(y) = y − y³/3 with y ≈ 16 b x / c0
        let y = 16.0 * b * x / c0;
        return Ok(1.0 - y * y / 3.0 - 4.0 * (2.0 * b * b - 1.0) * x * x / c0);
    }
    let den = x.powi(4) + 4.0 * (2.0 * b * b - 1.0) * x * x + c0;
    Ok(b * (b * b + 1.0) / x * (16.0 * b * x / den).atan())
}

/// Large-Q limit of Q⁴G: 16b²(b²+1)/d⁴.
pub fn rmt_q4_asymptote(p: &RMParams) -> f64 {
    16.0 * p.b * p.b * (p.b * p.b + 1.0) / p.d.powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn potential_examples() {
        let p = RMParams::new(3.0, 2.0, 1).unwrap();
        assert_relative_eq!(rmt_potential(PI, &p).unwrap(), 2.0 / 4.0, epsilon = 1e-14);
        let v = rmt_potential(1.0, &p).unwrap();
        assert_relative_eq!(v, 0.25 * (2.0 / 0.5f64.sin().powi(2) - 6.0 / 0.5f64.tan()), max_relative = 1e-14);
        assert_relative_eq!(v, -0.5704, epsilon = 1e-3);
        assert!(rmt_potential(0.0, &p).is_err());
        assert!(rmt_potential(2.0 * PI, &p).is_err());
    }

    #[test]
    fn cornell_expansion() {
        let p = RMParams::new(2.0, 1.0, 1).unwrap();
        let (c2, c1, c0) = rmt_cornell_coeffs(&p);
        for r in [0.01, 0.03, 0.049] {
            let v = rmt_potential(r, &p).unwrap();
            let s = c2 / (r * r) + c1 / r + c0 * r;
            assert!((v - s).abs() < 1e-3 * v.abs());
        }
        assert_eq!(rmt_cornell_coeffs(&RMParams::new(2.0, 1.0, 0).unwrap()).0, 0.0);
        // d → ∞ at fixed G
        let g = 2.0;
        let lin: Vec<f64> = [1.0, 10.0, 100.0]
            .iter()
            .map(|&d| rmt_cornell_coeffs(&RMParams::new(g * d, d, 0).unwrap()).2)
            .collect();
        assert!(lin[2] < lin[1] && lin[1] < lin[0] && lin[2] < 1e-3);
    }

    #[test]
    fn spectrum() {
        let p = RMParams::new(2.0, 1.0, 0).unwrap();
        assert_relative_eq!(rmt_energy(0, 0, &p), 1.0 - 4.0);
        assert_eq!(rmt_energy(1, 0, &p), rmt_energy(0, 1, &p));
        for l in 0..3 {
            let q = RMParams { l, ..p };
            let levels = rmt_levels_fd(&q, 4096, 3 - l);
            for (n, e) in levels.iter().enumerate() {
                let exact = rmt_energy(n, l, &q);
                assert!((e / exact - 1.0).abs() < 5e-3, "l={l} n={n}: {e} vs {exact}");
            }
        }
        let d = 1e4;
        let g = 0.5;
        let far = RMParams::new(g * d, d, 0).unwrap();
        let e = rmt_energy(1, 0, &far) - 4.0 / (d * d);
        assert_relative_eq!(e / (-g * g / 4.0), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn form_factor() {
        let p = RMParams::new(2.0, 1.0, 0).unwrap();
        assert_eq!(rmt_formfactor(0.0, &p).unwrap(), 1.0);
        assert_relative_eq!(rmt_formfactor(1e-9, &p).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(rmt_formfactor(1e-9, &p).unwrap(), rmt_formfactor(2e-8, &p).unwrap(), epsilon = 1e-12);
        let q: f64 = 100.0;
        let ratio = q.powi(4) * rmt_formfactor(q, &p).unwrap() / rmt_q4_asymptote(&p);
        assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
        let g: Vec<f64> = (0..=600).map(|i| rmt_formfactor(0.01 * i as f64, &p).unwrap()).collect();
        assert!(g.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(rmt_formfactor(2.0, &p).unwrap(), rmt_formfactor(-2.0, &p).unwrap());
    }
}
