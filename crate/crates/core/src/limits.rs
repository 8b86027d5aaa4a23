//! Contraction limits R → ∞ connecting the hyperbolic model to the flat
//! oscillator, and a finite-difference Schrödinger residual used to
//! certify exact solutions.
//!
//! Flat comparisons are made at fixed ζ with ρ = ζ/R.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::formfactor::shapiro;
use crate::hyperbolic::{ptii_energy, ptii_raw, PTIIConfig, SConvention};
use crate::lfh::{lfh_value, Branch, ModelParams};
use crate::specfun::{hyp_terminating, HypKind};
use crate::wave::{l2, second_derivative_interior, trapezoid, uniform_step, SampledWavefunction};

/// ‖(−d²/dr² + V − E)ψ‖ / ‖ψ‖ over interior points, with the five-point
/// second derivative and r the grid coordinate.
pub fn schrodinger_residual<V: Fn(f64) -> f64>(potential: V, energy: f64, psi: &SampledWavefunction) -> Result<f64> {
    let n = psi.len();
    if n < 68 {
        return Err(Error::GridTooSmall { needed: 68, got: n });
    }
    let h = uniform_step(&psi.grid)?;
    let d2 = second_derivative_interior(&psi.values, h)?;
    let res: Vec<f64> = (2..n - 2)
        .map(|i| -d2[i - 2] + (potential(psi.grid[i]) - energy) * psi.values[i])
        .collect();
    Ok(l2(&res) / l2(&psi.values[2..n - 2]))
}

/// |eps_higgs + 2κ²(m+1) − 4κ²(n+m+1)| with s derived from (κ, R).
pub fn energy_contraction_error(n: usize, m: usize, p: &ModelParams) -> Result<f64> {
    let cfg = PTIIConfig::derived(m, *p)?;
    let (_, higgs) = ptii_energy(n, &cfg)?;
    let k2 = p.kappa * p.kappa;
    Ok((higgs + 2.0 * k2 * (m as f64 + 1.0) - 4.0 * k2 * (n + m + 1) as f64).abs())
}

/// Pointwise and L² comparison of the flat and hyperbolic states.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionComparison {
    /// L² distance (dζ) between the two unit-normalized curves.
    pub l2_distance: f64,
    /// Max |difference| of the unit-peak curves on ζ ≤ `peak_window`.
    pub max_unit_peak_diff: f64,
    pub peak_window: f64,
    pub peak_lfh: f64,
    pub peak_ptii: f64,
}

/// Flat Ψ₊^{n,m}(ζ) and the Schrödinger-form PTII state at ρ = ζ/R, both
/// sampled on `zeta_grid`.
pub fn contraction_pair(
    n: usize,
    m: usize,
    p: &ModelParams,
    convention: SConvention,
    zeta_grid: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let cfg = PTIIConfig::new(m, *p, convention)?;
    ptii_energy(n, &cfg)?;
    let flat = zeta_grid
        .iter()
        .map(|&z| lfh_value(Branch::Plus, n, m, p, z))
        .collect::<Result<Vec<_>>>()?;
    let curved = zeta_grid
        .iter()
        .map(|&z| ptii_raw(n, &cfg, z / p.r))
        .collect::<Result<Vec<_>>>()?;
    Ok((flat, curved))
}

fn unit_peak(v: &[f64]) -> Vec<f64> {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    v.iter().map(|x| x / peak).collect()
}

fn unit_l2(grid: &[f64], v: &[f64]) -> Vec<f64> {
    let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    let n = trapezoid(grid, &sq).sqrt();
    v.iter().map(|x| x / n).collect()
}

fn argmax(grid: &[f64], v: &[f64]) -> f64 {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    grid[best]
}

/// Compares the flat and hyperbolic states of equal (n, ν = m) on a ζ grid
/// inside (0, 3 fm].
pub fn wavefunction_contraction_error(
    n: usize,
    m: usize,
    p: &ModelParams,
    convention: SConvention,
    zeta_grid: &[f64],
) -> Result<WavefunctionComparison> {
    if zeta_grid.len() < 2 || zeta_grid[0] < 0.0 || zeta_grid[zeta_grid.len() - 1] > 3.0 + 1e-12 {
        return Err(Error::Invalid("zeta grid must lie within [0, 3] fm".into()));
    }
    let (flat, curved) = contraction_pair(n, m, p, convention, zeta_grid)?;
    let a = unit_l2(zeta_grid, &flat);
    let b = unit_l2(zeta_grid, &curved);
    let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).collect();
    let l2_distance = trapezoid(zeta_grid, &d).sqrt();
    let window = 1.5;
    let ua = unit_peak(&flat);
    let ub = unit_peak(&curved);
    let max_unit_peak_diff = zeta_grid
        .iter()
        .zip(ua.iter().zip(&ub))
        .filter(|(z, _)| **z <= window)
        .map(|(_, (x, y))| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(WavefunctionComparison {
        l2_distance,
        max_unit_peak_diff,
        peak_window: window,
        peak_lfh: argmax(zeta_grid, &flat),
        peak_ptii: argmax(zeta_grid, &curved),
    })
}

/// sup over ζ ∈ [0, 2/κ] of |cosh^{−s}(ζ/R) − exp(−κ²ζ²/2)|, s derived.
pub fn cosh_gaussian_gap(p: &ModelParams, samples: usize) -> f64 {
    let s = p.s_derived();
    let k2 = p.kappa * p.kappa;
    (0..=samples)
        .map(|i| {
            let z = 2.0 / p.kappa * i as f64 / samples as f64;
            ((-s * (z / p.r).cosh().ln()).exp() - (-0.5 * k2 * z * z).exp()).abs()
        })
        .fold(0.0, f64::max)
}

/// Energy and wavefunction contraction errors over a sequence of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub r_values: Vec<f64>,
    pub energy_errors: Vec<f64>,
    pub wavefunction_l2_errors: Vec<f64>,
    /// Exponent p in error ∝ R^{−p}, least squares in log-log.
    pub fitted_rate: f64,
    /// Intercept of the linear fit error ≈ c₀ + c₁/R².
    pub intercept: f64,
}

fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Runs both contraction measures for each R (s derived from (κ, R)).
pub fn contraction_report(n: usize, m: usize, kappa: f64, r_values: &[f64], zeta_grid: &[f64]) -> Result<ContractionReport> {
    if r_values.len() < 2 {
        return Err(Error::Invalid("need at least two radii".into()));
    }
    let mut energy_errors = Vec::with_capacity(r_values.len());
    let mut wavefunction_l2_errors = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let p = ModelParams::new(kappa, r)?;
        energy_errors.push(energy_contraction_error(n, m, &p)?);
        wavefunction_l2_errors.push(wavefunction_contraction_error(n, m, &p, SConvention::Derived, zeta_grid)?.l2_distance);
    }
    let lx: Vec<f64> = r_values.iter().map(|r| r.ln()).collect();
    let ly: Vec<f64> = energy_errors.iter().map(|e| e.ln()).collect();
    let (_, slope) = fit_line(&lx, &ly);
    let inv: Vec<f64> = r_values.iter().map(|r| 1.0 / (r * r)).collect();
    let (intercept, _) = fit_line(&inv, &energy_errors);
    Ok(ContractionReport {
        r_values: r_values.to_vec(),
        energy_errors,
        wavefunction_l2_errors,
        fitted_rate: -slope,
        intercept,
    })
}

/// sup over `rho_grid` of |₂F₁(−n, −s+n+1; m+1; −sinh²ρ) − ₁F₁(−n; m+1; s sinh²ρ)|.
pub fn hypergeom_limit_error(n: usize, m: usize, s: f64, rho_grid: &[f64]) -> Result<f64> {
    if !(s > (n + m + 1) as f64) {
        return Err(Error::Invalid(format!("need s > n + m + 1, got s = {s}")));
    }
    let c = m as f64 + 1.0;
    let b = -s + n as f64 + 1.0;
    let mut worst = 0.0f64;
    for &rho in rho_grid {
        let sh2 = rho.sinh().powi(2);
        let two = hyp_terminating(n, b, c, -sh2, HypKind::TwoF1)?;
        let one = hyp_terminating(n, 0.0, c, s * sh2, HypKind::OneF1)?;
        worst = worst.max((two - one).abs());
    }
    Ok(worst)
}

/// The ρ at which s sinh²ρ equals `x` (fixed κ²ζ² with s ≈ κ²R²).
pub fn rho_at_fixed_flat_argument(s: f64, x: f64) -> f64 {
    (x / s).sqrt().asinh()
}

/// Fitted exponent p in error ∝ s^{−p} between two values of s at fixed
/// κ²ζ² = `x`.
pub fn hypergeom_limit_rate(n: usize, m: usize, s_lo: f64, s_hi: f64, x: f64) -> Result<f64> {
    let lo = hypergeom_limit_error(n, m, s_lo, &[rho_at_fixed_flat_argument(s_lo, x)])?;
    let hi = hypergeom_limit_error(n, m, s_hi, &[rho_at_fixed_flat_argument(s_hi, x)])?;
    Ok((lo / hi).ln() / (s_hi / s_lo).ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapiroLimitReport {
    pub r_values: Vec<f64>,
    /// |Φ(ρ = ζ/R) − e^{i p ζ cos φ}|.
    pub differences: Vec<f64>,
    /// Successive ratios difference(R_k)/difference(R_{k+1}).
    pub ratios: Vec<f64>,
}

/// Follows the Shapiro function at fixed (ζ, φ) and momentum p as R grows.
pub fn shapiro_limit_check(p: f64, phi: f64, r_sequence: &[f64], zeta: f64) -> ShapiroLimitReport {
    let plane = Complex64::from_polar(1.0, p * zeta * phi.cos());
    let differences: Vec<f64> = r_sequence
        .iter()
        .map(|&r| (shapiro(zeta / r, phi, p, r) - plane).norm())
        .collect();
    let ratios = differences.windows(2).map(|w| w[0] / w[1]).collect();
    ShapiroLimitReport {
        r_values: r_sequence.to_vec(),
        differences,
        ratios,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{eckart_potential, eckart_solution, ptii_potential, ptii_wavefunction, WaveForm};
    use crate::lfh::{lfh_energy_sq, lfh_potential, lfh_wavefunction};
    use crate::wave::{linspace, Measure};
    use approx::assert_relative_eq;

    #[test]
    fn residual_examples() {
        let p = ModelParams::new(2.14, 0.728).unwrap();
        let grid = linspace(0.05, 12.0 / 2.14, 4000);
        let psi = lfh_wavefunction(Branch::Plus, 0, 1, &p, &grid).unwrap();
        let v = |z: f64| lfh_potential(Branch::Plus, z, 1, &p).unwrap();
        let e = lfh_energy_sq(0, 1, &p);
        assert!(schrodinger_residual(v, e, &psi).unwrap() < 1e-5);
        let off = schrodinger_residual(v, e + p.kappa * p.kappa, &psi).unwrap();
        assert_relative_eq!(off, p.kappa * p.kappa, max_relative = 1e-4);

        let x = linspace(0.0, 3.0, 2000);
        let s = SampledWavefunction::new(x.clone(), x.iter().map(|r| (2.0 * r).sin()).collect(), Measure::FlatDzeta).unwrap();
        assert!(schrodinger_residual(|_| 0.0, 4.0, &s).unwrap() < 1e-6);

        let short = SampledWavefunction::new(linspace(0.0, 1.0, 20), vec![0.0; 20], Measure::FlatDzeta).unwrap();
        assert!(matches!(schrodinger_residual(|_| 0.0, 0.0, &short), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn residual_certifies_eckart_and_ptii() {
        let r = 0.728;
        let grid = linspace(0.2, 3.0, 4000);
        let (e, _) = eckart_solution(0, 1, 1.0, r).unwrap();
        let vals: Vec<f64> = grid.iter().map(|&rho| eckart_solution(0, 1, rho, r).unwrap().1).collect();
        // in ζ = Rρ the kinetic term carries the 1/R²
        let zeta: Vec<f64> = grid.iter().map(|g| g * r).collect();
        let u = SampledWavefunction::new(zeta, vals, Measure::HyperbolicDrho).unwrap();
        let res = schrodinger_residual(|z| eckart_potential(z / r, 1, r), e, &u).unwrap();
        assert!(res < 1e-5, "{res}");

        let p = ModelParams::new(2.14, r).unwrap();
        let cfg = PTIIConfig::new(1, p, SConvention::Override(10.6)).unwrap();
        let rho = linspace(0.01, 8.0, 8000);
        for n in 0..3 {
            let w = ptii_wavefunction(n, &cfg, &rho, WaveForm::Schrodinger).unwrap();
            let z: Vec<f64> = rho.iter().map(|g| g * r).collect();
            let w = SampledWavefunction::new(z, w.values, Measure::HyperbolicDrho).unwrap();
            let e = ptii_energy(n, &cfg).unwrap().1;
            let res = schrodinger_residual(|z| ptii_potential(z / r, &cfg).unwrap(), e, &w).unwrap();
            assert!(res / e < 1e-4, "n={n}: {res}");
        }
    }

    #[test]
    fn energy_contraction_rate() {
        let err = |r: f64| energy_contraction_error(0, 1, &ModelParams::new(1.0, r).unwrap()).unwrap();
        let ratio = err(20.0) / err(40.0);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        let seq: Vec<f64> = [10.0, 20.0, 40.0, 80.0].iter().map(|&r| err(r)).collect();
        assert!(seq.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn report_fit() {
        let zeta = linspace(0.0, 3.0, 601);
        let r = contraction_report(0, 1, 1.0, &[5.0, 10.0, 20.0, 40.0, 80.0], &zeta).unwrap();
        assert!((1.8..=2.2).contains(&r.fitted_rate), "{}", r.fitted_rate);
        assert!(r.intercept.abs() < 1e-3);
        assert!(r.wavefunction_l2_errors.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn cosh_gaussian() {
        let p = ModelParams::new(1.0, 50f64.sqrt()).unwrap();
        assert!(cosh_gaussian_gap(&p, 2000) < 0.01);
        let near = ModelParams::new(1.0, 2.0).unwrap();
        assert!(cosh_gaussian_gap(&near, 2000) > cosh_gaussian_gap(&p, 2000));
    }

    #[test]
    fn hypergeometric_limit() {
        assert_eq!(hypergeom_limit_error(0, 1, 50.0, &[0.1, 0.2]).unwrap(), 0.0);
        let rate = hypergeom_limit_rate(1, 1, 100.0, 1000.0, 1.0).unwrap();
        assert!((0.8..=1.2).contains(&rate), "{rate}");
        assert!(hypergeom_limit_error(2, 1, 3.0, &[0.1]).is_err());
    }

    #[test]
    fn shapiro_limit() {
        let rep = shapiro_limit_check(2.0, 0.4, &[10.0, 20.0, 40.0, 80.0], 1.0);
        assert!(rep.differences.windows(2).all(|w| w[1] < w[0]));
        for r in &rep.ratios {
            assert!((1.7..=2.3).contains(r), "{r}");
        }
        assert!((shapiro(0.0, 1.0, 3.0, 2.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
