//! The hyperbolic plane H²₊R: embedding, the Eckart reduction of free
//! motion, and the Higgs oscillator as a Pöschl-Teller II problem.

use crate::eigen::lowest_levels;
use crate::error::{domain, Error, Result};
use crate::lfh::ModelParams;
use crate::quad::{integrate, QuadratureSpec};
use crate::specfun::{assoc_legendre_hyp, hyp_terminating, ln_gamma, HypKind};
use crate::wave::{Measure, SampledWavefunction};

/// Point on the upper sheet x₁² + x₂² − x₀² = −R².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl EmbeddedPoint {
    /// |x₁² + x₂² − x₀² + R²| / R².
    pub fn constraint_residual(&self, r: f64) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 - self.x0 * self.x0 + r * r).abs() / (r * r)
    }
}

/// (R cosh ρ, R sinh ρ cos φ, R sinh ρ sin φ).
pub fn embed(rho: f64, phi: f64, r: f64) -> EmbeddedPoint {
    let sh = rho.sinh();
    EmbeddedPoint {
        x0: r * rho.cosh(),
        x1: r * sh * phi.cos(),
        x2: r * sh * phi.sin(),
    }
}

/// Eckart potential [(m² − 1/4)/sinh²ρ + 1/4]/R², whose levels are the
/// so(1,2) values −ℓ(ℓ+1)/R².
pub fn eckart_potential(rho: f64, m: usize, r: f64) -> f64 {
    let a = m as f64 + 0.5;
    (a * (a - 1.0) / rho.sinh().powi(2) + 0.25) / (r * r)
}

/// (E = −ℓ(ℓ+1)/R², U = sinh^{1/2}ρ · P_ℓ^m(cosh ρ)) with ℓ = m + n.
pub fn eckart_solution(n: usize, m: usize, rho: f64, r: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return domain("eckart_solution", format!("rho must be > 0, got {rho}"));
    }
    let l = m + n;
    let energy = -((l * (l + 1)) as f64) / (r * r);
    let value = rho.sinh().sqrt() * assoc_legendre_hyp(l, m, rho.cosh())?;
    Ok((energy, value))
}

/// κ⁴R² tanh²ρ.
pub fn higgs_potential(rho: f64, p: &ModelParams) -> f64 {
    p.kappa4_r2() * rho.tanh().powi(2)
}

/// How s was chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SConvention {
    /// s = sqrt(κ⁴R⁴ + 1/4).
    Derived,
    /// s set directly.
    Override(f64),
}

impl SConvention {
    pub fn label(&self) -> &'static str {
        match self {
            SConvention::Derived => "derived",
            SConvention::Override(_) => "override",
        }
    }
}

/// Sign choice for a: m + 1/2 (regular) or −m + 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ABranch {
    Regular,
    Inverted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTIIConfig {
    pub a: f64,
    pub lambda: f64,
    pub s: f64,
    pub m: usize,
    pub params: ModelParams,
    pub branch: ABranch,
    pub convention: SConvention,
}

impl PTIIConfig {
    pub fn new(m: usize, params: ModelParams, convention: SConvention) -> Result<Self> {
        let s = match convention {
            SConvention::Derived => params.s_derived(),
            SConvention::Override(s) => s,
        };
        if !(s > 0.5 && s.is_finite()) {
            return Err(Error::Invalid(format!("s must be > 1/2, got {s}")));
        }
        Ok(Self {
            a: m as f64 + 0.5,
            lambda: -0.5 - s,
            s,
            m,
            params,
            branch: ABranch::Regular,
            convention,
        })
    }

    pub fn derived(m: usize, params: ModelParams) -> Result<Self> {
        Self::new(m, params, SConvention::Derived)
    }

    /// Same configuration on the a = −m + 1/2 branch (same a(a−1)).
    pub fn inverted(mut self) -> Self {
        self.a = 0.5 - self.m as f64;
        self.branch = ABranch::Inverted;
        self
    }

    /// λ(λ + 1) = s² − 1/4.
    pub fn well_depth(&self) -> f64 {
        self.lambda * (self.lambda + 1.0)
    }

    /// Upper bound (s − m − 1)/2 on bound n.
    pub fn bound_limit(&self) -> f64 {
        (self.s - self.m as f64 - 1.0) / 2.0
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        if (n as f64) < self.bound_limit() {
            Ok(())
        } else {
            Err(Error::UnboundState {
                n,
                count: bound_state_count(self),
                limit: self.bound_limit(),
            })
        }
    }
}

/// Dimensionless PTII well a(a−1)/sinh²ρ − λ(λ+1)/cosh²ρ.
pub fn ptii_well(rho: f64, cfg: &PTIIConfig) -> f64 {
    cfg.a * (cfg.a - 1.0) / rho.sinh().powi(2) - cfg.well_depth() / rho.cosh().powi(2)
}

/// (1/R²)[a(a−1)/sinh²ρ − λ(λ+1)/cosh²ρ] + κ⁴R² + 1/(4R²).
pub fn ptii_potential(rho: f64, cfg: &PTIIConfig) -> Result<f64> {
    if !(rho > 0.0) {
        return domain("ptii_potential", format!("rho must be > 0, got {rho}"));
    }
    let r2 = cfg.params.r * cfg.params.r;
    Ok(ptii_well(rho, cfg) / r2 + cfg.params.kappa4_r2() + 0.25 / r2)
}

/// (eps_ptii, eps_higgs) for level n.
pub fn ptii_energy(n: usize, cfg: &PTIIConfig) -> Result<(f64, f64)> {
    cfg.check_bound(n)?;
    let r2 = cfg.params.r * cfg.params.r;
    let a = cfg.m as f64 + 0.5;
    let eps = -(cfg.s - (0.5 + a + 2.0 * n as f64)).powi(2) / r2;
    Ok((eps, eps + cfg.params.kappa4_r2() + 0.25 / r2))
}

/// Number of n ≥ 0 with n < (s − m − 1)/2.
pub fn bound_state_count(cfg: &PTIIConfig) -> usize {
    let limit = cfg.bound_limit();
    if limit <= 0.0 {
        return 0;
    }
    limit.ceil() as usize
}

/// Lowest `k` eigenvalues of the discretized Higgs/PTII operator on
/// `(0, rho_max)`, in fm⁻².
pub fn ptii_levels_fd(cfg: &PTIIConfig, points: usize, rho_max: f64, k: usize) -> Vec<f64> {
    let r2 = cfg.params.r * cfg.params.r;
    let shift = cfg.params.kappa4_r2() + 0.25 / r2;
    lowest_levels(0.0, rho_max, points, 1.0 / r2, |rho| ptii_well(rho, cfg), k)
        .into_iter()
        .map(|e| e + shift)
        .collect()
}

/// Output form of a PTII wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveForm {
    /// Solution of the 1D Schrödinger equation, measure dρ.
    Schrodinger,
    /// Surface wavefunction (one √sinh ρ less), measure sinh ρ dρ.
    Surface,
}

impl WaveForm {
    pub fn measure(self) -> Measure {
        match self {
            WaveForm::Schrodinger => Measure::HyperbolicDrho,
            WaveForm::Surface => Measure::HyperbolicSinhDrho,
        }
    }
}

fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

fn ln_sinh(x: f64) -> f64 {
    if x < 1.0 {
        x.sinh().ln()
    } else {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// Second parameter of the terminating ₂F₁ in the PTII eigenfunctions.
pub fn ptii_hyp_b(n: usize, cfg: &PTIIConfig) -> f64 {
    (n + cfg.m + 1) as f64 - cfg.s
}

/// Unnormalized Schrödinger-form eigenfunction
/// cosh^{1/2−s}ρ · sinh^{m+1/2}ρ · ₂F₁(−n, n+m+1−s; m+1; −sinh²ρ).
pub fn ptii_raw(n: usize, cfg: &PTIIConfig, rho: f64) -> Result<f64> {
    if rho < 0.0 {
        return domain("ptii_raw", format!("rho must be >= 0, got {rho}"));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let f = hyp_terminating(
        n,
        ptii_hyp_b(n, cfg),
        cfg.m as f64 + 1.0,
        -rho.sinh().powi(2),
        HypKind::TwoF1,
    )?;
    let ln_env = (0.5 - cfg.s) * ln_cosh(rho) + (cfg.m as f64 + 0.5) * ln_sinh(rho);
    Ok(ln_env.exp() * f)
}

/// sqrt(2Γ(s) / (Γ(m+1)Γ(s−m−1))), the closed-form ground-state constant.
pub fn ground_state_constant(cfg: &PTIIConfig) -> Result<f64> {
    cfg.check_bound(0)?;
    let m = cfg.m as f64;
    Ok((0.5 * (std::f64::consts::LN_2 + ln_gamma(cfg.s) - ln_gamma(m + 1.0) - ln_gamma(cfg.s - m - 1.0))).exp())
}

/// Decay rate of ψ² at large ρ: 2(s − m − 1 − 2n).
fn decay_rate(n: usize, cfg: &PTIIConfig) -> f64 {
    2.0 * (cfg.s - cfg.m as f64 - 1.0 - 2.0 * n as f64)
}

/// Normalization constant of level n (both forms share it). Closed form
/// for n = 0, adaptive quadrature otherwise.
pub fn ptii_norm_constant(n: usize, cfg: &PTIIConfig, quad: &QuadratureSpec) -> Result<f64> {
    cfg.check_bound(n)?;
    if n == 0 {
        return ground_state_constant(cfg);
    }
    let cut = (40.0 / decay_rate(n, cfg)).max(quad.rho_max);
    let r = integrate(|rho| ptii_raw(n, cfg, rho).map(|v| v * v).unwrap_or(f64::NAN), 0.0, cut, quad)?;
    Ok(1.0 / r.value.sqrt())
}

/// Normalized value at ρ in the requested form.
pub fn ptii_value(n: usize, cfg: &PTIIConfig, rho: f64, form: WaveForm, norm: f64) -> Result<f64> {
    let v = norm * ptii_raw(n, cfg, rho)?;
    Ok(match form {
        WaveForm::Schrodinger => v,
        WaveForm::Surface => {
            if rho == 0.0 {
                // sinh^m ρ at the origin
                if cfg.m == 0 {
                    norm
                } else {
                    0.0
                }
            } else {
                v / rho.sinh().sqrt()
            }
        }
    })
}

/// Level-n eigenfunction sampled on `grid` (ρ values), normalized on (0, ∞).
pub fn ptii_wavefunction(n: usize, cfg: &PTIIConfig, grid: &[f64], form: WaveForm) -> Result<SampledWavefunction> {
    ptii_wavefunction_with(n, cfg, grid, form, &QuadratureSpec::default())
}

pub fn ptii_wavefunction_with(
    n: usize,
    cfg: &PTIIConfig,
    grid: &[f64],
    form: WaveForm,
    quad: &QuadratureSpec,
) -> Result<SampledWavefunction> {
    let norm = ptii_norm_constant(n, cfg, quad)?;
    let values = grid
        .iter()
        .map(|&rho| ptii_value(n, cfg, rho, form, norm))
        .collect::<Result<Vec<_>>>()?;
    let mut w = SampledWavefunction::new(grid.to_vec(), values, form.measure())?;
    w.normalized = true;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::linspace;
    use approx::assert_relative_eq;

    fn reference_params() -> ModelParams {
        ModelParams::new(2.14, 0.728).unwrap()
    }

    fn reference_cfg() -> PTIIConfig {
        PTIIConfig::new(1, reference_params(), SConvention::Override(2.5)).unwrap()
    }

    #[test]
    fn embedding() {
        let p = embed(0.0, 1.3, 1.0);
        assert_eq!((p.x0, p.x1, p.x2), (1.0, 0.0, 0.0));
        let q = embed(1.0, std::f64::consts::FRAC_PI_2, 0.728);
        assert!(q.x1.abs() < 1e-15);
        assert_relative_eq!(q.x2, 0.8555, epsilon = 1e-4);
        assert!(q.constraint_residual(0.728) < 1e-12);
    }

    #[test]
    fn eckart_examples() {
        let (e, _) = eckart_solution(0, 1, 0.5, 1.0).unwrap();
        assert_eq!(e, -2.0);
        let (_, u) = eckart_solution(0, 0, 0.8, 1.0).unwrap();
        assert_relative_eq!(u, 0.8f64.sinh().sqrt());
        assert!(eckart_solution(0, 0, 0.0, 1.0).is_err());
    }

    #[test]
    fn higgs_examples() {
        let p = reference_params();
        assert_eq!(higgs_potential(0.0, &p), 0.0);
        assert_relative_eq!(higgs_potential(40.0, &p), p.kappa4_r2(), max_relative = 1e-15);
        assert_relative_eq!(higgs_potential(0.5, &p), p.kappa4_r2() * 0.5f64.tanh().powi(2));
    }

    #[test]
    fn ptii_identity_and_examples() {
        let cfg = PTIIConfig::derived(1, reference_params()).unwrap();
        assert_relative_eq!(cfg.well_depth(), reference_params().kappa.powi(4) * 0.728f64.powi(4), max_relative = 1e-10);
        let r2 = 0.728 * 0.728;
        for rho in [0.1, 0.5, 1.0, 2.5] {
            let lhs = ptii_potential(rho, &cfg).unwrap() - (cfg.a * (cfg.a - 1.0) / (r2 * rho.sinh().powi(2)) + 0.25 / r2);
            assert_relative_eq!(lhs, higgs_potential(rho, &reference_params()), max_relative = 1e-10);
        }
        let v = ptii_potential(1.0, &reference_cfg()).unwrap();
        let expect = (0.75 / 1.0f64.sinh().powi(2) - 6.0 / 1.0f64.cosh().powi(2)) / r2 + reference_params().kappa4_r2() + 0.25 / r2;
        assert_relative_eq!(v, expect, max_relative = 1e-14);
        let small = 1e-4;
        assert_relative_eq!(
            ptii_potential(small, &cfg).unwrap() * r2 * small * small,
            0.75,
            max_relative = 1e-6
        );
        assert!(ptii_potential(0.0, &cfg).is_err());
    }

    #[test]
    fn energies_and_counts() {
        let cfg = reference_cfg();
        let (eps, higgs) = ptii_energy(0, &cfg).unwrap();
        assert_relative_eq!(eps, -0.25 / (0.728 * 0.728), max_relative = 1e-12);
        assert_relative_eq!(higgs, reference_params().kappa4_r2(), max_relative = 1e-12);
        assert!(matches!(ptii_energy(1, &cfg), Err(Error::UnboundState { .. })));
        assert_eq!(bound_state_count(&cfg), 1);
        let zero = PTIIConfig::new(0, reference_params(), SConvention::Override(0.5 + 1e-12)).unwrap();
        assert_eq!(bound_state_count(&zero), 0);
        let deep = PTIIConfig::new(1, reference_params(), SConvention::Override(10.6)).unwrap();
        assert_eq!(bound_state_count(&deep), 5);
        let edge = PTIIConfig::new(1, reference_params(), SConvention::Override(4.0)).unwrap();
        assert_eq!(bound_state_count(&edge), 1);
    }

    #[test]
    fn spectrum_by_diagonalization() {
        let cfg = reference_cfg();
        let l = ptii_levels_fd(&cfg, 4096, 8.0, 1);
        assert!((l[0] / ptii_energy(0, &cfg).unwrap().1 - 1.0).abs() < 5e-3);
        let deep = PTIIConfig::new(1, reference_params(), SConvention::Override(10.6)).unwrap();
        let l = ptii_levels_fd(&deep, 4096, 8.0, 3);
        for (n, e) in l.iter().enumerate() {
            assert!((e / ptii_energy(n, &deep).unwrap().1 - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn ground_state_normalization_beta_integral() {
        let cfg = reference_cfg();
        let c = ground_state_constant(&cfg).unwrap();
        assert_relative_eq!(c * c, 1.5, max_relative = 1e-14);
        let spec = QuadratureSpec::default();
        let r = integrate(
            |rho| ptii_value(0, &cfg, rho, WaveForm::Surface, c).unwrap().powi(2) * rho.sinh(),
            0.0,
            60.0,
            &spec,
        )
        .unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn excited_states_are_normalized_with_n_nodes() {
        let deep = PTIIConfig::new(1, reference_params(), SConvention::Override(10.6)).unwrap();
        let grid = linspace(1e-3, 40.0, 80000);
        for n in 0..5 {
            let w = ptii_wavefunction(n, &deep, &grid, WaveForm::Schrodinger).unwrap();
            assert_relative_eq!(w.norm_sq(), 1.0, max_relative = 1e-5);
            assert_eq!(w.node_count(1e-9), n);
            assert!(w.values[0] > 0.0);
        }
        assert!(ptii_wavefunction(5, &deep, &grid, WaveForm::Surface).is_err());
    }

    #[test]
    fn small_rho_power_law() {
        let cfg = reference_cfg();
        let c = ground_state_constant(&cfg).unwrap();
        let a = ptii_value(0, &cfg, 1e-4, WaveForm::Schrodinger, c).unwrap();
        let b = ptii_value(0, &cfg, 2e-4, WaveForm::Schrodinger, c).unwrap();
        assert_relative_eq!(b / a, 2f64.powf(1.5), max_relative = 1e-6);
    }
}
