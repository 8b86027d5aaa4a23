//! The flat light-front holographic oscillator, its supersymmetric
//! factorization and the so(2,1) conformal generators.
//!
//! Units: ħ = 1, 2μ = 1, ζ in fm, squared energies in fm⁻². The oscillator
//! frequency enters only through κ⁴ = μ²ω²/ħ².

use crate::eigen::{interior_grid, schrodinger_matrix};
use crate::error::{domain, Error, Result};
use crate::specfun::{laguerre, ln_gamma};
use crate::wave::{derivative, l2, uniform_step, Measure, SampledWavefunction};

/// Oscillator strength and curvature radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// κ in fm⁻¹.
    pub kappa: f64,
    /// R in fm.
    pub r: f64,
}

impl ModelParams {
    pub fn new(kappa: f64, r: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Invalid(format!("kappa must be > 0, got {kappa}")));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Invalid(format!("R must be > 0, got {r}")));
        }
        Ok(Self { kappa, r })
    }

    /// κ⁴R², the saturation height of the Higgs potential.
    pub fn kappa4_r2(&self) -> f64 {
        self.kappa.powi(4) * self.r * self.r
    }

    /// s = sqrt(κ⁴R⁴ + 1/4).
    pub fn s_derived(&self) -> f64 {
        (self.kappa.powi(4) * self.r.powi(4) + 0.25).sqrt()
    }
}

/// Node count `n` and angular number `m` (= ν).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n: usize,
    pub m: usize,
}

impl QuantumNumbers {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    /// a = m + 1/2 on the regular branch.
    pub fn a(&self) -> f64 {
        self.m as f64 + 0.5
    }

    pub fn s(&self, p: &ModelParams) -> f64 {
        p.s_derived()
    }

    pub fn lambda(&self, p: &ModelParams) -> f64 {
        -0.5 - p.s_derived()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// c₊ = 2κ²(ν+1), c₋ = 2κ²ν.
pub fn shift_constant(branch: Branch, nu: usize, p: &ModelParams) -> f64 {
    let k2 = p.kappa * p.kappa;
    match branch {
        Branch::Plus => 2.0 * k2 * (nu as f64 + 1.0),
        Branch::Minus => 2.0 * k2 * nu as f64,
    }
}

/// V± including the additive constants c±.
pub fn lfh_potential(branch: Branch, zeta: f64, nu: usize, p: &ModelParams) -> Result<f64> {
    if !(zeta > 0.0) {
        return domain("lfh_potential", format!("zeta must be > 0, got {zeta}"));
    }
    Ok(lfh_potential_unchecked(branch, zeta, nu, p))
}

fn lfh_potential_unchecked(branch: Branch, zeta: f64, nu: usize, p: &ModelParams) -> f64 {
    let barrier = match branch {
        Branch::Plus => nu as f64,
        Branch::Minus => nu as f64 + 1.0,
    };
    (barrier * barrier - 0.25) / (zeta * zeta)
        + p.kappa.powi(4) * zeta * zeta
        + shift_constant(branch, nu, p)
}

/// E² = 4κ²(n + ν + 1).
pub fn lfh_energy_sq(n: usize, nu: usize, p: &ModelParams) -> f64 {
    4.0 * p.kappa * p.kappa * (n + nu + 1) as f64
}

fn branch_order(branch: Branch, nu: usize) -> f64 {
    match branch {
        Branch::Plus => nu as f64,
        Branch::Minus => nu as f64 + 1.0,
    }
}

// ln N with N² = 2κ n! / Γ(n + α + 1)
fn ln_norm(n: usize, alpha: f64, p: &ModelParams) -> f64 {
    0.5 * ((2.0 * p.kappa).ln() + ln_gamma(n as f64 + 1.0) - ln_gamma(n as f64 + alpha + 1.0))
}

/// Normalized Ψ±^{nν}(ζ), positive as ζ → 0⁺.
pub fn lfh_value(branch: Branch, n: usize, nu: usize, p: &ModelParams, zeta: f64) -> Result<f64> {
    if zeta < 0.0 {
        return domain("lfh_value", format!("zeta must be >= 0, got {zeta}"));
    }
    let alpha = branch_order(branch, nu);
    let x = p.kappa * p.kappa * zeta * zeta;
    if x == 0.0 {
        return Ok(0.0);
    }
    let lag = laguerre(n, alpha, x)?;
    let ln_mag = ln_norm(n, alpha, p) + (alpha / 2.0 + 0.25) * x.ln() - 0.5 * x;
    Ok(ln_mag.exp() * lag)
}

/// dΨ±^{nν}/dζ in closed form.
pub fn lfh_derivative(branch: Branch, n: usize, nu: usize, p: &ModelParams, zeta: f64) -> Result<f64> {
    if !(zeta > 0.0) {
        return domain("lfh_derivative", format!("zeta must be > 0, got {zeta}"));
    }
    let alpha = branch_order(branch, nu);
    let k2 = p.kappa * p.kappa;
    let x = k2 * zeta * zeta;
    let lag = laguerre(n, alpha, x)?;
    let dlag = if n == 0 { 0.0 } else { -laguerre(n - 1, alpha + 1.0, x)? };
    let env = (ln_norm(n, alpha, p) + (alpha / 2.0 + 0.25) * x.ln() - 0.5 * x).exp();
    Ok(env * (lag * ((alpha + 0.5) / zeta - k2 * zeta) + dlag * 2.0 * k2 * zeta))
}

/// Ψ±^{nν} sampled on `grid`, unit-normalized under dζ.
pub fn lfh_wavefunction(
    branch: Branch,
    n: usize,
    nu: usize,
    p: &ModelParams,
    grid: &[f64],
) -> Result<SampledWavefunction> {
    if grid.first().is_some_and(|&z| z < 0.0) {
        return domain("lfh_wavefunction", "grid must be non-negative");
    }
    let values = grid
        .iter()
        .map(|&z| lfh_value(branch, n, nu, p, z))
        .collect::<Result<Vec<_>>>()?;
    let mut w = SampledWavefunction::new(grid.to_vec(), values, Measure::FlatDzeta)?;
    w.normalized = true;
    Ok(w)
}

/// W_ν(ζ) = −(ν + 1/2)/ζ + κ²ζ.
pub fn superpotential(zeta: f64, nu: usize, p: &ModelParams) -> Result<f64> {
    if !(zeta > 0.0) {
        return domain("superpotential", format!("zeta must be > 0, got {zeta}"));
    }
    Ok(-(nu as f64 + 0.5) / zeta + p.kappa * p.kappa * zeta)
}

/// First-order ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    /// d/dζ + W
    A,
    /// −d/dζ + W
    Adag,
    /// d/dζ − (ν+1/2)/ζ − κ²ζ
    B,
    /// −d/dζ − (ν+1/2)/ζ − κ²ζ
    Bdag,
}

impl Ladder {
    fn combine(self, zeta: f64, f: f64, df: f64, nu: usize, p: &ModelParams) -> f64 {
        let k2 = p.kappa * p.kappa;
        let c = nu as f64 + 0.5;
        match self {
            Ladder::A => df + (-c / zeta + k2 * zeta) * f,
            Ladder::Adag => -df + (-c / zeta + k2 * zeta) * f,
            Ladder::B => df - (c / zeta + k2 * zeta) * f,
            Ladder::Bdag => -df - (c / zeta + k2 * zeta) * f,
        }
    }
}

/// Applies a ladder operator with a five-point finite-difference derivative.
pub fn apply_ladder(which: Ladder, f: &SampledWavefunction, nu: usize, p: &ModelParams) -> Result<SampledWavefunction> {
    if f.len() < 5 {
        return Err(Error::GridTooSmall { needed: 5, got: f.len() });
    }
    if f.grid[0] <= 0.0 {
        return domain("apply_ladder", "grid must be strictly positive");
    }
    let h = uniform_step(&f.grid)?;
    let d = derivative(&f.values, h)?;
    let values = f
        .grid
        .iter()
        .zip(&f.values)
        .zip(&d)
        .map(|((&z, &v), &dv)| which.combine(z, v, dv, nu, p))
        .collect();
    SampledWavefunction::new(f.grid.clone(), values, f.measure)
}

/// Applies a ladder operator to an exact eigenstate using its closed-form
/// derivative.
pub fn apply_ladder_exact(
    which: Ladder,
    branch: Branch,
    n: usize,
    nu_state: usize,
    nu_op: usize,
    p: &ModelParams,
    grid: &[f64],
) -> Result<SampledWavefunction> {
    let values = grid
        .iter()
        .map(|&z| {
            let f = lfh_value(branch, n, nu_state, p, z)?;
            let df = lfh_derivative(branch, n, nu_state, p, z)?;
            Ok(which.combine(z, f, df, nu_op, p))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledWavefunction::new(grid.to_vec(), values, Measure::FlatDzeta)
}

/// Positive grid `(0, 12/κ]` with `points` nodes, the last on the wall side.
pub fn default_grid(p: &ModelParams, points: usize) -> Vec<f64> {
    interior_grid(0.0, 12.0 / p.kappa, points).0
}

/// Lowest `k` levels of `−d² + V` on `(0, 12/κ)` with `points` nodes.
pub fn levels<V: Fn(f64) -> f64>(p: &ModelParams, points: usize, k: usize, potential: V) -> Vec<f64> {
    let (nodes, h) = interior_grid(0.0, 12.0 / p.kappa, points);
    schrodinger_matrix(&nodes, h, 1.0, potential).lowest(k)
}

/// Lowest `k` levels of the discretized oscillator equation for branch `+`.
pub fn lfh_levels(nu: usize, p: &ModelParams, points: usize, k: usize) -> Vec<f64> {
    levels(p, points, k, |z| lfh_potential_unchecked(Branch::Plus, z, nu, p))
}

/// H₊ = A⁺A potential: W² − W′.
pub fn susy_plus_potential(zeta: f64, nu: usize, p: &ModelParams) -> f64 {
    lfh_potential_unchecked(Branch::Plus, zeta, nu, p) - 2.0 * shift_constant(Branch::Plus, nu, p)
}

/// H₋ = AA⁺ potential: W² + W′.
pub fn susy_minus_potential(zeta: f64, nu: usize, p: &ModelParams) -> f64 {
    lfh_potential_unchecked(Branch::Minus, zeta, nu, p) - 2.0 * shift_constant(Branch::Minus, nu, p)
}

/// Two-component state acted on by the supercharges.
#[derive(Debug, Clone, PartialEq)]
pub struct Doublet {
    pub upper: SampledWavefunction,
    pub lower: SampledWavefunction,
}

fn zeros_like(f: &SampledWavefunction) -> SampledWavefunction {
    f.map(|_, _| 0.0)
}

fn scaled(f: &SampledWavefunction, c: f64) -> SampledWavefunction {
    f.map(|_, v| c * v)
}

/// Q = [[0, 0], [A, 0]].
pub fn supercharge(d: &Doublet, nu: usize, p: &ModelParams) -> Result<Doublet> {
    Ok(Doublet {
        upper: scaled(&d.lower, 0.0),
        lower: apply_ladder(Ladder::A, &d.upper, nu, p)?,
    })
}

/// Q⁺ = [[0, A⁺], [0, 0]].
pub fn supercharge_dag(d: &Doublet, nu: usize, p: &ModelParams) -> Result<Doublet> {
    Ok(Doublet {
        upper: apply_ladder(Ladder::Adag, &d.lower, nu, p)?,
        lower: zeros_like(&d.upper),
    })
}

fn doublet_norm(d: &Doublet) -> f64 {
    (l2(&d.upper.values).powi(2) + l2(&d.lower.values).powi(2)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SusyReport {
    pub grid_size: usize,
    pub plus_levels: Vec<f64>,
    pub plus_expected: Vec<f64>,
    pub minus_levels: Vec<f64>,
    pub minus_expected: Vec<f64>,
    /// |H₊(n=1) / H₋(n=0) − 1|.
    pub partner_gap: f64,
    /// ‖A Ψ₊^{0ν}‖ / ‖Ψ₊^{0ν}‖ with the closed-form derivative.
    pub annihilation_exact: f64,
    /// Same with finite differences.
    pub annihilation_fd: f64,
    /// ‖Q² ψ‖ / ‖ψ‖ on the doublet (Ψ₊^{1ν}, Ψ₋^{0ν}).
    pub nilpotency: f64,
    /// ‖{Q, Q⁺}ψ − diag(H₊, H₋)ψ‖ / ‖ψ‖ on interior points.
    pub anticommutator: f64,
    /// Worst |level − expected| / 4κ².
    pub max_level_error: f64,
}

/// Diagonalizes H₊ = A⁺A and H₋ = AA⁺ and checks the supercharge algebra.
pub fn susy_spectrum_check(n_max: usize, nu: usize, p: &ModelParams, grid_size: usize) -> Result<SusyReport> {
    if grid_size < 1024 {
        return Err(Error::GridTooSmall {
            needed: 1024,
            got: grid_size,
        });
    }
    let k = n_max + 1;
    let unit = 4.0 * p.kappa * p.kappa;
    let plus_levels = levels(p, grid_size, k, |z| susy_plus_potential(z, nu, p));
    let minus_levels = levels(p, grid_size, k, |z| susy_minus_potential(z, nu, p));
    let plus_expected: Vec<f64> = (0..k).map(|n| unit * n as f64).collect();
    let minus_expected: Vec<f64> = (0..k).map(|n| unit * (n + 1) as f64).collect();
    let max_level_error = plus_levels
        .iter()
        .zip(&plus_expected)
        .chain(minus_levels.iter().zip(&minus_expected))
        .map(|(a, b)| (a - b).abs() / unit)
        .fold(0.0, f64::max);
    let tolerance = 1e-3 * k as f64;
    if max_level_error > tolerance {
        return Err(Error::Convergence {
            residual: max_level_error,
            tolerance,
        });
    }
    let partner_gap = if k >= 2 {
        (plus_levels[1] / minus_levels[0] - 1.0).abs()
    } else {
        let l = levels(p, grid_size, 2, |z| susy_plus_potential(z, nu, p));
        (l[1] / minus_levels[0] - 1.0).abs()
    };

    let grid = default_grid(p, grid_size);
    let ground = lfh_wavefunction(Branch::Plus, 0, nu, p, &grid)?;
    let a_exact = apply_ladder_exact(Ladder::A, Branch::Plus, 0, nu, nu, p, &grid)?;
    let annihilation_exact = l2(&a_exact.values) / l2(&ground.values);
    let a_fd = apply_ladder(Ladder::A, &ground, nu, p)?;
    let edge = 8;
    let annihilation_fd = l2(&a_fd.values[edge..a_fd.len() - edge]) / l2(&ground.values);

    let doublet = Doublet {
        upper: lfh_wavefunction(Branch::Plus, 1, nu, p, &grid)?,
        lower: lfh_wavefunction(Branch::Minus, 0, nu, p, &grid)?,
    };
    let norm = doublet_norm(&doublet);
    let q2 = supercharge(&supercharge(&doublet, nu, p)?, nu, p)?;
    let nilpotency = doublet_norm(&q2) / norm;

    let qqd = supercharge(&supercharge_dag(&doublet, nu, p)?, nu, p)?;
    let qdq = supercharge_dag(&supercharge(&doublet, nu, p)?, nu, p)?;
    let h = uniform_step(&grid)?;
    let anti_upper: Vec<f64> = qqd.upper.values.iter().zip(&qdq.upper.values).map(|(a, b)| a + b).collect();
    let anti_lower: Vec<f64> = qqd.lower.values.iter().zip(&qdq.lower.values).map(|(a, b)| a + b).collect();
    let h_upper = hamiltonian_action(&doublet.upper.values, &grid, h, |z| susy_plus_potential(z, nu, p))?;
    let h_lower = hamiltonian_action(&doublet.lower.values, &grid, h, |z| susy_minus_potential(z, nu, p))?;
    // composing two first derivatives is inaccurate at the ends; compare inside
    let trim = 8;
    let n = grid.len();
    let mut diff = 0.0;
    let mut base = 0.0;
    for i in trim..n - trim {
        diff += (anti_upper[i] - h_upper[i]).powi(2) + (anti_lower[i] - h_lower[i]).powi(2);
        base += doublet.upper.values[i].powi(2) + doublet.lower.values[i].powi(2);
    }
    let anticommutator = (diff / base).sqrt() / unit;

    Ok(SusyReport {
        grid_size,
        plus_levels,
        plus_expected,
        minus_levels,
        minus_expected,
        partner_gap,
        annihilation_exact,
        annihilation_fd,
        nilpotency,
        anticommutator,
        max_level_error,
    })
}

/// Full-length second derivative: five-point central inside, five-point
/// one-sided at the two points nearest each end.
pub fn second_derivative(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 6 {
        return Err(Error::GridTooSmall { needed: 6, got: n });
    }
    let h2 = 12.0 * h * h;
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) / h2;
    }
    d[0] = (45.0 * y[0] - 154.0 * y[1] + 214.0 * y[2] - 156.0 * y[3] + 61.0 * y[4] - 10.0 * y[5]) / h2;
    d[1] = (10.0 * y[0] - 15.0 * y[1] - 4.0 * y[2] + 14.0 * y[3] - 6.0 * y[4] + y[5]) / h2;
    d[n - 1] = (45.0 * y[n - 1] - 154.0 * y[n - 2] + 214.0 * y[n - 3] - 156.0 * y[n - 4] + 61.0 * y[n - 5]
        - 10.0 * y[n - 6])
        / h2;
    d[n - 2] = (10.0 * y[n - 1] - 15.0 * y[n - 2] - 4.0 * y[n - 3] + 14.0 * y[n - 4] - 6.0 * y[n - 5] + y[n - 6]) / h2;
    Ok(d)
}

fn hamiltonian_action<V: Fn(f64) -> f64>(y: &[f64], grid: &[f64], h: f64, potential: V) -> Result<Vec<f64>> {
    let d2 = second_derivative(y, h)?;
    Ok(grid
        .iter()
        .zip(y)
        .zip(&d2)
        .map(|((&z, &v), &dd)| -dd + potential(z) * v)
        .collect())
}

/// so(2,1) generators realized on the ν channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalGenerators {
    pub nu: usize,
}

impl ConformalGenerators {
    /// J₋ f = (ζ²/2) f.
    pub fn j_minus(&self, grid: &[f64], f: &[f64]) -> Vec<f64> {
        grid.iter().zip(f).map(|(&z, &v)| 0.5 * z * z * v).collect()
    }

    /// J₊ f = −(1/2)(f″ − (ν² − 1/4) f / ζ²).
    pub fn j_plus(&self, grid: &[f64], f: &[f64], h: f64) -> Result<Vec<f64>> {
        let c = (self.nu * self.nu) as f64 - 0.25;
        let d2 = second_derivative(f, h)?;
        Ok(grid
            .iter()
            .zip(f)
            .zip(&d2)
            .map(|((&z, &v), &dd)| -0.5 * (dd - c * v / (z * z)))
            .collect())
    }

    /// D₀ f = (1/2) ζ f′ + f/4.
    pub fn d0(&self, grid: &[f64], f: &[f64], h: f64) -> Result<Vec<f64>> {
        let d = derivative(f, h)?;
        Ok(grid
            .iter()
            .zip(f)
            .zip(&d)
            .map(|((&z, &v), &dv)| 0.5 * z * dv + 0.25 * v)
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalReport {
    /// ‖[J₊,J₋]f + 2D₀f‖ / ‖2D₀f‖, worst over test functions.
    pub comm_plus_minus: f64,
    /// ‖[D₀,J₊]f + J₊f‖ / ‖J₊f‖.
    pub comm_d0_plus: f64,
    /// ‖[D₀,J₋]f − J₋f‖ / ‖J₋f‖.
    pub comm_d0_minus: f64,
    /// ‖2(J₊ + κ⁴J₋)f − (−f″ + (V₊ − c₊)f)‖ / ‖·‖.
    pub hamiltonian: f64,
    /// ⟨f, 2(J₊ + κ⁴J₋)f⟩ − ⟨f, H₊f⟩ on the ground state, compared with c₊.
    pub offset_measured: f64,
    pub offset_c_plus: f64,
}

/// Test functions Ψ₊^{nν}, n ≤ `n_max`, on `points` nodes of `(0, 12/κ]`.
pub fn conformal_test_functions(nu: usize, n_max: usize, p: &ModelParams, points: usize) -> Result<Vec<SampledWavefunction>> {
    let grid = default_grid(p, points);
    (0..=n_max)
        .map(|n| lfh_wavefunction(Branch::Plus, n, nu, p, &grid))
        .collect()
}

fn rel_interior(a: &[f64], b: &[f64], trim: usize) -> f64 {
    let n = a.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in trim..n - trim {
        num += (a[i] - b[i]).powi(2);
        den += b[i] * b[i];
    }
    (num / den).sqrt()
}

/// Checks the so(2,1) commutators and the Hamiltonian identity on sampled
/// test functions by finite-difference application.
pub fn conformal_commutator_check(nu: usize, p: &ModelParams, tests: &[SampledWavefunction]) -> Result<ConformalReport> {
    if tests.is_empty() {
        return Err(Error::Invalid("no test functions".into()));
    }
    let g = ConformalGenerators { nu };
    let k4 = p.kappa.powi(4);
    let c_plus = shift_constant(Branch::Plus, nu, p);
    let trim = 8;
    let mut report = ConformalReport {
        comm_plus_minus: 0.0,
        comm_d0_plus: 0.0,
        comm_d0_minus: 0.0,
        hamiltonian: 0.0,
        offset_measured: f64::NAN,
        offset_c_plus: c_plus,
    };
    for (idx, t) in tests.iter().enumerate() {
        let grid = &t.grid;
        let f = &t.values;
        let h = uniform_step(grid)?;
        let jm = g.j_minus(grid, f);
        let jp = g.j_plus(grid, f, h)?;
        let d0 = g.d0(grid, f, h)?;

        let jp_jm = g.j_plus(grid, &jm, h)?;
        let jm_jp = g.j_minus(grid, &jp);
        let comm: Vec<f64> = jp_jm.iter().zip(&jm_jp).map(|(a, b)| a - b).collect();
        let target: Vec<f64> = d0.iter().map(|v| -2.0 * v).collect();
        report.comm_plus_minus = report.comm_plus_minus.max(rel_interior(&comm, &target, trim));

        let d0_jp = g.d0(grid, &jp, h)?;
        let jp_d0 = g.j_plus(grid, &d0, h)?;
        let comm: Vec<f64> = d0_jp.iter().zip(&jp_d0).map(|(a, b)| a - b).collect();
        let target: Vec<f64> = jp.iter().map(|v| -v).collect();
        report.comm_d0_plus = report.comm_d0_plus.max(rel_interior(&comm, &target, trim));

        let d0_jm = g.d0(grid, &jm, h)?;
        let jm_d0 = g.j_minus(grid, &d0);
        let comm: Vec<f64> = d0_jm.iter().zip(&jm_d0).map(|(a, b)| a - b).collect();
        report.comm_d0_minus = report.comm_d0_minus.max(rel_interior(&comm, &jm, trim));

        let hbar: Vec<f64> = jp.iter().zip(&jm).map(|(a, b)| 2.0 * (a + k4 * b)).collect();
        let lfh = hamiltonian_action(f, grid, h, |z| lfh_potential_unchecked(Branch::Plus, z, nu, p) - c_plus)?;
        report.hamiltonian = report.hamiltonian.max(rel_interior(&hbar, &lfh, trim));

        if idx == 0 {
            let hplus = hamiltonian_action(f, grid, h, |z| susy_plus_potential(z, nu, p))?;
            let num: f64 = (trim..f.len() - trim).map(|i| f[i] * (hbar[i] - hplus[i])).sum();
            let den: f64 = (trim..f.len() - trim).map(|i| f[i] * f[i]).sum();
            report.offset_measured = num / den;
        }
    }
    Ok(report)
}
