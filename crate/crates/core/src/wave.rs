//! Sampled radial wavefunctions and the grid calculus used on them.

use crate::error::{Error, Result};

/// Integration measure attached to a sampled wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// `dζ` on the flat half-line.
    FlatDzeta,
    /// `dρ` on the hyperbolic radial line (Schrödinger form).
    HyperbolicDrho,
    /// `sinh ρ dρ`, the surface measure with the angle integrated out.
    HyperbolicSinhDrho,
}

impl Measure {
    pub fn weight(self, x: f64) -> f64 {
        match self {
            Measure::FlatDzeta | Measure::HyperbolicDrho => 1.0,
            Measure::HyperbolicSinhDrho => x.sinh(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::FlatDzeta => "flat_dzeta",
            Measure::HyperbolicDrho => "hyperbolic_drho",
            Measure::HyperbolicSinhDrho => "hyperbolic_sinh_drho",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavefunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub measure: Measure,
    pub normalized: bool,
}

/// Relative tolerance on spacing deviations for a grid to count as uniform.
const UNIFORM_TOL: f64 = 1e-9;

impl SampledWavefunction {
    /// Wraps samples without normalizing them.
    pub fn new(grid: Vec<f64>, values: Vec<f64>, measure: Measure) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Invalid(format!(
                "grid has {} points but {} values",
                grid.len(),
                values.len()
            )));
        }
        check_grid(&grid, 2)?;
        Ok(Self {
            grid,
            values,
            measure,
            normalized: false,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `∫|ψ|² · measure` by the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let w: Vec<f64> = self
            .grid
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| v * v * self.measure.weight(x))
            .collect();
        trapezoid(&self.grid, &w)
    }

    /// Rescaled to unit norm under its measure.
    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm_sq().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Invalid("cannot normalize a zero or non-finite state".into()));
        }
        self.values.iter_mut().for_each(|v| *v /= n);
        self.normalized = true;
        Ok(self)
    }

    /// Rescaled so the largest |value| is 1 (sign preserved).
    pub fn unit_peak(&self) -> Vec<f64> {
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if peak == 0.0 {
            return self.values.clone();
        }
        self.values.iter().map(|v| v / peak).collect()
    }

    /// Grid point of the largest |value|.
    pub fn peak_location(&self) -> f64 {
        let (i, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(bi, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bi, bv) });
        self.grid[i]
    }

    /// Sign changes between consecutive samples, ignoring samples below
    /// `tol` times the peak magnitude.
    pub fn node_count(&self, tol: f64) -> usize {
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut last = 0.0;
        let mut nodes = 0;
        for &v in &self.values {
            if v.abs() <= tol * peak {
                continue;
            }
            if last != 0.0 && v.signum() != last {
                nodes += 1;
            }
            last = v.signum();
        }
        nodes
    }

    /// Uniform spacing, or an error if the grid is not uniform.
    pub fn step(&self) -> Result<f64> {
        uniform_step(&self.grid)
    }

    /// New state on the same grid with `f` applied pointwise to `(x, value)`.
    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.grid.iter().zip(&self.values).map(|(&x, &v)| f(x, v)).collect(),
            measure: self.measure,
            normalized: false,
        }
    }
}

fn check_grid(grid: &[f64], min: usize) -> Result<()> {
    if grid.len() < min {
        return Err(Error::GridTooSmall {
            needed: min,
            got: grid.len(),
        });
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Invalid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Spacing of a uniform grid.
pub fn uniform_step(grid: &[f64]) -> Result<f64> {
    check_grid(grid, 2)?;
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    let deviation = grid
        .windows(2)
        .map(|w| ((w[1] - w[0]) / h - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation > UNIFORM_TOL {
        return Err(Error::NonUniformGrid { deviation });
    }
    Ok(h)
}

/// `n` uniform points `start, start + h, ...` up to and including `end`.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    let h = (end - start) / (n - 1) as f64;
    (0..n).map(|i| start + i as f64 * h).collect()
}

/// Trapezoid rule over an arbitrary increasing grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] + yw[1]))
        .sum()
}

/// First derivative on a uniform grid: five-point central stencil inside,
/// five-point one-sided stencils at the two points nearest each end.
pub fn derivative(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 5 {
        return Err(Error::GridTooSmall { needed: 5, got: n });
    }
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    }
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h);
    d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]) / (12.0 * h);
    d[n - 1] = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) / (12.0 * h);
    Ok(d)
}

/// Second derivative by the five-point central stencil at interior points
/// `2..n-2`; the returned vector has length `n - 4`.
pub fn second_derivative_interior(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 5 {
        return Err(Error::GridTooSmall { needed: 5, got: n });
    }
    Ok((2..n - 2)
        .map(|i| {
            (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) / (12.0 * h * h)
        })
        .collect())
}

/// Euclidean norm of a sample vector.
pub fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
