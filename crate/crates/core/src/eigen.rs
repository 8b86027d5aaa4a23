//! Lowest eigenvalues of 1D Schrödinger operators discretized with the
//! three-point Laplacian and Dirichlet ends.
//!
//! The resulting matrix is symmetric tridiagonal; eigenvalues are located
//! by Sturm-sequence bisection, which needs no workspace beyond the matrix
//! and is accurate to a few ulps of the spectral radius.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag[i]` on the diagonal, `off[i]`
/// coupling rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Invalid(format!(
                "tridiagonal shape mismatch: {} diagonal vs {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let denom = if q == 0.0 { f64::EPSILON * self.off[i - 1].abs().max(1e-300) } else { q };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * scale {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        (0..k.min(self.len())).map(|i| self.eigenvalue(i)).collect()
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Eigenvector for an (accurately known) eigenvalue by inverse iteration,
    /// unit-normalized in the Euclidean norm with a positive first lobe.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let shift = lambda + 1e-10 * lambda.abs().max(1.0);
        let mut v = vec![1.0; n];
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let sign = v
            .iter()
            .find(|x| x.abs() > 1e-8)
            .map(|x| x.signum())
            .unwrap_or(1.0);
        v.iter_mut().for_each(|x| *x *= sign);
        v
    }

    // (T - shift) y = rhs by the Thomas algorithm
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let pivot = |p: f64| if p.abs() < 1e-300 { 1e-300 } else { p };
        let mut denom = pivot(self.diag[0] - shift);
        if n > 1 {
            c[0] = self.off[0] / denom;
        }
        d[0] = rhs[0] / denom;
        for i in 1..n {
            denom = pivot(self.diag[i] - shift - self.off[i - 1] * c[i - 1]);
            if i + 1 < n {
                c[i] = self.off[i] / denom;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / denom;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        d
    }
}

/// Uniform interior grid for a Dirichlet problem on `(left, right)`:
/// `points` nodes at `left + h, ..., left + points * h` with the right wall
/// at `left + (points + 1) h`.
pub fn interior_grid(left: f64, right: f64, points: usize) -> (Vec<f64>, f64) {
    let h = (right - left) / (points + 1) as f64;
    ((1..=points).map(|i| left + i as f64 * h).collect(), h)
}

/// Three-point discretization of `scale * (-d^2/dx^2 + V(x))` on the given
/// uniform nodes (spacing `h`) with Dirichlet walls one step outside.
pub fn schrodinger_matrix<V: Fn(f64) -> f64>(nodes: &[f64], h: f64, scale: f64, potential: V) -> Tridiagonal {
    let kinetic = 1.0 / (h * h);
    let diag = nodes
        .iter()
        .map(|&x| scale * (2.0 * kinetic + potential(x)))
        .collect();
    let off = vec![-scale * kinetic; nodes.len().saturating_sub(1)];
    Tridiagonal { diag, off }
}

/// Lowest `k` eigenvalues of `scale * (-d^2 + V)` on `(left, right)` with
/// `points` interior nodes.
pub fn lowest_levels<V: Fn(f64) -> f64>(
    left: f64,
    right: f64,
    points: usize,
    scale: f64,
    potential: V,
    k: usize,
) -> Vec<f64> {
    let (nodes, h) = interior_grid(left, right, points);
    schrodinger_matrix(&nodes, h, scale, potential).lowest(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn particle_in_a_box() {
        // exact discrete spectrum: (2 - 2 cos(k pi h / L)) / h^2
        let points = 199;
        let levels = lowest_levels(0.0, 1.0, points, 1.0, |_| 0.0, 4);
        let h = 1.0 / (points + 1) as f64;
        for (k, e) in levels.iter().enumerate() {
            let exact = (2.0 - 2.0 * ((k + 1) as f64 * PI * h).cos()) / (h * h);
            assert!((e - exact).abs() < 1e-9 * exact, "{k}: {e} vs {exact}");
        }
    }

    #[test]
    fn harmonic_oscillator_levels() {
        let levels = lowest_levels(-10.0, 10.0, 4000, 1.0, |x| x * x, 5);
        for (k, e) in levels.iter().enumerate() {
            let exact = 2.0 * k as f64 + 1.0;
            assert!((e / exact - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn eigenvector_satisfies_equation() {
        let (nodes, h) = interior_grid(-8.0, 8.0, 800);
        let t = schrodinger_matrix(&nodes, h, 1.0, |x| x * x);
        let lambda = t.eigenvalue(1);
        let v = t.eigenvector(lambda);
        let tv = t.apply(&v);
        let res: f64 = tv.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        assert!(res < 1e-8);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(Tridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
    }
}
