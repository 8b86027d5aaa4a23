//! Proton charge form factor on the hyperbolic plane.
//!
//! Three evaluations of the same observable are provided: the nested
//! Fourier-Helgason double integral, the Hankel-transform approximation
//! (with an independent closed form from standard Hankel tables as its
//! oracle), and the printed closed form. Quadrature is the reference.
//!
//! Momenta are in fm⁻¹; see [`crate::HBAR_C_GEV_FM`] for GeV.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperbolic::{ground_state_constant, PTIIConfig};
use crate::quad::{gauss_kronrod, integrate, QuadratureSpec};
use crate::rosenmorse::{rmt_formfactor, RMParams};
use crate::specfun::{bessel_i0_scaled, bessel_i1_scaled, bessel_j0, BESSEL_I_GUARD};

/// Shapiro function (cosh ρ − cos φ sinh ρ)^{−1/2 − i p R}.
pub fn shapiro(rho: f64, phi: f64, p: f64, r: f64) -> Complex64 {
    let base = rho.cosh() - phi.cos() * rho.sinh();
    let exponent = Complex64::new(-0.5, -p * r);
    (exponent * base.ln()).exp()
}

/// Exponential rewriting e^{(ρ/2) cos φ} e^{i ρ p R cos φ}, equal to
/// [`shapiro`] only to leading order in ρ.
pub fn shapiro_exponential(rho: f64, phi: f64, p: f64, r: f64) -> Complex64 {
    let c = phi.cos();
    Complex64::from_polar((0.5 * rho * c).exp(), rho * p * r * c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormFactorMethod {
    ExactFh,
    Hankel,
    ClosedForm,
    RosenMorse,
}

impl FormFactorMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FormFactorMethod::ExactFh => "exact_fh",
            FormFactorMethod::Hankel => "hankel",
            FormFactorMethod::ClosedForm => "closed_form",
            FormFactorMethod::RosenMorse => "rosen_morse",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormFactorCurve {
    /// Momentum transfer in fm⁻¹.
    pub q: Vec<f64>,
    pub g: Vec<f64>,
    pub method: FormFactorMethod,
    pub normalized: bool,
    /// |Im| of the double integral per point (exact method only).
    pub imag_diagnostic: Vec<f64>,
}

impl FormFactorCurve {
    pub fn new(q: Vec<f64>, g: Vec<f64>, method: FormFactorMethod) -> Result<Self> {
        if q.len() != g.len() {
            return Err(Error::Invalid(format!("{} momenta but {} values", q.len(), g.len())));
        }
        Ok(Self {
            q,
            g,
            method,
            normalized: false,
            imag_diagnostic: Vec::new(),
        })
    }

    /// Momenta converted to GeV.
    pub fn q_gev(&self) -> Vec<f64> {
        self.q.iter().map(|q| q * crate::HBAR_C_GEV_FM).collect()
    }
}

/// Divides by G at the origin (the first point with |Q| < 1e-6).
pub fn normalize_curve(curve: &FormFactorCurve) -> Result<FormFactorCurve> {
    let i = curve.q.iter().position(|q| q.abs() < 1e-6).ok_or(Error::MissingOrigin)?;
    let g0 = curve.g[i];
    if g0 == 0.0 || !g0.is_finite() {
        return Err(Error::Invalid(format!("cannot normalize by G(0) = {g0}")));
    }
    let mut out = curve.clone();
    out.g.iter_mut().for_each(|g| *g /= g0);
    out.g[i] = 1.0;
    out.imag_diagnostic.iter_mut().for_each(|d| *d /= g0.abs());
    out.normalized = true;
    Ok(out)
}

/// Kernel used in the nested double integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// Normalized surface ground state with e^{(ρ cos φ)/2}.
    Full,
    /// Same radial weight with e^{(ρ cos φ)/2} replaced by e^{ρ/2}.
    UniformExponent,
    /// The reduced radial kernel e^{−3ρ²/2}(1 + ρ/2)ρ with a bare phase.
    PrintedHankel,
}

/// Radial weight multiplying the angular integral (without the R²).
pub fn radial_weight(kernel: Kernel, rho: f64, cfg: &PTIIConfig, c2: f64) -> f64 {
    match kernel {
        Kernel::Full | Kernel::UniformExponent => {
            if rho == 0.0 {
                return 0.0;
            }
            // tanh ρ · |ψ₀|²/sinh ρ = C² cosh^{−2s} sinh^{2m} ρ
            let m = cfg.m as f64;
            c2 * ((-2.0 * cfg.s) * rho.cosh().ln() + 2.0 * m * rho.sinh().ln()).exp()
        }
        Kernel::PrintedHankel => (-1.5 * rho * rho).exp() * (1.0 + 0.5 * rho) * rho,
    }
}

/// ∫_{−π}^{π} e^{a cos φ} e^{i b cos φ} dφ by adaptive quadrature over [0, π].
pub fn angular_integral(a: f64, b: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    let re = gauss_kronrod(|phi| (a * phi.cos()).exp() * (b * phi.cos()).cos(), 0.0, PI, quad)?;
    let im = gauss_kronrod(|phi| (a * phi.cos()).exp() * (b * phi.cos()).sin(), 0.0, PI, quad)?;
    Ok(Complex64::new(2.0 * re.value, 2.0 * im.value))
}

/// (1/2π)∫₀^{2π} e^{i x cos φ} dφ by quadrature; equals J₀(x).
pub fn angular_reduction(x: f64, quad: &QuadratureSpec) -> Result<f64> {
    Ok(angular_integral(0.0, x, quad)?.re / (2.0 * PI))
}

/// Smallest ρ ≥ `floor` beyond which `envelope` stays below `ratio` times
/// its peak, from a scan with step 0.05 up to 200.
pub fn envelope_cutoff<F: Fn(f64) -> f64>(envelope: F, floor: f64, ratio: f64) -> f64 {
    let step = 0.05;
    let samples: Vec<(f64, f64)> = (1..=4000).map(|i| (i as f64 * step, envelope(i as f64 * step).abs())).collect();
    let peak = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let last_above = samples
        .iter()
        .rev()
        .find(|s| s.1 >= ratio * peak)
        .map(|s| s.0)
        .unwrap_or(0.0);
    floor.max(last_above + step)
}

fn angle_exponent(kernel: Kernel, rho: f64) -> (f64, f64) {
    // (coefficient of cos φ in the real exponent, outside factor)
    match kernel {
        Kernel::Full => (0.5 * rho, 1.0),
        Kernel::UniformExponent => (0.0, (0.5 * rho).exp()),
        Kernel::PrintedHankel => (0.0, 1.0),
    }
}

/// Integration cutoff for a kernel: where the radial envelope (including
/// the largest possible angular growth e^{ρ/2}) falls below 1e-14 of its
/// peak, never below `quad.rho_max`.
pub fn kernel_cutoff(kernel: Kernel, cfg: &PTIIConfig, quad: &QuadratureSpec) -> Result<f64> {
    let c2 = match kernel {
        Kernel::PrintedHankel => 1.0,
        _ => ground_state_constant(cfg)?.powi(2),
    };
    Ok(envelope_cutoff(
        |rho| {
            let grow = match kernel {
                Kernel::PrintedHankel => 1.0,
                _ => (0.5 * rho).exp(),
            };
            radial_weight(kernel, rho, cfg, c2) * grow
        },
        quad.rho_max,
        1e-14,
    ))
}

/// R² ∫dρ w(ρ) ∫_{−π}^{π}dφ [angular factor]: nested adaptive quadrature
/// with φ inner. Returns (Re, |Im|).
pub fn ff_exact_kernel(q: f64, cfg: &PTIIConfig, kernel: Kernel, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    quad.validate()?;
    let c2 = match kernel {
        Kernel::PrintedHankel => 1.0,
        _ => ground_state_constant(cfg)?.powi(2),
    };
    let r = cfg.params.r;
    let cut = kernel_cutoff(kernel, cfg, quad)?;
    let failure: Cell<Option<Error>> = Cell::new(None);
    let inner = |rho: f64| -> Complex64 {
        let w = radial_weight(kernel, rho, cfg, c2);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (a, outside) = angle_exponent(kernel, rho);
        match angular_integral(a, q * r * rho, quad) {
            Ok(v) => v * (w * outside),
            Err(e) => {
                failure.set(Some(e));
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };
    let re = integrate(|rho| inner(rho).re, 0.0, cut, quad);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let im = integrate(|rho| inner(rho).im, 0.0, cut, quad);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok((r * r * re?.value, (r * r * im?.value).abs()))
}

/// The Fourier-Helgason double integral of the squared normalized surface
/// ground state. Returns (G, imaginary diagnostic).
pub fn ff_exact(q: f64, cfg: &PTIIConfig, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    if cfg.bound_limit() <= 0.0 {
        return Err(Error::UnboundState {
            n: 0,
            count: 0,
            limit: cfg.bound_limit(),
        });
    }
    ff_exact_kernel(q, cfg, Kernel::Full, quad)
}

fn hankel_kernel(rho: f64) -> f64 {
    (-1.5 * rho * rho).exp() * (1.0 + 0.5 * rho) * rho
}

/// R² ∫₀^∞ e^{−3ρ²/2}(1 + ρ/2) ρ J₀(QRρ) dρ.
pub fn ff_hankel(q: f64, r: f64, quad: &QuadratureSpec) -> Result<f64> {
    quad.validate()?;
    let cut = envelope_cutoff(hankel_kernel, quad.rho_max, 1e-14);
    let b = q * r;
    let v = integrate(|rho| hankel_kernel(rho) * bessel_j0(b * rho), 0.0, cut, quad)?;
    Ok(r * r * v.value)
}

fn guard(b: f64) -> Result<f64> {
    let x = b * b / 12.0;
    if x > BESSEL_I_GUARD {
        return Err(Error::Overflow {
            arg: "Q²R²/12",
            value: x,
            limit: BESSEL_I_GUARD,
        });
    }
    Ok(x)
}

/// The printed closed form
/// (R²/2)e^{−b²/6}(1 − (1/12)√(π/6)[(b² − 6)I₀(b²/12) − b²I₁(b²/12)]), b = QR.
pub fn ff_closed(q: f64, r: f64) -> Result<f64> {
    let b = q * r;
    let x = guard(b)?;
    let b2 = b * b;
    let e6 = (-b2 / 6.0).exp();
    // e^{−b²/6} I_k(b²/12) = e^{−b²/12} · scaled I_k
    let e12 = (-x).exp();
    let bracket = (b2 - 6.0) * bessel_i0_scaled(x) - b2 * bessel_i1_scaled(x);
    Ok(0.5 * r * r * (e6 - (1.0 / 12.0) * (PI / 6.0).sqrt() * e12 * bracket))
}

/// Closed form of the Hankel integral from standard tables, α = 3/2:
/// R²[(1/3)e^{−b²/6} + (√π/(8α^{3/2}))e^{−b²/(8α)}((1 − b²/(4α))I₀(b²/(8α)) + (b²/(4α))I₁(b²/(8α)))].
pub fn ff_reference_closed(q: f64, r: f64) -> Result<f64> {
    let b = q * r;
    let x = guard(b)?;
    let alpha: f64 = 1.5;
    let b2 = b * b;
    let u = b2 / (4.0 * alpha);
    // e^{−x} I_k(x) with x = b²/(8α) = b²/12
    let second = PI.sqrt() / (8.0 * alpha.powf(1.5))
        * ((1.0 - u) * bessel_i0_scaled(x) + u * bessel_i1_scaled(x));
    Ok(r * r * ((-b2 / 6.0).exp() / 3.0 + second))
}

/// Smallest b = QR > 0 where [`ff_closed`] changes sign, by scan and bisection.
pub fn closed_form_sign_change(r: f64) -> Option<f64> {
    let f = |b: f64| ff_closed(b / r, r).unwrap_or(f64::NAN);
    let mut lo = 0.0;
    let mut flo = f(lo);
    let step = 0.01;
    for i in 1..=9000 {
        let hi = i as f64 * step;
        let fhi = f(hi);
        if flo.signum() != fhi.signum() {
            let (mut a, mut c) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + c);
                if f(mid).signum() == flo.signum() {
                    a = mid;
                } else {
                    c = mid;
                }
            }
            return Some(0.5 * (a + c));
        }
        lo = hi;
        flo = fhi;
    }
    None
}

/// Hyperbolic curve on `q` by the Hankel quadrature.
pub fn hankel_curve(q: &[f64], r: f64, quad: &QuadratureSpec) -> Result<FormFactorCurve> {
    let g = q.iter().map(|&x| ff_hankel(x, r, quad)).collect::<Result<Vec<_>>>()?;
    FormFactorCurve::new(q.to_vec(), g, FormFactorMethod::Hankel)
}

/// Hyperbolic curve on `q` from the printed closed form.
pub fn closed_curve(q: &[f64], r: f64) -> Result<FormFactorCurve> {
    let g = q.iter().map(|&x| ff_closed(x, r)).collect::<Result<Vec<_>>>()?;
    FormFactorCurve::new(q.to_vec(), g, FormFactorMethod::ClosedForm)
}

/// Hyperbolic curve on `q` from the double integral.
pub fn exact_curve(q: &[f64], cfg: &PTIIConfig, quad: &QuadratureSpec) -> Result<FormFactorCurve> {
    let mut g = Vec::with_capacity(q.len());
    let mut im = Vec::with_capacity(q.len());
    for &x in q {
        let (re, i) = ff_exact(x, cfg, quad)?;
        g.push(re);
        im.push(i);
    }
    let mut c = FormFactorCurve::new(q.to_vec(), g, FormFactorMethod::ExactFh)?;
    c.imag_diagnostic = im;
    Ok(c)
}

/// Rosen-Morse comparator curve.
pub fn rosen_morse_curve(q: &[f64], p: &RMParams) -> Result<FormFactorCurve> {
    let g = q.iter().map(|&x| rmt_formfactor(x, p)).collect::<Result<Vec<_>>>()?;
    FormFactorCurve::new(q.to_vec(), g, FormFactorMethod::RosenMorse)
}

/// Exact integrand at ρ: R² C² cosh^{−2s}ρ sinh^{2m}ρ · Re⟨e^{(ρ cos φ)/2} e^{iQRρ cos φ}⟩_φ,
/// with ⟨·⟩_φ the angular average.
pub fn exact_integrand(rho: f64, q: f64, cfg: &PTIIConfig, quad: &QuadratureSpec) -> Result<f64> {
    let c2 = ground_state_constant(cfg)?.powi(2);
    let w = radial_weight(Kernel::Full, rho, cfg, c2);
    if w == 0.0 {
        return Ok(0.0);
    }
    let r = cfg.params.r;
    let ang = angular_integral(0.5 * rho, q * r * rho, quad)?;
    Ok(r * r * w * ang.re / (2.0 * PI))
}

/// Approximate integrand at ρ: R² e^{−3ρ²/2}(1 + ρ/2) ρ J₀(QRρ).
pub fn approx_integrand(rho: f64, q: f64, r: f64) -> f64 {
    r * r * hankel_kernel(rho) * bessel_j0(q * r * rho)
}
