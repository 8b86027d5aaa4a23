//! Adaptive quadrature: globally adaptive 21-point Gauss-Kronrod bisection,
//! with a tanh-sinh pass as fallback when the subdivision budget runs out
//! (typically an endpoint singularity such as the `rho -> 0` end of the
//! radial integrands).

use crate::error::{Error, Result};

/// Integration scheme parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Upper cutoff of semi-infinite radial integrals.
    pub rho_max: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_subdivisions: 2000,
            rho_max: 6.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::Invalid("quadrature tolerances must be > 0".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Invalid("max_subdivisions must be > 0".into()));
        }
        if !(self.rho_max > 0.0) {
            return Err(Error::Invalid("rho_max must be > 0".into()));
        }
        Ok(())
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

/// Adaptive Gauss-Kronrod on `[a, b]`; no fallback.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            subdivisions: 0,
        });
    }
    let mut segments = vec![kronrod21(&f, a, b)];
    let mut evaluations = 21;
    loop {
        let (value, error) = segments
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                subdivisions: segments.len(),
                estimate: value,
                error,
            });
        }
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
                subdivisions: segments.len(),
            });
        }
        if segments.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions: segments.len(),
                estimate: value,
                error,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("segments are never empty");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // interval exhausted at machine resolution
            return Err(Error::NonConvergence {
                subdivisions: segments.len() + 1,
                estimate: value,
                error,
            });
        }
        segments.push(kronrod21(&f, s.a, mid));
        segments.push(kronrod21(&f, mid, s.b));
        evaluations += 42;
    }
}

/// Double-exponential (tanh-sinh) quadrature on `[a, b]`.
///
/// Halves the step until two successive levels agree to `rel_tol`
/// (relative) or `abs_tol`; tolerates integrable endpoint singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    use std::f64::consts::FRAC_PI_2;
    const T_MAX: f64 = 3.2;
    let half = 0.5 * (b - a);
    // Node pair at +-t. The endpoint distance delta = 1 - tanh(u) is formed
    // directly so nodes next to a singular endpoint keep full precision.
    let pair = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        let delta = 2.0 / ((2.0 * u).exp() + 1.0);
        let xl = a + half * delta;
        let xr = b - half * delta;
        let mut s = 0.0;
        if xl > a && xl < b {
            s += f(xl);
        }
        if xr > a && xr < b {
            s += f(xr);
        }
        s * w
    };
    let mut h = 1.0;
    let mut sum = FRAC_PI_2 * f(0.5 * (a + b));
    let mut evaluations = 1;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        sum += pair(k as f64 * h);
        evaluations += 2;
        k += 1;
    }
    let mut prev = sum * h * half;
    for level in 1..=10 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            sum += pair(k as f64 * h);
            evaluations += 2;
            k += 2;
        }
        let cur = sum * h * half;
        let err = (cur - prev).abs();
        if level >= 3 && err <= spec.abs_tol.max(spec.rel_tol * cur.abs()) {
            return Ok(QuadResult {
                value: cur,
                error: err,
                evaluations,
                subdivisions: 0,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        subdivisions: 0,
        estimate: prev,
        error: f64::NAN,
    })
}

/// Integrate `f` over `[a, b]`: adaptive Gauss-Kronrod first, tanh-sinh if
/// the subdivision budget is exhausted.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    match gauss_kronrod(&f, a, b, spec) {
        Ok(r) => Ok(r),
        Err(gk_err) => tanh_sinh(&f, a, b, spec).map_err(|_| gk_err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        // K21 integrates degree <= 31 exactly
        for deg in [0, 5, 17, 31] {
            let s = kronrod21(&|x: f64| x.powi(deg), 0.0, 1.0);
            assert_relative_eq!(s.value, 1.0 / (deg as f64 + 1.0), max_relative = 1e-14);
        }
    }

    #[test]
    fn adaptive_gaussian_and_oscillatory() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x: f64| (-x * x).exp(), 0.0, 10.0, &spec).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI.sqrt() / 2.0, max_relative = 1e-13);
        let r = integrate(|x: f64| (50.0 * x).cos(), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, (50.0f64).sin() / 50.0, max_relative = 1e-11);
    }

    #[test]
    fn endpoint_singularity() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-10);
        let r = tanh_sinh(|x: f64| x.ln(), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, -1.0, max_relative = 1e-10);
    }

    #[test]
    fn subdivision_limit_reports_non_convergence() {
        let spec = QuadratureSpec {
            max_subdivisions: 2,
            ..Default::default()
        };
        let r = gauss_kronrod(|x: f64| (400.0 * x).sin() * x.exp(), 0.0, 10.0, &spec);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
