//! The conformance suite: every invariant with its measured value.
//!
//! Status `Documented` marks a reproducible finding about the model's
//! printed formulas (a discrepancy that is detected, reported and kept).

use std::f64::consts::PI;
use std::time::Instant;

use curvedspec::formfactor::{
    angular_reduction, closed_form_sign_change, ff_closed, ff_exact, ff_hankel, ff_reference_closed,
};
use curvedspec::hyperbolic::{
    bound_state_count, ptii_energy, ptii_levels_fd, ptii_norm_constant, ptii_value, PTIIConfig, SConvention, WaveForm,
};
use curvedspec::lfh::{
    apply_ladder_exact, conformal_commutator_check, conformal_test_functions, default_grid, lfh_energy_sq, lfh_levels,
    lfh_wavefunction, susy_spectrum_check, Branch, Ladder, ModelParams,
};
use curvedspec::limits::{energy_contraction_error, hypergeom_limit_rate, wavefunction_contraction_error};
use curvedspec::quad::{integrate, QuadratureSpec};
use curvedspec::rosenmorse::{rmt_energy, rmt_formfactor, rmt_levels_fd, rmt_q4_asymptote, RMParams};
use curvedspec::specfun::bessel_j0;
use curvedspec::wave::l2;

use crate::config::{gev_to_fm, RunConfig};
use crate::dataset::Dataset;
use crate::figures::{figure, normalized_curves, FigureId};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Documented,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Documented => "DOCUMENTED",
            Status::Fail => "FAIL",
        }
    }

    pub fn ok(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invariant {
    pub id: &'static str,
    /// Acceptance criterion number, if the invariant decides one.
    pub criterion: Option<u8>,
    pub status: Status,
    pub measured: f64,
    pub threshold: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub invariants: Vec<Invariant>,
    pub config_hash: String,
    pub ratio_closed_over_hankel_at_q0: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.invariants.iter().all(|i| i.status.ok())
    }

    pub fn failures(&self) -> Vec<&Invariant> {
        self.invariants.iter().filter(|i| !i.status.ok()).collect()
    }

    /// All invariants deciding criterion `c`.
    pub fn criterion(&self, c: u8) -> Vec<&Invariant> {
        self.invariants.iter().filter(|i| i.criterion == Some(c)).collect()
    }

    pub fn to_dataset(&self, cfg: &RunConfig) -> Dataset {
        let mut ds = Dataset::new(&["id", "criterion", "status", "measured", "threshold", "detail"]);
        crate::figures::provenance(&mut ds, cfg, "check");
        let count = |s: Status| self.invariants.iter().filter(|i| i.status == s).count();
        ds.meta("invariants", self.invariants.len())
            .meta("pass", count(Status::Pass))
            .meta("documented", count(Status::Documented))
            .meta("fail", count(Status::Fail))
            .meta("ratio_closed_over_hankel_at_Q0", crate::dataset::format_real(self.ratio_closed_over_hankel_at_q0));
        for i in &self.invariants {
            let crit = i.criterion.map(|c| format!("C{c:02}")).unwrap_or_else(|| "-".into());
            ds.push(vec![
                i.id.into(),
                crit.as_str().into(),
                i.status.as_str().into(),
                i.measured.into(),
                clean(&i.threshold).as_str().into(),
                clean(&i.detail).as_str().into(),
            ]);
        }
        ds
    }
}

// CSV cells carry no commas or newlines
fn clean(s: &str) -> String {
    s.replace(',', ";").replace('\n', " ")
}

struct Suite {
    out: Vec<Invariant>,
}

impl Suite {
    fn add(&mut self, id: &'static str, criterion: Option<u8>, status: Status, measured: f64, threshold: &str, detail: String) {
        self.out.push(Invariant {
            id,
            criterion,
            status,
            measured,
            threshold: threshold.to_string(),
            detail,
        });
    }

    /// PASS when `ok`, otherwise FAIL.
    fn pass_if(&mut self, id: &'static str, criterion: Option<u8>, ok: bool, measured: f64, threshold: &str, detail: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.add(id, criterion, status, measured, threshold, detail);
    }

    /// DOCUMENTED when the finding reproduces, otherwise FAIL.
    fn finding(&mut self, id: &'static str, criterion: Option<u8>, found: bool, measured: f64, threshold: &str, detail: String) {
        let status = if found { Status::Documented } else { Status::Fail };
        self.add(id, criterion, status, measured, threshold, detail);
    }

    /// Runs `f`; an error becomes a FAIL row under `id`.
    fn guard(&mut self, id: &'static str, criterion: Option<u8>, f: impl FnOnce(&mut Suite) -> Result<(), CliError>) {
        if let Err(e) = f(self) {
            self.add(id, criterion, Status::Fail, f64::NAN, "evaluates", e.to_string());
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let p = cfg.params()?;
    let quad = cfg.quad();
    let mut s = Suite { out: Vec::new() };

    s.pass_if(
        "quadrature_tolerances_sane",
        None,
        quad.rel_tol <= 1e-6 && quad.abs_tol <= 1e-6,
        quad.rel_tol,
        "rel_tol <= 1e-6",
        format!("rel_tol {:e} abs_tol {:e}", quad.rel_tol, quad.abs_tol),
    );

    parameters(&mut s, &p);
    s.guard("lfh_spectrum", Some(2), |s| lfh_spectrum(s, &p));
    s.guard("susy", Some(3), |s| susy(s, &p));
    s.guard("conformal", Some(4), |s| conformal(s, &p));
    s.guard("ptii_spectrum", Some(5), |s| ptii_spectrum(s, &p));
    s.guard("normalization", Some(6), |s| normalization(s, cfg));
    s.guard("contraction", Some(7), |s| contraction(s, cfg));
    s.guard("hypergeometric_limit", Some(8), hypergeometric_limit);
    s.guard("angular_reduction", Some(9), |s| angular(s, &quad));
    s.guard("hankel_anchor", Some(10), |s| hankel_anchor(s, cfg));
    let mut ratio = f64::NAN;
    s.guard("closed_form_findings", Some(11), |s| {
        ratio = closed_form_findings(s, cfg)?;
        Ok(())
    });
    s.guard("figure_shapes", Some(12), |s| figure_shapes(s, cfg));
    s.guard("rosen_morse", Some(13), rosen_morse);
    s.guard("determinism", Some(14), |s| determinism(s, cfg));
    s.guard("exact_double_integral", None, |s| exact_double_integral(s, cfg));

    Ok(Report {
        invariants: s.out,
        config_hash: cfg.hash(),
        ratio_closed_over_hankel_at_q0: ratio,
    })
}

fn parameters(s: &mut Suite, p: &ModelParams) {
    let derived = p.s_derived();
    s.pass_if(
        "s_derived_from_kappa_R",
        Some(1),
        (derived - 2.478).abs() <= 0.005,
        derived,
        "2.478 +- 0.005",
        "sqrt(kappa^4 R^4 + 1/4)".into(),
    );
    s.finding(
        "s_derived_vs_adopted_5_2",
        Some(1),
        (derived - 2.5).abs() > 1e-3,
        derived - 2.5,
        "reported",
        format!("derived s = {derived:.6} differs from the adopted 5/2; figures use the configured convention"),
    );
    s.finding(
        "kappa4_r2_saturation",
        None,
        true,
        p.kappa4_r2(),
        "reported",
        "saturation height of the Higgs potential kappa^4 R^2 in fm^-2".into(),
    );
}

fn lfh_spectrum(s: &mut Suite, p: &ModelParams) -> Result<(), CliError> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for nu in 1..=3 {
        let levels = lfh_levels(nu, p, 4096, 4);
        for (n, e) in levels.iter().enumerate() {
            worst = worst.max(rel(*e, lfh_energy_sq(n, nu, p)));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    s.pass_if(
        "lfh_levels_match_4k2(n+nu+1)",
        Some(2),
        worst < 1e-3,
        worst,
        "< 1e-3 relative",
        "lowest 4 levels; nu = 1 2 3; 4096 points".into(),
    );
    s.pass_if("lfh_levels_runtime_s", Some(2), elapsed < 5.0, elapsed, "< 5 s", "wall clock".into());
    Ok(())
}

fn susy(s: &mut Suite, p: &ModelParams) -> Result<(), CliError> {
    let r = susy_spectrum_check(3, 1, p, 4096)?;
    s.pass_if(
        "susy_annihilation_exact",
        Some(3),
        r.annihilation_exact < 1e-6,
        r.annihilation_exact,
        "< 1e-6",
        "|A psi_+^{01}| / |psi_+^{01}| with the analytic derivative".into(),
    );
    s.pass_if(
        "susy_partner_gap",
        Some(3),
        r.partner_gap < 1e-3,
        r.partner_gap,
        "< 1e-3 relative",
        "H+ level 1 vs H- level 0".into(),
    );
    s.pass_if("susy_nilpotency", Some(3), r.nilpotency < 1e-10, r.nilpotency, "< 1e-10", "Q^2 on a doublet".into());
    s.pass_if(
        "susy_anticommutator",
        None,
        r.anticommutator < 1e-4,
        r.anticommutator,
        "< 1e-4",
        "{Q; Q+} equals diag(H+; H-)".into(),
    );

    // B⁺ maps Ψ₋ onto Ψ₊ with amplitude E, opposite in sign to the printed relation
    let grid = default_grid(p, 4096);
    let mut amp_err = 0.0f64;
    let mut sign_err = 0.0f64;
    for n in 0..3 {
        let e = lfh_energy_sq(n, 1, p).sqrt();
        let plus = lfh_wavefunction(Branch::Plus, n, 1, p, &grid)?;
        let bd = apply_ladder_exact(Ladder::Bdag, Branch::Minus, n, 1, 1, p, &grid)?;
        let diff: Vec<f64> = bd.values.iter().zip(&plus.values).map(|(a, b)| a + e * b).collect();
        sign_err = sign_err.max(l2(&diff) / (e * l2(&plus.values)));
        let dot: f64 = bd.values.iter().zip(&plus.values).map(|(a, b)| a * b).sum();
        let amp = dot / plus.values.iter().map(|v| v * v).sum::<f64>();
        amp_err = amp_err.max((amp.abs() / e - 1.0).abs());
    }
    s.pass_if(
        "ladder_bdag_amplitude",
        None,
        amp_err < 1e-5,
        amp_err,
        "< 1e-5 relative",
        "|<psi_+; B+ psi_->| / E".into(),
    );
    s.finding(
        "ladder_bdag_sign",
        None,
        sign_err < 1e-8,
        sign_err,
        "B+ psi_- = -E psi_+",
        "the mapping carries a minus sign relative to E psi_+".into(),
    );
    Ok(())
}

fn conformal(s: &mut Suite, p: &ModelParams) -> Result<(), CliError> {
    let tests = conformal_test_functions(1, 2, p, 4096)?;
    let r = conformal_commutator_check(1, p, &tests)?;
    for (id, v) in [
        ("conformal_[J+;J-]=-2D0", r.comm_plus_minus),
        ("conformal_[D0;J+]=-J+", r.comm_d0_plus),
        ("conformal_[D0;J-]=J-", r.comm_d0_minus),
    ] {
        s.pass_if(id, Some(4), v < 1e-4, v, "< 1e-4 relative L2", "sampled LFH states n <= 2".into());
    }
    s.pass_if(
        "conformal_hamiltonian",
        None,
        r.hamiltonian < 1e-4,
        r.hamiltonian,
        "< 1e-4 relative L2",
        "2(J+ + kappa^4 J-) reproduces the oscillator operator up to a constant".into(),
    );
    let ratio = r.offset_measured / r.offset_c_plus;
    s.finding(
        "shifted_hamiltonian_offset",
        None,
        (ratio - 1.0).abs() < 1e-3,
        ratio,
        "offset / c+ = 1",
        format!(
            "2(J+ + kappa^4 J-) = H+ + c+ with c+ = {:.6}; the offset is c+ and not 2c+",
            r.offset_c_plus
        ),
    );
    Ok(())
}

fn ptii_spectrum(s: &mut Suite, p: &ModelParams) -> Result<(), CliError> {
    let cfg = PTIIConfig::new(1, *p, SConvention::Override(2.5))?;
    let fd = ptii_levels_fd(&cfg, 4096, 8.0, 1);
    let e0 = ptii_energy(0, &cfg)?.1;
    let err = rel(fd[0], e0);
    s.pass_if("ptii_ground_level_s=5/2", Some(5), err < 5e-3, err, "< 0.5%", format!("eps_higgs = {e0:.6} fm^-2"));
    let deep = PTIIConfig::new(1, *p, SConvention::Override(10.6))?;
    let fd = ptii_levels_fd(&deep, 4096, 8.0, 3);
    let mut worst = 0.0f64;
    for (n, e) in fd.iter().enumerate() {
        worst = worst.max(rel(*e, ptii_energy(n, &deep)?.1));
    }
    s.pass_if("ptii_three_levels_s=10.6", Some(5), worst < 5e-3, worst, "< 0.5%", "n = 0 1 2".into());
    let count = bound_state_count(&cfg);
    s.pass_if("ptii_bound_state_count", Some(5), count == 1, count as f64, "= 1", "s = 5/2; m = 1".into());
    Ok(())
}

fn normalization(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let ptii = PTIIConfig::new(cfg.m, cfg.params()?, SConvention::Override(2.5))?;
    let quad = QuadratureSpec {
        rel_tol: 1e-13,
        abs_tol: 1e-16,
        ..cfg.quad()
    };
    let c = ptii_norm_constant(0, &ptii, &quad)?;
    // ψ² sinh ρ decays like e^{−2(s−m−1)ρ}
    let cut = 40.0 / (2.0 * (ptii.s - ptii.m as f64 - 1.0));
    let f = |rho: f64| {
        let v = ptii_value(0, &ptii, rho, WaveForm::Surface, c).unwrap_or(f64::NAN);
        v * v * rho.sinh()
    };
    let total = integrate(f, 0.0, cut, &quad)?.value;
    let err = (total - 1.0).abs();
    s.pass_if(
        "surface_ground_state_norm",
        Some(6),
        err < 1e-8,
        err,
        "< 1e-8",
        "closed-form Gamma constant; s = 5/2".into(),
    );
    Ok(())
}

fn contraction(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let e20 = energy_contraction_error(0, 1, &ModelParams::new(1.0, 20.0)?)?;
    let e40 = energy_contraction_error(0, 1, &ModelParams::new(1.0, 40.0)?)?;
    let ratio = e20 / e40;
    s.pass_if(
        "energy_contraction_rate",
        Some(7),
        (3.5..=4.5).contains(&ratio),
        ratio,
        "in [3.5; 4.5]",
        "error(R = 20) / error(R = 40); kappa = 1".into(),
    );
    let zeta: Vec<f64> = (0..=400).map(|i| i as f64 * 0.005).collect();
    let w = wavefunction_contraction_error(0, cfg.m, &cfg.params()?, cfg.convention(), &zeta)?;
    s.pass_if(
        "fig1_unit_peak_difference",
        Some(7),
        w.max_unit_peak_diff < 0.1,
        w.max_unit_peak_diff,
        "< 0.1 on zeta in [0; 1.5] fm",
        format!("peaks at {:.3} fm (flat) and {:.3} fm (hyperbolic)", w.peak_lfh, w.peak_ptii),
    );
    let gap = (w.peak_lfh - w.peak_ptii).abs();
    s.pass_if("fig1_peak_locations", None, gap <= 0.05, gap, "<= 0.05 fm", "argmax distance".into());
    Ok(())
}

fn hypergeometric_limit(s: &mut Suite) -> Result<(), CliError> {
    let rate = hypergeom_limit_rate(1, 1, 100.0, 1000.0, 1.0)?;
    s.pass_if(
        "hypergeometric_limit_rate",
        Some(8),
        (0.8..=1.2).contains(&rate),
        rate,
        "in [0.8; 1.2]",
        "error ~ s^-p at kappa^2 zeta^2 = 1; s = 100 and 1000".into(),
    );
    Ok(())
}

fn angular(s: &mut Suite, quad: &QuadratureSpec) -> Result<(), CliError> {
    let mut worst = 0.0f64;
    for x in [0.0, 1.0, 2.4048, 5.0, 10.0] {
        worst = worst.max((angular_reduction(x, quad)? - bessel_j0(x)).abs());
    }
    s.pass_if(
        "angular_reduction_j0",
        Some(9),
        worst < 1e-8,
        worst,
        "< 1e-8",
        "x = 0 1 2.4048 5 10".into(),
    );
    Ok(())
}

fn hankel_anchor(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let r = cfg.r_fm;
    let quad = cfg.quad();
    let fine = quad.scaled(0.5);
    let mut worst = 0.0f64;
    let mut drift = 0.0f64;
    for i in 0..=40 {
        let b = 0.25 * i as f64;
        let q = b / r;
        let h = ff_hankel(q, r, &quad)?;
        worst = worst.max(rel(h, ff_reference_closed(q, r)?));
        drift = drift.max(rel(ff_hankel(q, r, &fine)?, h));
    }
    s.pass_if(
        "hankel_vs_table_closed_form",
        Some(10),
        worst < 1e-6,
        worst,
        "< 1e-6 relative",
        "QR in [0; 10] step 0.25".into(),
    );
    s.pass_if(
        "hankel_tolerance_halving",
        Some(10),
        drift < 1e-8,
        drift,
        "< 1e-8 relative",
        "tolerances halved".into(),
    );
    Ok(())
}

fn closed_form_findings(s: &mut Suite, cfg: &RunConfig) -> Result<f64, CliError> {
    let r = cfg.r_fm;
    let quad = cfg.quad();
    let ratio = ff_closed(0.0, r)? / ff_hankel(0.0, r, &quad)?;
    s.finding(
        "ratio_closed_over_hankel_at_Q0",
        Some(11),
        (ratio - 1.5).abs() < 1e-6,
        ratio,
        "1.5 +- 1e-6",
        "printed closed form at Q = 0 is 3/2 of the Hankel quadrature".into(),
    );
    // shapes at QR = 4
    let q4 = 4.0 / r;
    let printed = ff_closed(q4, r)? / ff_closed(0.0, r)?;
    let table = ff_reference_closed(q4, r)? / ff_reference_closed(0.0, r)?;
    let divergence = rel(printed, table);
    s.finding(
        "second_term_exponent_mismatch",
        Some(11),
        divergence > 0.05,
        divergence,
        "> 5% at QR = 4",
        "normalized printed form (e^{-b^2/6}) vs table form (e^{-b^2/12})".into(),
    );
    // Q⁴G tails over QR ∈ [20, 40]
    let tail = |f: &dyn Fn(f64) -> Result<f64, curvedspec::Error>| -> Result<f64, CliError> {
        let (b1, b2): (f64, f64) = (20.0, 40.0);
        let g1 = (b1.powi(4) * f(b1 / r)?).abs();
        let g2 = (b2.powi(4) * f(b2 / r)?).abs();
        Ok((g2 / g1).ln() / (b2 / b1).ln())
    };
    let table_rate = tail(&|q| ff_reference_closed(q, r))?;
    s.finding(
        "table_form_q4_tail_growth",
        None,
        (0.8..=1.2).contains(&table_rate),
        table_rate,
        "exponent in [0.8; 1.2]",
        "Q^4 G grows ~ Q for the table form".into(),
    );
    let printed_rate = tail(&|q| ff_closed(q, r))?;
    s.finding(
        "printed_form_q4_tail",
        None,
        printed_rate.is_finite(),
        printed_rate,
        "reported",
        "log-log slope of |Q^4 G| for the printed form".into(),
    );
    match closed_form_sign_change(r) {
        Some(b) => s.finding(
            "printed_form_sign_change",
            None,
            true,
            b,
            "reported",
            format!("printed closed form changes sign at QR = {b:.6} (Q = {:.6} GeV)", b / r * curvedspec::HBAR_C_GEV_FM),
        ),
        None => s.finding("printed_form_sign_change", None, true, f64::NAN, "reported", "no sign change for QR < 90".into()),
    }
    Ok(ratio)
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn figure_shapes(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let (q, h, rm) = normalized_curves(cfg)?;
    let upto = |limit: f64| q.iter().take_while(|&&x| x <= limit + 1e-12).count();
    let k1 = upto(1.0);
    for (id, g) in [("fig2_hyperbolic_shape", &h.g), ("fig2_rosen_morse_shape", &rm.g)] {
        let head = &g[..k1];
        let ok = g[0] == 1.0 && head.iter().all(|&x| x > 0.0) && decreasing(head);
        let last = head[head.len() - 1];
        s.pass_if(id, Some(12), ok, last, "G(0) = 1; positive and decreasing on [0; 1] GeV", format!("G(1 GeV) = {last:.6}"));
    }
    let k05 = upto(0.5);
    for (id, g) in [("fig3_hyperbolic_rise", &h.g), ("fig3_rosen_morse_rise", &rm.g)] {
        let q4g: Vec<f64> = (1..k05).map(|i| q[i].powi(4) * g[i]).collect();
        let ok = increasing(&q4g);
        s.pass_if(id, Some(12), ok, q4g[q4g.len() - 1], "Q^4 G increasing on (0; 0.5] GeV", "value at 0.5 GeV".into());
    }
    let fig4 = figure(FigureId::Fig4, cfg)?;
    let area = |k: &str| -> f64 { fig4.meta_value(k).and_then(|v| v.parse().ok()).unwrap_or(f64::NAN) };
    let (ex, ap) = (area("area_exact_Q0"), area("area_approx_Q0"));
    let diff = (ex - ap).abs() / ap.abs();
    s.pass_if(
        "fig4_area_difference_Q0",
        Some(12),
        diff < 0.1,
        diff,
        "< 10% relative",
        format!("areas {ex:.6} (exact) and {ap:.6} (approx)"),
    );
    Ok(())
}

fn rosen_morse(s: &mut Suite) -> Result<(), CliError> {
    let p = RMParams::new(2.0, 1.0, 0)?;
    let g0 = rmt_formfactor(0.0, &p)?;
    s.pass_if("rm_formfactor_origin", Some(13), g0 == 1.0, g0, "= 1 exactly", "continuous extension".into());
    let q: f64 = 100.0;
    let ratio = q.powi(4) * rmt_formfactor(q, &p)? / rmt_q4_asymptote(&p);
    s.pass_if(
        "rm_q4_asymptote",
        Some(13),
        (ratio - 1.0).abs() < 0.01,
        ratio,
        "within 1% at Qd = 100",
        "16 b^2 (b^2 + 1) / d^4".into(),
    );
    let mut worst = 0.0f64;
    for l in 0..3 {
        let pl = RMParams { l, ..p };
        for (n, e) in rmt_levels_fd(&pl, 4096, 3 - l).iter().enumerate() {
            worst = worst.max(rel(*e, rmt_energy(n, l, &pl)));
        }
    }
    s.pass_if("rm_spectrum_fd", Some(13), worst < 5e-3, worst, "< 0.5% for N <= 3", "b = 2; d = 1".into());
    let mut exact = true;
    for big_n in 1..=6 {
        let e = rmt_energy(0, big_n - 1, &p);
        exact &= (0..big_n).all(|n| rmt_energy(n, big_n - 1 - n, &p) == e);
    }
    s.pass_if("rm_n_degeneracy", Some(13), exact, 0.0, "exact", "N = n + l + 1 <= 6".into());
    Ok(())
}

fn determinism(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let mut identical = true;
    for id in FigureId::ALL {
        let a = figure(id, cfg)?;
        let b = figure(id, cfg)?;
        identical &= a.render(cfg.output_format) == b.render(cfg.output_format);
    }
    s.pass_if(
        "figures_byte_identical",
        Some(14),
        identical,
        identical as u8 as f64,
        "identical bytes",
        "each figure rendered twice".into(),
    );
    Ok(())
}

fn exact_double_integral(s: &mut Suite, cfg: &RunConfig) -> Result<(), CliError> {
    let ptii = cfg.ptii()?;
    let quad = cfg.quad();
    let (g0, _) = ff_exact(0.0, &ptii, &quad)?;
    let h0 = ff_hankel(0.0, cfg.r_fm, &quad)?;
    s.finding(
        "exact_vs_hankel_at_Q0",
        None,
        g0.is_finite(),
        g0 / (2.0 * PI * h0),
        "reported",
        "double integral / (2 pi Hankel) at Q = 0".into(),
    );
    let (re, im) = ff_exact(gev_to_fm(1.0), &ptii, &quad)?;
    s.finding(
        "exact_imaginary_residue",
        None,
        im.is_finite(),
        im / re.abs(),
        "reported",
        "|Im| / |Re| of the double integral at Q = 1 GeV".into(),
    );
    Ok(())
}
