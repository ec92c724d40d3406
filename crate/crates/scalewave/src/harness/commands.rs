//! The five subcommand implementations. Each writes its outputs under the
//! resolved output directory and returns a process exit code.

use super::config::RunConfig;
use super::output::{csv_document, json_document, num, write_file};
use super::sweep::{run_sweep, NumericOutcome};
use super::{svg, HarnessError, EXIT_DISAGREEMENT, EXIT_OK};
use crate::diagnostics::{
    functional_scan, sign_condition_values, weight_residual, CutoffPair, FunctionalScan,
    ScanOptions,
};
use crate::exponents::{
    classify_with, conjectured_strauss_region, derive, Arithmetic, ClassifyOptions,
    CoefficientPair, DerivedExponents, RegimeKind, RegimeVerdict,
};
use crate::fit::SlopeFit;
use crate::linear_modes::{evolve, fit_decay, norms, NormKind, RadialSpectrum};
use crate::semilinear_sim::{
    check_forecast, FieldPair, ForecastReport, RadialGrid, SimOptions, Simulation,
};
use serde::Serialize;
use std::path::{Path, PathBuf};

pub struct CmdContext {
    pub config: RunConfig,
    pub out_dir: PathBuf,
    pub exact: bool,
    pub jobs: Option<usize>,
}

impl CmdContext {
    fn arithmetic(&self) -> Arithmetic {
        if self.exact {
            Arithmetic::Exact
        } else {
            Arithmetic::Float
        }
    }

    fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            epsilon: self.config.tolerances.epsilon,
            arithmetic: self.arithmetic(),
        }
    }
}

/// Resolve the output directory: CLI flag, then config, then the
/// environment variable, then the working directory.
pub fn resolve_out_dir(flag: Option<PathBuf>, cfg: &RunConfig) -> PathBuf {
    flag.or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var(super::OUT_DIR_ENV).ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

#[derive(Serialize)]
struct ClassifyPayload {
    exact: bool,
    derived: DerivedExponents,
    verdict: RegimeVerdict,
    /// Strauss-type region overlay; a CONJECTURE, never merged into the
    /// verdict kind.
    conjectured_strauss_blowup: bool,
}

pub fn classify_cmd(ctx: &CmdContext) -> Result<i32, HarnessError> {
    let coeffs = ctx.config.system_coefficients()?;
    let exps = ctx.config.exponent_pair()?;
    let derived = derive(&coeffs);
    let verdict = classify_with(&coeffs, &exps, &ctx.classify_options())
        .map_err(|e| HarnessError::Config(format!("classification: {e}")))?;
    let conjecture = conjectured_strauss_region(&coeffs, &exps);

    println!("verdict: {:?}", verdict.kind);
    println!("  F1 = {}, F2 = {}", num(verdict.f1), num(verdict.f2));
    println!(
        "  delta = ({}, {}), alpha = ({:?}, {:?})",
        num(derived.delta1),
        num(derived.delta2),
        derived.alpha1,
        derived.alpha2
    );
    println!(
        "  p_tilde = {:?}, q_tilde = {:?}",
        derived.p_tilde, derived.q_tilde
    );
    if let Some(g) = verdict.gamma {
        println!("  loss of decay gamma = {}", num(g));
    }
    if let Some(g) = verdict.gamma_bar {
        println!("  loss of decay gamma_bar = {}", num(g));
    }
    if let Some(f) = &verdict.forecast {
        println!(
            "  forecast (1+t)-exponents: u: L2 {}, energy {}; v: L2 {}, energy {}",
            num(f.rate_u_l2),
            num(f.rate_u_energy),
            num(f.rate_v_l2),
            num(f.rate_v_energy)
        );
    }
    for note in &verdict.admissibility_notes {
        println!("  note: {note}");
    }
    println!("  Strauss-type region [CONJECTURE]: {conjecture}");

    let payload = ClassifyPayload {
        exact: ctx.exact,
        derived,
        verdict,
        conjectured_strauss_blowup: conjecture,
    };
    let json = json_document(&ctx.config, &payload)?;
    let path = write_file(&ctx.out_dir, "classify.json", &json)?;
    println!("wrote {}", path.display());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SweepPayload {
    cells: usize,
    simulated: bool,
    disagreements: usize,
    cell_errors: usize,
    csv: String,
    svg: String,
}

pub fn sweep_cmd(ctx: &CmdContext) -> Result<i32, HarnessError> {
    let coeffs = ctx.config.system_coefficients()?;
    let derived = derive(&coeffs);
    let sweep_cfg = RunConfig::require(&ctx.config.sweep, "sweep")?.clone();
    let cells = run_sweep(&ctx.config, ctx.exact, ctx.jobs)?;
    let (ps, qs) = super::sweep::grid_values(&sweep_cfg);

    let header = [
        "p",
        "q",
        "kind",
        "f1",
        "f2",
        "gamma",
        "gamma_bar",
        "outcome",
        "agreement",
        "error",
    ];
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            vec![
                num(c.p),
                num(c.q),
                c.kind.as_str().to_string(),
                num(c.f1),
                num(c.f2),
                c.gamma.map(num).unwrap_or_default(),
                c.gamma_bar.map(num).unwrap_or_default(),
                c.outcome
                    .map(|o| o.as_str().to_string())
                    .unwrap_or_default(),
                c.agreement.map(|a| a.to_string()).unwrap_or_default(),
                c.error.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let csv = csv_document(&ctx.config, &header, &rows);
    let csv_path = write_file(&ctx.out_dir, "sweep.csv", &csv)?;

    let svg_text = svg::render_diagram(
        &cells,
        &ps,
        &qs,
        &derived,
        coeffs.n,
        sweep_cfg.simulate,
        &ctx.config,
    );
    let svg_path = write_file(&ctx.out_dir, "sweep.svg", &svg_text)?;

    let disagreements = cells.iter().filter(|c| c.agreement == Some(false)).count();
    let cell_errors = cells.iter().filter(|c| c.error.is_some()).count();
    // File names relative to the output directory: absolute paths would
    // break byte-identity of the summary across output locations.
    let payload = SweepPayload {
        cells: cells.len(),
        simulated: sweep_cfg.simulate,
        disagreements,
        cell_errors,
        csv: "sweep.csv".into(),
        svg: "sweep.svg".into(),
    };
    let json = json_document(&ctx.config, &payload)?;
    write_file(&ctx.out_dir, "sweep.json", &json)?;

    println!(
        "sweep: {} cells, {} disagreements, {} cell errors",
        cells.len(),
        disagreements,
        cell_errors
    );
    println!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(if disagreements > 0 {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct LindecayPayload {
    equation: u8,
    modes: usize,
    slopes: Option<LindecaySlopes>,
    /// Linear-theory exponents, present when the chosen equation is in the
    /// parabolic-like regime where the decay estimates apply.
    predicted_l2: Option<f64>,
    predicted_hdot1: Option<f64>,
    predicted_ut_l2: Option<f64>,
}

#[derive(Serialize)]
struct LindecaySlopes {
    window: [f64; 2],
    l2: SlopeFit,
    hdot1: SlopeFit,
    ut_l2: SlopeFit,
}

pub fn lindecay_cmd(ctx: &CmdContext) -> Result<i32, HarnessError> {
    let cfg = &ctx.config;
    let lin = RunConfig::require(&cfg.linear, "linear")?;
    let coeffs = cfg.system_coefficients()?;
    let pair: CoefficientPair = if lin.equation == 1 {
        coeffs.eq1
    } else {
        coeffs.eq2
    };
    let n = coeffs.n;

    let spec = RadialSpectrum::from_families(&lin.u0, &lin.u1, n, lin.t_max)
        .map_err(|e| HarnessError::Config(format!("linear data: {e}")))?;
    let s = lin.start_time;
    let t_grid: Vec<f64> = (0..=lin.samples)
        .map(|k| s + (lin.t_max - s) * k as f64 / lin.samples as f64)
        .collect();
    let states = evolve(&spec, &pair, s, &t_grid, cfg.tolerances.ode_tol)
        .map_err(|e| HarnessError::Numeric(format!("mode evolution: {e}")))?;
    let series = norms(&states, &spec);

    let header = ["t", "l2", "hdot1", "ut_l2"];
    let rows: Vec<Vec<String>> = series
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            vec![
                num(t),
                num(series.l2[k]),
                num(series.hdot1[k]),
                num(series.ut_l2[k]),
            ]
        })
        .collect();
    let csv = csv_document(cfg, &header, &rows);
    let csv_path = write_file(&ctx.out_dir, "lindecay.csv", &csv)?;

    let slopes = match &cfg.fit {
        Some(fit) => {
            let window = (fit.window[0], fit.window[1]);
            let one = |kind| {
                fit_decay(&series, kind, window)
                    .map_err(|e| HarnessError::Numeric(format!("decay fit: {e}")))
            };
            Some(LindecaySlopes {
                window: fit.window,
                l2: one(NormKind::L2)?,
                hdot1: one(NormKind::Hdot1)?,
                ut_l2: one(NormKind::UtL2)?,
            })
        }
        None => None,
    };

    let alpha = pair.alpha();
    let parabolic = pair.delta() > ((n + 1) * (n + 1)) as f64;
    let (predicted_l2, predicted_h1) = match alpha {
        Some(a) if parabolic && pair.mu > 0.0 => {
            let nf = n as f64;
            (Some(-(nf / 2.0) - a + 1.0), Some(-(nf / 2.0) - a))
        }
        _ => (None, None),
    };
    let payload = LindecayPayload {
        equation: lin.equation,
        modes: spec.len(),
        slopes,
        predicted_l2,
        predicted_hdot1: predicted_h1,
        predicted_ut_l2: predicted_h1,
    };
    if let Some(s) = &payload.slopes {
        println!(
            "lindecay: slopes l2 = {:.4} (r2 {:.4}), hdot1 = {:.4}, ut_l2 = {:.4}",
            s.l2.slope, s.l2.r_squared, s.hdot1.slope, s.ut_l2.slope
        );
        if let Some(p) = predicted_l2 {
            println!(
                "  linear-theory exponents: l2 {}, derivatives {}",
                p,
                predicted_h1.unwrap()
            );
        }
    }
    let json = json_document(cfg, &payload)?;
    write_file(&ctx.out_dir, "lindecay.json", &json)?;
    println!("wrote {}", csv_path.display());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct XnormReport {
    gamma1: f64,
    gamma2: f64,
    window: [f64; 2],
    sup_inf_m1: f64,
    sup_inf_m2: f64,
}

#[derive(Serialize)]
struct SimulatePayload {
    verdict: RegimeVerdict,
    derived: DerivedExponents,
    lightcone_t_max: f64,
    blowup: Option<crate::semilinear_sim::BlowupRecord>,
    outcome: NumericOutcome,
    agreement: Option<bool>,
    forecast: Option<ForecastReport>,
    xnorm: Option<XnormReport>,
    functional_scan: Option<FunctionalScan>,
}

pub fn simulate_cmd(ctx: &CmdContext) -> Result<i32, HarnessError> {
    let cfg = &ctx.config;
    let coeffs = cfg.system_coefficients()?;
    let exps = cfg.exponent_pair()?;
    let gc = RunConfig::require(&cfg.grid, "grid")?;
    let tc = RunConfig::require(&cfg.time, "time")?;
    if coeffs.n > 3 {
        eprintln!(
            "warning: n = {} is allowed but decay there is severe; finite windows make slope fits unreliable",
            coeffs.n
        );
    }
    let derived = derive(&coeffs);
    let verdict = classify_with(&coeffs, &exps, &ctx.classify_options())
        .map_err(|e| HarnessError::Config(format!("classification: {e}")))?;

    let want_fields = cfg
        .diagnostics
        .as_ref()
        .is_some_and(|d| !d.functional_scales.is_empty());
    let grid = RadialGrid::new(coeffs.n, gc.half_width, gc.nodes)
        .map_err(|e| HarnessError::Config(format!("grid: {e}")))?;
    let sim = Simulation::new(
        grid,
        coeffs,
        exps,
        SimOptions {
            cfl_factor: gc.cfl_factor,
            sample_interval: tc.sample_interval,
            blowup_factor: cfg.tolerances.blowup_factor,
            record_fields: want_fields,
            ..Default::default()
        },
    )
    .map_err(|e| HarnessError::Config(format!("simulation: {e}")))?;
    let out = sim
        .run(&cfg.data, tc.t_end)
        .map_err(|e| HarnessError::Numeric(format!("simulation: {e}")))?;
    let trace = &out.trace;

    let header = [
        "t", "l2_u", "l2_v", "linf_u", "linf_v", "energy_u", "energy_v",
    ];
    let rows: Vec<Vec<String>> = trace
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            vec![
                num(t),
                num(trace.l2_u[k]),
                num(trace.l2_v[k]),
                num(trace.linf_u[k]),
                num(trace.linf_v[k]),
                num(trace.energy_u[k]),
                num(trace.energy_v[k]),
            ]
        })
        .collect();
    let csv = csv_document(cfg, &header, &rows);
    let csv_path = write_file(&ctx.out_dir, "trace.csv", &csv)?;

    let is_global = matches!(
        verdict.kind,
        RegimeKind::GlobalSupercriticalBoth | RegimeKind::GlobalLossOnU | RegimeKind::GlobalLossOnV
    );
    let forecast = match (&cfg.fit, trace.blowup.is_none() && is_global) {
        (Some(fit), true) => Some(
            check_forecast(
                trace,
                &verdict,
                (fit.window[0], fit.window[1]),
                cfg.tolerances.slope_tol,
            )
            .map_err(|e| HarnessError::Numeric(format!("forecast check: {e}")))?,
        ),
        _ => None,
    };

    let outcome = if trace.blowup.is_some() {
        NumericOutcome::Diverged
    } else {
        match &forecast {
            Some(report) if report.pass => NumericOutcome::DecayedAtForecast,
            Some(_) => NumericOutcome::DecayedOffForecast,
            None => NumericOutcome::Inconclusive,
        }
    };
    let near_boundary = verdict.f1.max(verdict.f2).abs() < cfg.tolerances.boundary_band;
    let agreement = match (verdict.kind, outcome, near_boundary) {
        (_, _, true) => None,
        (RegimeKind::BlowUp, NumericOutcome::Diverged, _) => Some(true),
        (RegimeKind::BlowUp, _, _) => None,
        (RegimeKind::Undetermined, _, _) => None,
        (_, NumericOutcome::DecayedAtForecast, _) => Some(true),
        (_, NumericOutcome::DecayedOffForecast | NumericOutcome::Diverged, _) => Some(false),
        (_, NumericOutcome::Inconclusive, _) => None,
    };

    // Diagnostic add-ons appended to the summary.
    let xnorm = match (
        &cfg.fit,
        trace.blowup.is_none(),
        derived.alpha1,
        derived.alpha2,
    ) {
        (Some(fit), true, Some(a1), Some(a2)) => {
            let g1 = verdict.gamma.unwrap_or(0.0);
            let g2 = verdict.gamma_bar.unwrap_or(0.0);
            let ws = crate::diagnostics::xnorm_weights(trace, a1, a2, g1, g2)
                .map_err(|e| HarnessError::Numeric(format!("weighted norms: {e}")))?;
            Some(XnormReport {
                gamma1: g1,
                gamma2: g2,
                window: fit.window,
                sup_inf_m1: ws.sup_inf_ratio(true, (fit.window[0], fit.window[1])),
                sup_inf_m2: ws.sup_inf_ratio(false, (fit.window[0], fit.window[1])),
            })
        }
        _ => None,
    };
    let scan = match (&cfg.diagnostics, &out.fields) {
        (Some(dc), Some(hist)) if !dc.functional_scales.is_empty() => Some(
            functional_scan(
                hist,
                &coeffs,
                exps.p,
                exps.q,
                &dc.functional_scales,
                &ScanOptions {
                    tau_over_r: dc.tau_over_r,
                    ..Default::default()
                },
            )
            .map_err(|e| HarnessError::Numeric(format!("functional scan: {e}")))?,
        ),
        _ => None,
    };

    println!(
        "simulate: verdict {:?}, outcome {}",
        verdict.kind,
        outcome.as_str()
    );
    if let Some(b) = &trace.blowup {
        println!(
            "  divergence detected at t = {} ({:?})",
            num(b.t_detect),
            b.reason
        );
    }
    if let Some(f) = &forecast {
        println!(
            "  measured l2 slopes: u {:.4} (predicted {:.4}), v {:.4} (predicted {:.4}) -> {}",
            f.measured_l2_u.slope,
            f.predicted_l2_u,
            f.measured_l2_v.slope,
            f.predicted_l2_v,
            if f.pass { "PASS" } else { "FAIL" }
        );
    }
    let payload = SimulatePayload {
        verdict,
        derived,
        lightcone_t_max: trace.lightcone_t_max,
        blowup: trace.blowup,
        outcome,
        agreement,
        forecast,
        xnorm,
        functional_scan: scan,
    };
    let json = json_document(cfg, &payload)?;
    write_file(&ctx.out_dir, "simulate.json", &json)?;
    println!("wrote {}", csv_path.display());
    Ok(if agreement == Some(false) {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct TestfnPayload {
    weight_residual_max: f64,
    weight_residual_pass: bool,
    cutoff_range_pass: bool,
    cutoff_monotone_pass: bool,
    cutoff_bound_constants: Vec<f64>,
    cutoff_bounds_pass: bool,
    sign_examples_pass: bool,
    all_pass: bool,
}

pub fn testfn_check_cmd(ctx: &CmdContext) -> Result<i32, HarnessError> {
    let coeffs = ctx.config.system_coefficients()?;

    // 1. Weight identity on 100 pseudo-random coefficient pairs with δ ≥ 0.
    let samples = [0.0, 1.0, 10.0, 100.0];
    let mut state = 0x853c49e6748fea9bu64;
    let mut next_unit = move || {
        // splitmix64
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mu = next_unit() * 20.0;
        let nu_sq = next_unit() * (mu - 1.0) * (mu - 1.0) / 4.0;
        let alpha = CoefficientPair::new(mu, nu_sq)
            .and_then(|c| {
                c.alpha()
                    .ok_or(crate::exponents::ExponentError::AlphaUndefined {
                        which: 1,
                        delta: c.delta(),
                    })
            })
            .map_err(|e| HarnessError::Numeric(e.to_string()))?;
        worst = worst.max(weight_residual(alpha, mu, nu_sq, &samples));
    }
    let weight_pass = worst < 1e-10;

    // 2. Cutoff invariants on a 10^4-point grid.
    let cut = CutoffPair;
    let mut range_ok = true;
    let mut monotone_ok = true;
    let mut prev = f64::INFINITY;
    for k in 0..=10_000 {
        let x = 1.5 * k as f64 / 10_000.0;
        let e = cut.eta(x);
        range_ok &= (0.0..=1.0).contains(&e);
        monotone_ok &= e <= prev + 1e-15;
        prev = e;
    }
    range_ok &= cut.eta(0.5) == 1.0 && cut.eta(1.0) == 0.0;
    let mut constants = Vec::new();
    for r in [2.0f64, 8.0] {
        let mut c1 = 0.0f64;
        let mut c2 = 0.0f64;
        let mut c3 = 0.0f64;
        for k in 0..10_000 {
            let x = 0.5 + (0.5 - 1e-6) * k as f64 / 10_000.0;
            let base = cut.eta(x).powf(1.0 / r);
            if base > 0.0 {
                c1 = c1.max(cut.eta_d1(x).abs() / base);
                c2 = c2.max(cut.eta_d2(x).abs() / base);
                c3 = c3.max(cut.phi_laplacian(x, coeffs.n).abs() / base);
            }
        }
        constants.extend([c1, c2, c3]);
    }
    let bounds_pass = constants.iter().all(|c| c.is_finite() && *c > 0.0);

    // 3. Sign-condition examples on a small grid.
    let grid =
        RadialGrid::new(coeffs.n, 10.0, 257).map_err(|e| HarnessError::Numeric(e.to_string()))?;
    let zero = || FieldPair {
        t: 0.0,
        u: vec![0.0; grid.nodes],
        ut: vec![0.0; grid.nodes],
        v: vec![0.0; grid.nodes],
        vt: vec![0.0; grid.nodes],
    };
    let mut positive = zero();
    for (i, &r) in grid.r.iter().enumerate() {
        let b = crate::linear_modes::families::bump_profile(r, 2.0);
        positive.ut[i] = b;
        positive.vt[i] = b;
    }
    let (pos1, pos2) = sign_condition_values(&positive, &grid, &coeffs);
    let mut cancel = zero();
    let delta1 = coeffs.eq1.delta().max(0.0);
    let factor = 0.5 * (coeffs.eq1.mu - 1.0 + delta1.sqrt());
    for (i, &r) in grid.r.iter().enumerate() {
        let b = crate::linear_modes::families::bump_profile(r, 2.0);
        cancel.u[i] = b;
        cancel.ut[i] = -factor * b;
    }
    let (cv, _) = sign_condition_values(&cancel, &grid, &coeffs);
    let sign_pass = pos1 > 0.0 && pos2 > 0.0 && cv == 0.0;

    let all = weight_pass && range_ok && monotone_ok && bounds_pass && sign_pass;
    for (name, ok) in [
        ("weight-ode-residual", weight_pass),
        ("cutoff-range", range_ok),
        ("cutoff-monotone", monotone_ok),
        ("cutoff-derivative-bounds", bounds_pass),
        ("sign-conditions", sign_pass),
    ] {
        println!("{}: {}", name, if ok { "PASS" } else { "FAIL" });
    }
    let payload = TestfnPayload {
        weight_residual_max: worst,
        weight_residual_pass: weight_pass,
        cutoff_range_pass: range_ok,
        cutoff_monotone_pass: monotone_ok,
        cutoff_bound_constants: constants,
        cutoff_bounds_pass: bounds_pass,
        sign_examples_pass: sign_pass,
        all_pass: all,
    };
    let json = json_document(&ctx.config, &payload)?;
    write_file(&ctx.out_dir, "testfn.json", &json)?;
    Ok(if all { EXIT_OK } else { super::EXIT_NUMERIC })
}

/// Built-in reference configuration used when `testfn-check` runs without a
/// config file.
pub fn default_config() -> RunConfig {
    RunConfig::from_toml_str(
        r#"
        [coefficients]
        mu1 = 5.0
        nu1_sq = 0.0
        mu2 = 7.0
        nu2_sq = 0.0
        n = 1
        "#,
    )
    .expect("built-in config is valid")
}

pub fn load_or_default(path: Option<&Path>) -> Result<RunConfig, HarnessError> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(default_config()),
    }
}
