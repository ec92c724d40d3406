//! `(p, q)`-plane sweeps: classification of every cell, optionally backed by
//! a simulation whose outcome is compared against the verdict.

use super::config::{RunConfig, SweepConfig};
use super::HarnessError;
use crate::exponents::{
    classify_with, Arithmetic, ClassifyOptions, ExponentPair, RegimeKind, SystemCoefficients,
};
use crate::semilinear_sim::{check_forecast, DataProfile, RadialGrid, SimOptions, Simulation};
use rayon::prelude::*;
use serde::Serialize;

/// How a cell's simulation came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericOutcome {
    Diverged,
    DecayedAtForecast,
    DecayedOffForecast,
    Inconclusive,
}

impl NumericOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            NumericOutcome::Diverged => "diverged",
            NumericOutcome::DecayedAtForecast => "decayed_at_forecast",
            NumericOutcome::DecayedOffForecast => "decayed_off_forecast",
            NumericOutcome::Inconclusive => "inconclusive",
        }
    }
}

/// One sweep-grid entry.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub p: f64,
    pub q: f64,
    pub kind: RegimeKind,
    pub f1: f64,
    pub f2: f64,
    pub gamma: Option<f64>,
    pub gamma_bar: Option<f64>,
    /// Present for simulation-backed sweeps.
    pub outcome: Option<NumericOutcome>,
    /// Defined only when verdict and outcome are both conclusive and the
    /// cell is not within the near-boundary band.
    pub agreement: Option<bool>,
    /// Per-cell failure, recorded without aborting the sweep.
    pub error: Option<String>,
}

/// The exponent values of the sweep grid (row-major: q outer, p inner).
pub fn grid_values(s: &SweepConfig) -> (Vec<f64>, Vec<f64>) {
    let axis = |lo: f64, hi: f64, count: usize| -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..count)
                .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                .collect(),
        }
    };
    (
        axis(s.p_min, s.p_max, s.p_count),
        axis(s.q_min, s.q_max, s.q_count),
    )
}

/// Run the sweep on a bounded worker pool. Cells are computed independently
/// and collected into a pre-sized row-major table, so the result is
/// deterministic regardless of the parallelism degree.
pub fn run_sweep(
    cfg: &RunConfig,
    exact: bool,
    jobs: Option<usize>,
) -> Result<Vec<SweepCell>, HarnessError> {
    let sweep = RunConfig::require(&cfg.sweep, "sweep")?.clone();
    let coeffs = cfg.system_coefficients()?;
    let (ps, qs) = grid_values(&sweep);
    let tasks: Vec<(f64, f64)> = qs
        .iter()
        .flat_map(|&q| ps.iter().map(move |&p| (p, q)))
        .collect();

    let worker = |&(p, q): &(f64, f64)| -> SweepCell { cell(cfg, &sweep, &coeffs, p, q, exact) };

    let jobs = jobs.or(cfg.jobs);
    let cells: Vec<SweepCell> = match jobs {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| HarnessError::Numeric(format!("worker pool: {e}")))?;
            pool.install(|| tasks.par_iter().map(worker).collect())
        }
        None => tasks.par_iter().map(worker).collect(),
    };
    Ok(cells)
}

fn cell(
    cfg: &RunConfig,
    sweep: &SweepConfig,
    coeffs: &SystemCoefficients,
    p: f64,
    q: f64,
    exact: bool,
) -> SweepCell {
    let opts = ClassifyOptions {
        epsilon: cfg.tolerances.epsilon,
        arithmetic: if exact {
            Arithmetic::Exact
        } else {
            Arithmetic::Float
        },
    };
    let exps = match ExponentPair::new(p, q) {
        Ok(e) => e,
        Err(e) => {
            return SweepCell {
                p,
                q,
                kind: RegimeKind::Undetermined,
                f1: f64::NAN,
                f2: f64::NAN,
                gamma: None,
                gamma_bar: None,
                outcome: None,
                agreement: None,
                error: Some(e.to_string()),
            }
        }
    };
    let verdict = match classify_with(coeffs, &exps, &opts) {
        Ok(v) => v,
        Err(e) => {
            return SweepCell {
                p,
                q,
                kind: RegimeKind::Undetermined,
                f1: f64::NAN,
                f2: f64::NAN,
                gamma: None,
                gamma_bar: None,
                outcome: None,
                agreement: None,
                error: Some(e.to_string()),
            }
        }
    };

    let mut cell = SweepCell {
        p,
        q,
        kind: verdict.kind,
        f1: verdict.f1,
        f2: verdict.f2,
        gamma: verdict.gamma,
        gamma_bar: verdict.gamma_bar,
        outcome: None,
        agreement: None,
        error: None,
    };
    if !sweep.simulate {
        return cell;
    }

    match simulate_cell(cfg, sweep, coeffs, &exps, &verdict) {
        Ok(outcome) => {
            cell.outcome = Some(outcome);
            let near_boundary = verdict.f1.max(verdict.f2).abs() < cfg.tolerances.boundary_band;
            cell.agreement = match (verdict.kind, outcome, near_boundary) {
                (_, _, true) => None,
                (RegimeKind::BlowUp, NumericOutcome::Diverged, _) => Some(true),
                (RegimeKind::BlowUp, NumericOutcome::Inconclusive, _) => None,
                (
                    RegimeKind::GlobalSupercriticalBoth
                    | RegimeKind::GlobalLossOnU
                    | RegimeKind::GlobalLossOnV,
                    NumericOutcome::DecayedAtForecast,
                    _,
                ) => Some(true),
                (
                    RegimeKind::GlobalSupercriticalBoth
                    | RegimeKind::GlobalLossOnU
                    | RegimeKind::GlobalLossOnV,
                    NumericOutcome::DecayedOffForecast | NumericOutcome::Diverged,
                    _,
                ) => Some(false),
                _ => None,
            };
        }
        Err(e) => cell.error = Some(e.to_string()),
    }
    cell
}

fn simulate_cell(
    cfg: &RunConfig,
    sweep: &SweepConfig,
    coeffs: &SystemCoefficients,
    exps: &ExponentPair,
    verdict: &crate::exponents::RegimeVerdict,
) -> Result<NumericOutcome, HarnessError> {
    let gc = RunConfig::require(&cfg.grid, "grid")?;
    let tc = RunConfig::require(&cfg.time, "time")?;
    let grid = RadialGrid::new(cfg.coefficients.n, gc.half_width, gc.nodes)
        .map_err(|e| HarnessError::Config(format!("grid: {e}")))?;
    let opts = SimOptions {
        cfl_factor: gc.cfl_factor,
        sample_interval: tc.sample_interval,
        blowup_factor: cfg.tolerances.blowup_factor,
        ..Default::default()
    };
    let data = scaled_data(&cfg.data, sweep, verdict.kind);
    let sim = Simulation::new(grid, *coeffs, *exps, opts)
        .map_err(|e| HarnessError::Config(format!("grid: {e}")))?;
    let out = sim
        .run(&data, tc.t_end)
        .map_err(|e| HarnessError::Numeric(format!("simulation: {e}")))?;

    if out.trace.blowup.is_some() {
        return Ok(NumericOutcome::Diverged);
    }
    match verdict.kind {
        RegimeKind::GlobalSupercriticalBoth
        | RegimeKind::GlobalLossOnU
        | RegimeKind::GlobalLossOnV => {
            let fc = RunConfig::require(&cfg.fit, "fit")?;
            let report = check_forecast(
                &out.trace,
                verdict,
                (fc.window[0], fc.window[1]),
                cfg.tolerances.slope_tol,
            )
            .map_err(|e| HarnessError::Numeric(format!("forecast check: {e}")))?;
            Ok(if report.pass {
                NumericOutcome::DecayedAtForecast
            } else {
                NumericOutcome::DecayedOffForecast
            })
        }
        // No divergence observed: a finite window cannot confirm blow-up.
        _ => Ok(NumericOutcome::Inconclusive),
    }
}

/// Per-regime amplitude rescaling: large data probes the blow-up theorem,
/// small data the small-data global theorems.
fn scaled_data(data: &[DataProfile], sweep: &SweepConfig, kind: RegimeKind) -> Vec<DataProfile> {
    let target = match kind {
        RegimeKind::BlowUp => sweep.blowup_amplitude,
        RegimeKind::GlobalSupercriticalBoth
        | RegimeKind::GlobalLossOnU
        | RegimeKind::GlobalLossOnV => sweep.global_amplitude,
        RegimeKind::Undetermined => None,
    };
    let Some(target) = target else {
        return data.to_vec();
    };
    let max_amp = data.iter().map(|d| d.amplitude.abs()).fold(0.0, f64::max);
    if max_amp == 0.0 {
        return data.to_vec();
    }
    let scale = target / max_amp;
    data.iter()
        .map(|d| DataProfile {
            amplitude: d.amplitude * scale,
            ..*d
        })
        .collect()
}
