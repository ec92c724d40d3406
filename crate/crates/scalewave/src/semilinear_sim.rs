//! Radially symmetric finite-difference simulation of the coupled system
//!
//! ```text
//! u_tt - Δu + μ1/(1+t) u_t + ν1²/(1+t)² u = |v|^p
//! v_tt - Δv + μ2/(1+t) v_t + ν2²/(1+t)² v = |u|^q
//! ```
//!
//! with blow-up detection and decay tracking.
//!
//! Space: second-order central differences for the radial Laplacian
//! `w_rr + (n-1)/r · w_r`, with the r = 0 limit `n · w_rr` from even
//! symmetry. Time: classic fourth-order Runge-Kutta on the first-order
//! system. The domain is truncated at `r = L` but simulated only up to the
//! light-cone guard time, so truncation is exact up to round-off and no
//! absorbing boundary is needed.
//!
//! Finite-precision blow-up is operational: a threshold crossing or a
//! non-finite value is reported as "divergence detected", never as a proof.

use crate::exponents::{ExponentPair, RegimeKind, RegimeVerdict, SystemCoefficients};
use crate::fit::{log_log_slope, FitError, SlopeFit};
use crate::linear_modes::families::bump_profile;
use crate::quadrature::radial_trapezoid;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid data profile: {0}")]
    InvalidData(String),
    #[error("time step {dt} violates the CFL bound {bound}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("t_end = {t_end} exceeds the light-cone guard {lightcone}")]
    BeyondLightCone { t_end: f64, lightcone: f64 },
    #[error("forecast check requires a global-existence verdict (got {kind:?})")]
    NotGlobalVerdict { kind: RegimeKind },
    #[error("forecast check rejects traces with a divergence record")]
    DivergedTrace,
    #[error("forecast window [{lo}, {hi}] outside [5, {lightcone}]")]
    BadForecastWindow { lo: f64, hi: f64, lightcone: f64 },
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// Uniform radial grid on `[0, L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub n: u32,
    pub half_width: f64,
    pub nodes: usize,
    pub spacing: f64,
    pub r: Vec<f64>,
}

impl RadialGrid {
    pub fn new(n: u32, half_width: f64, nodes: usize) -> Result<Self, SimError> {
        if n < 1 {
            return Err(SimError::InvalidGrid("dimension n must be >= 1".into()));
        }
        if nodes < 64 {
            return Err(SimError::InvalidGrid(format!(
                "need at least 64 nodes, got {nodes}"
            )));
        }
        if !(half_width > 0.0) {
            return Err(SimError::InvalidGrid(format!(
                "half_width {half_width} must be > 0"
            )));
        }
        let spacing = half_width / (nodes - 1) as f64;
        let r = (0..nodes).map(|i| i as f64 * spacing).collect();
        Ok(RadialGrid {
            n,
            half_width,
            nodes,
            spacing,
            r,
        })
    }
}

/// Both fields and their time derivatives at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    pub t: f64,
    pub u: Vec<f64>,
    pub ut: Vec<f64>,
    pub v: Vec<f64>,
    pub vt: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileFamily {
    Bump,
    GaussianTruncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSlot {
    U0,
    U1,
    V0,
    V1,
}

/// One compactly supported initial-data component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataProfile {
    pub family: ProfileFamily,
    pub amplitude: f64,
    pub support_radius: f64,
    pub assign: FieldSlot,
}

impl DataProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self.family {
            ProfileFamily::Bump => self.amplitude * bump_profile(r, self.support_radius),
            ProfileFamily::GaussianTruncated => {
                if r >= self.support_radius {
                    0.0
                } else {
                    let s = r / self.support_radius;
                    // Offset so the profile reaches zero continuously at the
                    // support edge.
                    self.amplitude * ((-8.0 * s * s).exp() - (-8.0f64).exp())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceReason {
    ThresholdExceeded,
    NonFinite,
}

/// Operational blow-up record: threshold crossing or non-finite values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowupRecord {
    pub t_detect: f64,
    pub reason: DivergenceReason,
    pub max_abs: f64,
    pub threshold: f64,
}

/// Per-time norms of a run plus the divergence record, if any.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationTrace {
    pub n: u32,
    pub lightcone_t_max: f64,
    pub times: Vec<f64>,
    pub l2_u: Vec<f64>,
    pub l2_v: Vec<f64>,
    pub linf_u: Vec<f64>,
    pub linf_v: Vec<f64>,
    /// `‖(∇u, u_t)(t)‖_{L²}` (the energy norm, not its square).
    pub energy_u: Vec<f64>,
    pub energy_v: Vec<f64>,
    pub blowup: Option<BlowupRecord>,
}

/// Field snapshots for the test-function diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldHistory {
    pub n: u32,
    pub r: Vec<f64>,
    pub spacing: f64,
    pub times: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    /// `dt = cfl_factor · h` unless `dt` is set explicitly.
    pub cfl_factor: f64,
    /// Explicit override for the time step (still CFL-checked).
    pub dt: Option<f64>,
    /// Divergence threshold = `blowup_factor × max initial amplitude`.
    pub blowup_factor: f64,
    /// Light-cone guard buffer; default `2h·ceil(1/cfl_factor)`.
    pub buffer: Option<f64>,
    /// Approximate spacing of recorded samples.
    pub sample_interval: f64,
    /// Record full (u, v) snapshots at sample times.
    pub record_fields: bool,
    /// Evaluate the source nonlinearities (off = the decoupled linear flow).
    pub nonlinearity: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            cfl_factor: 0.5,
            dt: None,
            blowup_factor: 1e8,
            buffer: None,
            sample_interval: 0.5,
            record_fields: false,
            nonlinearity: true,
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub trace: SimulationTrace,
    pub fields: Option<FieldHistory>,
}

/// The configured system: grid, coefficients, powers and solver options.
pub struct Simulation {
    pub grid: RadialGrid,
    pub coeffs: SystemCoefficients,
    pub exps: ExponentPair,
    pub opts: SimOptions,
}

impl Simulation {
    pub fn new(
        grid: RadialGrid,
        coeffs: SystemCoefficients,
        exps: ExponentPair,
        opts: SimOptions,
    ) -> Result<Self, SimError> {
        if grid.n != coeffs.n {
            return Err(SimError::InvalidGrid(format!(
                "grid dimension {} does not match coefficients dimension {}",
                grid.n, coeffs.n
            )));
        }
        Ok(Simulation {
            grid,
            coeffs,
            exps,
            opts,
        })
    }

    pub fn initial_state(&self, data: &[DataProfile]) -> Result<FieldPair, SimError> {
        let nn = self.grid.nodes;
        let mut state = FieldPair {
            t: 0.0,
            u: vec![0.0; nn],
            ut: vec![0.0; nn],
            v: vec![0.0; nn],
            vt: vec![0.0; nn],
        };
        for prof in data {
            if !(prof.support_radius > 0.0 && prof.support_radius < self.grid.half_width) {
                return Err(SimError::InvalidData(format!(
                    "support radius {} must lie in (0, L = {})",
                    prof.support_radius, self.grid.half_width
                )));
            }
            let target = match prof.assign {
                FieldSlot::U0 => &mut state.u,
                FieldSlot::U1 => &mut state.ut,
                FieldSlot::V0 => &mut state.v,
                FieldSlot::V1 => &mut state.vt,
            };
            for (i, &r) in self.grid.r.iter().enumerate() {
                target[i] += prof.eval(r);
            }
        }
        Ok(state)
    }

    fn max_support_radius(data: &[DataProfile]) -> f64 {
        data.iter().map(|d| d.support_radius).fold(0.0, f64::max)
    }

    /// Time at which the support could reach the boundary buffer.
    pub fn lightcone_t_max(&self, data: &[DataProfile]) -> f64 {
        let buffer = self
            .opts
            .buffer
            .unwrap_or_else(|| 2.0 * self.grid.spacing * (1.0 / self.opts.cfl_factor).ceil());
        self.grid.half_width - Self::max_support_radius(data) - buffer
    }

    /// One RK4 step of size `dt`. Returns the divergence record instead of a
    /// state when the new state crosses the blow-up threshold; `threshold`
    /// is supplied by the caller (factor × max initial amplitude).
    pub fn step(
        &self,
        state: &FieldPair,
        dt: f64,
        threshold: f64,
    ) -> Result<FieldPair, BlowupRecord> {
        let nn = self.grid.nodes;
        let mut k = Stages::new(nn);
        let mut stage = state.clone();

        self.rhs(state, &mut k.k1);
        stage.overwrite_from(state, &k.k1, 0.5 * dt);
        stage.t = state.t + 0.5 * dt;
        self.rhs(&stage, &mut k.k2);
        stage.overwrite_from(state, &k.k2, 0.5 * dt);
        stage.t = state.t + 0.5 * dt;
        self.rhs(&stage, &mut k.k3);
        stage.overwrite_from(state, &k.k3, dt);
        stage.t = state.t + dt;
        self.rhs(&stage, &mut k.k4);

        let mut next = state.clone();
        next.t = state.t + dt;
        let sixth = dt / 6.0;
        for i in 0..nn {
            next.u[i] += sixth * (k.k1.du[i] + 2.0 * k.k2.du[i] + 2.0 * k.k3.du[i] + k.k4.du[i]);
            next.ut[i] +=
                sixth * (k.k1.dut[i] + 2.0 * k.k2.dut[i] + 2.0 * k.k3.dut[i] + k.k4.dut[i]);
            next.v[i] += sixth * (k.k1.dv[i] + 2.0 * k.k2.dv[i] + 2.0 * k.k3.dv[i] + k.k4.dv[i]);
            next.vt[i] +=
                sixth * (k.k1.dvt[i] + 2.0 * k.k2.dvt[i] + 2.0 * k.k3.dvt[i] + k.k4.dvt[i]);
        }

        let mut max_abs = 0.0f64;
        let mut finite = true;
        for arr in [&next.u, &next.ut, &next.v, &next.vt] {
            for &x in arr.iter() {
                if !x.is_finite() {
                    finite = false;
                }
                max_abs = max_abs.max(x.abs());
            }
        }
        if !finite {
            return Err(BlowupRecord {
                t_detect: next.t,
                reason: DivergenceReason::NonFinite,
                max_abs: f64::INFINITY,
                threshold,
            });
        }
        if threshold > 0.0 && max_abs > threshold {
            return Err(BlowupRecord {
                t_detect: next.t,
                reason: DivergenceReason::ThresholdExceeded,
                max_abs,
                threshold,
            });
        }
        Ok(next)
    }

    /// Right-hand side of the first-order system. Both components go through
    /// the same routine, so swapping equations, powers and data mirrors the
    /// computation bitwise.
    fn rhs(&self, state: &FieldPair, out: &mut Stage) {
        let nn = self.grid.nodes;
        out.du[..nn].copy_from_slice(&state.ut);
        out.dv[..nn].copy_from_slice(&state.vt);
        // Pinned outer boundary.
        out.du[nn - 1] = 0.0;
        out.dv[nn - 1] = 0.0;
        component_accel(
            &mut out.dut,
            &state.u,
            &state.ut,
            if self.opts.nonlinearity {
                Some((&state.v, self.exps.p))
            } else {
                None
            },
            self.coeffs.eq1.mu,
            self.coeffs.eq1.nu_sq,
            state.t,
            &self.grid,
        );
        component_accel(
            &mut out.dvt,
            &state.v,
            &state.vt,
            if self.opts.nonlinearity {
                Some((&state.u, self.exps.q))
            } else {
                None
            },
            self.coeffs.eq2.mu,
            self.coeffs.eq2.nu_sq,
            state.t,
            &self.grid,
        );
    }

    fn resolve_dt(&self) -> Result<f64, SimError> {
        let bound = self.opts.cfl_factor * self.grid.spacing;
        let dt = self.opts.dt.unwrap_or(bound);
        if dt > bound * (1.0 + 1e-12) {
            return Err(SimError::CflViolation { dt, bound });
        }
        Ok(dt)
    }

    /// Run to `t_end`, sampling norms at the configured cadence. Terminates
    /// early with the divergence record in the trace when blow-up is
    /// detected. Deterministic for fixed inputs.
    pub fn run(&self, data: &[DataProfile], t_end: f64) -> Result<RunOutput, SimError> {
        let lightcone = self.lightcone_t_max(data);
        if t_end > lightcone {
            return Err(SimError::BeyondLightCone { t_end, lightcone });
        }
        let dt_nominal = self.resolve_dt()?;
        let n_steps = (t_end / dt_nominal).ceil().max(1.0) as usize;
        let dt = t_end / n_steps as f64;
        let sample_every = (self.opts.sample_interval / dt).floor().max(1.0) as usize;

        let mut state = self.initial_state(data)?;
        let amp0 = [&state.u, &state.ut, &state.v, &state.vt]
            .iter()
            .flat_map(|a| a.iter())
            .fold(0.0f64, |m, &x| m.max(x.abs()));
        let threshold = self.opts.blowup_factor * amp0;

        let mut trace = SimulationTrace {
            n: self.grid.n,
            lightcone_t_max: lightcone,
            times: Vec::new(),
            l2_u: Vec::new(),
            l2_v: Vec::new(),
            linf_u: Vec::new(),
            linf_v: Vec::new(),
            energy_u: Vec::new(),
            energy_v: Vec::new(),
            blowup: None,
        };
        let mut fields = self.opts.record_fields.then(|| FieldHistory {
            n: self.grid.n,
            r: self.grid.r.clone(),
            spacing: self.grid.spacing,
            times: Vec::new(),
            u: Vec::new(),
            v: Vec::new(),
        });

        self.record(&state, &mut trace, fields.as_mut());
        for step_idx in 1..=n_steps {
            match self.step(&state, dt, threshold) {
                Ok(next) => state = next,
                Err(record) => {
                    trace.blowup = Some(record);
                    break;
                }
            }
            if step_idx.is_multiple_of(sample_every) || step_idx == n_steps {
                self.record(&state, &mut trace, fields.as_mut());
            }
        }
        Ok(RunOutput { trace, fields })
    }

    fn record(
        &self,
        state: &FieldPair,
        trace: &mut SimulationTrace,
        fields: Option<&mut FieldHistory>,
    ) {
        let (l2_u, linf_u, energy_u) = self.component_norms(&state.u, &state.ut);
        let (l2_v, linf_v, energy_v) = self.component_norms(&state.v, &state.vt);
        trace.times.push(state.t);
        trace.l2_u.push(l2_u);
        trace.l2_v.push(l2_v);
        trace.linf_u.push(linf_u);
        trace.linf_v.push(linf_v);
        trace.energy_u.push(energy_u);
        trace.energy_v.push(energy_v);
        if let Some(hist) = fields {
            hist.times.push(state.t);
            hist.u.push(state.u.clone());
            hist.v.push(state.v.clone());
        }
    }

    /// `(‖w‖_{L²}, ‖w‖_{L^∞}, ‖(∇w, w_t)‖_{L²})` with the radial measure.
    fn component_norms(&self, w: &[f64], wt: &[f64]) -> (f64, f64, f64) {
        let nn = self.grid.nodes;
        let h = self.grid.spacing;
        let mut sq = vec![0.0; nn];
        for i in 0..nn {
            sq[i] = w[i] * w[i];
        }
        let l2 = radial_trapezoid(&sq, &self.grid.r, h, self.grid.n).sqrt();
        let linf = w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        for (i, s) in sq.iter_mut().enumerate() {
            let wr = if i == 0 || i == nn - 1 {
                0.0 // symmetry axis; pinned boundary
            } else {
                (w[i + 1] - w[i - 1]) / (2.0 * h)
            };
            *s = wr * wr + wt[i] * wt[i];
        }
        let energy = radial_trapezoid(&sq, &self.grid.r, h, self.grid.n).sqrt();
        (l2, linf, energy)
    }
}

struct Stage {
    du: Vec<f64>,
    dut: Vec<f64>,
    dv: Vec<f64>,
    dvt: Vec<f64>,
}

struct Stages {
    k1: Stage,
    k2: Stage,
    k3: Stage,
    k4: Stage,
}

impl Stages {
    fn new(nn: usize) -> Self {
        let mk = || Stage {
            du: vec![0.0; nn],
            dut: vec![0.0; nn],
            dv: vec![0.0; nn],
            dvt: vec![0.0; nn],
        };
        Stages {
            k1: mk(),
            k2: mk(),
            k3: mk(),
            k4: mk(),
        }
    }
}

impl FieldPair {
    /// `self = base + scale · k` on every array (stage assembly).
    fn overwrite_from(&mut self, base: &FieldPair, k: &Stage, scale: f64) {
        for i in 0..base.u.len() {
            self.u[i] = base.u[i] + scale * k.du[i];
            self.ut[i] = base.ut[i] + scale * k.dut[i];
            self.v[i] = base.v[i] + scale * k.dv[i];
            self.vt[i] = base.vt[i] + scale * k.dvt[i];
        }
    }
}

/// Acceleration of one component:
/// `Δw - μ/(1+t) w_t - ν²/(1+t)² w + |src|^power`.
#[allow(clippy::too_many_arguments)]
fn component_accel(
    out: &mut [f64],
    w: &[f64],
    wt: &[f64],
    source: Option<(&[f64], f64)>,
    mu: f64,
    nu_sq: f64,
    t: f64,
    grid: &RadialGrid,
) {
    let nn = grid.nodes;
    let h = grid.spacing;
    let inv_h2 = 1.0 / (h * h);
    let nf = grid.n as f64;
    let damp = mu / (1.0 + t);
    let mass = nu_sq / ((1.0 + t) * (1.0 + t));
    let power_int = integral_power(source.map(|(_, p)| p));

    // r = 0: Δw = n · w_rr by the even-symmetry limit.
    let lap0 = nf * 2.0 * (w[1] - w[0]) * inv_h2;
    out[0] = lap0 - damp * wt[0] - mass * w[0] + source_term(source, power_int, 0);
    for i in 1..nn - 1 {
        let lap = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * inv_h2
            + (nf - 1.0) / grid.r[i] * (w[i + 1] - w[i - 1]) / (2.0 * h);
        out[i] = lap - damp * wt[i] - mass * w[i] + source_term(source, power_int, i);
    }
    out[nn - 1] = 0.0;
}

fn integral_power(p: Option<f64>) -> Option<i32> {
    let p = p?;
    (p.fract() == 0.0 && (1.0..=32.0).contains(&p)).then_some(p as i32)
}

#[inline]
fn source_term(source: Option<(&[f64], f64)>, power_int: Option<i32>, i: usize) -> f64 {
    match source {
        None => 0.0,
        Some((field, p)) => match power_int {
            Some(k) => field[i].abs().powi(k),
            None => field[i].abs().powf(p),
        },
    }
}

/// Linear μ = 2 oracle for the radial finite-difference check: with data
/// `(u₀, u₁ = -u₀)` in n = 1, the transform `w = (1+t) u` solves the free
/// wave with `w_t(0) = 0`, so d'Alembert gives
/// `u(t, r) = [u₀(|r-t|) + u₀(r+t)] / (2(1+t))`.
pub fn mu2_dalembert<F: Fn(f64) -> f64>(u0: &F, t: f64, r: f64) -> f64 {
    (u0((r - t).abs()) + u0(r + t)) / (2.0 * (1.0 + t))
}

/// Deviation report of measured log-log slopes against a decay forecast.
///
/// `pass` gates on the two L² slopes; the energy-norm slopes are reported
/// alongside for inspection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForecastReport {
    pub window: (f64, f64),
    pub slope_tol: f64,
    pub measured_l2_u: SlopeFit,
    pub measured_l2_v: SlopeFit,
    pub measured_energy_u: SlopeFit,
    pub measured_energy_v: SlopeFit,
    pub predicted_l2_u: f64,
    pub predicted_l2_v: f64,
    pub predicted_energy_u: f64,
    pub predicted_energy_v: f64,
    pub deviation_l2_u: f64,
    pub deviation_l2_v: f64,
    pub pass: bool,
}

/// Fit the trace's norm series over `window` and compare against the
/// verdict's decay forecast at tolerance `slope_tol`.
pub fn check_forecast(
    trace: &SimulationTrace,
    verdict: &RegimeVerdict,
    window: (f64, f64),
    slope_tol: f64,
) -> Result<ForecastReport, SimError> {
    let forecast = match verdict.kind {
        RegimeKind::GlobalSupercriticalBoth
        | RegimeKind::GlobalLossOnU
        | RegimeKind::GlobalLossOnV => verdict
            .forecast
            .as_ref()
            .expect("global verdicts carry forecasts"),
        kind => return Err(SimError::NotGlobalVerdict { kind }),
    };
    if trace.blowup.is_some() {
        return Err(SimError::DivergedTrace);
    }
    let (lo, hi) = window;
    if !(lo >= 5.0 && hi > lo && hi <= trace.lightcone_t_max) {
        return Err(SimError::BadForecastWindow {
            lo,
            hi,
            lightcone: trace.lightcone_t_max,
        });
    }
    let fit = |vals: &[f64]| log_log_slope(&trace.times, vals, window, 5.0, 10);
    let measured_l2_u = fit(&trace.l2_u)?;
    let measured_l2_v = fit(&trace.l2_v)?;
    let measured_energy_u = fit(&trace.energy_u)?;
    let measured_energy_v = fit(&trace.energy_v)?;
    let deviation_l2_u = (measured_l2_u.slope - forecast.rate_u_l2).abs();
    let deviation_l2_v = (measured_l2_v.slope - forecast.rate_v_l2).abs();
    Ok(ForecastReport {
        window,
        slope_tol,
        measured_l2_u,
        measured_l2_v,
        measured_energy_u,
        measured_energy_v,
        predicted_l2_u: forecast.rate_u_l2,
        predicted_l2_v: forecast.rate_v_l2,
        predicted_energy_u: forecast.rate_u_energy,
        predicted_energy_v: forecast.rate_v_energy,
        deviation_l2_u,
        deviation_l2_v,
        pass: deviation_l2_u <= slope_tol && deviation_l2_v <= slope_tol,
    })
}
