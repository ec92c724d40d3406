//! Per-frequency evolution of the linear scale-invariant equation and
//! empirical verification of its decay estimates.
//!
//! Radially symmetric data is represented by its Fourier-side profile on a
//! Gauss-Legendre frequency grid; each mode obeys the ODE
//!
//! ```text
//! û_tt + ρ² û + μ/(1+t) û_t + ν²/(1+t)² û = 0
//! ```
//!
//! Modes are independent, integrated by the adaptive 5(4) pair, and norms
//! come back through Plancherel with the stored quadrature weights:
//! `‖u‖²_{Ḣ^κ} = ω_{n-1} ∫ ρ^{2κ} |û|² ρ^{n-1} dρ`.

pub mod families;

pub use families::RadialData;

use crate::exponents::CoefficientPair;
use crate::fit::{log_log_slope, FitError, SlopeFit};
use crate::ode::{integrate_dense, OdeError, OdeOptions};
use crate::quadrature::{composite_integrate, composite_nodes, sphere_surface};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModeError {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid evolve call: {0}")]
    InvalidCall(String),
    #[error("mode at rho = {rho} failed: {source}")]
    ModeIntegration { rho: f64, source: OdeError },
    #[error("delayed-start gain requires zero position data (|u0_hat| up to {max_u0})")]
    NonzeroPositionData { max_u0: f64 },
    #[error("delayed-start gain requires delta > (n+1)^2 (got delta = {delta}, n = {n})")]
    NotParabolicLike { delta: f64, n: u32 },
    #[error(transparent)]
    Fit(#[from] FitError),
}

/// Fraction of the spectral mass allowed beyond the grid's `ρ_max`.
pub const TAIL_FRACTION: f64 = 1e-8;

/// Sampled Fourier-side initial data on a radial frequency grid.
///
/// `weights` are quadrature weights for `∫₀^∞ f(ρ) ρ^{n-1} dρ`, i.e. the
/// radial measure factor is folded in.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSpectrum {
    pub rho: Vec<f64>,
    pub weights: Vec<f64>,
    pub u0_hat: Vec<Complex64>,
    pub u1_hat: Vec<Complex64>,
    pub n: u32,
}

impl RadialSpectrum {
    pub fn from_parts(
        rho: Vec<f64>,
        weights: Vec<f64>,
        u0_hat: Vec<Complex64>,
        u1_hat: Vec<Complex64>,
        n: u32,
    ) -> Result<Self, ModeError> {
        let len = rho.len();
        if len == 0 {
            return Err(ModeError::InvalidSpectrum("empty frequency grid".into()));
        }
        if weights.len() != len || u0_hat.len() != len || u1_hat.len() != len {
            return Err(ModeError::InvalidSpectrum(
                "mismatched array lengths".into(),
            ));
        }
        if rho[0] < 0.0 || rho.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ModeError::InvalidSpectrum(
                "frequencies must be nonnegative and strictly increasing".into(),
            ));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(ModeError::InvalidSpectrum(
                "weights must be positive".into(),
            ));
        }
        Ok(RadialSpectrum {
            rho,
            weights,
            u0_hat,
            u1_hat,
            n,
        })
    }

    /// Build the grid for the given data families, resolving the solution's
    /// `ρ`-oscillation up to `resolve_time` and extending `ρ_max` until the
    /// spectral tail is below [`TAIL_FRACTION`] of the total.
    pub fn from_families(
        u0: &RadialData,
        u1: &RadialData,
        n: u32,
        resolve_time: f64,
    ) -> Result<Self, ModeError> {
        Self::from_families_refined(u0, u1, n, resolve_time, 1.0)
    }

    /// Same as [`from_families`](Self::from_families) with the panel density
    /// multiplied by `density`; used by refinement studies.
    pub fn from_families_refined(
        u0: &RadialData,
        u1: &RadialData,
        n: u32,
        resolve_time: f64,
        density: f64,
    ) -> Result<Self, ModeError> {
        if u0.is_zero() && u1.is_zero() {
            return Err(ModeError::InvalidSpectrum(
                "both data components are zero".into(),
            ));
        }
        // Weight for the tail criterion: covers L², Ḣ¹ and u_t norms.
        let mass = |rho: f64| {
            (1.0 + rho * rho)
                * (u0.fourier(n, rho).powi(2) + u1.fourier(n, rho).powi(2))
                * rho.powi(n as i32 - 1)
        };
        let mut rho_max = 4.0;
        loop {
            let total = composite_integrate(0.0, rho_max, 48, 8, mass);
            let tail = composite_integrate(rho_max, 2.0 * rho_max, 48, 8, mass);
            if tail <= TAIL_FRACTION * total || rho_max > 1e4 {
                break;
            }
            rho_max *= 1.5;
        }
        let width = (rho_max / 16.0).min(1.5 / (resolve_time + 1.0)) / density;
        let panels = (rho_max / width).ceil() as usize;
        let nodes = composite_nodes(0.0, rho_max, panels, 8);
        let mut rho = Vec::with_capacity(nodes.len());
        let mut weights = Vec::with_capacity(nodes.len());
        let mut u0_hat = Vec::with_capacity(nodes.len());
        let mut u1_hat = Vec::with_capacity(nodes.len());
        for (x, w) in nodes {
            rho.push(x);
            weights.push(w * x.powi(n as i32 - 1));
            u0_hat.push(Complex64::new(u0.fourier(n, x), 0.0));
            u1_hat.push(Complex64::new(u1.fourier(n, x), 0.0));
        }
        RadialSpectrum::from_parts(rho, weights, u0_hat, u1_hat, n)
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// A one-node spectrum for the mode at `idx` (mode-independence checks).
    pub fn single_mode(&self, idx: usize) -> Self {
        RadialSpectrum {
            rho: vec![self.rho[idx]],
            weights: vec![self.weights[idx]],
            u0_hat: vec![self.u0_hat[idx]],
            u1_hat: vec![self.u1_hat[idx]],
            n: self.n,
        }
    }
}

/// Snapshot of all modes at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    pub t: f64,
    pub v: Vec<Complex64>,
    pub vdot: Vec<Complex64>,
}

/// Time series of the three tracked Sobolev norms.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NormSeries {
    pub times: Vec<f64>,
    pub l2: Vec<f64>,
    pub hdot1: Vec<f64>,
    pub ut_l2: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L2,
    Hdot1,
    UtL2,
}

/// Integrate every mode from time `s` and return dense-output snapshots at
/// `t_grid`. Modes are data-parallel; results are keyed by node index, so
/// the output is bitwise identical regardless of scheduling.
pub fn evolve(
    spec: &RadialSpectrum,
    coeffs: &CoefficientPair,
    s: f64,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<ModeState>, ModeError> {
    if !(s >= 0.0) {
        return Err(ModeError::InvalidCall(format!(
            "start time s = {s} must be >= 0"
        )));
    }
    if t_grid.is_empty() || t_grid[0] < s || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ModeError::InvalidCall(
            "t_grid must be nonempty, increasing, and start at or after s".into(),
        ));
    }
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(ModeError::InvalidCall(format!(
            "tol = {tol} outside (0, 1e-3]"
        )));
    }
    let mu = coeffs.mu;
    let nu_sq = coeffs.nu_sq;

    let per_mode: Result<Vec<Vec<[f64; 4]>>, ModeError> = spec
        .rho
        .par_iter()
        .enumerate()
        .map(|(i, &rho)| {
            let rho_sq = rho * rho;
            let y0 = [
                spec.u0_hat[i].re,
                spec.u0_hat[i].im,
                spec.u1_hat[i].re,
                spec.u1_hat[i].im,
            ];
            // Absolute tolerance scaled per mode, so small-amplitude modes
            // are integrated to the same relative accuracy as large ones.
            let amp = spec.u0_hat[i].norm().max(spec.u1_hat[i].norm());
            let opts = OdeOptions {
                rtol: tol,
                atol: tol * amp.max(f64::MIN_POSITIVE),
                max_steps: 50_000_000,
            };
            integrate_dense(
                move |t: f64, y: &[f64; 4]| {
                    let damp = mu / (1.0 + t);
                    let mass = nu_sq / ((1.0 + t) * (1.0 + t));
                    [
                        y[2],
                        y[3],
                        -(rho_sq + mass) * y[0] - damp * y[2],
                        -(rho_sq + mass) * y[1] - damp * y[3],
                    ]
                },
                s,
                y0,
                t_grid,
                &opts,
            )
            .map_err(|source| ModeError::ModeIntegration { rho, source })
        })
        .collect();
    let per_mode = per_mode?;

    let mut states = Vec::with_capacity(t_grid.len());
    for (k, &t) in t_grid.iter().enumerate() {
        let mut v = Vec::with_capacity(spec.len());
        let mut vdot = Vec::with_capacity(spec.len());
        for row in &per_mode {
            let y = row[k];
            if !y.iter().all(|c| c.is_finite()) {
                return Err(ModeError::InvalidSpectrum(format!(
                    "non-finite mode state at t = {t}"
                )));
            }
            v.push(Complex64::new(y[0], y[1]));
            vdot.push(Complex64::new(y[2], y[3]));
        }
        states.push(ModeState { t, v, vdot });
    }
    Ok(states)
}

/// Plancherel reconstruction of `‖u‖_{L²}`, `‖u‖_{Ḣ¹}` and `‖u_t‖_{L²}`
/// from mode snapshots. Reduction order is fixed (node index), keeping the
/// result deterministic.
pub fn norms(states: &[ModeState], spec: &RadialSpectrum) -> NormSeries {
    let cn = sphere_surface(spec.n);
    let mut out = NormSeries {
        times: Vec::with_capacity(states.len()),
        l2: Vec::with_capacity(states.len()),
        hdot1: Vec::with_capacity(states.len()),
        ut_l2: Vec::with_capacity(states.len()),
    };
    for st in states {
        let mut l2 = 0.0;
        let mut h1 = 0.0;
        let mut ut = 0.0;
        for i in 0..spec.len() {
            let w = spec.weights[i];
            let rho_sq = spec.rho[i] * spec.rho[i];
            l2 += w * st.v[i].norm_sqr();
            h1 += w * rho_sq * st.v[i].norm_sqr();
            ut += w * st.vdot[i].norm_sqr();
        }
        out.times.push(st.t);
        out.l2.push((cn * l2).sqrt());
        out.hdot1.push((cn * h1).sqrt());
        out.ut_l2.push((cn * ut).sqrt());
    }
    out
}

/// Least-squares slope of `log(norm)` against `log(1+t)` over the window.
/// Requires at least 10 samples and `t_lo >= 1`; rejects windows containing
/// a zero norm value.
pub fn fit_decay(
    series: &NormSeries,
    which: NormKind,
    window: (f64, f64),
) -> Result<SlopeFit, FitError> {
    let values = match which {
        NormKind::L2 => &series.l2,
        NormKind::Hdot1 => &series.hdot1,
        NormKind::UtL2 => &series.ut_l2,
    };
    log_log_slope(&series.times, values, window, 1.0, 10)
}

/// Measured `‖u(T)‖_{L²}` ratio between a run started at `s` and the same
/// run started at 0, for pure velocity data. A diagnostic against the
/// `(1+s)^α`-type delayed-start bound, not an equality.
pub fn delayed_start_gain(
    spec: &RadialSpectrum,
    coeffs: &CoefficientPair,
    s: f64,
    t_final: f64,
    tol: f64,
) -> Result<f64, ModeError> {
    let max_u0 = spec.u0_hat.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_u0 > 0.0 {
        return Err(ModeError::NonzeroPositionData { max_u0 });
    }
    let delta = coeffs.delta();
    let cap = ((spec.n + 1) * (spec.n + 1)) as f64;
    if !(delta > cap) {
        return Err(ModeError::NotParabolicLike { delta, n: spec.n });
    }
    if t_final <= s {
        return Err(ModeError::InvalidCall(format!(
            "t_final = {t_final} must exceed s = {s}"
        )));
    }
    let delayed = norms(&evolve(spec, coeffs, s, &[t_final], tol)?, spec);
    let reference = norms(&evolve(spec, coeffs, 0.0, &[t_final], tol)?, spec);
    Ok(delayed.l2[0] / reference.l2[0])
}

/// Closed-form mode solution for μ = 2, ν = 0 started at s = 0: the
/// substitution `w = (1+t) u` reduces the equation to the free wave, giving
/// `û(t,ρ) = [cos(ρt) û₀ + sin(ρt)/ρ · (û₀ + û₁)] / (1+t)`.
///
/// The `ρ → 0` limit of `sin(ρt)/ρ` is series-expanded below `ρt < 1e-4`.
pub fn mu2_oracle(rho: f64, u0: Complex64, u1: Complex64, t: f64) -> (Complex64, Complex64) {
    let b = u0 + u1;
    let x = rho * t;
    let sinc_t = if x.abs() < 1e-4 {
        t * (1.0 - x * x / 6.0 + x.powi(4) / 120.0)
    } else {
        x.sin() / rho
    };
    let cos = x.cos();
    let one_t = 1.0 + t;
    let v = (u0 * cos + b * sinc_t) / one_t;
    // d/dt of the numerator is -ρ sin(ρt) û₀ + cos(ρt) (û₀+û₁).
    let vdot = (u0 * (-rho * x.sin()) + b * cos) / one_t - v / one_t;
    (v, vdot)
}

/// Exact ρ = 0 mode for ν = 0: `û_tt + μ/(1+t) û_t = 0`, so
/// `û(t) = û₀ + û₁ ((1+t)^{1-μ} - 1)/(1-μ)` for μ ≠ 1 (log for μ = 1).
pub fn rho_zero_oracle(u0: Complex64, u1: Complex64, mu: f64, t: f64) -> (Complex64, Complex64) {
    let one_t = 1.0 + t;
    let v = if (mu - 1.0).abs() < 1e-14 {
        u0 + u1 * one_t.ln()
    } else {
        u0 + u1 * ((one_t.powf(1.0 - mu) - 1.0) / (1.0 - mu))
    };
    let vdot = u1 * one_t.powf(-mu);
    (v, vdot)
}
