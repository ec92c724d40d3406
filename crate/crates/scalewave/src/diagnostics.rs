//! Test-function machinery as numerical diagnostics: the self-similar
//! weights `g(t) = (1+t)^α` with their defining ODE identity, the smooth
//! space/time cutoffs and their derivative bounds, the data sign conditions,
//! the space-time functionals over simulation snapshots, and the weighted
//! solution-space norms whose boundedness a global verdict predicts.

use crate::exponents::SystemCoefficients;
use crate::fit::{log_log_slope, SlopeFit};
use crate::quadrature::{radial_trapezoid, sphere_surface, GaussLegendre};
use crate::semilinear_sim::{FieldHistory, FieldPair, RadialGrid, SimulationTrace};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error("scale R = {r} exceeds the snapshot coverage (time up to {available})")]
    CoverageExceeded { r: f64, available: f64 },
    #[error("R list must be positive and increasing")]
    BadScales,
    #[error("weighted norms reject traces with a divergence record")]
    DivergedTrace,
    #[error("alpha undefined: delta = {delta} < 0")]
    AlphaUndefined { delta: f64 },
}

/// The weight `g(t) = (1+t)^α` with derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarWeight {
    pub alpha: f64,
}

impl SelfSimilarWeight {
    pub fn g(&self, t: f64) -> f64 {
        (1.0 + t).powf(self.alpha)
    }

    pub fn g1(&self, t: f64) -> f64 {
        self.alpha * (1.0 + t).powf(self.alpha - 1.0)
    }

    pub fn g2(&self, t: f64) -> f64 {
        self.alpha * (self.alpha - 1.0) * (1.0 + t).powf(self.alpha - 2.0)
    }
}

/// Max relative residual of the weight identity
/// `g'' - μ/(1+t) g' + (μ+ν²)/(1+t)² g = 0`
/// over the samples, measured against the largest term. With `α` taken from
/// the coefficients the identity is exact and the residual is round-off.
pub fn weight_residual(alpha: f64, mu: f64, nu_sq: f64, t_samples: &[f64]) -> f64 {
    let w = SelfSimilarWeight { alpha };
    let mut worst = 0.0f64;
    for &t in t_samples {
        let one_t = 1.0 + t;
        let t1 = w.g2(t);
        let t2 = -mu / one_t * w.g1(t);
        let t3 = (mu + nu_sq) / (one_t * one_t) * w.g(t);
        let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max((t1 + t2 + t3).abs() / scale);
    }
    worst
}

/// Smooth time cutoff `η` (1 on [0, 1/2], 0 from 1 on) and radial cutoff
/// `φ` with the same profile, realized by the exponential bump
/// `exp(1 - 1/(1-s²))` under the affine map `s = 2x - 1` on the transition
/// band.
#[derive(Debug, Clone, Copy, Default)]
pub struct CutoffPair;

impl CutoffPair {
    pub fn eta(&self, t: f64) -> f64 {
        band_profile(t)
    }

    pub fn eta_d1(&self, t: f64) -> f64 {
        2.0 * band_profile_d1(t)
    }

    pub fn eta_d2(&self, t: f64) -> f64 {
        4.0 * band_profile_d2(t)
    }

    pub fn phi(&self, r: f64) -> f64 {
        band_profile(r)
    }

    pub fn phi_d1(&self, r: f64) -> f64 {
        2.0 * band_profile_d1(r)
    }

    /// `Δφ = φ'' + (n-1)/r · φ'` for the radial cutoff; flat regions give 0.
    pub fn phi_laplacian(&self, r: f64, n: u32) -> f64 {
        if r <= 0.5 || r >= 1.0 {
            return 0.0;
        }
        4.0 * band_profile_d2(r) + (n as f64 - 1.0) / r * self.phi_d1(r)
    }
}

fn band_profile(x: f64) -> f64 {
    if x <= 0.5 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        let s = 2.0 * x - 1.0;
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// d/dx of the profile on the band (0 outside); chain rule factor 2 applied
/// by the callers that need it per variable.
fn band_profile_d1(x: f64) -> f64 {
    if x <= 0.5 || x >= 1.0 {
        return 0.0;
    }
    let s = 2.0 * x - 1.0;
    let om = 1.0 - s * s;
    -2.0 * s / (om * om) * band_profile(x)
}

fn band_profile_d2(x: f64) -> f64 {
    if x <= 0.5 || x >= 1.0 {
        return 0.0;
    }
    let s = 2.0 * x - 1.0;
    let om = 1.0 - s * s;
    let e = band_profile(x);
    (4.0 * s * s / om.powi(4) - 2.0 * (1.0 + 3.0 * s * s) / om.powi(3)) * e
}

/// The two blow-up sign conditions: each integral
/// `∫ (½(μ_j - 1 + √δ_j) w₀ + w₁) dx` (radial measure, sphere factor
/// applied) must be strictly positive.
pub fn sign_conditions(
    data: &FieldPair,
    grid: &RadialGrid,
    coeffs: &SystemCoefficients,
) -> (bool, bool) {
    let (i1, i2) = sign_condition_values(data, grid, coeffs);
    (i1 > 0.0, i2 > 0.0)
}

/// The integral values behind [`sign_conditions`].
pub fn sign_condition_values(
    data: &FieldPair,
    grid: &RadialGrid,
    coeffs: &SystemCoefficients,
) -> (f64, f64) {
    let one = |w0: &[f64], w1: &[f64], mu: f64, nu_sq: f64| -> f64 {
        let delta = (mu - 1.0) * (mu - 1.0) - 4.0 * nu_sq;
        let factor = 0.5 * (mu - 1.0 + delta.max(0.0).sqrt());
        let vals: Vec<f64> = w0.iter().zip(w1).map(|(&a, &b)| factor * a + b).collect();
        radial_trapezoid(&vals, &grid.r, grid.spacing, grid.n)
    };
    (
        one(&data.u, &data.ut, coeffs.eq1.mu, coeffs.eq1.nu_sq),
        one(&data.v, &data.vt, coeffs.eq2.mu, coeffs.eq2.nu_sq),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffKind {
    Smooth,
    /// Indicator functions of the same supports; upper-bounds the smooth
    /// values pointwise.
    Indicator,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// The blow-up argument couples τ = R; other couplings are a knob.
    pub tau_over_r: f64,
    pub cutoff: CutoffKind,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            tau_over_r: 1.0,
            cutoff: CutoffKind::Smooth,
        }
    }
}

/// Values of the two space-time functionals at one scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalSample {
    pub scale_r: f64,
    pub tau: f64,
    /// `∫∫ g₁(t) ψ_{τ,R} |v|^p`.
    pub i_val: f64,
    /// `∫∫ g₂(t) ψ_{τ,R} |u|^q`.
    pub j_val: f64,
}

/// Functional values over a scale ladder plus the informational log-log
/// slope against the asymptotic scaling exponent (reported, never asserted:
/// desk-scale R cannot reach the asymptotic regime).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalScan {
    pub samples: Vec<FunctionalSample>,
    /// Finite-difference `d log I / d log R` between consecutive scales.
    pub i_log_slopes: Vec<f64>,
    pub j_log_slopes: Vec<f64>,
    /// `-2p(q+1)/(pq-1) + n + α₁ + 1`.
    pub i_reference_exponent: f64,
    /// `-2q(p+1)/(pq-1) + n + α₂ + 1`.
    pub j_reference_exponent: f64,
}

/// Evaluate `I_{τ,R}` and `J_{τ,R}` over the snapshot history for each scale
/// in `r_list` (increasing). Quadrature: trapezoid over snapshot times,
/// Gauss-Legendre panels in radius with linear interpolation of the fields.
pub fn functional_scan(
    hist: &FieldHistory,
    coeffs: &SystemCoefficients,
    p: f64,
    q: f64,
    r_list: &[f64],
    opts: &ScanOptions,
) -> Result<FunctionalScan, DiagError> {
    if r_list.is_empty() || r_list[0] <= 0.0 || r_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DiagError::BadScales);
    }
    let t_max = *hist.times.last().unwrap_or(&0.0);
    let alpha1 = coeffs.eq1.alpha().ok_or(DiagError::AlphaUndefined {
        delta: coeffs.eq1.delta(),
    })?;
    let alpha2 = coeffs.eq2.alpha().ok_or(DiagError::AlphaUndefined {
        delta: coeffs.eq2.delta(),
    })?;
    let g1 = SelfSimilarWeight { alpha: alpha1 };
    let g2 = SelfSimilarWeight { alpha: alpha2 };
    let cut = CutoffPair;

    let mut samples = Vec::with_capacity(r_list.len());
    for &scale_r in r_list {
        let tau = opts.tau_over_r * scale_r;
        if tau > t_max * (1.0 + 1e-12) {
            return Err(DiagError::CoverageExceeded {
                r: scale_r,
                available: t_max,
            });
        }
        let mut i_val = 0.0;
        let mut j_val = 0.0;
        // Trapezoid over the snapshots inside [0, τ].
        let times: Vec<f64> = hist.times.iter().copied().filter(|&t| t <= tau).collect();
        for (k, &t) in times.iter().enumerate() {
            let wt = trapezoid_weight(&times, k);
            let eta = match opts.cutoff {
                CutoffKind::Smooth => cut.eta(t / tau),
                CutoffKind::Indicator => 1.0,
            };
            if eta == 0.0 {
                continue;
            }
            let iv = radial_functional(hist, k, scale_r, p, &cut, opts.cutoff, true);
            let jv = radial_functional(hist, k, scale_r, q, &cut, opts.cutoff, false);
            i_val += wt * g1.g(t) * eta * iv;
            j_val += wt * g2.g(t) * eta * jv;
        }
        samples.push(FunctionalSample {
            scale_r,
            tau,
            i_val,
            j_val,
        });
    }

    let slope = |vals: &dyn Fn(&FunctionalSample) -> f64| -> Vec<f64> {
        samples
            .windows(2)
            .map(|w| {
                let (a, b) = (vals(&w[0]), vals(&w[1]));
                if a > 0.0 && b > 0.0 {
                    (b / a).ln() / (w[1].scale_r / w[0].scale_r).ln()
                } else {
                    f64::NAN
                }
            })
            .collect()
    };
    let nf = hist.n as f64;
    Ok(FunctionalScan {
        i_log_slopes: slope(&|s: &FunctionalSample| s.i_val),
        j_log_slopes: slope(&|s: &FunctionalSample| s.j_val),
        i_reference_exponent: -2.0 * p * (q + 1.0) / (p * q - 1.0) + nf + alpha1 + 1.0,
        j_reference_exponent: -2.0 * q * (p + 1.0) / (p * q - 1.0) + nf + alpha2 + 1.0,
        samples,
    })
}

fn trapezoid_weight(times: &[f64], k: usize) -> f64 {
    if times.len() < 2 {
        return 0.0;
    }
    let left = if k == 0 { times[0] } else { times[k - 1] };
    let right = if k == times.len() - 1 {
        times[k]
    } else {
        times[k + 1]
    };
    0.5 * (right - left)
}

/// `ω_{n-1} ∫₀^{min(R, r_max)} φ(r/R) |w(r)|^p r^{n-1} dr` by panel
/// quadrature with linear interpolation of the snapshot.
fn radial_functional(
    hist: &FieldHistory,
    snapshot: usize,
    scale_r: f64,
    power: f64,
    cut: &CutoffPair,
    kind: CutoffKind,
    first_field: bool,
) -> f64 {
    let field = if first_field {
        &hist.v[snapshot]
    } else {
        &hist.u[snapshot]
    };
    let r_max = *hist.r.last().unwrap();
    let upper = scale_r.min(r_max);
    let panels = ((upper / (4.0 * hist.spacing)).ceil() as usize).max(4);
    let rule = GaussLegendre::new(4);
    let width = upper / panels as f64;
    let nm1 = hist.n as i32 - 1;
    let mut sum = 0.0;
    for kpanel in 0..panels {
        let lo = kpanel as f64 * width;
        for (x, w) in rule.mapped(lo, lo + width) {
            let phi = match kind {
                CutoffKind::Smooth => cut.phi(x / scale_r),
                CutoffKind::Indicator => 1.0,
            };
            if phi == 0.0 {
                continue;
            }
            // Linear interpolation of the snapshot at radius x.
            let pos = x / hist.spacing;
            let i0 = (pos.floor() as usize).min(field.len() - 2);
            let frac = pos - i0 as f64;
            let val = field[i0] * (1.0 - frac) + field[i0 + 1] * frac;
            sum += w * phi * val.abs().powf(power) * x.powi(nm1);
        }
    }
    sum * sphere_surface(hist.n)
}

/// The weighted solution-space series
/// `(1+t)^{-γ₁} M₁(t)` and `(1+t)^{-γ₂} M₂(t)` with
/// `M₁(t) = (1+t)^{n/2+α₁} (‖(∇u, u_t)‖_{L²} + (1+t)^{-1} ‖u‖_{L²})`
/// (and `M₂` analogously for v). A global verdict predicts both series
/// stay bounded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSeries {
    pub times: Vec<f64>,
    pub m1: Vec<f64>,
    pub m2: Vec<f64>,
}

pub fn xnorm_weights(
    trace: &SimulationTrace,
    alpha1: f64,
    alpha2: f64,
    gamma1: f64,
    gamma2: f64,
) -> Result<WeightedSeries, DiagError> {
    if trace.blowup.is_some() {
        return Err(DiagError::DivergedTrace);
    }
    let half_n = trace.n as f64 / 2.0;
    let mut m1 = Vec::with_capacity(trace.times.len());
    let mut m2 = Vec::with_capacity(trace.times.len());
    for (k, &t) in trace.times.iter().enumerate() {
        let one_t = 1.0 + t;
        let base1 = one_t.powf(half_n + alpha1) * (trace.energy_u[k] + trace.l2_u[k] / one_t);
        let base2 = one_t.powf(half_n + alpha2) * (trace.energy_v[k] + trace.l2_v[k] / one_t);
        m1.push(one_t.powf(-gamma1) * base1);
        m2.push(one_t.powf(-gamma2) * base2);
    }
    Ok(WeightedSeries {
        times: trace.times.clone(),
        m1,
        m2,
    })
}

impl WeightedSeries {
    /// `sup/inf` of a component over the window; 1 means exactly flat.
    pub fn sup_inf_ratio(&self, first: bool, window: (f64, f64)) -> f64 {
        let vals = if first { &self.m1 } else { &self.m2 };
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (&t, &v) in self.times.iter().zip(vals) {
            if t >= window.0 && t <= window.1 {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        hi / lo
    }

    pub fn slope(&self, first: bool, window: (f64, f64)) -> Option<SlopeFit> {
        let vals = if first { &self.m1 } else { &self.m2 };
        log_log_slope(&self.times, vals, window, 0.0, 3).ok()
    }
}
