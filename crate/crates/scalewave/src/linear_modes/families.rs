//! Built-in radially symmetric data families with reference Fourier
//! transforms.
//!
//! The verification chain wants spectra free of transform error, so the
//! families are analytic: the Gaussian has a closed-form transform in every
//! dimension, and the compactly supported bump gets a reference transform by
//! high-order quadrature of the radial kernel (cosine for n=1, Bessel J₀ for
//! n=2, spherical sinc for n=3).
//!
//! Convention: the symmetric (unitary) Fourier transform, so Plancherel has
//! no 2π factors and `‖u‖²_{L²(ℝⁿ)} = ω_{n-1} ∫₀^∞ |û(ρ)|² ρ^{n-1} dρ`.

use crate::quadrature::{composite_integrate, sphere_surface};
use serde::{Deserialize, Serialize};

/// A radial profile with an analytic or reference-quality transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RadialData {
    /// `A exp(-r²/(2σ²))`.
    Gaussian {
        amplitude: f64,
        sigma: f64,
    },
    /// `A exp(1 - 1/(1 - (r/radius)²))` for `r < radius`, zero outside.
    Bump {
        amplitude: f64,
        radius: f64,
    },
    Zero,
}

impl RadialData {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            RadialData::Gaussian { amplitude, sigma } => {
                amplitude * (-r * r / (2.0 * sigma * sigma)).exp()
            }
            RadialData::Bump { amplitude, radius } => bump_profile(r, radius) * amplitude,
            RadialData::Zero => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RadialData::Zero)
            || matches!(self, RadialData::Gaussian { amplitude, .. } | RadialData::Bump { amplitude, .. } if *amplitude == 0.0)
    }

    /// Radial Fourier transform at frequency `rho` in dimension `n`.
    pub fn fourier(&self, n: u32, rho: f64) -> f64 {
        match *self {
            RadialData::Zero => 0.0,
            RadialData::Gaussian { amplitude, sigma } => {
                amplitude * sigma.powi(n as i32) * (-0.5 * sigma * sigma * rho * rho).exp()
            }
            RadialData::Bump { amplitude, radius } => amplitude * bump_fourier(n, rho, radius),
        }
    }

    /// Closed-form `‖u‖_{L²(ℝⁿ)}` where available (Gaussian, zero).
    pub fn l2_norm(&self, n: u32) -> Option<f64> {
        match *self {
            RadialData::Zero => Some(0.0),
            RadialData::Gaussian { amplitude, sigma } => {
                // ∫ A² e^{-r²/σ²} dx = A² (σ√π)ⁿ
                Some(amplitude.abs() * (sigma * std::f64::consts::PI.sqrt()).powf(n as f64 / 2.0))
            }
            RadialData::Bump { .. } => None,
        }
    }

    /// `‖u‖_{L¹(ℝⁿ)}` by radial quadrature (finite for both families).
    pub fn l1_norm(&self, n: u32) -> f64 {
        let upper = match *self {
            RadialData::Zero => return 0.0,
            RadialData::Gaussian { sigma, .. } => 14.0 * sigma,
            RadialData::Bump { radius, .. } => radius,
        };
        sphere_surface(n)
            * composite_integrate(0.0, upper, 64, 8, |r| {
                self.eval(r).abs() * r.powi(n as i32 - 1)
            })
    }
}

/// The standard mollifier profile, 1 at r = 0, support `[0, radius)`.
pub fn bump_profile(r: f64, radius: f64) -> f64 {
    let s = r / radius;
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// Reference transform of the unit-amplitude bump by composite quadrature.
///
/// Kernels in the unitary convention:
///   n=1: `√(2/π) ∫ u(r) cos(ρr) dr`
///   n=2: `∫ u(r) J₀(ρr) r dr`
///   n=3: `√(2/π) (1/ρ) ∫ u(r) sin(ρr) r dr`
fn bump_fourier(n: u32, rho: f64, radius: f64) -> f64 {
    // Panels sized so the oscillation ρr is resolved spectrally.
    let panels = (8.0 + radius * rho / 2.0).ceil() as usize;
    match n {
        1 => {
            let c = (2.0 / std::f64::consts::PI).sqrt();
            c * composite_integrate(0.0, radius, panels, 8, |r| {
                bump_profile(r, radius) * (rho * r).cos()
            })
        }
        2 => composite_integrate(0.0, radius, panels, 8, |r| {
            bump_profile(r, radius) * bessel_j0(rho * r) * r
        }),
        3 => {
            let c = (2.0 / std::f64::consts::PI).sqrt();
            if rho * radius < 1e-4 {
                // sin(ρr)/ρ → r with an O((ρr)²) correction; expand to avoid
                // the 0/0.
                c * composite_integrate(0.0, radius, panels, 8, |r| {
                    let x = rho * r;
                    bump_profile(r, radius) * r * r * (1.0 - x * x / 6.0 + x.powi(4) / 120.0)
                })
            } else {
                c / rho
                    * composite_integrate(0.0, radius, panels, 8, |r| {
                        bump_profile(r, radius) * (rho * r).sin() * r
                    })
            }
        }
        _ => panic!("bump spectra are provided for n in {{1, 2, 3}} (got n = {n})"),
    }
}

/// `J₀` via its integral representation, `(1/π) ∫₀^π cos(x sin θ) dθ`,
/// evaluated with a fixed high-order panel rule. Slow but reference-grade;
/// only the n=2 bump transform uses it.
pub fn bessel_j0(x: f64) -> f64 {
    let panels = (4.0 + x.abs() / 2.0).ceil() as usize;
    composite_integrate(0.0, std::f64::consts::PI, panels, 8, |theta| {
        (x * theta.sin()).cos()
    }) / std::f64::consts::PI
}
