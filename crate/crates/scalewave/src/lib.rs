//! Regime maps, decay forecasts and desk-scale numerical verification for
//! weakly coupled systems of semilinear wave equations with scale-invariant
//! damping and mass terms,
//!
//! ```text
//! u_tt - Δu + μ1/(1+t) u_t + ν1²/(1+t)² u = |v|^p
//! v_tt - Δv + μ2/(1+t) v_t + ν2²/(1+t)² v = |u|^q
//! ```
//!
//! The crate has two halves that check each other:
//!
//! * [`exponents`] — closed-form algebra: the discriminants δ_j, shifts α_j,
//!   critical thresholds, blow-up/global-existence classification of a
//!   `(p, q)` pair, and predicted decay rates (with loss of decay where the
//!   theory demands it). Predicates can be decided in exact rational
//!   arithmetic for boundary cases.
//! * [`linear_modes`] and [`semilinear_sim`] — numerical verification at desk
//!   scale: a per-frequency ODE solver for the linear flow and a radial
//!   finite-difference solver for the full coupled system, with blow-up
//!   detection, decay-rate regression and light-cone-exact domain truncation.
//!
//! [`diagnostics`] carries the test-function machinery (self-similar weights,
//! smooth cutoffs, the space-time functionals) as numerical self-checks, and
//! [`harness`] provides configuration, `(p, q)`-plane sweeps, CSV/JSON/SVG
//! output and the command-line interface.
//!
//! Each major capability has a runnable program under `examples/`; start with
//! `cargo run --release --example classify_regimes`.

// Validation guards are written `!(x > 0.0)` on purpose: the negated form
// rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod exponents;
pub mod fit;
pub mod harness;
pub mod linear_modes;
pub mod ode;
pub mod quadrature;
pub mod semilinear_sim;

pub use exponents::{
    CoefficientPair, DecayForecast, DerivedExponents, ExponentPair, RegimeKind, RegimeVerdict,
    SystemCoefficients,
};

/// Tool version embedded in every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
