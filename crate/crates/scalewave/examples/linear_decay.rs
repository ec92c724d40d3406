//! Empirical decay rates of the linear scale-invariant flow.
//!
//! Evolves Gaussian data with nonzero mean under mu = 9 (delta = 64, well
//! inside the parabolic-like regime) and fits log-log slopes of the L2,
//! homogeneous-H1 and u_t norms against the linear theory: exponents
//! -(n/2 + alpha - 1) = -0.5 and -(n/2 + alpha) = -1.5 for n = 1, alpha = 1.
//! Also measures the delayed-start gain for pure velocity data.
//!
//! Run with: cargo run --release --example linear_decay

use scalewave::exponents::CoefficientPair;
use scalewave::linear_modes::{
    delayed_start_gain, evolve, fit_decay, norms, NormKind, RadialData, RadialSpectrum,
};

fn main() {
    let coeffs = CoefficientPair::new(9.0, 0.0).unwrap();
    let gaussian = RadialData::Gaussian {
        amplitude: 1.0,
        sigma: 1.0,
    };
    let t_max = 200.0;
    let spec = RadialSpectrum::from_families(&gaussian, &gaussian, 1, t_max).unwrap();
    println!(
        "spectrum: {} modes up to rho = {:.2}",
        spec.len(),
        spec.rho.last().unwrap()
    );

    let t_grid: Vec<f64> = (0..=200).map(|k| k as f64).collect();
    let states = evolve(&spec, &coeffs, 0.0, &t_grid, 1e-10).unwrap();
    let series = norms(&states, &spec);

    let window = (20.0, 200.0);
    println!("fit window t in [{}, {}]:", window.0, window.1);
    for (name, kind, predicted) in [
        ("L2     ", NormKind::L2, -0.5),
        ("H1dot  ", NormKind::Hdot1, -1.5),
        ("u_t L2 ", NormKind::UtL2, -1.5),
    ] {
        let fit = fit_decay(&series, kind, window).unwrap();
        println!(
            "  {name} slope = {:+.4} (theory {predicted:+.1}, r^2 = {:.5})",
            fit.slope, fit.r_squared
        );
    }

    // Delayed starts decay less: the gain at fixed T grows with s, bounded
    // by the (1+s)^(alpha + n/2) envelope of the linear estimate.
    println!("\ndelayed-start gain at T = 60 (pure velocity data):");
    let vel_spec = RadialSpectrum::from_families(&RadialData::Zero, &gaussian, 1, 60.0).unwrap();
    for s in [0.0, 1.0, 2.0, 4.0, 8.0] {
        let gain = delayed_start_gain(&vel_spec, &coeffs, s, 60.0, 1e-8).unwrap();
        println!("  s = {s:>3}: |u(T)| ratio = {gain:.4}");
    }
}
