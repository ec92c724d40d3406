//! The test-function machinery as numerical self-checks: the weight-ODE
//! identity, the cutoff derivative bounds, and the space-time functionals
//! I and J evaluated over a short stored simulation with their scaling
//! trend against the asymptotic exponent (informational only).
//!
//! Run with: cargo run --release --example testfn_diagnostics

use scalewave::diagnostics::{functional_scan, weight_residual, CutoffPair, ScanOptions};
use scalewave::exponents::{CoefficientPair, ExponentPair, SystemCoefficients};
use scalewave::semilinear_sim::{
    DataProfile, FieldSlot, ProfileFamily, RadialGrid, SimOptions, Simulation,
};

fn main() {
    // Weight identity g'' - mu/(1+t) g' + (mu+nu^2)/(1+t)^2 g = 0.
    let samples = [0.0, 1.0, 10.0, 100.0];
    for (mu, nu_sq) in [(5.0, 0.0), (9.0, 12.0), (3.0, 0.8)] {
        let alpha = CoefficientPair::new(mu, nu_sq).unwrap().alpha().unwrap();
        let res = weight_residual(alpha, mu, nu_sq, &samples);
        println!("weight ODE residual (mu = {mu}, nu^2 = {nu_sq}, alpha = {alpha:.4}): {res:.2e}");
    }
    let perturbed = weight_residual(1.1, 5.0, 0.0, &samples);
    println!("negative control (alpha + 0.1): residual {perturbed:.2e}\n");

    // Cutoff profile and derivative-bound constants.
    let cut = CutoffPair;
    for r in [2.0, 8.0] {
        let mut c = 0.0f64;
        for k in 0..10_000 {
            let x = 0.5 + (0.5 - 1e-6) * k as f64 / 10_000.0;
            let base = cut.eta(x).powf(1.0 / r);
            if base > 0.0 {
                c = c.max(cut.eta_d1(x).abs().max(cut.eta_d2(x).abs()) / base);
            }
        }
        println!("cutoff bound constant for r = {r}: sup |eta', eta''| / eta^(1/r) = {c:.3}");
    }

    // Functionals over a stored supercritical run.
    let coeffs = SystemCoefficients::new(
        CoefficientPair::new(5.0, 0.0).unwrap(),
        CoefficientPair::new(7.0, 0.0).unwrap(),
        1,
    )
    .unwrap();
    let exps = ExponentPair::new(4.0, 4.0).unwrap();
    let grid = RadialGrid::new(1, 60.0, 1025).unwrap();
    let sim = Simulation::new(
        grid,
        coeffs,
        exps,
        SimOptions {
            record_fields: true,
            sample_interval: 0.5,
            ..Default::default()
        },
    )
    .unwrap();
    let bump = |assign| DataProfile {
        family: ProfileFamily::Bump,
        amplitude: 0.05,
        support_radius: 2.0,
        assign,
    };
    let out = sim
        .run(&[bump(FieldSlot::U1), bump(FieldSlot::V1)], 55.0)
        .unwrap();
    let hist = out.fields.unwrap();

    let scales = [4.0, 8.0, 16.0, 32.0];
    let scan = functional_scan(
        &hist,
        &coeffs,
        exps.p,
        exps.q,
        &scales,
        &ScanOptions::default(),
    )
    .unwrap();
    println!("\nfunctionals with tau = R over a stored (4,4) run:");
    for s in &scan.samples {
        println!(
            "  R = {:>4}: I = {:.6e}, J = {:.6e}",
            s.scale_r, s.i_val, s.j_val
        );
    }
    println!(
        "log-log I slopes between scales: {:?} (asymptotic reference {:+.3}, informational)",
        scan.i_log_slopes
            .iter()
            .map(|s| format!("{s:+.3}"))
            .collect::<Vec<_>>(),
        scan.i_reference_exponent
    );
}
