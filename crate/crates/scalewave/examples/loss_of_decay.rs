//! Loss of decay: the subcritical partner nonlinearity slows one component.
//!
//! At (p, q) = (2.5, 8) the reference system is global but p sits below the
//! threshold p~ = 3, so u pays a loss of decay gamma = (n + alpha2 - 1)
//! (p~ - p) = 0.5: its L2 norm should be near-constant (exponent
//! -0.5 + 0.5 = 0) while v still decays at -0.5. Starting u from zero data
//! isolates the source-driven part that carries the loss.
//!
//! Run with: cargo run --release --example loss_of_decay

use scalewave::diagnostics::xnorm_weights;
use scalewave::exponents::{classify, derive, CoefficientPair, ExponentPair, SystemCoefficients};
use scalewave::semilinear_sim::{
    check_forecast, DataProfile, FieldSlot, ProfileFamily, RadialGrid, SimOptions, Simulation,
};

fn main() {
    let coeffs = SystemCoefficients::new(
        CoefficientPair::new(5.0, 0.0).unwrap(),
        CoefficientPair::new(7.0, 0.0).unwrap(),
        1,
    )
    .unwrap();
    let exps = ExponentPair::new(2.5, 8.0).unwrap();
    let verdict = classify(&coeffs, &exps).unwrap();
    println!(
        "verdict: {} | gamma = {:?} | forecast u L2 rate {:+.2}, v L2 rate {:+.2}",
        verdict.kind.as_str(),
        verdict.gamma,
        verdict.forecast.unwrap().rate_u_l2,
        verdict.forecast.unwrap().rate_v_l2
    );

    let data = [DataProfile {
        family: ProfileFamily::Bump,
        amplitude: 1e-2,
        support_radius: 2.0,
        assign: FieldSlot::V1,
    }];
    let grid = RadialGrid::new(1, 400.0, 4097).unwrap();
    let sim = Simulation::new(
        grid,
        coeffs,
        exps,
        SimOptions {
            sample_interval: 1.0,
            ..Default::default()
        },
    )
    .unwrap();
    println!("running to t = 320 on L = 400 ...");
    let out = sim.run(&data, 320.0).unwrap();
    let window = (40.0, 300.0);
    let report = check_forecast(&out.trace, &verdict, window, 0.3).unwrap();
    println!(
        "measured L2 slopes: u {:+.4} (target 0.0), v {:+.4} (target -0.5) -> {}",
        report.measured_l2_u.slope,
        report.measured_l2_v.slope,
        if report.pass { "PASS" } else { "FAIL" }
    );

    // The gamma-weighted solution-space series should stay bounded.
    let d = derive(&coeffs);
    let ws = xnorm_weights(
        &out.trace,
        d.alpha1.unwrap(),
        d.alpha2.unwrap(),
        verdict.gamma.unwrap_or(0.0),
        verdict.gamma_bar.unwrap_or(0.0),
    )
    .unwrap();
    println!(
        "gamma-weighted X-norm sup/inf over the window: M1 {:.3}, M2 {:.3} (bounded ~ small)",
        ws.sup_inf_ratio(true, window),
        ws.sup_inf_ratio(false, window)
    );
}
