//! Small-data global existence with forecast verification.
//!
//! (p, q) = (4, 4) is supercritical on both sides for the reference system,
//! so small data decays at the linear rates with no loss: both components'
//! L2 norms should fit slope -0.5 over the asymptotic window.
//!
//! Run with: cargo run --release --example global_decay

use scalewave::exponents::{classify, CoefficientPair, ExponentPair, SystemCoefficients};
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
    let exps = ExponentPair::new(4.0, 4.0).unwrap();
    let verdict = classify(&coeffs, &exps).unwrap();
    let forecast = verdict.forecast.unwrap();
    println!(
        "verdict: {} | forecast L2 rates: u {:+.1}, v {:+.1}",
        verdict.kind.as_str(),
        forecast.rate_u_l2,
        forecast.rate_v_l2
    );

    let bump = |assign| DataProfile {
        family: ProfileFamily::Bump,
        amplitude: 1e-2,
        support_radius: 2.0,
        assign,
    };
    let data = [bump(FieldSlot::U1), bump(FieldSlot::V1)];

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
    println!(
        "running to t = 320 on L = 400 (light cone allows {:.1})",
        sim.lightcone_t_max(&data)
    );
    let out = sim.run(&data, 320.0).unwrap();
    assert!(out.trace.blowup.is_none(), "small data must not diverge");

    let report = check_forecast(&out.trace, &verdict, (40.0, 300.0), 0.25).unwrap();
    println!(
        "measured L2 slopes: u {:+.4} (dev {:.4}), v {:+.4} (dev {:.4})",
        report.measured_l2_u.slope,
        report.deviation_l2_u,
        report.measured_l2_v.slope,
        report.deviation_l2_v
    );
    println!(
        "energy-norm slopes: u {:+.4}, v {:+.4} (theory -1.5)",
        report.measured_energy_u.slope, report.measured_energy_v.slope
    );
    println!(
        "forecast check: {}",
        if report.pass { "PASS" } else { "FAIL" }
    );
}
