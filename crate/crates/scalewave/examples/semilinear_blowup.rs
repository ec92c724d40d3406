//! Blow-up detection for large subcritical data.
//!
//! (p, q) = (1.5, 1.5) lies deep in the blow-up region of the reference
//! system (F1 = F2 = 1 > 0), and positive bump velocity data satisfies the
//! data sign conditions. The run diverges well before the light-cone guard.
//!
//! Run with: cargo run --release --example semilinear_blowup

use scalewave::diagnostics::sign_condition_values;
use scalewave::exponents::{classify, CoefficientPair, ExponentPair, SystemCoefficients};
use scalewave::semilinear_sim::{
    DataProfile, FieldSlot, ProfileFamily, RadialGrid, SimOptions, Simulation,
};

fn main() {
    let coeffs = SystemCoefficients::new(
        CoefficientPair::new(5.0, 0.0).unwrap(),
        CoefficientPair::new(7.0, 0.0).unwrap(),
        1,
    )
    .unwrap();
    let exps = ExponentPair::new(1.5, 1.5).unwrap();
    let verdict = classify(&coeffs, &exps).unwrap();
    println!(
        "verdict: {} (F1 = {}, F2 = {})",
        verdict.kind.as_str(),
        verdict.f1,
        verdict.f2
    );

    let bump = |assign| DataProfile {
        family: ProfileFamily::Bump,
        amplitude: 50.0,
        support_radius: 1.0,
        assign,
    };
    let data = [bump(FieldSlot::U1), bump(FieldSlot::V1)];

    let grid = RadialGrid::new(1, 50.0, 1025).unwrap();
    let sim = Simulation::new(grid, coeffs, exps, SimOptions::default()).unwrap();

    let state0 = sim.initial_state(&data).unwrap();
    let (s1, s2) = sign_condition_values(&state0, &sim.grid, &coeffs);
    println!("sign-condition integrals: {s1:.3}, {s2:.3} (both must be > 0)");

    let lightcone = sim.lightcone_t_max(&data);
    let out = sim.run(&data, lightcone * 0.99).unwrap();
    match out.trace.blowup {
        Some(rec) => println!(
            "divergence detected at t = {:.3} (light cone allows {:.1}): |field| reached {:.2e} > threshold {:.2e}",
            rec.t_detect, lightcone, rec.max_abs, rec.threshold
        ),
        None => println!("no divergence before t = {lightcone:.1} (unexpected here)"),
    }
    let k = out.trace.times.len() - 1;
    println!(
        "last sample: t = {:.2}, |u|_inf = {:.3e}, |v|_inf = {:.3e}",
        out.trace.times[k], out.trace.linf_u[k], out.trace.linf_v[k]
    );
}
