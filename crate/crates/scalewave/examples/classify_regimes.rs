//! Classify exponent pairs for a reference system and print the regime map
//! data: derived constants, thresholds, verdicts and decay forecasts.
//!
//! Run with: cargo run --release --example classify_regimes

use scalewave::exponents::{
    classify, conjectured_strauss_region, derive, CoefficientPair, ExponentPair, SystemCoefficients,
};

fn main() {
    // n = 1, μ₁ = 5, μ₂ = 7, ν² = 0: both equations parabolic-like, with
    // shifts α₁ = α₂ = 1 and thresholds p̃ = q̃ = 3.
    let coeffs = SystemCoefficients::new(
        CoefficientPair::new(5.0, 0.0).unwrap(),
        CoefficientPair::new(7.0, 0.0).unwrap(),
        1,
    )
    .unwrap();

    let d = derive(&coeffs);
    println!("coefficients: mu = (5, 7), nu^2 = (0, 0), n = 1");
    println!("  delta      = ({}, {})", d.delta1, d.delta2);
    println!(
        "  alpha      = ({:?}, {:?})",
        d.alpha1.unwrap(),
        d.alpha2.unwrap()
    );
    println!(
        "  p~, q~     = ({:?}, {:?})",
        d.p_tilde.unwrap(),
        d.q_tilde.unwrap()
    );
    println!("  parabolic-like: {:?}", d.parabolic_like);
    println!();

    println!(
        "{:>6} {:>6}  {:<26} {:>9} {:>9} {:>7} {:>10} {:>9}",
        "p", "q", "verdict", "F1", "F2", "gamma", "u L2 rate", "v L2 rate"
    );
    for (p, q) in [
        (2.0, 2.0), // subcritical: blow-up
        (3.0, 3.0), // the critical corner p_Fuj(n + alpha - 1) = 3
        (4.0, 4.0), // supercritical: global, no loss
        (2.5, 8.0), // p below threshold: global with loss of decay on u
        (8.0, 2.5), // mirrored: loss on v
        (3.0, 8.0), // limit case p = p~ exactly: loss epsilon
    ] {
        let exps = ExponentPair::new(p, q).unwrap();
        let v = classify(&coeffs, &exps).unwrap();
        let (ru, rv) = v
            .forecast
            .map(|f| {
                (
                    format!("{:+.3}", f.rate_u_l2),
                    format!("{:+.3}", f.rate_v_l2),
                )
            })
            .unwrap_or_else(|| ("-".into(), "-".into()));
        println!(
            "{:>6} {:>6}  {:<26} {:>9.4} {:>9.4} {:>7} {:>10} {:>9}",
            p,
            q,
            v.kind.as_str(),
            v.f1,
            v.f2,
            v.gamma
                .map(|g| format!("{g:.3}"))
                .unwrap_or_else(|| "-".into()),
            ru,
            rv
        );
    }

    println!();
    println!("Strauss-type overlay (CONJECTURE, small-delta regime, never a verdict):");
    for mu in [0.0, 10.0] {
        let c = SystemCoefficients::new(
            CoefficientPair::new(mu, 0.0).unwrap(),
            CoefficientPair::new(mu, 0.0).unwrap(),
            1,
        )
        .unwrap();
        let inside = conjectured_strauss_region(&c, &ExponentPair::new(2.0, 2.0).unwrap());
        println!("  mu1 = mu2 = {mu:>4}, (p, q) = (2, 2): in conjectured region = {inside}");
    }
}
