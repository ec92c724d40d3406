//! Classification-only sweep of the (p, q) plane and an SVG regime diagram
//! with the analytic critical curves. For symmetric coefficients the
//! blow-up boundary crosses the diagonal exactly at the Fujita-type point
//! p = q = 1 + 2/(n + alpha - 1).
//!
//! Run with: cargo run --release --example regime_diagram [out_dir]

use scalewave::exponents::fujita_exponent;
use scalewave::harness::commands::{sweep_cmd, CmdContext};
use scalewave::harness::RunConfig;
use std::path::PathBuf;

fn main() {
    let out_dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "regime_diagram_out".into());
    let config = RunConfig::from_toml_str(
        r#"
        [coefficients]
        mu1 = 5.0
        nu1_sq = 0.0
        mu2 = 7.0
        nu2_sq = 0.0
        n = 1

        [sweep]
        p_min = 1.1
        p_max = 6.0
        p_count = 80
        q_min = 1.1
        q_max = 6.0
        q_count = 80
        "#,
    )
    .expect("valid config");

    // alpha1 = alpha2 = 1, n = 1: the diagonal crossing sits at p = 3.
    println!(
        "Fujita-type diagonal crossing: p = q = {}",
        fujita_exponent(1.0)
    );

    let ctx = CmdContext {
        config,
        out_dir: PathBuf::from(&out_dir),
        exact: false,
        jobs: None,
    };
    let code = sweep_cmd(&ctx).expect("sweep");
    assert_eq!(code, 0);
    println!("open {out_dir}/sweep.svg to see the regime diagram");
}
