//! End-to-end tests of the command-line surface: subcommands, exit codes,
//! file schemas, and byte-determinism across worker counts.

use scalewave::harness::cli::run;
use std::fs;
use std::path::{Path, PathBuf};
use tempfile::TempDir;

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn cli(args: &[&str]) -> i32 {
    let mut full = vec!["scalewave".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    run(full)
}

fn json_at(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const REFERENCE_COEFFS: &str = r#"
[coefficients]
mu1 = 5.0
nu1_sq = 0.0
mu2 = 7.0
nu2_sq = 0.0
n = 1
"#;

#[test]
fn classify_reproduces_the_hand_cases() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        (2.0, 2.0, "blow_up", None),
        (4.0, 4.0, "global_supercritical_both", None),
        (2.5, 8.0, "global_loss_on_u", Some(0.5)),
    ];
    for (k, (p, q, kind, gamma)) in cases.iter().enumerate() {
        let cfg = write_config(
            tmp.path(),
            &format!("c{k}.toml"),
            &format!("{REFERENCE_COEFFS}\n[exponents]\np = {p}\nq = {q}\n"),
        );
        for exact in [false, true] {
            let out = tmp.path().join(format!("out{k}_{exact}"));
            let mut args = vec![
                "classify",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ];
            if exact {
                args.push("--exact");
            }
            assert_eq!(cli(&args), 0);
            let doc = json_at(&out.join("classify.json"));
            assert_eq!(
                doc["verdict"]["kind"], *kind,
                "(p,q)=({p},{q}) exact={exact}"
            );
            match gamma {
                Some(g) => assert_eq!(doc["verdict"]["gamma"], *g),
                None => assert!(doc["verdict"]["gamma"].is_null()),
            }
            assert_eq!(doc["version"], scalewave::VERSION);
            assert_eq!(doc["config"]["coefficients"]["mu1"], 5.0);
        }
    }
    // The loss case carries the hand-checked F and forecast values.
    let cfg = write_config(
        tmp.path(),
        "loss.toml",
        &format!("{REFERENCE_COEFFS}\n[exponents]\np = 2.5\nq = 8.0\n"),
    );
    let out = tmp.path().join("loss");
    assert_eq!(
        cli(&[
            "classify",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let doc = json_at(&out.join("classify.json"));
    let f2 = doc["verdict"]["f2"].as_f64().unwrap();
    assert!((f2 - (-1.0 / 38.0)).abs() < 1e-14);
    assert_eq!(doc["verdict"]["forecast"]["rate_u_l2"], 0.0);
    assert_eq!(doc["derived"]["p_tilde"], 3.0);
}

#[test]
fn exact_flag_decides_the_inclusive_boundary_with_configured_epsilon() {
    // p sits exactly on the threshold p~ = 3: the inclusive boundary goes
    // to the loss-of-decay side with the configured limit-case epsilon.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "boundary.toml",
        &format!(
            "{REFERENCE_COEFFS}\n[exponents]\np = 3.0\nq = 8.0\n\n[tolerances]\nepsilon = 1e-5\n"
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "classify",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--exact"
        ]),
        0
    );
    let doc = json_at(&out.join("classify.json"));
    assert_eq!(doc["verdict"]["kind"], "global_loss_on_u");
    assert_eq!(doc["verdict"]["gamma"], 1e-5);
    assert_eq!(doc["exact"], true);
}

#[test]
fn simulate_outputs_byte_identical_across_reruns() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sim.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[exponents]
p = 4.0
q = 4.0

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "u1"

[grid]
half_width = 30.0
nodes = 321

[time]
t_end = 20.0
"#
        ),
    );
    let mut snaps = Vec::new();
    for label in ["a", "b"] {
        let out = tmp.path().join(label);
        assert_eq!(
            cli(&[
                "simulate",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        snaps.push((
            fs::read(out.join("trace.csv")).unwrap(),
            fs::read(out.join("simulate.json")).unwrap(),
        ));
    }
    assert_eq!(snaps[0].0, snaps[1].0, "trace.csv differs across reruns");
    assert_eq!(
        snaps[0].1, snaps[1].1,
        "simulate.json differs across reruns"
    );
}

#[test]
fn config_errors_exit_one_with_field_paths() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(
        cli(&["classify", "--config", "/definitely/not/here.toml"]),
        1
    );

    let bad = write_config(
        tmp.path(),
        "bad.toml",
        &REFERENCE_COEFFS.replace("mu1 = 5.0", "mu1 = -3.0"),
    );
    assert_eq!(cli(&["classify", "--config", bad.to_str().unwrap()]), 1);
    // The loader's message names the offending field.
    let err = scalewave::harness::RunConfig::load(&bad).unwrap_err();
    assert!(err.to_string().contains("coefficients.mu1"), "{err}");

    let missing_section = write_config(tmp.path(), "nosweep.toml", REFERENCE_COEFFS);
    assert_eq!(
        cli(&["sweep", "--config", missing_section.to_str().unwrap()]),
        1
    );
}

#[test]
fn empty_sweep_grid_writes_header_only_csv() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "empty.toml",
        &format!(
            "{REFERENCE_COEFFS}\n[sweep]\np_min = 2.0\np_max = 3.0\np_count = 0\nq_min = 2.0\nq_max = 3.0\nq_count = 0\n"
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# scalewave"));
    assert!(lines[1].starts_with("# config:"));
    assert_eq!(
        lines[2],
        "p,q,kind,f1,f2,gamma,gamma_bar,outcome,agreement,error"
    );
    assert_eq!(lines.len(), 3);
}

#[test]
fn sweep_outputs_byte_identical_across_jobs_and_reruns() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sweep.toml",
        &format!(
            "{REFERENCE_COEFFS}\n[sweep]\np_min = 1.2\np_max = 5.0\np_count = 20\nq_min = 1.2\nq_max = 5.0\nq_count = 20\n"
        ),
    );
    let mut snapshots = Vec::new();
    for (label, jobs) in [("a", "1"), ("b", "4"), ("c", "1")] {
        let out = tmp.path().join(label);
        assert_eq!(
            cli(&[
                "sweep",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--jobs",
                jobs
            ]),
            0
        );
        snapshots.push((
            fs::read(out.join("sweep.csv")).unwrap(),
            fs::read(out.join("sweep.svg")).unwrap(),
        ));
    }
    assert_eq!(
        snapshots[0].0, snapshots[1].0,
        "CSV differs between jobs=1 and jobs=4"
    );
    assert_eq!(
        snapshots[0].1, snapshots[1].1,
        "SVG differs between jobs=1 and jobs=4"
    );
    assert_eq!(snapshots[0].0, snapshots[2].0, "CSV differs across reruns");
}

#[test]
fn two_cell_simulation_sweep_agrees_with_the_theorems() {
    // The grid {1.5, 4} x {1.5, 4}: (1.5, 1.5) probes the blow-up theorem
    // with large data, (4, 4) the supercritical theorem with small data,
    // and the off-diagonal cells are still blow-up (one F equals +0.5).
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "simsweep.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[sweep]
p_min = 1.5
p_max = 4.0
p_count = 2
q_min = 1.5
q_max = 4.0
q_count = 2
simulate = true
blowup_amplitude = 50.0
global_amplitude = 0.01

[[data]]
family = "bump"
amplitude = 1.0
support_radius = 2.0
assign = "u1"

[[data]]
family = "bump"
amplitude = 1.0
support_radius = 2.0
assign = "v1"

[grid]
half_width = 60.0
nodes = 641

[time]
t_end = 50.0
sample_interval = 0.5

[fit]
window = [10.0, 48.0]

[tolerances]
slope_tol = 0.3
"#
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );

    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(csv.as_bytes());
    let mut rows = Vec::new();
    for record in rdr.records() {
        rows.push(record.unwrap());
    }
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let (p, q) = (&row[0], &row[1]);
        let (kind, outcome, agreement) = (&row[2], &row[7], &row[8]);
        match (p, q) {
            ("1.5", "1.5") => {
                assert_eq!(kind, "blow_up");
                assert_eq!(outcome, "diverged");
            }
            ("4", "4") => {
                assert_eq!(kind, "global_supercritical_both");
                assert_eq!(outcome, "decayed_at_forecast");
            }
            _ => assert_eq!(kind, "blow_up"),
        }
        assert_eq!(agreement, "true", "cell ({p}, {q})");
    }
}

#[test]
fn near_boundary_cells_never_count_against_agreement() {
    // (3.001, 3.001) sits within 3e-4 of the critical curve; whatever the
    // simulation does there, the agreement column stays empty.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "nearcrit.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[sweep]
p_min = 3.001
p_max = 3.001
p_count = 1
q_min = 3.001
q_max = 3.001
q_count = 1
simulate = true

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "u1"

[grid]
half_width = 40.0
nodes = 321

[time]
t_end = 30.0

[fit]
window = [5.0, 28.0]
"#
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let row = csv.lines().last().unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert!(
        fields[3].parse::<f64>().unwrap().abs() < 0.02,
        "F1 not near-critical: {row}"
    );
    assert_eq!(
        fields[8], "",
        "agreement must be undefined near the boundary: {row}"
    );
}

#[test]
fn simulate_detects_divergence_and_agrees() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "blowup.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[exponents]
p = 1.5
q = 1.5

[[data]]
family = "bump"
amplitude = 50.0
support_radius = 1.0
assign = "u1"

[[data]]
family = "bump"
amplitude = 50.0
support_radius = 1.0
assign = "v1"

[grid]
half_width = 40.0
nodes = 513

[time]
t_end = 35.0
"#
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let doc = json_at(&out.join("simulate.json"));
    assert_eq!(doc["outcome"], "diverged");
    assert_eq!(doc["agreement"], true);
    assert!(doc["blowup"]["t_detect"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_disagreement_exits_three() {
    // A deliberately unachievable slope tolerance inside the transient
    // window forces decayed_off_forecast against a global verdict.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "strict.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[exponents]
p = 4.0
q = 4.0

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "u1"

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "v1"

[grid]
half_width = 40.0
nodes = 513

[time]
t_end = 30.0

[fit]
window = [5.0, 28.0]

[tolerances]
slope_tol = 1e-6
"#
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        3
    );
    let doc = json_at(&out.join("simulate.json"));
    assert_eq!(doc["outcome"], "decayed_off_forecast");
    assert_eq!(doc["agreement"], false);
}

#[test]
fn lindecay_fits_match_the_linear_theory_bands() {
    // Reduced version of the mu = 9 decay study: L2 slope in [-0.65, -0.35]
    // (theory -0.5), derivative norms in [-1.7, -1.3] (theory -1.5).
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "lin.toml",
        r#"
[coefficients]
mu1 = 9.0
nu1_sq = 0.0
mu2 = 9.0
nu2_sq = 0.0
n = 1

[linear]
u0 = { family = "gaussian", amplitude = 1.0, sigma = 1.0 }
u1 = { family = "gaussian", amplitude = 1.0, sigma = 1.0 }
t_max = 60.0
samples = 120

[fit]
window = [10.0, 55.0]

[tolerances]
ode_tol = 1e-9
"#,
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "lindecay",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let doc = json_at(&out.join("lindecay.json"));
    let l2 = doc["slopes"]["l2"]["slope"].as_f64().unwrap();
    let h1 = doc["slopes"]["hdot1"]["slope"].as_f64().unwrap();
    let ut = doc["slopes"]["ut_l2"]["slope"].as_f64().unwrap();
    assert!((-0.65..=-0.35).contains(&l2), "l2 slope {l2}");
    assert!((-1.7..=-1.3).contains(&h1), "hdot1 slope {h1}");
    assert!((-1.7..=-1.3).contains(&ut), "ut slope {ut}");
    assert_eq!(doc["predicted_l2"], -0.5);
    assert_eq!(doc["predicted_hdot1"], -1.5);
}

#[test]
fn every_emitted_csv_parses_against_its_schema() {
    let tmp = TempDir::new().unwrap();
    let lin_cfg = write_config(
        tmp.path(),
        "lin.toml",
        r#"
[coefficients]
mu1 = 9.0
nu1_sq = 0.0
mu2 = 9.0
nu2_sq = 0.0
n = 1

[linear]
u0 = { family = "gaussian", amplitude = 1.0, sigma = 1.0 }
u1 = { family = "gaussian", amplitude = 1.0, sigma = 1.0 }
t_max = 20.0
samples = 40
"#,
    );
    let sim_cfg = write_config(
        tmp.path(),
        "sim.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[exponents]
p = 4.0
q = 4.0

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "u1"

[grid]
half_width = 30.0
nodes = 321

[time]
t_end = 20.0
"#
        ),
    );
    let sweep_cfg = write_config(
        tmp.path(),
        "sweep.toml",
        &format!(
            "{REFERENCE_COEFFS}\n[sweep]\np_min = 1.5\np_max = 4.0\np_count = 5\nq_min = 1.5\nq_max = 4.0\nq_count = 5\n"
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "lindecay",
            "--config",
            lin_cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    assert_eq!(
        cli(&[
            "simulate",
            "--config",
            sim_cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            sweep_cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );

    let schemas = [
        ("lindecay.csv", vec!["t", "l2", "hdot1", "ut_l2"]),
        (
            "trace.csv",
            vec![
                "t", "l2_u", "l2_v", "linf_u", "linf_v", "energy_u", "energy_v",
            ],
        ),
        (
            "sweep.csv",
            vec![
                "p",
                "q",
                "kind",
                "f1",
                "f2",
                "gamma",
                "gamma_bar",
                "outcome",
                "agreement",
                "error",
            ],
        ),
    ];
    for (name, expected_header) in schemas {
        let raw = fs::read_to_string(out.join(name)).unwrap();
        assert!(
            raw.starts_with("# scalewave"),
            "{name} missing version preamble"
        );
        assert!(raw.lines().nth(1).unwrap().starts_with("# config:"));
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(raw.as_bytes());
        let headers: Vec<String> = rdr
            .headers()
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(headers, expected_header, "{name} header mismatch");
        let mut count = 0;
        for record in rdr.records() {
            let record = record.unwrap();
            assert_eq!(record.len(), expected_header.len(), "{name} row arity");
            count += 1;
        }
        assert!(count > 0, "{name} has no data rows");
    }
    // Config preamble is valid single-line JSON.
    let raw = fs::read_to_string(out.join("trace.csv")).unwrap();
    let cfg_line = raw
        .lines()
        .nth(1)
        .unwrap()
        .strip_prefix("# config: ")
        .unwrap();
    let parsed: serde_json::Value = serde_json::from_str(cfg_line).unwrap();
    assert_eq!(parsed["exponents"]["p"], 4.0);
}

#[test]
fn symmetric_sweep_boundary_crosses_the_diagonal_at_fujita() {
    // Equal coefficients give alpha1 = alpha2 = 1 in n = 1, so the critical
    // curve meets the diagonal at p = q = 1 + 2/(n + alpha - 1) = 3,
    // inclusive on the blow-up side.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sym.toml",
        r#"
[coefficients]
mu1 = 5.0
nu1_sq = 0.0
mu2 = 5.0
nu2_sq = 0.0
n = 1

[sweep]
p_min = 2.0
p_max = 4.0
p_count = 3
q_min = 2.0
q_max = 4.0
q_count = 3
"#,
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(csv.as_bytes());
    let mut kinds = std::collections::HashMap::new();
    for record in rdr.records() {
        let r = record.unwrap();
        kinds.insert((r[0].to_string(), r[1].to_string()), r[2].to_string());
    }
    assert_eq!(kinds[&("2".to_string(), "2".to_string())], "blow_up");
    assert_eq!(kinds[&("3".to_string(), "3".to_string())], "blow_up");
    assert_eq!(
        kinds[&("4".to_string(), "4".to_string())],
        "global_supercritical_both"
    );
}

#[test]
fn cell_failures_are_recorded_without_aborting_the_sweep() {
    // A fit window beyond the light cone makes every global cell's forecast
    // check fail; the failure lands in the error column and the sweep still
    // completes with exit 0.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "badwindow.toml",
        &format!(
            r#"{REFERENCE_COEFFS}
[sweep]
p_min = 4.0
p_max = 4.0
p_count = 1
q_min = 4.0
q_max = 4.0
q_count = 1
simulate = true

[[data]]
family = "bump"
amplitude = 0.01
support_radius = 2.0
assign = "u1"

[grid]
half_width = 30.0
nodes = 321

[time]
t_end = 20.0

[fit]
window = [5.0, 500.0]
"#
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(csv.as_bytes());
    let row = rdr.records().next().unwrap().unwrap();
    assert!(
        row[9].contains("forecast"),
        "error column should carry the failure: {row:?}"
    );
    assert_eq!(&row[8], "", "agreement undefined for a failed cell");
    let doc = json_at(&out.join("sweep.json"));
    assert_eq!(doc["cell_errors"], 1);
    assert_eq!(doc["disagreements"], 0);
}

#[test]
fn svg_embeds_version_and_config() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sweep.toml",
        &format!(
            "{REFERENCE_COEFFS}\n[sweep]\np_min = 1.5\np_max = 4.0\np_count = 3\nq_min = 1.5\nq_max = 4.0\nq_count = 3\n"
        ),
    );
    let out = tmp.path().join("out");
    assert_eq!(
        cli(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let svg = fs::read_to_string(out.join("sweep.svg")).unwrap();
    assert!(svg.contains(&format!("scalewave {}", scalewave::VERSION)));
    assert!(svg.contains("\"mu1\":5.0"));
}

#[test]
fn testfn_check_passes_without_config() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    assert_eq!(cli(&["testfn-check", "--out", out.to_str().unwrap()]), 0);
    let doc = json_at(&out.join("testfn.json"));
    assert_eq!(doc["all_pass"], true);
    assert!(doc["weight_residual_max"].as_f64().unwrap() < 1e-10);
}

#[test]
fn out_dir_env_variable_is_honored() {
    // Spawn the real binary so the environment variable is test-local.
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.toml",
        &format!("{REFERENCE_COEFFS}\n[exponents]\np = 2.0\nq = 2.0\n"),
    );
    let envdir = tmp.path().join("from_env");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_scalewave"))
        .args(["classify", "--config", cfg.to_str().unwrap()])
        .env("SCALEWAVE_OUT", &envdir)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(envdir.join("classify.json").exists());
}
