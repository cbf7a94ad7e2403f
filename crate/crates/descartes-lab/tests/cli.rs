//! End-to-end tests of the `descartes-lab` binary: configuration
//! precedence, exit codes, output files, and the guarantee that the
//! worker count never changes results.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_descartes-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Drops the wall-clock column (the last CSV field) from data rows so
/// outputs of timing-identical runs can be compared bytewise.
fn strip_wall_ms(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            if line.starts_with('#') || line.starts_with("experiment,") || line.is_empty() {
                line.to_string()
            } else {
                match line.rfind(',') {
                    Some(pos) => line[..pos].to_string(),
                    None => line.to_string(),
                }
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn version_and_help_run() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("descartes-lab"));
    let out = run(&["zero-scan", "--help"]);
    assert!(out.status.success());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flag_values_exit_2() {
    for args in [
        ["zero-scan", "--n", "4,3"].as_slice(), // not ascending
        &["zero-scan", "--trials", "0"],
        &["zero-scan", "--dist", "nosuchdist"],
        &["zero-scan", "--workers", "0"],
        &["ac-scan", "--n", "1,2"],       // window scans need n >= 2
        &["density-scan", "--n", "17"],   // exact enumeration cap
        &["zero-scan", "--dist", "atom0(1.5)"],
        &["zero-scan", "--format", "yaml"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", stderr(&out));
        assert!(
            stderr(&out).contains("config error"),
            "args {args:?}: {}",
            stderr(&out)
        );
    }
}

#[test]
fn missing_config_file_exits_2() {
    let out = run(&["props", "--config", "/nonexistent/path.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read config"));
}

#[test]
fn config_experiment_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("props.cfg");
    std::fs::write(&cfg, "experiment = props\ntrials = 50\n").unwrap();
    let out = run(&["zero-scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("subcommand"));
}

#[test]
fn flat_config_with_cli_override_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.cfg");
    std::fs::write(
        &cfg,
        "# comment line\nexperiment = zero-scan\nn = 4\ntrials = 64\nseed = 5\ndist = multiset(1)\n",
    )
    .unwrap();
    // --trials overrides the file; n/seed/dist come from the file.
    let out = run(&[
        "zero-scan",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "96",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# trials = 96"), "{text}");
    assert!(text.contains("# seed = 5"), "{text}");
    assert!(text.contains("# dist = multiset(1)"), "{text}");
    assert!(text.contains("experiment,n,metric,value,stderr,trials,seed,wall_ms"));
    // Every data row parses back into eight fields.
    for line in text.lines().filter(|l| l.starts_with("zero-scan,")) {
        assert_eq!(line.split(',').count(), 8, "{line}");
    }
}

#[test]
fn json_config_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.json");
    std::fs::write(
        &cfg,
        r#"{"experiment": "zero-scan", "n_list": [3, 5], "trials": 40, "seed": 11, "dist": "rademacher"}"#,
    )
    .unwrap();
    let out = run(&[
        "zero-scan",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["metadata"]["experiment"], "zero-scan");
    assert_eq!(doc["metadata"]["seed"], "11");
    let rows = doc["rows"].as_array().expect("rows array");
    assert!(!rows.is_empty());
    assert!(rows.iter().any(|r| r["n"] == 3));
    assert!(rows.iter().any(|r| r["n"] == 5));
    assert_eq!(doc["failures"].as_array().map(Vec::len), Some(0));
}

#[test]
fn out_file_writes_csv_gnuplot_and_density_grids() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("den.csv");
    let out = run(&[
        "density-scan",
        "--n",
        "2,4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.contains("# experiment = density-scan"));
    assert!(csv.contains("p_at_zero"));

    let gp = std::fs::read_to_string(dir.path().join("den.gp")).unwrap();
    assert!(gp.contains("den.csv"), "{gp}");
    assert!(gp.contains("plot"), "{gp}");

    for n in [2, 4] {
        let grid_path = dir.path().join(format!("den_density_n{n}.csv"));
        let grid = std::fs::read_to_string(&grid_path)
            .unwrap_or_else(|_| panic!("missing {}", grid_path.display()));
        let mut lines = grid.lines();
        assert_eq!(
            lines.next(),
            Some("t,p_exact,p_fourier,envelope_value"),
            "{}",
            grid_path.display()
        );
        let first = lines.next().expect("grid has data");
        assert_eq!(first.split(',').count(), 4);
        // The gnuplot script references the per-size grid files too.
        assert!(gp.contains(&format!("den_density_n{n}.csv")), "{gp}");
    }
}

#[test]
fn stdout_density_run_mentions_skipped_grids() {
    let out = run(&["density-scan", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("auxiliary grid file"));
}

#[test]
fn props_suite_passes_and_reports_all_invariants() {
    let out = run(&["props", "--trials", "900", "--seed", "23"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for line in text.lines().filter(|l| l.ends_with("_pass") || l.contains("_pass,")) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[3], "1", "invariant row not passing: {line}");
    }
    assert!(
        text.lines().filter(|l| l.contains("_pass,")).count() >= 13,
        "expected one verdict row per invariant: {text}"
    );
}

#[test]
fn worker_count_never_changes_csv_bodies() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for workers in ["1", "3"] {
        let out_path = dir.path().join(format!("scan_w{workers}.csv"));
        let out = run(&[
            "zero-scan",
            "--n",
            "5,8",
            "--trials",
            "128",
            "--dist",
            "rademacher",
            "--seed",
            "9",
            "--workers",
            workers,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        bodies.push(strip_wall_ms(&std::fs::read_to_string(&out_path).unwrap()));
    }
    assert_eq!(bodies[0], bodies[1], "worker count changed the results");
    // The worker count must not leak into the recorded metadata either.
    assert!(!bodies[0].contains("workers"));
}

#[test]
fn out_path_in_unwritable_directory_exits_2() {
    let out = run(&[
        "density-scan",
        "--n",
        "2",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot write output"));
}

#[test]
fn seed_changes_mc_results_deterministically() {
    let run_with_seed = |seed: &str| {
        let out = run(&[
            "zero-scan",
            "--n",
            "6",
            "--trials",
            "200",
            "--dist",
            "gaussian",
            "--seed",
            seed,
        ]);
        assert_eq!(out.status.code(), Some(0));
        strip_wall_ms(&stdout(&out))
    };
    let a1 = run_with_seed("100");
    let a2 = run_with_seed("100");
    let b = run_with_seed("101");
    assert_eq!(a1, a2, "same seed must reproduce bit-identically");
    assert_ne!(a1, b, "different seeds should move Monte Carlo output");
}

fn _compile_time_path_check(_: &Path) {}
