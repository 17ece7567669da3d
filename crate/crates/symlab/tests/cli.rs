//! End-to-end tests of the `symlab` binary: exit codes, file outputs and
//! byte-level reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn symlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dims_prints_known_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(&["dims", "--n", "3", "--k", "0..4"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // (3, 2): 5 harmonics, 2 invariant, ratio 0.4, bound 2/3
    assert!(text.contains("0.400000"), "missing ratio row: {text}");
    assert!(text.contains("0.666667"));
    // odd degrees have empty invariant subspace and no bound column
    assert!(text.lines().any(|l| l.contains(" 3    3 ") && l.contains(" 0 ")));
}

#[test]
fn minkowski_ball_seed_writes_csv_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "minkowski", "--n", "2", "--body", "ball", "--rounds", "5", "--seed", "9", "--out", "run",
    ];
    let out = symlab(&args, dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv_path = dir.path().join("run/minkowski_ball_n2_seed9.csv");
    let first = std::fs::read(&csv_path).unwrap();
    // ball sits at the floor: header plus the round-0 record and one round
    let text = String::from_utf8(first.clone()).unwrap();
    assert!(text.starts_with("round,count,eps,mstar,rin,rout,vol"));
    assert!(text.lines().count() <= 3);

    let out = symlab(&args, dir.path());
    assert_eq!(out.status.code(), Some(0));
    let second = std::fs::read(&csv_path).unwrap();
    assert_eq!(first, second, "same config and seed must give identical bytes");
}

#[test]
fn steiner_run_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(
        &[
            "steiner", "--body", "rect4", "--rounds", "60", "--eps", "0.1", "--seed", "7",
            "--svg", "--out", "st",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = dir.path().join("st/steiner_rect4_n2_seed7.csv");
    let svg = dir.path().join("st/steiner_rect4_n2_seed7.svg");
    assert!(csv.exists() && svg.exists());
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    // volume column present and constant to printed precision
    let text = std::fs::read_to_string(&csv).unwrap();
    let vols: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(6).unwrap())
        .collect();
    assert!(vols.len() >= 2);
    let v0: f64 = vols[0].parse().unwrap();
    for v in vols {
        let v: f64 = v.parse().unwrap();
        assert!((v - v0).abs() / v0 <= 1e-8);
    }
}

#[test]
fn config_file_with_unknown_key_exits_2_without_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.conf"), "n=2\nwidget=5\n").unwrap();
    let out = symlab(
        &["minkowski", "--config", "bad.conf", "--out", "never"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("widget") && err.contains("valid keys"), "{err}");
    assert!(!dir.path().join("never").exists(), "no partial outputs on config error");
}

#[test]
fn config_file_drives_a_run_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        "n=2\nbody=ball\nrounds=4\nseed=5\nout=cfg_out\n",
    )
    .unwrap();
    let out = symlab(&["minkowski", "--config", "run.conf"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("cfg_out/minkowski_ball_n2_seed5.csv").exists());

    // the flag wins over the file
    let out = symlab(
        &["minkowski", "--config", "run.conf", "--seed", "6"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("cfg_out/minkowski_ball_n2_seed6.csv").exists());
}

#[test]
fn missing_required_value_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(&["minkowski", "--body"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_verify_suite_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(&["verify", "nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("valid suites"));
}

#[test]
fn verify_reports_pass_lines_and_fails_with_small_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(&["verify", "dims", "small-cap"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("suite dims: PASS"));
    assert!(text.contains("suite small-cap: PASS"));

    let out = symlab(&["verify", "dim-power", "--c1", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn report_rerenders_svg_and_errors_on_missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = symlab(
        &["minkowski", "--n", "2", "--body", "cube", "--rounds", "6", "--seed", "3", "--out", "r"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = "r/minkowski_cube_n2_seed3.csv";
    let out = symlab(&["report", "--input", csv, "--out", "r"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("r/minkowski_cube_n2_seed3.svg").exists());

    // runtime failures (unreadable input) are exit 3, not usage errors
    let out = symlab(&["report", "--input", "no_such.csv"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}
