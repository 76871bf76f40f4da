//! End-to-end tests of the `wpa` binary: flag parsing, exit codes, output
//! contents, config-file merging, and byte-identical reproducibility.

use std::fs;
use std::process::{Command, Output};

fn wpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpa"))
        .args(args)
        .env_remove("WPA_THREADS")
        .output()
        .expect("binary must run")
}

fn wpa_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpa"))
        .args(args)
        .env("WPA_THREADS", threads)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be UTF-8")
}

#[test]
fn report_segment_closed_form_alpha() {
    let out = wpa(&["report", "--family", "segment", "--x0", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(
        text.contains("\"alpha_k_closed_form\": 1.00000000000e0"),
        "unexpected report:\n{text}"
    );
}

#[test]
fn report_disc_closed_form_m() {
    let out = wpa(&["report", "--family", "disc", "--x0", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("\"m_k_closed_form\": 2.00000000000e0"),
        "unexpected report:\n{text}"
    );
}

#[test]
fn report_arc_lists_both_distances() {
    let out = wpa(&["report", "--family", "arc", "--theta0", "3.14159265358979"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"dist_minus1_paper_formula\""), "{text}");
    assert!(text.contains("\"dist_minus1_numeric\""), "{text}");
}

#[test]
fn unknown_family_is_invalid_input() {
    let out = wpa(&["report", "--family", "square", "--x0", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn criterion_exit_codes_track_the_threshold() {
    // Disc D(2, 1.2): threshold (x0 - rho) / (2 rho) = 1/3.
    let fail = wpa(&[
        "criterion", "--family", "disc", "--x0", "2", "--rho", "1.2", "--alpha", "0.5",
    ]);
    assert_eq!(fail.status.code(), Some(1), "{}", stdout(&fail));
    let pass = wpa(&[
        "criterion", "--family", "disc", "--x0", "2", "--rho", "1.2", "--alpha", "0.3",
    ]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
}

#[test]
fn criterion_without_alpha_is_invalid_input() {
    let out = wpa(&["criterion", "--family", "disc", "--x0", "2", "--rho", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_grid_contents_and_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.csv");
    let args = [
        "region", "--family", "segment", "--x0", "3", "--sigma", "1", "--tau", "2",
        "--grid", "100", "--out",
    ];
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    full.push(path_str);

    let out = wpa(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10_001, "header plus 100x100 rows");
    assert_eq!(lines[0], "x,y,member");

    // Nearest grid cells to z = 1 (inside every K_alpha) and z = 3 (outside:
    // the weight there exceeds the sublevel threshold).
    let member_at = |tx: f64, ty: f64| -> i64 {
        let mut best = (f64::INFINITY, 0i64);
        for line in &lines[1..] {
            let mut cols = line.split(',');
            let x: f64 = cols.next().unwrap().parse().unwrap();
            let y: f64 = cols.next().unwrap().parse().unwrap();
            let m: i64 = cols.next().unwrap().parse().unwrap();
            let d = (x - tx).powi(2) + (y - ty).powi(2);
            if d < best.0 {
                best = (d, m);
            }
        }
        best.1
    };
    assert_eq!(member_at(1.0, 0.0), 1);
    assert_eq!(member_at(3.0, 0.0), 0);

    // Byte identity across repeat runs and thread counts.
    let path2 = dir.path().join("region2.csv");
    let mut again: Vec<&str> = args.to_vec();
    let path2_str = path2.to_str().unwrap();
    again.push(path2_str);
    assert!(wpa_threads(&again, "1").status.success());
    assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());
    assert!(wpa_threads(&again, "4").status.success());
    assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());
}

#[test]
fn fit_reports_sup_residual() {
    let out = wpa(&[
        "fit", "--family", "segment", "--x0", "3", "--sigma", "1", "--tau", "2", "--N", "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\"sup_residual\""));
}

#[test]
fn construct_passes_its_certificate() {
    let out = wpa(&[
        "construct", "--family", "segment", "--x0", "3", "--sigma", "1", "--tau", "2",
        "--eps", "0.1", "--B", "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"pass\": true"), "{text}");
    assert!(text.contains("\"p_coeffs\""), "{text}");
}

#[test]
fn verify_single_criterion() {
    let out = wpa(&["verify", "--only", "r-k-alpha"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_unknown_slug_is_invalid_input() {
    let out = wpa(&["verify", "--only", "no-such-criterion"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{ "family": "segment", "x0": 4.0 }"#).unwrap();
    let cfg_str = cfg.to_str().unwrap();

    // Values come from the config file alone.
    let from_cfg = wpa(&["report", "--config", cfg_str]);
    assert!(from_cfg.status.success());
    assert!(stdout(&from_cfg).contains("\"alpha_k_closed_form\": 1.00000000000e0"));

    // A flag overrides the config value: x0 = 9 gives alpha_K = 1/2.
    let overridden = wpa(&["report", "--config", cfg_str, "--x0", "9"]);
    assert!(overridden.status.success());
    assert!(
        stdout(&overridden).contains("\"alpha_k_closed_form\": 5.00000000000e-1"),
        "{}",
        stdout(&overridden)
    );

    // Unknown keys in the config file are invalid input.
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{ "family": "segment", "x0": 4.0, "bogus": 1 }"#).unwrap();
    let out = wpa(&["report", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_is_byte_identical_across_thread_counts() {
    let args = ["report", "--family", "segment", "--x0", "4"];
    let a = wpa_threads(&args, "1");
    let b = wpa_threads(&args, "4");
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
