use std::path::Path;
use std::process::{Command, Output};

fn perfwall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfwall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Value of a `key = number unit` line.
fn field(text: &str, key: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"));
    line.split_whitespace().nth(2).unwrap().parse().unwrap()
}

fn data_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn predict_single_unit() {
    let o = perfwall(&["predict", "--n", "1", "--p", "100e9", "--alpha", "0.5", "--unit", "G"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "r_max"), 100.0);
    assert!(out.contains("Gflop/s"));
    assert!(out.contains("nonparallel = 0.5"));
}

#[test]
fn predict_hpl_preset() {
    let o = perfwall(&["predict", "--preset", "HPL", "--rpeak", "0.00587E"]);
    assert_eq!(o.status.code(), Some(0));
    let r_max = field(&stdout(&o), "r_max");
    assert!((r_max / 0.00586 - 1.0).abs() < 1e-3, "{r_max}");
    assert!(stdout(&o).contains("Eflop/s"));
    assert!(stderr(&o).is_empty());
}

#[test]
fn predict_nn_past_peak_warns() {
    let o = perfwall(&["predict", "--preset", "NN", "--rpeak", "1E"]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert!(err.contains("past the performance peak"), "{err}");
    assert!(err.contains("N = 63245"), "{err}");
}

#[test]
fn predict_override_changes_result() {
    let base = field(&stdout(&perfwall(&["predict", "--preset", "HPL", "--rpeak", "0.5E"])), "r_max");
    let o = perfwall(&["predict", "--preset", "HPL", "--rpeak", "0.5E", "--override", "bio_factor=5000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "r_max") < base / 10.0);
    let o = perfwall(&["predict", "--preset", "HPL", "--rpeak", "0.5E", "--override", "speed=3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invert_taihulight() {
    let o = perfwall(&["invert", "--n", "10649600", "--rpeak", "0.1254E", "--rmax", "0.0930E"]);
    assert_eq!(o.status.code(), Some(0));
    let s = field(&stdout(&o), "nonparallel");
    assert!((s / 3.3e-8 - 1.0).abs() < 0.05, "{s}");

    let o = perfwall(&["invert", "--n", "10649600", "--rpeak", "0.1254E", "--rmax", "0.000480E"]);
    let s = field(&stdout(&o), "nonparallel");
    assert!((s / 2.4e-5 - 1.0).abs() < 0.05, "{s}");
}

#[test]
fn invert_degenerate_and_invalid() {
    assert_eq!(perfwall(&["invert", "--n", "1", "--rpeak", "1", "--rmax", "1"]).status.code(), Some(1));
    assert_eq!(perfwall(&["invert", "--n", "10", "--rpeak", "1P", "--rmax", "2P"]).status.code(), Some(2));
    assert_eq!(perfwall(&["invert", "--n", "10", "--rpeak", "1Q", "--rmax", "1"]).status.code(), Some(1));
}

#[test]
fn relativistic_day() {
    let o = perfwall(&["relativistic", "--t", "86400", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = field(&stdout(&o), "speed");
    assert!((v / 847_600.0 - 1.0).abs() < 1e-4, "{v}");
}

#[test]
fn surface_first_column_is_one() {
    let o = perfwall(&["surface", "--nmax", "1e8", "--points", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut rows = 0;
    for line in out.lines().skip(1) {
        let cols: Vec<&str> = line.rsplitn(3, ',').collect();
        let (y, x) = (cols[0].parse::<f64>().unwrap(), cols[1].parse::<f64>().unwrap());
        if x == 1.0 {
            assert_eq!(y, 1.0);
            rows += 1;
        }
    }
    assert_eq!(rows, 16);
}

#[test]
fn sweep_peak_matches_peak_point() {
    let o = perfwall(&["sweep", "--preset", "HPCG"]);
    assert_eq!(o.status.code(), Some(0));
    let (mut best_x, mut best_y) = (0.0, 0.0);
    for line in stdout(&o).lines().filter(|l| l.starts_with("R_Max")) {
        let mut it = line.split(',').skip(1).map(|v| v.parse::<f64>().unwrap());
        let (x, y) = (it.next().unwrap(), it.next().unwrap());
        if y > best_y {
            (best_x, best_y) = (x, y);
        }
    }
    // peak_point for HPCG: r_peak* = 0.4472 Ef
    assert!((best_x / 0.4472 - 1.0).abs() < 0.01, "{best_x}");
    assert!(stderr(&o).contains("peak"));
}

#[test]
fn timeline_summit() {
    let o = perfwall(&["timeline", "--machine", "Summit"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "machine,date,rmax_pflops,ratio");
    assert_eq!(lines.len(), 4);
    let ratio: f64 = lines[2].rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 1.173).abs() < 1e-3);
    assert_eq!(perfwall(&["timeline", "--machine", "Nope"]).status.code(), Some(2));
}

#[test]
fn figure_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = perfwall(&["figure", "6A", "-o", out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("fig6A.csv").exists());
    assert!(!dir.path().join("fig6A.svg").exists());

    let o = perfwall(&["figure", "3", "--data", &data_file("fig3_timeline.csv"), "-o", out, "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    let ratios: Vec<f64> = csv
        .lines()
        .filter(|l| l.starts_with("Summit ratio,"))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!((ratios[0] - 1.173).abs() < 1e-3 && (ratios[1] - 1.036).abs() < 1e-3);
    let svg = std::fs::read_to_string(dir.path().join("fig3.svg")).unwrap();
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"));
}

#[test]
fn unknown_figure_lists_ids() {
    let o = perfwall(&["figure", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    for id in ["1", "3", "4", "5", "6A", "6B", "6C"] {
        assert!(err.contains(id), "{err}");
    }
}

#[test]
fn bad_rows_warn_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    std::fs::write(
        &path,
        "machine,date,benchmark,rpeak_flops,rmax_flops,cores\nA,2018.0,HPL,2e15,1e15,8\nA,2018.5,HPL,1e15,2e15,8\n",
    )
    .unwrap();
    let o = perfwall(&["timeline", "--data", path.to_str().unwrap(), "--unit", "P"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert_eq!(stdout(&o).lines().count(), 2);

    std::fs::write(&path, "machine,date,benchmark,rpeak_flops,rmax_flops,cores\nA,2018.0,XYZ,2e15,1e15,8\n").unwrap();
    let o = perfwall(&["timeline", "--data", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(perfwall(&[]).status.code(), Some(1));
    assert_eq!(perfwall(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(perfwall(&["predict", "--n", "abc", "--p", "1", "--alpha", "0.5"]).status.code(), Some(1));
    let o = perfwall(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flop/s"));
}
