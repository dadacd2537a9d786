use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn holofrft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holofrft")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sb_transform_of_bundled_samples_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("sb.csv");
    let input = format!("{DATA}/psi00.csv");
    let out = holofrft(&["transform", "--sb", "--s", "1", "-i", &input, "-o", s(&field)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = holofrft(&["compare", "--field", s(&field), "--signal", &format!("{DATA}/psi00.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let line = String::from_utf8_lossy(&out.stdout);
    assert!(line.starts_with("PASS"), "{line}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = format!("{DATA}/superposition.json");
    let mut bytes = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("a{k}.csv"));
        let out = holofrft(&["transform", "--t", "0.7", "--grid", "5:31", "-i", &input, "-o", s(&path)]);
        assert_eq!(code(&out), 0);
        bytes.push(fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn spectral_and_kernel_fields_both_pass_compare() {
    let dir = tempfile::tempdir().unwrap();
    let input = format!("{DATA}/superposition.json");
    for method in ["kernel", "spectral"] {
        let path = dir.path().join(format!("{method}.csv"));
        let out = holofrft(&[
            "transform",
            "--hfrft",
            "--s",
            "1",
            "--method",
            method,
            "--grid",
            "6:41",
            "-i",
            &input,
            "-o",
            s(&path),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let out = holofrft(&["compare", "--field", s(&path), "--signal", &input, "--tol", "1e-8"]);
        assert_eq!(code(&out), 0, "{method}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn sweep_writes_one_file_per_angle_and_an_index() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = dir.path().join("sweep");
    let out = holofrft(&[
        "sweep",
        "--t",
        "0.1,0.5,1.0,1.4",
        "--grid",
        "4:21",
        "-i",
        &format!("{DATA}/psi00.json"),
        "--output-dir",
        s(&outdir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut names: Vec<String> =
        fs::read_dir(&outdir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["field_000.csv", "field_001.csv", "field_002.csv", "field_003.csv", "index.csv"]);
    let index = fs::read_to_string(outdir.join("index.csv")).unwrap();
    assert_eq!(index.lines().count(), 5);
    assert!(index.starts_with("file,t,s\n"));
}

#[test]
fn inverse_recovers_the_signal() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("sb.csv");
    let back = dir.path().join("back.csv");
    let out = holofrft(&[
        "transform",
        "--sb",
        "--s",
        "1",
        "--grid",
        "-4:4:81,-8:8:257",
        "-i",
        &format!("{DATA}/psi00.json"),
        "-o",
        s(&field),
    ]);
    assert_eq!(code(&out), 0);
    let out = holofrft(&["inverse", "-i", s(&field), "-o", s(&back), "--r", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&back).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let exact = (-0.5 * v[0] * v[0]).exp() / std::f64::consts::PI.sqrt();
        assert!((v[1] - exact).abs() < 1e-6 && v[2].abs() < 1e-6, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 81);
}

#[test]
fn basis_table_labels_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.csv");
    let out = holofrft(&["basis", "--s", "0.8", "--order", "3", "--grid", "2:5", "-o", s(&path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,x,p,re,im,provenance\n"));
    assert!(text.contains(",kernel-quadrature\n"));
    assert!(text.contains(",claimed-closed-form\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 25 * 2);
}

#[test]
fn verify_subset_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = holofrft(&["verify", "--only", "1,2,3,12", "--report", s(&report)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["all_pass"], true);
    assert_eq!(json["checks"].as_array().unwrap().len(), 4);

    let out = holofrft(&["verify", "--only", "1", "--tol", "coherent-norm=1e-300"]);
    assert_eq!(code(&out), 1);
    let out = holofrft(&["verify", "--tol", "no-such-key=1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.csv");
    let psi = format!("{DATA}/psi00.json");
    // t and s together, missing parameter, Fourier with a parameter
    assert_eq!(code(&holofrft(&["transform", "--t", "1", "--s", "1", "-i", &psi, "-o", s(&o)])), 2);
    assert_eq!(code(&holofrft(&["transform", "-i", &psi, "-o", s(&o)])), 2);
    assert_eq!(code(&holofrft(&["transform", "--fourier", "--t", "1", "-i", &psi, "-o", s(&o)])), 2);
    assert_eq!(code(&holofrft(&["transform", "--sb", "--t", "0", "-i", &psi, "-o", s(&o)])), 2);

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = holofrft(&["transform", "--t", "1", "-i", s(&empty), "-o", s(&o)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn unsupported_signals_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.csv");
    // a signal cut off while still large at the grid ends
    let cut = dir.path().join("cut.csv");
    let mut text = String::from("x,re,im\n");
    for k in 0..41 {
        let x = -1.0 + 0.05 * k as f64;
        text.push_str(&format!("{x},{},0\n", (-0.5 * x * x).exp()));
    }
    fs::write(&cut, text).unwrap();
    let out = holofrft(&["transform", "--t", "0.5", "--grid", "2:5", "-i", s(&cut), "-o", s(&o)]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = format!("{DATA}/superposition.json");
    let mut bytes = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_holofrft"))
            .env("HOLOFRFT_THREADS", threads)
            .args(["transform", "--t", "0.3", "--grid", "4:25", "-i", &input, "-o", s(&path)])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        bytes.push(fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}
