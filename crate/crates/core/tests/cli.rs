use std::process::{Command, Output};

fn qprlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qprlab"))
        .args(args)
        .env_remove("QPRLAB_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn analyze_reports_hesse_values() {
    let o = qprlab(&["analyze", "--dim", "3", "--frame", "sic-minus"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["N"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert!((v["N_U"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["N_C"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-9);
}

#[test]
fn analyze_wootters_csv() {
    let o = qprlab(&[
        "analyze", "--dim", "4", "--frame", "wootters", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dim,kind,provenance,N,N_U,N_C"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "4");
    assert!((row[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-9);
    assert!((row[4].parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
    assert!((row[5].parse::<f64>().unwrap() - (2.0 + 3f64.sqrt() / 2.0)).abs() < 1e-9);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["analyze", "--dim", "3", "--frame", "sic-plus"][..],
        &[
            "verify",
            "--which",
            "thm3",
            "--dim",
            "2",
            "--samples",
            "200",
            "--seed",
            "3",
        ][..],
        &["bounds", "--dim", "5"][..],
    ] {
        let a = qprlab(args);
        let b = qprlab(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = [
        "verify",
        "--which",
        "thm4",
        "--dim",
        "3",
        "--samples",
        "300",
        "--seed",
        "11",
    ];
    let one = qprlab(&[&args[..], &["--threads", "1"]].concat());
    let four = qprlab(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_thm5_passes() {
    let o = qprlab(&[
        "verify",
        "--which",
        "thm5",
        "--dim",
        "3",
        "--samples",
        "1000",
        "--seed",
        "7",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["which"], "thm5");
}

#[test]
fn verify_thm2_passes() {
    let o = qprlab(&["verify", "--which", "thm2", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let sic_plus = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| {
            c["name"]
                .as_str()
                .unwrap()
                .starts_with("thm2/sic-plus-count/")
        })
        .expect("sic-plus count check");
    assert_eq!(sic_plus["measured"].as_f64(), Some(9.0));
}

#[test]
fn scan_d3_has_header_and_rows() {
    let o = qprlab(&["scan-d3", "--steps", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,N,N_U,N_C,sic_ok,hw_covariant,label");
    assert_eq!(lines.len(), 51);
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert!((fields[1].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert_eq!(fields[4], "true");
        assert_eq!(fields[5], "true");
    }
}

#[test]
fn bounds_values() {
    let o = qprlab(&["bounds", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let close = |key: &str, want: f64| (v[key].as_f64().unwrap() - want).abs() < 1e-12;
    assert!(close("N_minus", 1.0 / 3.0));
    assert!(close("N_plus", 1.0));
    assert!(close("NC_minus", 5.0 / 3.0));
    assert!(close("NC_plus", 3.0));
    assert!(close("NU_upper", 3.0 - 2.0 / 3.0));
    assert!((v["wootters"]["N_C"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn norm_violating_fiducial_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "tol": 1e-10, "amplitudes": [[0, 0], [1, 0], [-1, 0]]}"#,
    )
    .unwrap();
    let o = qprlab(&[
        "analyze",
        "--dim",
        "3",
        "--frame",
        "sic-minus",
        "--fiducial-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn valid_fiducial_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hesse.txt");
    qprlab::sic::d3_family(0.0).save(&path).unwrap();
    let o = qprlab(&[
        "validate-sic",
        "--dim",
        "3",
        "--fiducial-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn missing_fiducial_file_exits_4() {
    let o = qprlab(&[
        "validate-sic",
        "--dim",
        "3",
        "--fiducial-file",
        "/nonexistent/fiducial.txt",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qprlab(&["bounds", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(
        qprlab(&["analyze", "--dim", "5", "--frame", "sic-minus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qprlab(&["verify", "--which", "thm9"]).status.code(),
        Some(2)
    );
    assert_eq!(qprlab(&["scan-d3", "--steps", "1"]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("frame.csv");
    let o = qprlab(&[
        "export-frame",
        "--dim",
        "2",
        "--frame",
        "wootters",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("element,row,col,re,im\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 4);
}
