use std::process::{Command, Output};

use agconv::ag_code::CurveKind;
use agconv::dump::{read_matrix, read_poly_matrix};
use agconv::pipeline::{family_report, Budget, VerifyMode};

fn agconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agconv"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn csv_has_header_and_one_row() {
    let out = agconv(&[
        "construct",
        "--family",
        "rational",
        "--q",
        "8",
        "--r",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert_eq!(&header[0], "family");
    assert!(header.iter().any(|h| h == "df_exact"));
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let df = header.iter().position(|h| h == "df_exact").unwrap();
    assert_eq!(&rows[0][df], "7");
}

#[test]
fn invalid_parameters_exit_two() {
    let out = agconv(&["construct", "--family", "rational", "--q", "8", "--r", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissible"));
    let out = agconv(&["construct", "--family", "curveB", "--q", "4", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn formula_mode_reports_bounds_only() {
    let out = agconv(&[
        "construct",
        "--family",
        "curveA",
        "--q",
        "32",
        "--m",
        "1040",
        "--verify",
        "formula",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conv"]["n"], 2048);
    assert_eq!(v["conv"]["k"], 1024);
    assert!(v["conv"]["df_exact"].is_null());
}

#[test]
fn dump_matches_report() {
    let dir = std::env::temp_dir().join(format!("agconv-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let conv = dir.join("conv.txt");
    let dual = dir.join("dual.txt");
    let base = ["--family", "curveB", "--q", "2", "--m", "3"];
    let run = |what: &str, path: &std::path::Path| {
        let mut args = vec!["dump-matrix"];
        args.extend(base);
        args.extend(["--what", what, "--out", path.to_str().unwrap()]);
        assert_eq!(agconv(&args).status.code(), Some(0));
    };
    run("conv", &conv);
    run("dual", &dual);

    let g = read_poly_matrix(std::fs::read(&conv).unwrap().as_slice()).unwrap();
    let (q, h) = read_matrix(std::fs::read(&dual).unwrap().as_slice()).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();

    let report = family_report(
        CurveKind::CurveB,
        2,
        3,
        1,
        VerifyMode::Exact,
        &Budget::for_mode(VerifyMode::Exact),
    )
    .unwrap();
    assert_eq!(q, 4);
    assert_eq!((g.cols(), g.rows(), g.memory()), (8, 2, 1));
    assert_eq!((report.conv.n, report.conv.k), (g.cols(), g.rows()));
    assert_eq!((h.cols(), h.rows()), (8, 5));
}
