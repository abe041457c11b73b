use std::process::{Command, Output};

fn plectic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plectic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn default_table_matches_printed_values() {
    let o = plectic(&["entropy-table"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "   j   entropy  disorder
   1    0.6816    0.4235
   2    0.9537    0.4901
   3    1.1924    0.5427
   4    1.4040    0.5855
   5    1.5934    0.6212
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn table_as_csv() {
    let o = plectic(&["entropy-table", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("j,entropy,disorder\n"));
    assert!(!text.contains('\r'));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], ["1", "0.6816", "0.4235"]);
    assert_eq!(rows[3], ["4", "1.4040", "0.5855"]);
}

#[test]
fn equal_weights_give_log_three() {
    let o = plectic(&["entropy-table", "--format", "csv", "--j-min", "0", "--j-max", "0", "--c2", "2,2,2"]);
    assert_eq!(csv_rows(&stdout(&o)), [["0", "1.0986", "1.0000"]]);
}

#[test]
fn full_precision_and_json_agree() {
    let o = plectic(&["entropy-table", "--format", "json", "--j-max", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e1 = v["rows"][0]["entropy"].as_f64().unwrap();
    assert!((e1 - 0.68161026905295312512).abs() < 1e-12);
    assert_eq!(v["c2"], serde_json::json!(["10", "1/2", "1/2"]));

    let o = plectic(&["entropy-table", "--format", "csv", "--full-precision", "--j-max", "1"]);
    let rows = csv_rows(&stdout(&o));
    let parsed: f64 = rows[0][1].parse().unwrap();
    assert_eq!(parsed, e1);
}

#[test]
fn curve_integer_points_match_table() {
    let curve = plectic(&["entropy-curve", "--x-min", "1", "--x-max", "5", "--step", "1", "--full-precision"]);
    let table = plectic(&["entropy-table", "--format", "csv", "--full-precision"]);
    assert_eq!(curve.status.code(), Some(0));
    let text = stdout(&curve);
    assert!(text.starts_with("x,entropy,disorder\n"));
    for (c, t) in csv_rows(&text).iter().zip(csv_rows(&stdout(&table))) {
        assert_eq!(c[0], t[0]);
        for col in 1..=2 {
            let (a, b): (f64, f64) = (c[col].parse().unwrap(), t[col].parse().unwrap());
            assert!((a - b).abs() <= 5e-5);
        }
    }
}

#[test]
fn single_curve_point() {
    let o = plectic(&["entropy-curve", "--x-min", "2", "--x-max", "2"]);
    assert_eq!(csv_rows(&stdout(&o)), [["2", "0.9537", "0.4901"]]);
    let o = plectic(&["entropy-curve", "--x-min", "1", "--x-max", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v["rows"][0];
    let (e, d) = (row["entropy"].as_f64().unwrap(), row["disorder"].as_f64().unwrap());
    assert!((d * 5f64.ln() - e).abs() < 1e-15);
}

#[test]
fn curve_grid_is_exact() {
    let o = plectic(&["entropy-curve", "--x-min", "0", "--x-max", "1", "--step", "0.1"]);
    let xs: Vec<String> = csv_rows(&stdout(&o)).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(xs, ["0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1"]);
}

#[test]
fn examples_verify() {
    for name in ["cross3", "plectic6"] {
        let o = plectic(&["verify-example", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let text = stdout(&o);
        assert!(text.contains("displayed potential: PASS"), "{text}");
        assert!(text.contains("computed potential: PASS"), "{text}");
        assert!(text.ends_with("result: PASS\n"));
    }
    let text = stdout(&plectic(&["verify-example", "plectic6"]));
    assert!(text.contains("chart dimension 21"));
    assert!(text.contains("p[4,5;1] = 1/2*x2^2"));
    let text = stdout(&plectic(&["verify-example", "cross3"]));
    for line in ["p[3;1] = x2", "p[1;2] = x3", "p[2;3] = x1"] {
        assert!(text.contains(line), "{line}");
    }
}

#[test]
fn perturbed_example_fails_with_residual() {
    let o = plectic(&["verify-example", "cross3", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("displayed potential (perturbed): FAIL"));
    assert!(text.contains("residual[1] = dx2∧dx3"));
    assert!(text.ends_with("result: FAIL\n"));
}

#[test]
fn example_json_and_center() {
    let o = plectic(&["verify-example", "cross3", "--center", "1,-2,1/3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["computed"]["chart_dimension"], 12);
    assert_eq!(v["computed"]["center"], serde_json::json!(["1", "-2", "1/3"]));
    let o = plectic(&["verify-example", "cross3", "--center", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suites_pass_and_are_reproducible() {
    for suite in ["nondeg", "operad", "entropy", "poincare"] {
        let a = plectic(&["check", suite, "--seed", "1"]);
        assert_eq!(a.status.code(), Some(0), "{suite}: {}", stdout(&a));
        assert!(stdout(&a).contains("result: PASS"));
        let b = plectic(&["check", suite, "--seed", "1"]);
        assert_eq!(a.stdout, b.stdout, "{suite} output differs between runs");
    }
}

#[test]
fn entropy_suite_reports_nonnegative_slack() {
    let o = plectic(&["check", "entropy", "--seed", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let doubling = v["properties"].as_array().unwrap().iter().find(|p| p["name"] == "doubling_bound").unwrap();
    assert_eq!(doubling["trials"], 1000);
    assert!(doubling["worst"].as_f64().unwrap() >= 0.0);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("plectic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let o = plectic(&["entropy-table", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("j,entropy,disorder\n1,0.6816,0.4235\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["entropy-table", "--c2", "1,0,1"],
        &["entropy-table", "--c2", "1,2"],
        &["entropy-table", "--c2", "1,2,abc"],
        &["entropy-table", "--j-min", "3", "--j-max", "2"],
        &["entropy-curve", "--step", "0"],
        &["entropy-curve", "--x-min", "-3"],
        &["entropy-curve", "--x-min", "2", "--x-max", "1"],
        &["verify-example", "nope"],
        &["check", "nope"],
        &["bogus"],
    ];
    for args in cases {
        let o = plectic(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
