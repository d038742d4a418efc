//! End-to-end tests of the `stablegenus` binary.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablegenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn sig_csv_matches_expected_steps() {
    let out = run(&["sig", "3*T(2,7) - 2*T(2,11)", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_lo,t_hi,value"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0], vec!["0", "1/22", "0"]);
    assert_eq!(rows[4], vec!["3/14", "5/22", "-4"]);
    assert_eq!(rows[8], vec!["9/22", "1/2", "2"]);
    // maximum half-|signature| over the pieces is 2
    let max = rows
        .iter()
        .map(|r| r[2].parse::<i64>().unwrap().abs())
        .max()
        .unwrap();
    assert_eq!(max / 2, 2);
}

#[test]
fn sig_json_and_svg() {
    let j = stdout_json(&["sig", "3*T(2,7)-2*T(2,11)"]);
    assert_eq!(j["schema"], "stablegenus/1");
    assert_eq!(j["max_half_abs"], "2");
    assert_eq!(j["pieces"].as_array().unwrap().len(), 9);

    let out = run(&["sig", "3*T(2,7)-2*T(2,11)", "--format", "svg"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    // every jump abscissa of the union jump set appears as a data-t marker
    for t in ["1/22", "1/14", "3/22", "3/14", "5/22", "7/22", "5/14", "9/22"] {
        assert!(svg.contains(&format!("data-t=\"{}\"", t)), "missing {}", t);
    }
    assert_eq!(svg.matches("data-t=").count(), 8);
}

#[test]
fn sig_handles_algebraic_jumps() {
    let j = stdout_json(&["sig", "5_2"]);
    let pieces = j["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 2);
    // the lone jump is an enclosure, not an exact rational
    let jump = pieces[0]["jump"].as_str().unwrap();
    assert!(jump.starts_with('['), "jump {:?}", jump);
    assert_eq!(pieces[1]["value"], "-2");
}

#[test]
fn bounds_reports() {
    let j = stdout_json(&["bounds", "3*T(2,7) - 2*T(2,11)"]);
    assert_eq!(j["schema"], "stablegenus/1");
    assert_eq!(j["lower"], "2");
    assert_eq!(j["upper"], "2");
    assert_eq!(j["determined"], true);

    let j = stdout_json(&["bounds", "T(3,7)", "--category", "smooth"]);
    assert_eq!(j["lower"], "6");
    assert_eq!(j["lower_witness"]["label"], "tau");
    assert_eq!(j["upper"], "6");

    let j = stdout_json(&["bounds", "T(3,7)"]);
    assert_eq!(j["lower"], "5");
    assert_eq!(j["upper"], "6");
    assert_eq!(j["determined"], false);
}

#[test]
fn ball_reports() {
    let j = stdout_json(&["ball", "T(2,7),T(2,11)"]);
    assert_eq!(j["schema"], "stablegenus/1");
    assert_eq!(j["bounded"], true);
    assert_eq!(j["functionals"].as_array().unwrap().len(), 8);
    let verts = j["outer_vertices"]["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 8);
    assert!(verts.iter().any(|v| v[0] == "3/2" && v[1] == "-1"));
    // the facts hull fills the whole ball on this span
    assert_eq!(j["inner"], j["outer_vertices"]);
}

#[test]
fn custom_facts_registry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("facts.json");
    std::fs::write(
        &path,
        r#"[{"knots": ["T(2,3)"], "coeffs": [1], "kind": "g4_exact", "value": "1", "provenance": "test"}]"#,
    )
    .unwrap();
    let j = stdout_json(&["bounds", "3_1", "--facts", path.to_str().unwrap()]);
    assert_eq!(j["upper"], "1");
    // a registry without applicable facts leaves the upper bound open
    std::fs::write(&path, "[]").unwrap();
    let j = stdout_json(&["bounds", "3_1", "--facts", path.to_str().unwrap()]);
    assert_eq!(j["upper"], Value::Null);
}

#[test]
fn cg_certify_paths() {
    let j = stdout_json(&["cg-certify", "--eps", "1/2"]);
    assert_eq!(j["verdict"], "valid");
    assert_eq!(j["threshold"], "6");
    assert_eq!(j["conclusion"]["lower"], "1/4");
    assert_eq!(j["conclusion"]["upper"], "1/2");

    let out = run(&["cg-certify", "--eps", "1/2", "--J", "3_1"]);
    assert_eq!(out.status.code(), Some(2));
    let j: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["verdict"], "invalid");
}

#[test]
fn fekete_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let mut text = String::from("# f(n) = ceil(n/2) + 1\n");
    for n in 1..=200u64 {
        text.push_str(&format!("{},{}\n", n, n.div_ceil(2) + 1));
    }
    std::fs::write(&path, &text).unwrap();
    let j = stdout_json(&["fekete", path.to_str().unwrap(), "--eps", "1/4"]);
    assert_eq!(j["upper"], "101/200");
    assert_eq!(j["violations"], 0);
    assert!(j["n0"].is_string());

    // planted violation: exit 2
    std::fs::write(&path, "1,1\n2,5\n").unwrap();
    let out = run(&["fekete", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_targets() {
    for target in ["figure-1", "figure-3", "figure-4", "table-4d"] {
        let out = run(&["reproduce", target]);
        assert_eq!(out.status.code(), Some(0), "target {}", target);
        let j: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(j["target"], target);
        assert_eq!(j["mismatches"].as_array().unwrap().len(), 0);
    }
    let out = run(&["reproduce", "figure-9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    // usage: unknown flag and bad expressions
    assert_eq!(run(&["bounds", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "T(2,4)"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "9_99"]).status.code(), Some(1));
    assert_eq!(run(&["sig", "3*T(2,7) 2*T(2,11)"]).status.code(), Some(1));
    // help goes to stdout with exit 0
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.json");
    let out = run(&["ball", "T(2,7),T(2,11)", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["bounded"], true);
    assert!(Path::new(&path).exists());
}

#[test]
fn deterministic_output() {
    let a = run(&["ball", "3_1,5_1,5_2,6_2"]);
    let b = run(&["ball", "3_1,5_1,5_2,6_2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_print_roundtrip_corpus() {
    use stablegenus_core::knot::{catalog, parse_expr, torus, KnotExpr};
    use stablegenus_core::ratio::q;
    let knots = [
        torus(2, 3).unwrap(),
        torus(2, 7).unwrap(),
        torus(3, 7).unwrap(),
        catalog("4_1").unwrap(),
        catalog("5_2").unwrap(),
        catalog("6_2").unwrap(),
    ];
    // a small deterministic corpus of 100 expressions
    for seed in 0..100i64 {
        let mut e = KnotExpr::zero();
        for (i, k) in knots.iter().enumerate() {
            let num = (seed * 7 + i as i64 * 11) % 9 - 4;
            let den = (seed + i as i64) % 3 + 1;
            e.add_term(k.clone(), q(num, den));
        }
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "seed {}", seed);
    }
}
