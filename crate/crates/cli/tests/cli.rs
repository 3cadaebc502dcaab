use std::path::PathBuf;
use std::process::{Command, Output};

use l2alex_core::pipeline::{tau_knot_abelianization, KnotInput, TorsionReport};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn l2alex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2alex")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = l2alex(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn trefoil_report() {
    let text = stdout(&["knot", "--pd", &data("trefoil.json")]);
    let r = TorsionReport::from_json(&text).unwrap();
    assert_eq!(r.display.as_deref(), Some("max(1,t)^1"));
    assert_eq!(r.verdict.as_deref(), Some("not-unknot"));
    // the exact function survives the JSON round trip bit for bit
    let input = KnotInput::from_json(&std::fs::read_to_string(data("trefoil.json")).unwrap()).unwrap();
    assert_eq!(r.exact_fn().unwrap(), Some(tau_knot_abelianization(&input).unwrap().torsion));
}

#[test]
fn unknot_report() {
    let r = TorsionReport::from_json(&stdout(&["knot", "--pd", &data("unknot.json")])).unwrap();
    assert_eq!(r.display.as_deref(), Some("max(1,t)^-1"));
    assert_eq!(r.verdict.as_deref(), Some("consistent-with-unknot"));
    assert!(!r.caveats.is_empty());
}

#[test]
fn figure_eight_samples() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let report = dir.path().join("r.json");
    let out = stdout(&[
        "knot",
        "--pd",
        &data("fig8.json"),
        "--samples",
        csv.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.is_empty());
    let r = TorsionReport::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.monic, Some(true));

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value,err"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 121);
    assert_eq!(rows[0][0], 1e-3);
    assert!((rows[120][0] - 1e3).abs() < 1e-9);
    let (lo, hi) = ((3.0 - 5f64.sqrt()) / 2.0, (3.0 + 5f64.sqrt()) / 2.0);
    for row in rows {
        let t = row[0];
        let want = lo.max(t) * hi.max(t) / t.max(1.0);
        assert!((row[1] - want).abs() <= 1e-9 * want, "t={t}: {} vs {want}", row[1]);
    }

    // deterministic
    let again = dir.path().join("again.csv");
    stdout(&["knot", "--pd", &data("fig8.json"), "--samples", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn torus_closed_forms_agree() {
    assert_eq!(stdout(&["torus", "3", "7"]).trim(), "torus(3,7): max(1,t)^11");
    let a = json(&["torus", "3", "7", "--json"]);
    let b = json(&["torus", "4", "5", "--json"]);
    assert_eq!(a["display"], "max(1,t)^11");
    assert_eq!(a["exact"], b["exact"]);
}

#[test]
fn graph_closed_form() {
    assert_eq!(json(&["graph", "3/2", "--json"])["display"], "max(1,t)^(3/2)");
}

#[test]
fn mahler_by_jensen() {
    assert_eq!(stdout(&["mahler", "--poly", "1 - 3*z"]).trim(), "3");
    let v = json(&["mahler", "--poly", "1 - 3*z", "--json"]);
    assert_eq!(v["value"], 3.0);
    assert_eq!(v["err"], 0.0);
    assert_eq!(v["method"], "jensen");
    let v = json(&["mahler", "--poly", "1 - z", "--psi", "1", "--t", "10", "--json"]);
    assert_eq!(v["value"], 10.0);
}

#[test]
fn norm_widths() {
    let v = json(&[
        "norm",
        "--poly",
        "(1+z1)*(1+z2)",
        "--dir",
        "1,0",
        "--dir",
        "0,1",
        "--dir",
        "1,1",
        "--dir",
        "1,-1",
        "--json",
    ]);
    let degrees: Vec<i64> = v["entries"].as_array().unwrap().iter().map(|e| e["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, vec![1, 1, 2, 2]);
    assert_eq!(v["homogeneous"], true);
    assert_eq!(v["triangle"], true);

    let v = json(&["norm", "--file", &data("two_var.json"), "--dir", "1,0", "--dir", "1,1", "--json"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn fibered_and_basic_case() {
    let c = json(&["fibered", &data("fig8_monodromy.json"), "--chi", "-1", "--json"]);
    let t = c["t_upper"].as_f64().unwrap();
    assert!((2.618..=3.2).contains(&t), "{t}");
    assert_eq!(c["x"], 1);

    let r = json(&["basiccase", &data("basic_p.json"), &data("basic_q.json"), "--json"]);
    assert_eq!(r["low_ok"], true);
    assert_eq!(r["high_ok"], true);
    assert_eq!(r["rows"].as_array().unwrap().len(), 121);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"pd": [[1, 2"#).unwrap();
    assert_eq!(l2alex(&["knot", "--pd", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(l2alex(&["mahler", "--poly", "1 +* z"]).status.code(), Some(2));
    assert_eq!(l2alex(&["mahler", "--poly", "z", "--quad-points", "1000"]).status.code(), Some(2));

    let singular = dir.path().join("singular.json");
    std::fs::write(&singular, r#"{"generators":["a","b"],"relators":["b"],"phi":{"a":[0],"b":[0]}}"#).unwrap();
    assert_eq!(l2alex(&["knot", "--file", singular.to_str().unwrap()]).status.code(), Some(3));

    assert_eq!(l2alex(&["torus", "4", "6"]).status.code(), Some(1));
}
