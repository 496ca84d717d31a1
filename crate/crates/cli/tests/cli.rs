use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cyclic-audit").chain(args.iter().copied());
    let code = cyclic_audit::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let (code, out, err) = run(&v);
    assert!(!out.is_empty(), "no output; stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn checks(report: &Value) -> &Vec<Value> {
    report["checks"].as_array().unwrap()
}

#[test]
fn euler_defect_entry() {
    let (code, r) = json(&["cyclic-check", "--family", "euler", "--n", "2"]);
    assert_eq!(code, 1);
    let c = &checks(&r)[1];
    assert_eq!(c["name"], "cyclic/euler");
    assert_eq!(c["status"], "defect");
    assert_eq!(c["residual"], "-1/4*r^2*s - 1/4*r*s^2 + 1/2*r*s");
    assert_eq!(c["known"], "cyclic-universality");
    assert_eq!(checks(&r)[0]["name"], "bracket-transpose/euler");
    assert_eq!(checks(&r)[0]["status"], "verified");

    let (code, _) = json(&["--expect-known", "cyclic-check", "--family", "euler", "--n", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn verified_entry_shape() {
    let (code, r) = json(&["cyclic-check", "--family", "bernoulli", "--n", "3"]);
    assert_eq!(code, 0);
    let c = checks(&r).iter().find(|c| c["name"] == "cyclic/bernoulli").unwrap();
    assert_eq!(c["status"], "verified");
    assert_eq!(c["residual"], "0");
    assert_eq!(c["elapsed_ms"], 0);
    assert_eq!(r["summary"]["defect"], 0);
    assert_eq!(r["summary"]["verified"], 2);
    assert!(r["version"].is_string());
}

#[test]
fn analytic_entries_carry_error_estimates() {
    let (code, r) = json(&["analytic", "--function", "ladder-b", "--s", "3", "--x", "0.4"]);
    assert_eq!(code, 0);
    assert!(checks(&r)[0]["error_estimate"].as_f64().unwrap() >= 0.0);
    let (code, r) = json(&["analytic", "--function", "zeta", "--s", "2", "--x", "1"]);
    assert_eq!(code, 0);
    let rec = &r["records"][0];
    assert!((rec["value"]["value"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert!(rec["value"]["error_estimate"].is_number());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["cyclic-check", "--family", "nope"]).0, 2);
    let (code, _, err) = run(&["three-term", "--poly", "z^"]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 2"), "{err}");
    assert_eq!(run(&["audit", "--only", ""]).0, 2);
    assert_eq!(run(&["audit", "--only", "bogus"]).0, 2);
    assert_eq!(run(&["audit", "--tol", "zeta=-1"]).0, 2);
    assert_eq!(run(&["slash", "--poly", "z", "--matrix", "2,0,0,1"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn nonconvergence_exits_three() {
    let (code, _, err) = run(&["analytic", "--function", "polylog", "--s", "2", "--x", "0.3", "--target", "1e-30"]);
    assert_eq!(code, 3, "{err}");
    let (code, r) = json(&["audit", "--only", "modular", "--weight", "4,4", "--truncation", "20", "--tol", "modularity=1e-300"]);
    assert_eq!(code, 3);
    assert!(checks(&r).iter().any(|c| c["status"] == "error"));
    assert!(r["summary"]["error"].as_u64().unwrap() > 0);
}

#[test]
fn modular_audit_over_small_weights() {
    let (_, r) = json(&["audit", "--only", "modular", "--weight", "4,12"]);
    let dims: Vec<u64> = checks(&r)
        .iter()
        .filter(|c| c["name"] == "period-space")
        .map(|c| c["value"]["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims.len(), 5);
    let mut by_k: Vec<(u64, u64)> = checks(&r)
        .iter()
        .filter(|c| c["name"] == "period-space")
        .map(|c| (c["params"].as_str().unwrap()[2..].parse().unwrap(), c["value"]["dim"].as_u64().unwrap()))
        .collect();
    by_k.sort();
    assert_eq!(by_k, vec![(4, 1), (6, 1), (8, 1), (10, 1), (12, 3)]);
}

#[test]
fn report_ordering_is_sorted() {
    let (_, r) = json(&["audit", "--only", "q"]);
    let keys: Vec<(String, String)> =
        checks(&r).iter().map(|c| (c["name"].as_str().unwrap().into(), c["params"].as_str().unwrap().into())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn text_format_has_the_same_content() {
    let (code, out, _) = run(&["binomial-defect", "--n", "1", "--k", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("[defect] binomial-defect (n=1,k=0): -r^2 - r*s - s^2 + r + s"));
    assert!(out.contains("[known: binomial-identity]"));
    assert!(out.contains("summary: 0 verified, 1 defect (1 known), 0 error"));
}

#[test]
fn modular_subcommands() {
    let (_, r) = json(&["slash", "--weight", "4", "--poly", "z^2", "--matrix", "0,-1,1,0"]);
    assert_eq!(r["records"][0]["value"]["poly"], "1");
    let (code, r) = json(&["three-term", "--weight", "4", "--poly", "z^2 - 1"]);
    assert_eq!(code, 1);
    let paper = checks(&r).iter().find(|c| c["name"] == "three-term-paper").unwrap();
    assert_eq!(paper["residual"], "4*z - 2");
    assert_eq!(paper["known"], "three-term-literal");
    let std = checks(&r).iter().find(|c| c["name"] == "three-term-standard").unwrap();
    assert_eq!(std["residual"], "0");
    let (code, r) = json(&["period-space", "--weight", "12"]);
    assert_eq!(code, 0);
    assert_eq!(checks(&r)[0]["value"]["dim"], 3);
    let (_, r) = json(&["qexp", "--truncation", "3"]);
    assert_eq!(r["records"][0]["value"], serde_json::json!(["0", "1", "-24", "252"]));
    let (code, r) = json(&["qexp", "--form", "eisenstein", "--weight", "4", "--truncation", "60", "--tau", "0.3:1.1"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn q_subcommands() {
    let (code, r) = json(&["q-cyclic-check", "--n", "1", "--triple", "1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(checks(&r)[0]["residual"], "0");
    let (code, r) = json(&["q-cyclic-check", "--n", "0"]);
    assert_eq!(code, 1);
    assert_eq!(checks(&r)[0]["known"], "q-cyclic");
    let (code, _) = json(&["q-limit", "--kind", "q-euler", "--n", "4"]);
    assert_eq!(code, 0);
    let (_, r) = json(&["q-polys", "--n", "0"]);
    assert_eq!(r["records"][0]["value"], "-q + 1");
    let (code, r) = json(&["q-cyclic-check", "--n", "5", "--mode", "sampled", "--seed", "7"]);
    assert_eq!(code, 1);
    assert_eq!(checks(&r).len(), 5);
}

#[test]
fn family_descriptor_file_with_false_parity() {
    let path = std::env::temp_dir().join(format!("family-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"name": "halved", "lambda": "1/2", "egf_coeffs": ["1", "-1/4"], "parity": "alternating"}"#).unwrap();
    let (code, r) = json(&["family", "--file", path.to_str().unwrap(), "--n", "4"]);
    std::fs::remove_file(&path).ok();
    let ladder = checks(&r).iter().find(|c| c["name"] == "appell/ladder/halved").unwrap();
    assert_eq!(ladder["residual"], "0");
    // the declared parity is false for this family, so reflection is a defect
    let reflection = checks(&r).iter().find(|c| c["name"] == "appell/reflection/halved").unwrap();
    assert_eq!(reflection["status"], "defect");
    assert_eq!(code, 1, "{r}");
    assert_eq!(r["records"].as_array().unwrap().len(), 5);
}

#[test]
fn numeric_subcommands() {
    let (code, r) = json(&["period-numeric"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(checks(&r).len(), 3);
    let (_, r) = json(&["l-value", "--m", "6"]);
    assert!(r["records"][0]["value"]["value"].as_f64().unwrap() > 0.0);
    let (code, r) = json(&["analytic", "--function", "a-reflection", "--s", "2", "--x", "0.3"]);
    assert_eq!(code, 0, "{r}");
}
