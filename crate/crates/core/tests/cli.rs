use zetalab::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zetalab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_json_schema() {
    let (code, out, _) = call(&["verify", "eq18", "--grid", "0.5:3:5", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    let rows = reports[0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        for key in ["id", "x", "lhs", "rhs", "deviation", "method"] {
            assert!(row.get(key).is_some(), "missing {key}");
        }
        assert!(row["deviation"].as_f64().unwrap() <= 1e-6);
    }
    assert_eq!(reports[0]["pass"], true);
}

#[test]
fn verify_csv_header_and_rows() {
    let (code, out, _) = call(&["verify", "eq19", "--grid", "1:2:3", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "id,x,lhs,rhs,deviation,method");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("eq19,1,"));
}

#[test]
fn verify_family_runs_every_member() {
    let (code, out, _) = call(&["verify", "eq3_m", "--grid", "1:2:2", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["eq3_1", "eq3_2", "eq3_3", "eq3_4", "eq3_5"]);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(call(&["verify", "eq2", "--grid", "0:1:2"]).0, EXIT_FAIL);
    let (code, _, err) = call(&["verify", "eq2", "--grid", "0.1:4:3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("outside the domain"));
    assert_eq!(call(&["verify", "no_such_id"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "eq2", "--grid", "0:1"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "eq5", "--exact"]).0, EXIT_USAGE);
}

#[test]
fn verify_text_reports_pole_and_verdict() {
    let (code, out, _) = call(&["verify", "eq2", "--grid", "0.5:1:2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("pole: degree 0 anomaly, term 1/2*pi"), "{out}");
    assert!(out.lines().last().unwrap().starts_with("PASS eq2"));
}

#[test]
fn verify_exact_mode() {
    let (code, out, _) = call(&["verify", "eq17"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("exact comparison"));
    assert_eq!(call(&["verify", "eq18", "--exact"]).0, EXIT_PASS);
}

#[test]
fn output_is_deterministic() {
    let a = call(&["verify", "eq4_m", "--grid", "0.3:5:7", "--format", "json"]);
    let b = call(&["verify", "eq4_m", "--grid", "0.3:5:7", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn values_exact_and_numeric() {
    let (code, out, _) = call(&["values", "zeta", "-1", "2", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["exact"], "-1/12");
    assert_eq!(v[1]["exact"], "1/6*pi^2");
    let (_, out, _) = call(&["values", "beta", "2"]);
    assert!(out.starts_with("beta(2) = 0.91596559417721"), "{out}");
    let (_, out, _) = call(&["values", "zeta", "0.5+14.134725141734694i", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["method"], "euler_maclaurin");
    let (_, out, _) = call(&["values", "euler", "4"]);
    assert!(out.contains("(exact, 5)"));
    let (_, out, _) = call(&["values", "zeta", "--", "-2-1i"]);
    assert!(out.starts_with("zeta(-2-1i) = "), "{out}");
    let (_, out, _) = call(&["values", "zeta", "1"]);
    assert!(out.contains("pole"));
}

#[test]
fn values_reject_malformed_input() {
    assert_eq!(call(&["values", "zeta", "x"]).0, EXIT_USAGE);
    assert_eq!(call(&["values", "bernoulli", "-2"]).0, EXIT_USAGE);
    assert_eq!(call(&["values", "gamma", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["values", "zeta"]).0, EXIT_USAGE);
}

#[test]
fn extract_reports_matches() {
    let (code, out, _) = call(&["extract", "eq2", "--terms", "4", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["anomaly"], "1/2*pi");
    let values = v[0]["values"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    assert!(values.iter().all(|x| x["matched"] == true));
    assert_eq!(call(&["extract", "eq5"]).0, EXIT_USAGE);
    assert_eq!(call(&["extract", "nope"]).0, EXIT_USAGE);
}

#[test]
fn matrix_commands() {
    let (code, out, _) = call(&["matrix", "--size", "4"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "1 1 1 1\n2 1 1 2\n2 2 1 1\n3 1 1 3\n3 3 1 1\n4 1 1 4\n4 2 1 2\n4 4 1 1\n");
    let (_, out, _) = call(&["matrix", "--size", "6", "--apply", "2"]);
    assert_eq!(out, "0\n1\n0\n1/2\n0\n1/3\n");
    assert_eq!(call(&["matrix", "--size", "16", "--check", "3"]).0, EXIT_PASS);
    assert_eq!(call(&["matrix", "--size", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["matrix", "--size", "4", "--apply", "5"]).0, EXIT_USAGE);
    assert_eq!(call(&["matrix", "--size", "-3"]).0, EXIT_USAGE);
}

#[test]
fn list_and_help() {
    let (code, out, _) = call(&["list", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["id"] == "eq17"));
    assert_eq!(call(&["--help"]).0, EXIT_PASS);
    assert_eq!(call(&[]).0, EXIT_USAGE);
}
