use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pseudocontact"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pseudocontact-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Rows of a CSV as maps from column name to cell.
fn table(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let head: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| head.iter().cloned().zip(rec.unwrap().iter().map(String::from)).collect())
        .collect()
}

fn cell(row: &std::collections::HashMap<String, String>, k: &str) -> f64 {
    row[k].parse().unwrap()
}

#[test]
fn verify_manifold_examples() {
    let o = run(&["verify-manifold", "--manifold", "q3", "--epsilon", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["quasi_sasakian"], true);
    assert_eq!(v["passed"], true);
    assert_eq!(v["signature"], serde_json::json!([2, 1]));

    let o = run(&["verify-manifold", "--manifold", "n3", "--epsilon", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["quasi_sasakian"], false);
    for b in v["beta_range"].as_array().unwrap() {
        assert!((b.as_f64().unwrap() - 1.0).abs() < 1e-7);
    }
}

#[test]
fn corrupted_user_metric_is_rejected() {
    let cfg = scratch("bad-metric.toml");
    std::fs::write(
        &cfg,
        r#"
[structure]
name = "broken"
epsilon = 1
metric = [["1", "0.5", "0"], ["0", "1", "0"], ["0", "0", "1"]]
phi = [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
xi = ["0", "0", "1"]
eta = ["0", "0", "1"]
"#,
    )
    .unwrap();
    let o = run(&["verify-manifold", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn user_structure_failing_an_axiom_exits_one() {
    // φ² is a rotation by π − 2z, not −I off z = 0
    let cfg = scratch("twisted.toml");
    std::fs::write(
        &cfg,
        r#"
[structure]
name = "twisted"
epsilon = 1
metric = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
phi = [["sin(z)", "-cos(z)", "0"], ["cos(z)", "sin(z)", "0"], ["0", "0", "0"]]
xi = ["0", "0", "1"]
eta = ["0", "0", "1"]
"#,
    )
    .unwrap();
    let o = run(&["verify-manifold", "--config", cfg.to_str().unwrap()]);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    let get = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap()["pass"].as_bool().unwrap();
    assert!(!get("phi_squared"));
    assert!(get("eta_of_xi") && get("phi_xi") && get("eta_phi"));
    assert_eq!(v["passed"], false);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_curve_rows() {
    let o = run(&["analyze-curve", "--curve", "upsilon1", "--from", "0", "--to", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(
        header,
        "s,x,y,z,m,speed2,causal,kappa_direct,tau_direct,kappa_formula,tau_formula,theta,delta,theta1,etaN,etaB,frenet_residual"
    );
    let rows = table(&stdout(&o));
    let r = &rows[1];
    assert_eq!(cell(r, "s"), 1.0);
    assert!((cell(r, "kappa_direct") - 2.2360680).abs() < 1e-6);
    assert!((cell(r, "kappa_formula") - 2.2360680).abs() < 1e-6);
    assert!((cell(r, "tau_direct") - 0.6).abs() < 1e-6);
    assert_eq!(r["causal"], "spacelike");
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(summary["max_kappa_disagreement"].as_f64().unwrap() < 1e-5);

    let o = run(&["analyze-curve", "--curve", "upsilon2", "--from", "1", "--to", "4", "--n", "4"]);
    let rows = table(&stdout(&o));
    let r = &rows[1];
    assert_eq!(cell(r, "s"), 2.0);
    assert!((cell(r, "kappa_direct") - 1.0).abs() < 1e-6 && (cell(r, "tau_direct") - 0.25).abs() < 1e-6);
}

#[test]
fn geodesic_rows_are_flagged() {
    let out = scratch("reeb-line.csv");
    let o = run(&[
        "analyze-curve", "--curve", "1, 0, s", "--from", "-1", "--to", "1", "--n", "5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = table(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 5);
    for r in &rows {
        for k in ["kappa_direct", "tau_direct", "frenet_residual"] {
            assert_eq!(r[k], "geodesic");
        }
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(summary["clean_rows"], 0);
    assert_eq!(summary["flags"]["geodesic"], 5);
}

#[test]
fn gen_legendre_examples() {
    let o = run(&["gen-legendre", "--psi", "s", "--from", "0.1", "--to", "3", "--n", "60"]);
    assert_eq!(o.status.code(), Some(0));
    for r in table(&stdout(&o)) {
        let s = cell(&r, "s");
        assert!((cell(&r, "tau_k2") - 0.5 / s.sin()).abs() < 1e-6);
        assert!((cell(&r, "kappa_k2") - 1.5).abs() < 1e-6);
        assert!((cell(&r, "tau_direct") - cell(&r, "tau_k2")).abs() < 1e-5);
    }

    let o = run(&["gen-legendre", "--psi", "0", "--from", "0.1", "--to", "3", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("geodesic"));

    let o = run(&["gen-legendre", "--psi", "s", "--from", "0.1", "--to", "3.2"]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&o.stderr).to_string();
    let at: f64 = msg.split("s = ").nth(1).unwrap().split(';').next().unwrap().parse().unwrap();
    assert!((at - std::f64::consts::PI).abs() < 0.01, "{msg}");
}

#[test]
fn generated_csv_feeds_back_in() {
    let out = scratch("psi.csv");
    let o = run(&[
        "gen-legendre", "--psi", "s", "--from", "0.5", "--to", "2.5", "--n", "801",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "analyze-curve", "--manifold", "q3", "--curve", out.to_str().unwrap(),
        "--from", "1", "--to", "2", "--n", "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for r in table(&stdout(&o)) {
        assert!((cell(&r, "kappa_direct") - 1.5).abs() < 1e-4, "{r:?}");
        assert!(cell(&r, "m").abs() < 1e-6);
    }
}

#[test]
fn check_spherical_examples() {
    let o = run(&[
        "check-spherical", "--psi", "s", "--from", "0.15", "--to", "2.95", "--n", "50", "--epsilon", "-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "not_spherical");
    assert!(v["min_interior_residual"].as_f64().unwrap() > 1e-2);

    let cfg = scratch("theta.toml");
    std::fs::write(
        &cfg,
        "from = 0.0\nto = 1.0\nn = 31\n[theta]\nkind = \"spacelike_trig\"\ncoefficients = [1.0, 0.5]\nalpha = \"1 + 0.2*s\"\n",
    )
    .unwrap();
    let o = run(&["check-spherical", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["verdict"], "spherical");

    let o = run(&["check-spherical", "--config", cfg.to_str().unwrap(), "--epsilon", "-1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["check-spherical", "--manifold", "q3", "--curve", "1 + s, 0, 0", "--from", "0", "--to", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["check-spherical", "--manifold", "n3", "--curve", "upsilon1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quasi-Sasakian"));
}

fn path_points(svg: &str, panel: &str) -> Vec<(f64, f64)> {
    let g = svg.split(&format!("id=\"panel-{panel}\"")).nth(1).unwrap();
    let d = g.split("<path d=\"").nth(1).unwrap().split('"').next().unwrap();
    d.split_whitespace()
        .map(|t| {
            let (a, b) = t[1..].split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn plots() {
    let o = run(&["plot", "--curve", "upsilon1", "--n", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    // x ≡ 1: the xy trace is a vertical segment, the yz trace a horizontal one
    let xy = path_points(&svg, "xy");
    assert!(xy.iter().all(|p| (p.0 - xy[0].0).abs() < 1e-9) && (xy[0].1 - xy[10].1).abs() > 100.0);
    let yz = path_points(&svg, "yz");
    assert!(yz.iter().all(|p| (p.1 - yz[0].1).abs() < 1e-9));

    let o = run(&["plot", "--curve", "upsilon2", "--n", "21"]);
    let xz = path_points(&stdout(&o), "xz");
    // x + z ≡ 0 maps to a straight line in the panel
    let (a, b) = (xz[0], xz[20]);
    for p in &xz {
        let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        assert!(cross.abs() < 1.0, "{p:?}");
    }
}

#[test]
fn config_and_flags() {
    let cfg = scratch("base.toml");
    std::fs::write(&cfg, "manifold = \"n3\"\nepsilon = 1\ncurve = \"upsilon2\"\nfrom = 1.0\nto = 4.0\nn = 4\n").unwrap();
    let o = run(&["analyze-curve", "--config", cfg.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(table(&stdout(&o)).len(), 2);

    let o = run(&["analyze-curve", "--config", cfg.to_str().unwrap(), "--psi", "s"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["analyze-curve", "--curve", "upsilon1", "--tol", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["analyze-curve", "--curve", "upsilon1", "--from", "2", "--to", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify-manifold", "--config", "/nonexistent/config.toml"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify-manifold", "--manifold", "s3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify-manifold", "--unknown-flag"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::write(&cfg, "manifold = \"n3\"\ncolour = \"blue\"\n").unwrap();
    let o = run(&["verify-manifold", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn arclength_option() {
    let cfg = scratch("arc.toml");
    std::fs::write(
        &cfg,
        "manifold = \"n3\"\ncurve = \"1.2 + 0.3*s + 0.1*sin(2*s), 0.1 + 0.2*cos(s), 0.25*s\"\nfrom = -1.4\nto = 1.4\nn = 41\narclength = true\ns0 = 0.0\n",
    )
    .unwrap();
    let o = run(&["analyze-curve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["clean_rows"], 41, "{summary}");
    assert!(summary["max_kappa_disagreement"].as_f64().unwrap() < 1e-5);
    assert!(summary["max_tau_disagreement"].as_f64().unwrap() < 1e-5);
    for r in table(&stdout(&o)) {
        assert!((cell(&r, "speed2") - 1.0).abs() < 1e-6);
    }
}
