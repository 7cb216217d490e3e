use std::path::Path;
use std::process::Command;

fn gjf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gjf"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn study_toml_to_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let cfg = write(
        dir.path(),
        "study.toml",
        &format!(
            "kind = \"fbvp-dirichlet\"\nnu = 1.9\nrhs = \"(1-x)*sin(pi*x)\"\nN_list = [8, 16, 32, 64]\noutput = {:?}\n",
            out
        ),
    );
    let status = gjf().args(["study", "--config"]).arg(&cfg).status().unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# gjf "));
    assert!(text.lines().next().unwrap().contains("config="));
    assert_eq!(text.lines().nth(1).unwrap(), "kind,nu,N,error_l2,error_frac,rate_frac");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][5], "");
    let last: f64 = rows[3][5].parse().unwrap();
    assert!((last - 3.2).abs() < 0.5, "rate {last}");
}

#[test]
fn study_json_config_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "study.json",
        r#"{"kind": "fivp", "nu": [0.2, 0.5], "rhs": "1+x+cos(x)", "N_list": [4, 8, 12], "format": "json"}"#,
    );
    let out = gjf().args(["study", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "kind = \"fbvp-int2\"\nnu = [1.3, 1.7]\nrhs = \"sin(x)\"\nN_list = [4, 8, 16]\n",
    );
    let a = gjf().args(["study", "--config"]).arg(&cfg).output().unwrap();
    let b = gjf().args(["study", "--config"]).arg(&cfg).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(data_rows(&String::from_utf8(a.stdout).unwrap()).len(), 6);
}

#[test]
fn format_override_and_quad_extra() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "kind = \"fivp\"\nnu = 0.5\nrhs = \"x*exp(x)\"\nN_list = [4, 8]\n",
    );
    let out = gjf()
        .args(["study", "--format", "json", "--quad-extra", "24", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][1]["N"], 8);
}

#[test]
fn configuration_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        "kind = \"fivp\"\nnu = 0.5\nrhs = \"tan(x)\"\nN_list = [4]\n",
        "kind = \"fivp\"\nnu = 0.5\nrhs = \"one\"\nN_list = [8, 4]\n",
        "kind = \"fbvp-dirichlet\"\nnu = 2.5\nrhs = \"one\"\nN_list = [8]\n",
        "kind = \"wave\"\nnu = 0.5\nrhs = \"one\"\nN_list = [8]\n",
        "this is not toml",
    ];
    for (i, text) in cases.iter().enumerate() {
        let cfg = write(dir.path(), &format!("bad{i}.toml"), text);
        let out = gjf().args(["study", "--config"]).arg(&cfg).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "case {i}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let missing = gjf().args(["study", "--config", "/nonexistent/x.toml"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let bad_kind = gjf()
        .args(["solve", "--kind", "fivp", "--nu", "1.0", "--N", "8", "--rhs", "one"])
        .output()
        .unwrap();
    assert_eq!(bad_kind.status.code(), Some(2));
}

#[test]
fn solve_writes_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sol.json");
    let status = gjf()
        .args(["solve", "--kind", "fivp", "--nu", "0.5", "--N", "6", "--rhs", "one", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let c = v["solution"]["coeffs"].as_array().unwrap();
    assert_eq!(c.len(), 7);
    // u = (1-x)^{1/2} / Γ(3/2)
    let g = std::f64::consts::PI.sqrt() / 2.0;
    assert!((c[0].as_f64().unwrap() - 1.0 / g).abs() < 1e-14);
    assert!(v["rows"][0]["error_frac"].as_f64().unwrap() < 1e-12);
}
