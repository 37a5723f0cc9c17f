use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hankel() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hankel"));
    // keep ambient overrides out of the tests
    for var in [
        "HANKEL_GRID_PER_AXIS",
        "HANKEL_REFINE_ITERS",
        "HANKEL_REFINE_TOL",
        "HANKEL_STARTS_KEPT",
        "HANKEL_SEED_LAYOUT",
    ] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    hankel().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

#[test]
fn verify_sq_reports_sharp_bound_and_prior() {
    let o = run(&["verify", "--class", "sq"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let max: f64 = field(&text, "numeric_max").parse().unwrap();
    assert!((max - 0.25).abs() < 1e-6);
    assert_eq!(field(&text, "closed_bound"), "0.25");
    assert_eq!(field(&text, "prior_bound"), "0.8125");
    assert_eq!(field(&text, "improves_prior"), "true");
}

#[test]
fn verify_rejects_alpha_out_of_range() {
    let o = run(&["verify", "--class", "starlike", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha out of range [0,1)"));
}

#[test]
fn verify_ozaki_left_endpoint() {
    let o = run(&[
        "verify", "--class", "ozaki", "--alpha", "-0.5", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed_bound"], 0.328125);
    assert!(v["numeric_max"].as_f64().unwrap() <= 0.328125 + 1e-9);
    assert!(v.get("prior_bound").is_none());
}

#[test]
fn verify_usage_errors() {
    assert_eq!(run(&["verify", "--class", "g"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--class", "sq", "--alpha", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--class", "convex"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--class", "sq", "--grid-per-axis", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_starlike_csv() {
    let o = run(&[
        "sweep", "--class", "starlike", "--from", "0", "--to", "0.9", "--steps", "10", "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(&row[1], format!("{}", i as f64 / 10.0));
        let gap: f64 = row[4].parse().unwrap();
        assert!(gap <= 1e-6, "{row:?}");
        assert_eq!(&row[6], "true");
        assert_eq!(&row[7], "true");
    }
}

#[test]
fn sweep_g_ends_at_nine_over_320() {
    let o = run(&[
        "sweep", "--class", "g", "--from", "0.1", "--to", "1.0", "--steps", "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    assert_eq!(cols[1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(cols[3].parse::<f64>().unwrap(), 9.0 / 320.0);
}

#[test]
fn sweep_usage_errors() {
    let bad = |args: &[&str]| run(args).status.code();
    assert_eq!(
        bad(&["sweep", "--class", "g", "--from", "0.1", "--to", "1", "--steps", "0"]),
        Some(2)
    );
    assert_eq!(
        bad(&["sweep", "--class", "ozaki", "--from", "-0.5", "--to", "1", "--steps", "3"]),
        Some(2)
    );
    assert_eq!(
        bad(&["sweep", "--class", "sq", "--from", "0", "--to", "1", "--steps", "3"]),
        Some(2)
    );
}

#[test]
fn golden_csv_header() {
    let o = run(&[
        "sweep", "--class", "ozaki", "--from", "-0.5", "--to", "0", "--steps", "2",
    ]);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "class,alpha,numeric_max,closed_bound,gap,envelope_max,sharp_claimed,attained"
    );
}

#[test]
fn golden_json_fields() {
    let o = run(&[
        "sweep", "--class", "g", "--from", "0.5", "--to", "1", "--steps", "2", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let mut expected = vec![
        "class",
        "alpha",
        "numeric_max",
        "closed_bound",
        "gap",
        "envelope_max",
        "sharp_claimed",
        "attained",
        "status",
        "argmax",
    ];
    expected.sort_unstable();
    let mut keys_sorted = keys.clone();
    keys_sorted.sort_unstable();
    assert_eq!(keys_sorted, expected);
    let argmax: Vec<&str> = rows[0]["argmax"]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(argmax, vec!["g0", "g1", "g2"]);
    // complex values are "re im"
    let g0 = rows[0]["argmax"]["g0"].as_str().unwrap();
    assert_eq!(g0.split(' ').count(), 2);
}

fn manifest_of(path: &Path) -> Value {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    serde_json::from_str(&std::fs::read_to_string(name).unwrap()).unwrap()
}

#[test]
fn manifest_reproduces_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let out_s = out.to_str().unwrap();
    let o = run(&[
        "sweep", "--class", "ozaki", "--from", "-0.5", "--to", "0.5", "--steps", "3", "--out",
        out_s,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    let manifest = manifest_of(&out);
    assert_eq!(manifest["command"], "sweep");
    assert_eq!(manifest["config"]["grid_per_axis"], 9);
    assert_eq!(manifest["config"]["seed_layout"], "lattice");
    assert_eq!(manifest["specs"].as_array().unwrap().len(), 3);
    assert!(manifest["created_unix"].as_u64().is_some());
    assert_eq!(manifest["outputs"][0], out_s);

    let args: Vec<String> = manifest["args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().to_owned())
        .collect();
    std::fs::remove_file(&out).unwrap();
    let again = hankel().args(&args).output().unwrap();
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn env_overrides_search_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let o = hankel()
        .args([
            "verify",
            "--class",
            "sq",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ])
        .env("HANKEL_GRID_PER_AXIS", "5")
        .env("HANKEL_STARTS_KEPT", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let manifest = manifest_of(&out);
    assert_eq!(manifest["config"]["grid_per_axis"], 5);
    assert_eq!(manifest["config"]["starts_kept"], 4);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((report["numeric_max"].as_f64().unwrap() - 0.25).abs() < 1e-6);
}

#[test]
fn oracle_check_passes() {
    let o = run(&["oracle-check", "--trials", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let dev: f64 = field(&text, "max_deviation").parse().unwrap();
    assert!(dev < 1e-11);
    assert_eq!(field(&text, "result"), "pass");
}

#[test]
fn oracle_check_single_zero_trial() {
    let o = run(&["oracle-check", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "max_deviation"), "0");
}

#[test]
fn oracle_check_detects_corruption() {
    let o = run(&["oracle-check", "--trials", "100", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "result"), "FAIL");
    assert_eq!(
        run(&["oracle-check", "--trials", "0"]).status.code(),
        Some(2)
    );
}

fn coeff_file(dir: &Path, body: &str) -> String {
    let path = dir.join("coeffs.txt");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn hankel_koebe() {
    let dir = tempfile::tempdir().unwrap();
    let file = coeff_file(dir.path(), "1 0\n2 0\n3 0\n4 0\n");
    let o = run(&["hankel", "--file", &file, "--q", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1 0\n");
}

#[test]
fn hankel_first_coefficient_echo() {
    let dir = tempfile::tempdir().unwrap();
    let file = coeff_file(dir.path(), "0.5 -0.25\n2 0\n");
    let o = run(&["hankel", "--file", &file, "--q", "1", "--n", "1"]);
    assert_eq!(stdout(&o), "0.5 -0.25\n");
}

#[test]
fn hankel_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let short = coeff_file(dir.path(), "1 0\n2 0\n3 0\n");
    assert_eq!(
        run(&["hankel", "--file", &short, "--q", "2", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    let malformed = coeff_file(dir.path(), "1 0\ntwo 0\n3 0\n4 0\n");
    assert_eq!(
        run(&["hankel", "--file", &malformed, "--q", "2", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "hankel",
            "--file",
            "/nonexistent/coeffs.txt",
            "--q",
            "1",
            "--n",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}
