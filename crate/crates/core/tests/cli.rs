use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasiparabolic"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn spectrum_of_translation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.conf",
        "symbol.family = constant\nsymbol.value = 0+1i\ngrid.n_points = 512\ngrid.spatial_halfwidth = 50\n",
    );
    let out = dir.path().join("out");
    let st = bin()
        .args(["spectrum", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .arg("--svg")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("spectrum_report.json")).unwrap()).unwrap();
    let h = report["result"]["coarse"]["hausdorff"].as_f64().unwrap();
    assert!(h <= 0.05, "{h}");
    assert_eq!(report["metadata"]["config_hash"].as_str().unwrap().len(), 64);
    for f in ["points.csv", "points.csv.meta.json", "spectrum.svg", "spectrum.svg.meta.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn zero_eps_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.conf",
        "symbol.family = constant\nsymbol.value = 0+1i\nsymbol.eps_lower = 0\n",
    );
    let st = bin().args(["spectrum", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("config"));
}

#[test]
fn real_constant_violates_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "real.conf", "symbol.family = constant\nsymbol.value = 1\n");
    let st = bin().args(["expand", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&st.stderr).contains("symbol stage"));
}

#[test]
fn unreachable_tolerance_is_numerical() {
    let dir = tempfile::tempdir().unwrap();
    // δ close to 1 needs far more than 200 terms at this tolerance
    let cfg = write_config(
        dir.path(),
        "slow.conf",
        "symbol.family = constant\nsymbol.value = 20+0.5i\ngrid.n_points = 256\ntol = 1e-9\n",
    );
    let st = bin().args(["expand", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(4), "{}", String::from_utf8_lossy(&st.stderr));
    assert!(String::from_utf8_lossy(&st.stderr).contains("plan stage"));
}

#[test]
fn expand_writes_plan_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "m.conf",
        "symbol.family = moebius_decay\nsymbol.limit = 0+2i\nsymbol.residue = 1\nsymbol.pole = 0-2i\n\
         grid.n_points = 256\ngrid.spatial_halfwidth = 25\ntol = 1e-3\nexpand.export_csv = true\n",
    );
    let st = bin().args(["expand", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    let m = quasiparabolic::halfline::read_matrix_binary(std::fs::File::open(dir.path().join("matrix.bin")).unwrap())
        .unwrap();
    assert_eq!(m.nrows(), 128);
    let csv = quasiparabolic::halfline::read_matrix_csv(std::fs::File::open(dir.path().join("matrix.csv")).unwrap())
        .unwrap();
    assert_eq!(csv, m);
    let plan: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("plan.json")).unwrap()).unwrap();
    assert!(plan["result"]["tail_bound"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn compare_and_cluster_modes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.conf",
        "symbol.family = log_oscillation\nsymbol.center = 0+3i\nsymbol.amplitude = 0.2\n\
         grid.n_points = 512\ngrid.spatial_halfwidth = 50\ntol = 1e-3\ncompare.n_test_vectors = 4\n",
    );
    let st = bin().args(["compare", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    assert!(dir.path().join("oracle_report.json").exists());
    let st = bin().args(["cluster", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    assert!(dir.path().join("clouds.csv").exists());
}

#[test]
fn selftest_subset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.conf", "selftest.criteria = 6\n");
    let st = bin().args(["selftest", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&st.stdout);
    assert!(stdout.contains("criterion 6 [PASS]"), "{stdout}");
}

#[test]
fn missing_config_file() {
    let st = bin().args(["spectrum", "--config", "/nonexistent/run.conf"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("/nonexistent/run.conf"));
}
