use std::path::PathBuf;
use std::process::Command;

fn lwfr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lwfr"))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lwfr-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn lists_cases() {
    let out = lwfr().arg("cases").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["sod", "shu_osher", "isentropic_vortex", "dmr"] {
        assert!(text.contains(name), "{text}");
    }
}

#[test]
fn solve_writes_snapshots_and_manifest() {
    let dir = scratch("solve");
    let out = lwfr()
        .args(["solve", "--case", "sod", "--cells", "40", "--tend", "0.05", "--snapshots", "2", "--columns", "x,density"])
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("sod_manifest.json")).unwrap()).unwrap();
    let snaps = manifest["snapshots"].as_array().unwrap();
    assert_eq!(snaps.len(), 3);
    let last = std::fs::read_to_string(dir.join(snaps[2]["file"].as_str().unwrap())).unwrap();
    assert!(last.starts_with("# schema_version="));
    assert_eq!(last.lines().find(|l| !l.starts_with('#')).unwrap(), "x,density");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = scratch("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "case = \"sod\"\ncells = \"30\"\ntend = 0.5\nformat = \"json\"\n").unwrap();
    let out = lwfr().arg("solve").arg("--config").arg(&cfg).args(["--tend", "0.02"]).arg("--out").arg(&dir).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("sod_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["t_end"].as_f64(), Some(0.02));
    assert_eq!(manifest["cells"][0].as_u64(), Some(30));
    assert!(manifest["snapshots"][1]["file"].as_str().unwrap().ends_with(".json"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn convergence_prints_rates() {
    let out = lwfr()
        .args(["convergence", "--case", "advection_sine", "--degree", "2", "--grids", "8,16", "--norm", "l1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(t["norm"], "l1");
    assert!(t["rows"][1]["rate"].as_f64().unwrap() > 2.5);
}

#[test]
fn bad_input_fails_cleanly() {
    let out = lwfr().args(["solve", "--case", "nope"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let out = lwfr().args(["solve", "--case", "sod", "--limiter", "weno"]).output().unwrap();
    assert!(!out.status.success());
}
