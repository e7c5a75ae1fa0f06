use std::process::Command;

use weightforge_cli::atlas::atlas_list;

fn weightforge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_weightforge")).args(args).env_remove("WEIGHTFORGE_ATLAS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn atlas_contents() {
    let names = atlas_list();
    for n in ["S3", "S4", "A5", "SL2(5)", "PSL2(7)", "C7:C3", "J1", "C2", "C3", "A4", "SL2(3)", "D8", "Q8"] {
        assert!(names.iter().any(|x| x == n), "{n} missing");
    }
    let (code, out, _) = weightforge(&["--list-atlas"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("J1\tdegree 266\torder 175560\ttable")));
}

#[test]
fn a5_awc_report() {
    let (code, out, _) = weightforge(&["--atlas", "A5", "--prime", "2", "--check", "awc"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["awc"]["ibr_count"], 4);
    assert_eq!(v["awc"]["weight_class_count"], 4);
    assert_eq!(v["verdicts"]["awc"], "EQUAL");
    assert_eq!(v["job"]["checks"], serde_json::json!(["table", "weights", "awc"]));
}

#[test]
fn exit_codes() {
    assert_eq!(weightforge(&["--atlas", "A5", "--prime", "6", "--check", "awc"]).0, 2);
    assert_eq!(weightforge(&["--atlas", "M24", "--prime", "2", "--check", "awc"]).0, 2);
    assert_eq!(weightforge(&["--group", "/nonexistent/group.json", "--prime", "2", "--check", "awc"]).0, 2);
    assert_eq!(weightforge(&["--atlas", "A5", "--check", "awc"]).0, 2);
    assert_eq!(weightforge(&["--atlas", "A5", "--prime", "2"]).0, 2);
    let (code, _, err) = weightforge(&["--atlas", "A5", "--prime", "2", "--check", "table", "--max-classes", "3"]);
    assert_eq!(code, 3);
    assert!(err.contains("resource limit"));
    assert_eq!(weightforge(&["--atlas", "A5", "--prime", "2", "--check", "awc", "--max-order", "10"]).0, 3);
}

#[test]
fn group_and_table_files() {
    let dir = std::env::temp_dir().join(format!("weightforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let group = dir.join("s4.json");
    std::fs::write(&group, r#"{"name": "S4", "degree": 4, "generators": ["(1,2)", [2, 3, 4, 1]]}"#).unwrap();
    let table = dir.join("s4_table.json");
    let g = group.to_str().unwrap();
    let (code, out, _) = weightforge(&["--group", g, "--prime", "3", "--check", "table", "--check", "awc", "--emit-table", table.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["table"]["source"], "computed");
    assert_eq!(v["table"]["degrees"], serde_json::json!([1, 1, 2, 3, 3]));
    // the emitted table is accepted as an input
    let (code, out, _) = weightforge(&["--group", g, "--prime", "3", "--check", "awc", "--table", table.to_str().unwrap()]);
    assert_eq!(code, 0);
    let w: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(w["table"]["source"], "file");
    assert_eq!(w["awc"], v["awc"]);
    // a perturbed table is rejected
    let text = std::fs::read_to_string(&table).unwrap().replacen("\"values\": [\n    [\n      1,", "\"values\": [\n    [\n      2,", 1);
    std::fs::write(&table, text).unwrap();
    assert_eq!(weightforge(&["--group", g, "--prime", "3", "--check", "awc", "--table", table.to_str().unwrap()]).0, 2);
    // --aut atlas is meaningless for a group file
    assert_eq!(weightforge(&["--group", g, "--prime", "3", "--check", "gaw", "--aut", "atlas"]).0, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_file_and_atlas_override() {
    let dir = std::env::temp_dir().join(format!("weightforge-out-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("groups")).unwrap();
    std::fs::write(dir.join("index.json"), r#"{"entries": [{"name": "V4", "order": 4, "group": "groups/V4.json"}]}"#).unwrap();
    std::fs::write(dir.join("groups/V4.json"), r#"{"name": "V4", "degree": 4, "generators": ["(1,2)(3,4)", "(1,3)(2,4)"]}"#).unwrap();
    let out = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_weightforge"))
        .args(["--atlas", "v4", "--prime", "2", "--check", "gaw", "--out", out.to_str().unwrap()])
        .env("WEIGHTFORGE_ATLAS", &dir)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["group"]["order"], 4);
    assert_eq!(v["verdicts"]["gaw"], "VERIFIED");
    // a wrong order in the index is a validation failure
    std::fs::write(dir.join("index.json"), r#"{"entries": [{"name": "V4", "order": 8, "group": "groups/V4.json"}]}"#).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_weightforge"))
        .args(["--atlas", "V4", "--prime", "2", "--check", "awc"])
        .env("WEIGHTFORGE_ATLAS", &dir)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
