//! Command-line behavior: output shapes, exit codes, fixture replay.

use assert_cmd::Command;

fn nsg() -> Command {
    Command::cargo_bin("nsg").unwrap()
}

#[test]
fn hilbert_prints_the_compact_sequence() {
    nsg()
        .args(["hilbert", "3", "5"])
        .assert()
        .success()
        .stdout("1,2,3, →\n");
}

#[test]
fn analyze_emits_the_documented_json() {
    let out = nsg()
        .args(["analyze", "16", "17", "35", "71"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(value["semigroup"], serde_json::json!([16, 17, 35, 71]));
    assert_eq!(value["r"], serde_json::json!(15));
    assert_eq!(value["D"]["3"], serde_json::json!([52, 70, 88, 106, 142]));
    assert_eq!(value["verdict"]["certificate"], serde_json::json!("Direct"));
    assert_eq!(value["necessary"]["c2_count"], serde_json::json!(6));
    assert_eq!(value["C"]["2"], serde_json::json!([34, 52, 70, 88, 106, 142]));
}

#[test]
fn apery_prints_the_invariant_table() {
    let out = nsg().args(["apery", "3", "5"]).assert().success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("Ap(S) = {0, 10, 5}"));
    assert!(text.contains("tangent cone Cohen-Macaulay: true"));
}

#[test]
fn invalid_generators_exit_with_one() {
    nsg().args(["analyze", "4", "6"]).assert().code(1);
    nsg().args(["hilbert", "0"]).assert().code(1);
    nsg().args(["injection", "3", "5", "--level", "1"]).assert().code(1);
}

#[test]
fn unknown_flags_exit_with_one_but_help_succeeds() {
    nsg().args(["--definitely-not-a-flag"]).assert().code(1);
    nsg().args(["--help"]).assert().code(0);
    nsg().args(["search", "--help"]).assert().code(0);
}

#[test]
fn search_rejects_unbounded_constraints() {
    nsg()
        .args([
            "search", "--max-mult", "5", "--ed-min", "2", "--ed-max", "3",
            "--predicate", "all",
        ])
        .assert()
        .code(1);
}

#[test]
fn search_emits_jsonl_and_csv() {
    let jsonl = nsg()
        .args([
            "search", "--max-mult", "3", "--ed-min", "2", "--ed-max", "2",
            "--max-gen", "10", "--predicate", "all", "--workers", "2",
        ])
        .assert()
        .success();
    let lines: Vec<serde_json::Value> = String::from_utf8(jsonl.get_output().stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let keys: Vec<String> = lines
        .iter()
        .map(|v| {
            v["generators"]
                .as_array()
                .unwrap()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    assert_eq!(
        keys,
        vec!["2,3", "2,5", "2,7", "2,9", "3,4", "3,5", "3,7", "3,8", "3,10"]
    );

    let csv = nsg()
        .args([
            "search", "--max-mult", "3", "--ed-min", "2", "--ed-max", "2",
            "--max-gen", "10", "--predicate", "all", "--format", "csv",
        ])
        .assert()
        .success();
    let text = String::from_utf8(csv.get_output().stdout.clone()).unwrap();
    assert!(text.starts_with("generators,m,ed,f,r,certificate,first_decrease\n"));
    assert!(text.contains("\"2,3\",2,2,1,1,CMTangentCone,"));
}

#[test]
fn verify_paper_passes_and_supports_only() {
    nsg().args(["verify-paper"]).assert().code(0);
    let out = nsg()
        .args(["verify-paper", "--only", "16,17,35,71"])
        .assert()
        .code(0);
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("PASS hilbert sequence of ⟨16,17,35,71⟩"));
    assert!(text.contains("PASS C_3 of ⟨16,17,35,71⟩"));
    assert!(!text.contains("24,25,36,51,54"));
    assert!(text.trim_end().ends_with("6 fixtures, 0 failed"));
}

#[test]
fn corrupted_fixture_file_fails_with_diff_and_exit_two() {
    let good = include_str!("../fixtures/paper.json");
    let bad = good.replacen(
        "\"expect\": [126, 137, 155, 166]",
        "\"expect\": [126, 137, 155, 167]",
        1,
    );
    assert_ne!(good, bad, "corruption must change the fixture");
    let path = std::env::temp_dir().join("nsg-corrupt-fixtures.json");
    std::fs::write(&path, bad).unwrap();

    let out = nsg()
        .args(["verify-paper", "--fixtures"])
        .arg(&path)
        .assert()
        .code(2);
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("FAIL D_5 of ⟨24,25,36,51,54⟩"));
    assert!(text.contains("expected [126, 137, 155, 167]"));
    assert!(text.contains("got [126, 137, 155, 166]"));
    std::fs::remove_file(&path).ok();
}
