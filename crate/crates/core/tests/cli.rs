use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohemian-gap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bohemian-gap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_then_charpoly_roundtrip() {
    let path = scratch("m5.txt");
    let o = bin(&[
        "construct",
        "--variant",
        "inB",
        "--n",
        "5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("11\n"));

    let o = bin(&[
        "charpoly",
        path.to_str().unwrap(),
        "--structural",
        "--h",
        "2",
        "--pretty",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
    // t^3 m_{8,2}(-t) = t^11 - 8 t^5 - 8 t^4 - 2 t^3
    assert_eq!(lines[0], "t^11 - 8*t^5 - 8*t^4 - 2*t^3");
}

#[test]
fn charpoly_text_format() {
    let path = scratch("diag.txt");
    std::fs::write(&path, "2\n1 0\n0 2\n").unwrap();
    let o = bin(&["charpoly", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2 2 -3 1");
}

#[test]
fn structural_rejects_non_family_matrix() {
    let path = scratch("h2.txt");
    let o = bin(&[
        "construct",
        "--variant",
        "h2",
        "--n",
        "5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&[
        "charpoly",
        path.to_str().unwrap(),
        "--structural",
        "--h",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certify_exit_codes() {
    let met = bin(&["certify", "--variant", "wilkinson", "--n", "6", "--h", "4"]);
    assert_eq!(met.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&met)).unwrap();
    assert_eq!(cert["meets_claim"], true);
    assert!(cert["gap_upper"].as_str().unwrap().contains("*2^"));

    let cover = bin(&["certify", "--variant", "cover", "--n", "5"]);
    assert_eq!(cover.status.code(), Some(0));

    // certified gap exceeds the stated explicit bound
    let refuted = bin(&["certify", "--variant", "h2", "--n", "5"]);
    assert_eq!(refuted.status.code(), Some(2));

    let capped = bin(&[
        "certify",
        "--variant",
        "h2",
        "--n",
        "9",
        "--precision-cap",
        "-10",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn census_json_and_caps() {
    let o = bin(&["census", "--n", "2", "--h", "2", "--sample", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["total_enumerated"], "16");
    assert_eq!(r["distinct_charpolys"], "16");
    assert_eq!(r["all_in_p"], true);
    assert_eq!(r["oracle_mismatches"], "0");

    let m = bin(&[
        "census", "--mode", "mod5", "--n", "2", "--h", "4", "--shards", "3",
    ]);
    assert_eq!(m.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(r["mod5_matching_count"], "3");
    assert_eq!(r["mod5_expected_count"], "3");
    assert_eq!(r["theorem_bound_met"], true);

    for mode in ["bijection", "mod5"] {
        let one = bin(&["census", "--mode", mode, "--n", "2", "--h", "3"]);
        let many = bin(&[
            "census", "--mode", mode, "--n", "2", "--h", "3", "--shards", "5",
        ]);
        assert_eq!(one.stdout, many.stdout, "{mode}");
    }

    let big = bin(&["census", "--n", "4", "--h", "3", "--cap", "1000"]);
    assert_eq!(big.status.code(), Some(4));
}

#[test]
fn bounds_and_usage_errors() {
    let o = bin(&["bounds", "--n", "9", "--h", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let b: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(b["explicit_construction_h2"]["value"], "1/2097152");
    assert_eq!(b["parlett_lu_upper"]["value"], "1/64");

    assert_eq!(bin(&["certify", "--n", "5"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
