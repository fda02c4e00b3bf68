use std::process::{Command, Output};

use serde_json::Value;

fn wreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = wreath(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn as_matrix(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn kmatrix_weight_zero() {
    let v = json(&["kmatrix", "--p", "3", "--w", "0"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["cols"].as_array().unwrap().len(), 1);
    assert_eq!(as_matrix(&v["entries"]), vec![vec![0, 0, 1]]);
}

#[test]
fn kmatrix_schema_and_hat_columns() {
    let v = json(&["kmatrix", "--p", "5", "--w", "2"]);
    assert_eq!(v["p"], 5);
    assert_eq!(v["w"], 2);
    let rows: Vec<String> = serde_json::from_value(v["rows"].clone()).unwrap();
    let cols: Vec<String> = serde_json::from_value(v["cols"].clone()).unwrap();
    let entries = as_matrix(&v["entries"]);
    let mut sorted = entries.clone();
    sorted.sort();
    assert_eq!(entries, sorted);
    for (c, col) in cols.iter().enumerate() {
        let parsed: Vec<Vec<usize>> = serde_json::from_str(col).unwrap();
        if !parsed[2].is_empty() {
            continue;
        }
        let hits: Vec<&Vec<u64>> = entries.iter().filter(|e| e[1] == c as u64).collect();
        assert_eq!(hits.len(), 1, "column {col}");
        assert_eq!(hits[0][2], 1);
        let mut row: Vec<Vec<usize>> = serde_json::from_str(&rows[hits[0][0] as usize]).unwrap();
        row.insert(2, Vec::new());
        assert_eq!(row, parsed);
    }
}

#[test]
fn gram_p3_w1() {
    let v = json(&["gram", "--p", "3", "--w", "1"]);
    let m = as_matrix(&v["matrix"]);
    assert_eq!(m, vec![vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 1]]);
    assert_eq!(v["determinant"], "0");
    assert_eq!(v["hat_submatrix_is_identity"], true);
}

#[test]
fn gram_is_symmetric() {
    for (p, w) in [("3", "2"), ("5", "2"), ("3", "3")] {
        let v = json(&["gram", "--p", p, "--w", w]);
        let m = as_matrix(&v["matrix"]);
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(m[i][j], m[j][i]);
            }
        }
        assert_eq!(v["hat_submatrix_is_identity"], true);
    }
}

#[test]
fn csv_output() {
    let out = wreath(&["kmatrix", "--p", "3", "--w", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["row_label", "col_label", "value"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][0], "[[1],[]]");
    assert_eq!(&rows[0][1], "[[1],[],[]]");
    assert_eq!(&rows[0][2], "1");
}

#[test]
fn basicset_small() {
    let v = json(&["basicset", "--n", "2", "--p", "3"]);
    assert_eq!(v["basic_set_size"], 2);
    let parts = v["partitions"].as_array().unwrap();
    assert!(parts.iter().all(|p| p["in_basic_set"] == true));
}

#[test]
fn basicset_counts() {
    for p in [3u64, 5, 7] {
        for n in 0..=10u64 {
            let v = json(&["basicset", "--n", &n.to_string(), "--p", &p.to_string()]);
            let expected = v["partitions"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|row| {
                    let parts: Vec<u64> =
                        serde_json::from_str(row["partition"].as_str().unwrap()).unwrap();
                    parts.iter().all(|x| x % p != 0)
                })
                .count();
            assert_eq!(v["basic_set_size"], expected as u64, "n={n} p={p}");
        }
    }
}

#[test]
fn blocks_cover_all_partitions() {
    let v = json(&["blocks", "--n", "6", "--p", "3"]);
    let blocks = v["blocks"].as_array().unwrap();
    let total: usize = blocks
        .iter()
        .map(|b| b["members"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 11);
    // weight 2 at p = 3: one member per 3-multipartition of 2
    let principal = blocks.iter().find(|b| b["core"] == "[]").unwrap();
    assert_eq!(principal["weight"], 2);
    assert_eq!(principal["members"].as_array().unwrap().len(), 9);
}

#[test]
fn lr_command() {
    let v = json(&["lr", "[3,2,1]", "[2,1]", "[2,1]"]);
    assert_eq!(v["value"], 2);
    let out = wreath(&["lr", "[3,2", "[1]", "[1]"]);
    assert!(!out.status.success());
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = wreath(&[
            "kmatrix",
            "--p",
            "5",
            "--w",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let first = std::fs::read(&a).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, std::fs::read(&b).unwrap());
    let stdout = wreath(&["kmatrix", "--p", "5", "--w", "3"]).stdout;
    assert_eq!(first, stdout);
}

#[test]
fn verify_passes() {
    let out = wreath(&["verify", "--p", "3", "--w", "2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["primitive_root"], 2);
    assert!(v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_skips_unsupported_prime_and_guard() {
    let out = wreath(&["verify", "--p", "19", "--w", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["status"] != "fail"));
    assert!(claims.iter().any(|c| c["status"] == "skipped"));

    let out = Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(["verify", "--p", "3", "--w", "2", "--quiet"])
        .env("WREATH_GUARD_ELEMS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["detail"].as_str().is_some_and(|d| d.contains("guard"))));
}

#[test]
fn guard_violations_exit_nonzero() {
    for args in [
        vec!["kmatrix", "--p", "4", "--w", "1"],
        vec!["kmatrix", "--p", "3", "--w", "7"],
        vec!["gram", "--p", "19", "--w", "1"],
        vec!["basicset", "--n", "41", "--p", "3"],
        vec!["blocks", "--n", "5", "--p", "9"],
    ] {
        let out = wreath(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}
