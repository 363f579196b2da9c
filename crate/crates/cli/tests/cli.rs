use std::fs;
use std::process::{Command, Output};

fn catalan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalan"))
        .args(args)
        .env_remove("CATALAN_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = catalan(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout(&["count", "triangulations", "--vertices", "10"]),
        "1430\n"
    );
    assert_eq!(stdout(&["count", "dyck", "--n", "5"]), "42\n");
    assert_eq!(
        stdout(&["unrank", "dyck", "--n", "2", "--code", "1"]),
        "UUDD\n"
    );
    assert_eq!(
        stdout(&[
            "count",
            "triangulations",
            "--vertices",
            "8",
            "--missing",
            "1"
        ]),
        "90\n"
    );
    assert_eq!(
        stdout(&[
            "count",
            "triangulations",
            "--vertices",
            "7",
            "--missing",
            "5"
        ]),
        "0\n"
    );
}

#[test]
fn large_counts_are_exact_decimals() {
    let c100 = stdout(&["count", "dyck", "--n", "100"]);
    assert_eq!(
        c100.trim(),
        "896519947090131496687170070074100632420837521538745909320"
    );
}

#[test]
fn rank_and_unrank_agree() {
    let rec = stdout(&["unrank", "triangulations", "--vertices", "5", "--code", "2"]);
    assert_eq!(
        rec.trim(),
        r#"{"diagonals":[[0,2],[2,4]],"forbidden":0,"n":5}"#
    );
    assert_eq!(
        stdout(&[
            "rank",
            "triangulations",
            "--vertices",
            "5",
            "--diagonals",
            rec.trim()
        ]),
        "2\n"
    );
    assert_eq!(
        stdout(&[
            "rank",
            "triangulations",
            "--vertices",
            "5",
            "--diagonals",
            "[[1,3],[0,3]]",
            "--as-bits"
        ]),
        "100\n"
    );
    assert_eq!(
        stdout(&["unrank", "dyck", "--n", "3", "--code-bits", "010"]),
        "UUDDUD\n"
    );
    assert_eq!(stdout(&["rank", "dyck", "--word", "UUDDUD"]), "2\n");
    assert_eq!(stdout(&["rank", "dyck", "--word", "(()())"]), "3\n");
    assert_eq!(
        stdout(&["unrank", "dyck", "--n", "2", "--code", "0", "--format", "parens"]),
        "()()\n"
    );
}

#[test]
fn rank_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_catalan"))
        .args(["rank", "dyck"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"UUUDDD\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4\n");
}

#[test]
fn sampling_is_deterministic() {
    let args = [
        "sample",
        "triangulations",
        "--vertices",
        "40",
        "--count",
        "20",
        "--seed",
        "77",
        "--stats",
    ];
    let a = catalan(&args);
    let b = catalan(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["diagonals"].as_array().unwrap().len(), 37);
        // C_38 = 176733862787006701400, so each attempt reads 68 bits.
        assert_eq!(v["bits_consumed"].as_u64().unwrap() % 68, 0);
        let len = v["path_length"].as_u64().unwrap();
        assert!((38..=76).contains(&len));
    }
    let other = catalan(&[
        "sample",
        "triangulations",
        "--vertices",
        "40",
        "--count",
        "20",
        "--seed",
        "78",
    ]);
    assert_ne!(other.stdout, b.stdout);
}

#[test]
fn sampling_from_replayed_bits() {
    // 0x4 = 0100: the first three bits draw code 2.
    let out = stdout(&["sample", "dyck", "--n", "3", "--bits", "4", "--stats"]);
    assert_eq!(
        out,
        "{\"bits_consumed\":3,\"code\":\"2\",\"n\":3,\"path_length\":4,\"word\":\"UUDDUD\"}\n"
    );
    let exhausted = catalan(&["sample", "dyck", "--n", "3", "--bits", "f"]);
    assert_eq!(exhausted.status.code(), Some(1));
}

#[test]
fn table_export_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    stdout(&["table", "--n", "8", "--out", csv.to_str().unwrap()]);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("8,1430,1001,572,275,110,35,8,1,0"));

    let json = stdout(&["table", "--n", "2", "--format", "json"]);
    assert_eq!(json, "[[\"1\"],[\"1\",\"0\"],[\"2\",\"1\",\"0\"]]\n");

    let cache = dir.path().join("cache");
    let with_cache = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_catalan"))
            .args(args)
            .env("CATALAN_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = with_cache(&["count", "dyck", "--n", "30"]);
    assert!(first.status.success());
    let cached = cache.join("bc-table.json");
    let written = fs::read_to_string(&cached).unwrap();
    let reloaded = catalan_from_json(&written);
    assert_eq!(
        reloaded,
        stdout(&["table", "--n", "30", "--format", "json"]).trim()
    );
    // Smaller requests reuse the larger cached table.
    let second = with_cache(&["count", "dyck", "--n", "12"]);
    assert_eq!(String::from_utf8(second.stdout).unwrap(), "208012\n");
    assert_eq!(fs::read_to_string(&cached).unwrap(), written);
    let sliced = with_cache(&["table", "--n", "2", "--format", "json"]);
    assert_eq!(String::from_utf8(sliced.stdout).unwrap(), json);

    // A tampered cache is an internal invariant failure.
    fs::write(&cached, written.replacen("\"42\"", "\"41\"", 1)).unwrap();
    assert_eq!(
        with_cache(&["count", "dyck", "--n", "5"]).status.code(),
        Some(2)
    );
}

fn catalan_from_json(text: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    serde_json::to_string(&v).unwrap()
}

#[test]
fn enumerate_emits_json_lines() {
    let out = stdout(&["enumerate", "triangulations", "--vertices", "6"]);
    assert_eq!(out.lines().count(), 14);
    let avoiding = stdout(&[
        "enumerate",
        "triangulations",
        "--vertices",
        "8",
        "--missing",
        "1",
    ]);
    assert_eq!(avoiding.lines().count(), 90);
    let words = stdout(&["enumerate", "dyck", "--n", "3"]);
    assert_eq!(words.lines().next().unwrap(), r#"{"n":3,"word":"UDUDUD"}"#);
    assert_eq!(
        catalan(&["enumerate", "dyck", "--n", "15"]).status.code(),
        Some(1)
    );
}

#[test]
fn validation_errors_exit_one_with_one_line() {
    for args in [
        &["count", "triangulations", "--vertices", "2"][..],
        &["count", "dyck"][..],
        &["unrank", "dyck", "--n", "3", "--code", "5"][..],
        &["unrank", "dyck", "--n", "3", "--code-bits", "01"][..],
        &["rank", "dyck", "--word", "UDD"][..],
        &[
            "rank",
            "triangulations",
            "--vertices",
            "5",
            "--diagonals",
            "[[1,3],[2,4]]",
        ][..],
        &[
            "sample",
            "triangulations",
            "--vertices",
            "6",
            "--missing",
            "4",
        ][..],
        &["table", "--n", "2001"][..],
        &["bogus"][..],
    ] {
        let out = catalan(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let err = String::from_utf8(
        catalan(&[
            "sample",
            "triangulations",
            "--vertices",
            "6",
            "--missing",
            "4",
        ])
        .stderr,
    )
    .unwrap();
    assert!(err.contains("empty structure class"));
}

#[test]
fn selftest_and_gf() {
    let out = stdout(&["selftest", "--nmax", "40", "--degree", "6"]);
    assert!(out.ends_with("selftest passed\n"), "{out}");
    assert!(!out.contains("FAIL"));
    assert_eq!(
        stdout(&["verify-gf", "--degree", "8"]),
        "degree 8: 81 coefficients, 0 mismatches\n"
    );
}
