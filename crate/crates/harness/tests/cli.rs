use std::process::{Command, Output};

fn fsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsq"))
        .args(args)
        .output()
        .expect("fsq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn info_reports_order_and_series() {
    let o = fsq(&["info", "symmetric(4)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order: 24"));
    assert!(out.contains("subgroups: 30 in 11 classes"));
    assert!(out.contains("derived series: 24 > 12 > 4 > 1"));
}

#[test]
fn info_resolves_catalog_names() {
    let o = fsq(&["info", "SL(2,3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("O_2: order 8"));
}

#[test]
fn check_prints_verdict_and_witness() {
    let o = fsq(&[
        "check",
        "s-perm",
        "--group",
        "symmetric(3)",
        "--subgroup",
        "(1 2)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("s-permutable: false"));
    assert!(out.contains("non-permuting sylow: order 2"));

    let o = fsq(&[
        "check",
        "fsq",
        "--group",
        "symmetric(4)",
        "--subgroup",
        "(1 2)(3 4);(1 3)(2 4)",
        "--formation",
        "N",
    ]);
    assert!(stdout(&o).contains("quasinormal: true"));

    let o = fsq(&[
        "check",
        "supplement",
        "--group",
        "symmetric(3)",
        "--subgroup",
        "",
        "--prime",
        "2",
    ]);
    assert!(stdout(&o).contains("has supplement: true"));
}

#[test]
fn exit_codes() {
    assert_eq!(fsq(&["info", "nonsense(3)"]).status.code(), Some(2));
    assert_eq!(fsq(&["info", "cyclic(65)"]).status.code(), Some(3));
    assert_eq!(fsq(&["verify", "--theorems", "X9"]).status.code(), Some(2));
    assert_eq!(fsq(&["frobnicate"]).status.code(), Some(2));
    let o = fsq(&[
        "check",
        "s-perm",
        "--group",
        "symmetric(3)",
        "--subgroup",
        "(1 2 3 4)",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_a_report() {
    let dir = std::env::temp_dir().join(format!("fsq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("small.grp");
    std::fs::write(
        &spec,
        "group S3\ndegree 3\ngen (1 2 3)\ngen (1 2)\norder 6\nend\n",
    )
    .unwrap();
    let report = dir.join("report.json");
    let cache = dir.join("cache");
    let o = fsq(&[
        "verify",
        "--catalog",
        spec.to_str().unwrap(),
        "--theorems",
        "L3.1",
        "--jobs",
        "2",
        "--report",
        report.to_str().unwrap(),
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["cases"].as_array().unwrap().len(), 1);
    assert_eq!(json["cases"][0]["verdict"], "pass");
    assert!(json["timing"]["total_ms"].is_u64());

    let stats = stdout(&fsq(&["cache", "stats", "--dir", cache.to_str().unwrap()]));
    assert!(stats.starts_with("1 entries"), "{stats}");
    let cleared = stdout(&fsq(&["cache", "clear", "--dir", cache.to_str().unwrap()]));
    assert!(cleared.contains("removed 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_catalog_is_a_parse_error() {
    let dir = std::env::temp_dir().join(format!("fsq-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("bad.grp");
    std::fs::write(
        &spec,
        "group X\ndegree 4\ngen (1 2 3 4)\ngen (1 2)\norder 25\nend\n",
    )
    .unwrap();
    let o = fsq(&["verify", "--catalog", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected order 25"));
    std::fs::remove_dir_all(&dir).unwrap();
}
