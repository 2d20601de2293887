use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ciprng::graphgen::IterationGraph;
use ciprng::BooleanFunction;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

fn ciprng(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ciprng"))
        .args(args)
        .env_remove("CIPRNG_SEED")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = ciprng(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn trace_follows_the_strategy() {
    let b = fixture("b");
    assert_eq!(
        ok(&["trace", "--fn", s(&b), "--x0", "4", "--strategy", "2,4,2,3"]),
        "4,0,0,4,6\n"
    );
    assert_eq!(
        ok(&["trace", "--fn", s(&b), "--x0", "7", "--strategy", "1,1"]),
        "7,15,7\n"
    );
    let bad = ciprng(&["trace", "--fn", s(&b), "--x0", "4", "--strategy", "5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn analyze_reports_sufficient_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&[
        "analyze",
        "--fn",
        s(&fixture("fig1")),
        "--out",
        s(dir.path()),
    ]);
    assert!(stdout.contains("sufficient iterations 14"), "{stdout}");
    let profile: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("profile.json")).unwrap())
            .unwrap();
    assert_eq!(profile["sufficient_iterations"], 14);
    let csv = fs::read_to_string(dir.path().join("deviation.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1001);
    assert!(dir.path().join("manifest.json").exists());

    let worst = ok(&[
        "analyze",
        "--fn",
        s(&fixture("neg2")),
        "--worst-case",
        "--tmax",
        "50",
        "--out",
        s(dir.path()),
    ]);
    assert!(worst.contains("periodic with period 2"), "{worst}");
}

#[test]
fn gen_fn_writes_connected_functions() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "gen-fn",
        "--n",
        "4",
        "--rate",
        "0.3",
        "--count",
        "4",
        "--seed",
        "17",
        "--verify",
        "--out",
        s(dir.path()),
    ]);
    let entries: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("generated.json")).unwrap())
            .unwrap();
    assert_eq!(entries.len(), 4);
    for entry in &entries {
        let f = BooleanFunction::load(dir.path().join(entry["file"].as_str().unwrap())).unwrap();
        assert!(IterationGraph::from_function(&f).is_strongly_connected());
        assert_eq!(entry["removed"], 20);
    }

    let dedup = tempfile::tempdir().unwrap();
    ok(&[
        "gen-fn",
        "--rate",
        "0.3",
        "--count",
        "4",
        "--seed",
        "17",
        "--dedup",
        "--out",
        s(dedup.path()),
    ]);
    let kept: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dedup.path().join("generated.json")).unwrap())
            .unwrap();
    assert!(!kept.is_empty() && kept.len() <= 4);
}

#[test]
fn invalid_parameters_exit_with_usage_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = ciprng(&[
        "gen-fn",
        "--rate",
        "1.5",
        "--seed",
        "1",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("target rate"));
    let out = ciprng(&[
        "gen-fn",
        "--rate",
        "0.1",
        "--seed",
        "0",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    // identity is not strongly connected
    let id = dir.path().join("id.json");
    fs::write(&id, r#"{"n": 2, "images": [0, 1, 2, 3]}"#).unwrap();
    let out = ciprng(&["generate", "--fn", s(&id), "--b", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_names_the_path() {
    let out = ciprng(&[
        "trace",
        "--fn",
        "/no/such/function.json",
        "--x0",
        "0",
        "--strategy",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/function.json"));
}

#[test]
fn generate_formats_and_seed_sources() {
    let d = fixture("d");
    let bits = ok(&[
        "generate",
        "--fn",
        s(&d),
        "--b",
        "22",
        "--seed",
        "9",
        "--rounds",
        "16",
    ]);
    assert_eq!(bits.trim_end().len(), 64);
    assert!(bits.trim_end().chars().all(|c| c == '0' || c == '1'));

    let ints = ok(&[
        "generate",
        "--fn",
        s(&d),
        "--b",
        "22",
        "--seed",
        "9",
        "--rounds",
        "16",
        "--format",
        "ints",
    ]);
    let spelled: String = ints
        .lines()
        .map(|v| format!("{:04b}", v.parse::<u32>().unwrap()))
        .collect();
    assert_eq!(spelled, bits.trim_end());

    let env = Command::new(env!("CARGO_BIN_EXE_ciprng"))
        .args(["generate", "--fn", s(&d), "--b", "22", "--rounds", "16"])
        .env("CIPRNG_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), bits);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.bin");
    ok(&[
        "generate",
        "--fn",
        s(&d),
        "--b",
        "22",
        "--seed",
        "9",
        "--rounds",
        "16",
        "--format",
        "bytes",
        "--out",
        s(&out),
    ]);
    assert_eq!(fs::read(&out).unwrap().len(), 8);
    assert!(dir.path().join("out.bin.manifest.json").exists());

    let legacy = ok(&[
        "generate",
        "--fn",
        s(&fixture("neg4")),
        "--generator",
        "legacy",
        "--strict-paper",
        "--seed",
        "3",
        "--rounds",
        "8",
    ]);
    assert_eq!(legacy.trim_end().len(), 32);
    let misuse = ciprng(&[
        "generate",
        "--fn",
        s(&d),
        "--b",
        "22",
        "--seed",
        "9",
        "--strict-paper",
    ]);
    assert!(!misuse.status.success());
}

fn assert_same_artifacts(a: &Path, b: &Path, names: &[&str]) {
    for name in names {
        let (x, y) = (
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
        );
        assert!(x == y, "{name} differs between runs");
    }
}

#[test]
fn test_command_writes_report_and_repartition() {
    let dir = tempfile::tempdir().unwrap();
    let external = dir.path().join("external.json");
    fs::write(
        &external,
        r#"{"linear_complexity": 0.43727, "random_excursions": null}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("run");
    let stdout = ok(&[
        "test",
        "--fn",
        s(&fixture("f")),
        "--b",
        "14",
        "--seed",
        "5",
        "--streams",
        "60",
        "--bits",
        "4096",
        "--serial-m",
        "5",
        "--apen-m",
        "5",
        "--external",
        s(&external),
        "--out",
        s(&out_dir),
    ]);
    assert!(stdout.contains("Frequency (Monobit) Test"));
    assert!(stdout.contains("Computational time"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[0]["test"], "monobit");
    assert_eq!(rows[14]["source"], "external");
    assert!(report.get("elapsed").is_none());
    let csv = fs::read_to_string(out_dir.join("repartition.csv")).unwrap();
    assert_eq!(csv.lines().count(), 257);
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 5119);

    let again = dir.path().join("again");
    ok(&[
        "rerun",
        s(&out_dir.join("manifest.json")),
        "--out",
        s(&again),
    ]);
    assert_same_artifacts(
        &out_dir,
        &again,
        &["report.json", "report.txt", "repartition.csv"],
    );
}

#[test]
fn pipeline_chains_stages_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let stdout = ok(&[
        "pipeline",
        "--n",
        "4",
        "--rate",
        "0.5",
        "--streams",
        "55",
        "--bits",
        "8192",
        "--seed",
        "42",
        "--out",
        s(&first),
    ]);
    assert!(stdout.contains("sufficient iterations"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(first.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"]["subcommand"], "pipeline");
    assert_eq!(manifest["command"]["parameters"]["seed"], 42);
    let b = manifest["derived"]["b"].as_u64().unwrap();
    let profile: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(first.join("profile.json")).unwrap()).unwrap();
    assert_eq!(profile["sufficient_iterations"].as_u64().unwrap(), b);
    let f = BooleanFunction::load(first.join("function.json")).unwrap();
    assert!(IterationGraph::from_function(&f).is_strongly_connected());

    let second = dir.path().join("second");
    ok(&[
        "rerun",
        s(&first.join("manifest.json")),
        "--out",
        s(&second),
    ]);
    assert_same_artifacts(
        &first,
        &second,
        &[
            "function.json",
            "profile.json",
            "deviation.csv",
            "report.json",
            "report.txt",
            "repartition.csv",
            "pipeline.json",
        ],
    );
}

#[test]
fn generate_manifest_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a").join("stream.txt");
    ok(&[
        "generate",
        "--fn",
        s(&fixture("b")),
        "--b",
        "105",
        "--seed",
        "77",
        "--rounds",
        "500",
        "--out",
        s(&out),
    ]);
    let rerun = dir.path().join("b");
    ok(&[
        "rerun",
        s(&dir.path().join("a").join("stream.txt.manifest.json")),
        "--out",
        s(&rerun),
    ]);
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(rerun.join("stream.txt")).unwrap()
    );
}
