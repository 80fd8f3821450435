//! End-to-end checks of the binary (exit codes, output shape, idempotent
//! corpus generation) and of the verify runner on the remaining builtin
//! corpora. Binary invocations use the path cargo exports for this test
//! target; temp directories are per-process and cleaned up at the end.

use std::path::PathBuf;
use std::process::Command;

use pcoh_cli::record::Options;
use pcoh_cli::verify::{report_csv, report_json, run_verify, Source, VerifyConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pcoh"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pcoh-cli-test-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

// === verify runner on the odd corpora ===

#[test]
fn builtin_odd_corpora_verify_clean() {
    for p in [3u32, 5] {
        let cfg = VerifyConfig {
            source: Source::Builtin(p),
            opts: Options::default(),
            threads: 2,
        };
        let report = run_verify(&cfg).expect("run completes");
        assert!(!report.failed(), "builtin p={p} verification failed");
        let csv = report_csv(&report);
        assert!(csv.starts_with("name,p,order_exp,check,verdict,witness\n"));
        assert!(!csv.contains(",fail,"), "p={p} csv reports a failure");
    }
}

#[test]
fn family_constancy_check_skips_on_odd_corpus() {
    let cfg =
        VerifyConfig { source: Source::Builtin(3), opts: Options::default(), threads: 1 };
    let report = run_verify(&cfg).expect("run completes");
    let fam = report.corpus_checks.iter().find(|c| c.id == "FAMILY-CONST").unwrap();
    assert_eq!(fam.verdict.as_str(), "skipped");
}

#[test]
fn report_json_is_stable_across_runs() {
    let cfg =
        VerifyConfig { source: Source::Builtin(3), opts: Options::default(), threads: 3 };
    let a = report_json(&run_verify(&cfg).unwrap());
    let b = report_json(&run_verify(&cfg).unwrap());
    assert_eq!(a, b);
    assert!(a.ends_with('\n'));
}

// === binary end to end ===

#[test]
fn generate_analyze_and_exit_codes() {
    let dir = scratch("gen");
    run_ok(bin().args(["corpus", "generate", "--p", "2", "--out"]).arg(&dir));
    let manifest = std::fs::read_to_string(dir.join("manifest.json")).expect("manifest exists");
    assert!(manifest.contains("\"Q8.json\""));

    // Regenerating must be byte-identical.
    let before = std::fs::read_to_string(dir.join("Q8.json")).unwrap();
    run_ok(bin().args(["corpus", "generate", "--p", "2", "--out"]).arg(&dir));
    let after = std::fs::read_to_string(dir.join("Q8.json")).unwrap();
    assert_eq!(before, after);

    let stdout = run_ok(bin().arg("analyze").arg(dir.join("Q8.json")));
    assert!(stdout.contains("\"name\": \"Q8\""));
    assert!(stdout.contains("\"verdict\": \"pass\""));

    // Missing file is an input error, not a check failure.
    let missing = bin().arg("analyze").arg(dir.join("nope.json")).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));

    // A malformed group file in a directory isolates to one errored
    // record and turns the run into a check failure.
    std::fs::write(
        dir.join("broken.json"),
        "{\"name\":\"broken\",\"p\":2,\"ngens\":1,\"power\":[[1]],\"comm\":[]}\n",
    )
    .unwrap();
    let out = bin().args(["verify", "--dir"]).arg(&dir).args(["--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains("broken,0,0,TOWER-THM4,skipped,"));
    assert!(csv.lines().filter(|l| l.starts_with("Q8,")).count() == 7);

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn tower_output_names_subgroup_generators() {
    let dir = scratch("tower");
    run_ok(bin().args(["corpus", "generate", "--p", "2", "--out"]).arg(&dir));
    let stdout = run_ok(bin().arg("tower").arg(dir.join("C8.json")));
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("tower json parses");
    assert_eq!(v["index_exp"], 3);
    assert_eq!(v["bound_exp"], 3);
    assert_eq!(v["n"]["order"], 1);
    assert!(v["v"]["gens"].as_array().is_some_and(|a| !a.is_empty()));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cohomology_output_reports_dims_and_ring_data() {
    let dir = scratch("cohom");
    run_ok(bin().args(["corpus", "generate", "--p", "3", "--out"]).arg(&dir));
    let stdout =
        run_ok(bin().arg("cohomology").arg(dir.join("ES27e3.json")).args(["--max-degree", "4"]));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["dims"].as_array().unwrap().len(), 5);
    assert_eq!(v["h1_dim"], 2);
    assert_eq!(v["powerful_cohom"]["verdict"], false);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bounds_subcommand_is_pure_arithmetic() {
    let stdout = run_ok(bin().args([
        "bounds", "--p", "2", "--r", "2", "--n", "3", "--kmax", "8",
    ]));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["gt_bound"][8], 24310);
    assert_eq!(v["tower_index_bound_exp"], 8);
    assert_eq!(v["page_product"], v["gt_bound"]);
}
