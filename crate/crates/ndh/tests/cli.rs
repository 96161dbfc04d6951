//! Black-box tests of the `ndh` binary: exit codes, document round trips,
//! cache behaviour, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ndh");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("NDH_CACHE_PATH")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("NDH_CACHE_PATH")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_cover_the_four_outcomes() {
    assert_eq!(code(&run(&["classify", "41"])), 0);
    assert_eq!(code(&run(&["classify", "40"])), 0);
    // One lone modulus cannot close 41, so it stays undecided.
    assert_eq!(code(&run(&["classify", "41", "--pool", "7"])), 2);
    assert_eq!(code(&run(&["represent", "41", "--pool", "7"])), 2);
    assert_eq!(code(&run(&["--no-such-flag"])), 1);
    assert_eq!(code(&run(&["classify"])), 1);
    assert_eq!(code(&run(&["classify", "banana"])), 1);
    assert_eq!(code(&run(&["abc", "--extend", "bogus"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn emitted_documents_verify_in_a_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("41.json");
    let cert_s = cert.to_str().unwrap();

    let out = run(&["classify", "41", "--emit-cert", cert_s]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("41: ndh"));

    let out = run(&["verify", cert_s]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("OK"));

    // Semantic tampering: same shape, wrong arithmetic.
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, text.replace("\"modulus\": \"8\"", "\"modulus\": \"13\"")).unwrap();
    assert_eq!(code(&run(&["verify", tampered.to_str().unwrap()])), 3);

    // Structural damage: not a document at all.
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&run(&["verify", broken.to_str().unwrap()])), 1);

    assert_eq!(code(&run(&["verify", dir.path().join("absent.json").to_str().unwrap()])), 1);
}

#[test]
fn representable_documents_roundtrip_too() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("17.json");
    let cert_s = cert.to_str().unwrap();
    assert_eq!(code(&run(&["classify", "17", "--emit-cert", cert_s])), 0);
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"18\""), "document should list the 18 - 1 pair");
    assert_eq!(code(&run(&["verify", cert_s])), 0);
}

#[test]
fn scans_are_deterministic_across_runs_and_thread_counts() {
    let a = run(&["scan", "--lo", "1", "--hi", "120", "--format", "csv"]);
    let b = run(&["scan", "--lo", "1", "--hi", "120", "--format", "csv"]);
    let c = run(&["scan", "--lo", "1", "--hi", "120", "--format", "csv", "--jobs", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let json = run(&["scan", "--lo", "40", "--hi", "44", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1]["n"], "41");
    assert_eq!(rows[1]["status"], "ndh");
}

#[test]
fn scan_out_flag_writes_the_table_to_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&["scan", "--lo", "1", "--hi", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,status,"));
    assert!(text.contains("41,ndh"));
}

#[test]
fn cache_flag_persists_and_reuses_documents() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let cache_s = cache.to_str().unwrap();

    let first = run(&["classify", "41", "--cache", cache_s]);
    assert_eq!(code(&first), 0);
    let saved = std::fs::read_to_string(&cache).unwrap();
    assert!(saved.contains("\"41\""));

    let second = run(&["classify", "41", "--cache", cache_s]);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout);
    // A pure cache hit does not rewrite the file.
    assert_eq!(saved, std::fs::read_to_string(&cache).unwrap());

    // A different bound is a different configuration, hence a new entry.
    assert_eq!(code(&run(&["classify", "41", "--cache", cache_s, "--bound", "128"])), 0);
    let grown = std::fs::read_to_string(&cache).unwrap();
    assert!(grown.len() > saved.len());
}

#[test]
fn cache_env_var_is_honoured_and_beaten_by_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let env_cache = dir.path().join("env.json");
    let flag_cache = dir.path().join("flag.json");

    let out = run_with_env(&["classify", "43"], "NDH_CACHE_PATH", &env_cache);
    assert_eq!(code(&out), 0);
    assert!(env_cache.exists(), "env-pointed cache should be created");

    let out = run_with_env(
        &["classify", "59", "--cache", flag_cache.to_str().unwrap()],
        "NDH_CACHE_PATH",
        &env_cache,
    );
    assert_eq!(code(&out), 0);
    let env_text = std::fs::read_to_string(&env_cache).unwrap();
    assert!(!env_text.contains("\"59\""), "flag should win over the env var");
    assert!(std::fs::read_to_string(&flag_cache).unwrap().contains("\"59\""));
}

#[test]
fn config_files_feed_the_pipeline_and_flags_override_them() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ndh.conf");
    std::fs::write(&cfg, "modulus_pool = 7\nexponent_bound = 48\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();

    assert_eq!(code(&run(&["classify", "41", "--config", cfg_s])), 2);
    assert_eq!(
        code(&run(&["classify", "41", "--config", cfg_s, "--pool", "8,24,120,240,16,9,5,3"])),
        0
    );

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "modulus_pool = banana\n").unwrap();
    assert_eq!(code(&run(&["classify", "41", "--config", bad.to_str().unwrap()])), 1);
}

#[test]
fn chain_verification_covers_shipped_and_external_chains() {
    assert_eq!(code(&run(&["chain-verify"])), 0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");
    let text = ndh::document::encode_chain(&ndh::cert::chain::fixture_five());
    std::fs::write(&path, &text).unwrap();
    assert_eq!(code(&run(&["chain-verify", path.to_str().unwrap()])), 0);

    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, text.replace("\"order\": \"18\"", "\"order\": \"19\"")).unwrap();
    assert_eq!(code(&run(&["chain-verify", tampered.to_str().unwrap()])), 3);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(code(&run(&["chain-verify", broken.to_str().unwrap()])), 1);
}

#[test]
fn human_facing_commands_print_what_they_promise() {
    let out = run(&["represent", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("5 = 6 - 1"));
    assert!(text.contains("5 = 32 - 27"));
    assert!(text.contains("complete (certified)"));

    let out = run(&["enumerate", "--limit", "12", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 9, "header plus eight values");

    let out = run(&["families", "fermat"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("65537,ndh"));

    let out = run(&["families", "sums", "--family", "mersenne"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3,3,6,true"));
}
