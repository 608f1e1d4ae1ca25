//! End-to-end checks of the command-line surface: every fixture document in
//! the repository parses and analyses, machine output round-trips
//! byte-identically, and exit codes follow the contract (0 success, 1 input
//! errors, 2 resource limits).

use std::path::PathBuf;
use std::process::Command as Process;
use std::time::Instant;

use torusq_cli::report::{AnalyzeReport, Report};
use torusq_cli::{document, execute, Command};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    files.sort();
    assert!(!files.is_empty());
    files
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_torusq")
}

#[test]
fn every_fixture_parses_and_analyzes_quickly() {
    for file in fixture_files() {
        let start = Instant::now();
        let report = execute(&Command::Analyze {
            file: file.clone(),
            tier: None,
            json: true,
            cap: None,
        })
        .unwrap_or_else(|e| panic!("{}: {e}", file.display()));
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 5.0,
            "{} took {elapsed:?}",
            file.display()
        );
        match report {
            Report::Analyze(r) => assert_eq!(r.tier, "analytic"),
            _ => panic!("analyze must produce an analyze report"),
        }
    }
}

#[test]
fn fixture_documents_match_builtin_constructors() {
    use torusq_core::fixtures;
    let built = [
        ("kummer.json", fixtures::kummer()),
        ("eisenstein.json", fixtures::eisenstein()),
        ("gauss.json", fixtures::gauss()),
        ("hyperelliptic.json", fixtures::hyperelliptic()),
        ("beauville_s3.json", fixtures::beauville_s3()),
        ("quasi_reflection.json", fixtures::quasi_reflection()),
        ("kummer_x_elliptic.json", fixtures::kummer_times_elliptic()),
    ];
    for (file, expected) in built {
        let text = std::fs::read_to_string(fixtures_dir().join(file)).unwrap();
        let parsed = document::parse_action(&text).unwrap();
        assert_eq!(parsed.half_dim, expected.half_dim, "{file}");
        assert_eq!(parsed.generators.len(), expected.generators.len(), "{file}");
        for (a, b) in parsed.generators.iter().zip(&expected.generators) {
            assert_eq!(a, b, "{file}");
        }
        let (p, q) = (parsed.period.unwrap(), expected.period.unwrap());
        assert_eq!(p.rows(), q.rows(), "{file}");
        for r in 0..p.rows() {
            for c in 0..p.cols() {
                assert_eq!(p.get(r, c), q.get(r, c), "{file} period ({r},{c})");
            }
        }
    }
}

#[test]
fn analyze_json_round_trips_byte_identically() {
    for file in fixture_files() {
        let report = execute(&Command::Analyze {
            file: file.clone(),
            tier: None,
            json: true,
            cap: None,
        })
        .unwrap();
        let rendered = report.to_json();
        let reparsed: AnalyzeReport = serde_json::from_str(&rendered).unwrap();
        let re_rendered = Report::Analyze(reparsed).to_json();
        assert_eq!(rendered, re_rendered, "{}", file.display());
    }
}

#[test]
fn text_render_contains_every_machine_field() {
    let report = execute(&Command::Analyze {
        file: fixtures_dir().join("eisenstein.json"),
        tier: None,
        json: false,
        cap: None,
    })
    .unwrap();
    let text = report.to_text();
    let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    fn keys(prefix: &str, v: &serde_json::Value, out: &mut Vec<String>) {
        if let serde_json::Value::Object(map) = v {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                keys(&key, val, out);
                out.push(key);
            }
        }
    }
    let mut all = Vec::new();
    keys("", &value, &mut all);
    for key in all {
        assert!(text.contains(key.split('.').next_back().unwrap()), "missing {key}");
    }
}

#[test]
fn analyze_kummer_via_binary() {
    let out = Process::new(binary())
        .args(["analyze", "--json"])
        .arg(fixtures_dir().join("kummer.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["q_prime"], 0);
    assert_eq!(doc["kappa1_star"], -2);
    assert_eq!(doc["nu1_star"], -2);
    assert_eq!(doc["max_isolated_fixpoints"], "16");
}

#[test]
fn exit_codes_follow_the_contract() {
    // missing file: input error
    let out = Process::new(binary())
        .args(["analyze", "/nonexistent/action.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // invalid document: validation error
    let dir = std::env::temp_dir();
    let bad = dir.join("torusq-bad-doc.json");
    std::fs::write(&bad, r#"{"rank": 3, "generators": []}"#).unwrap();
    let out = Process::new(binary()).arg("analyze").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // cap exhaustion: resource error
    let out = Process::new(binary())
        .args(["analyze", "--cap", "2"])
        .arg(fixtures_dir().join("beauville_s3.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // OPEN results still exit 0
    let out = Process::new(binary())
        .args(["surface", "--kappa", "1", "--genus", "1", "--singular-fibers", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("OPEN(-1)"), "{text}");

    // general type is refused as input
    let out = Process::new(binary())
        .args(["surface", "--kappa", "2", "--genus", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cap_env_variable_is_honoured() {
    let out = Process::new(binary())
        .arg("analyze")
        .arg(fixtures_dir().join("beauville_s3.json"))
        .env(torusq_cli::CAP_ENV_VAR, "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // the explicit flag wins over the environment
    let out = Process::new(binary())
        .args(["analyze", "--cap", "100"])
        .arg(fixtures_dir().join("beauville_s3.json"))
        .env(torusq_cli::CAP_ENV_VAR, "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lattice_tier_flag_suppresses_analytic_fields() {
    let report = execute(&Command::Analyze {
        file: fixtures_dir().join("gauss.json"),
        tier: Some("lattice".into()),
        json: true,
        cap: None,
    })
    .unwrap();
    match report {
        Report::Analyze(r) => {
            assert_eq!(r.tier, "lattice");
            assert!(r.hodge.is_none());
            assert!(r.canonical.is_none());
            // lattice-tier numbers still present
            assert_eq!(r.q_prime, 0);
            assert_eq!(r.kappa1_star, -3);
        }
        _ => panic!(),
    }
}

#[test]
fn verify_cyclic_binary_output() {
    let out = Process::new(binary())
        .args([
            "verify-cyclic",
            "--order",
            "3",
            "--weights",
            "1,1",
            "--max-degree",
            "6",
            "--pole",
            "0",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all_agree"], true);
    for row in doc["rows"].as_array().unwrap().iter().skip(1) {
        assert_eq!(row["dimension"], 0);
    }
}
