//! End-to-end runs of the compiled binary against the examples corpus:
//! golden reports, the exit-code contract, determinism, and file output.

use std::path::Path;
use std::process::{Command, Output};

fn eigencone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigencone"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn assert_golden(args: &[&str], want_code: i32, golden: &str) {
    let out = eigencone(args);
    assert_eq!(out.status.code(), Some(want_code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let got = stdout_of(&out);
    assert_eq!(got, golden, "report for {args:?} drifted from the golden file");
}

#[test]
fn golden_dominate_exact() {
    assert_golden(
        &["dominate", "examples/dominat-exactly.json", "--exact"],
        0,
        include_str!("golden/dominate-exact.json"),
    );
}

#[test]
fn golden_dominate_refuted() {
    assert_golden(
        &["dominate", "examples/identity-2x2.json"],
        1,
        include_str!("golden/dominate-refuted.json"),
    );
}

#[test]
fn golden_localize_single() {
    assert_golden(
        &["localize", "examples/mild-triple.json"],
        0,
        include_str!("golden/localize-single.json"),
    );
}

#[test]
fn golden_disks_blocks() {
    assert_golden(
        &["disks", "examples/weak-coupling-4x4.json", "--partition", "2,2"],
        0,
        include_str!("golden/disks-blocks.json"),
    );
}

#[test]
fn exit_code_contract() {
    // 3: bounds too coarse to decide, refutation fails on a truly dominating matrix
    let out = eigencone(&["dominate", "examples/dominat-exactly.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).contains("\"status\": \"undecided\""));

    // 2: missing file, bad scalar, malformed shift, unknown flag
    assert_eq!(eigencone(&["dominate", "examples/no-such.json"]).status.code(), Some(2));
    assert_eq!(
        eigencone(&["dominate", "examples/dominat-exactly.json", "--r", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        eigencone(&["localize", "examples/weak-coupling-4x4.json", "--mode", "block", "--shift", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eigencone(&["disks", "examples/mild-triple.json", "--nope"]).status.code(), Some(2));

    // 0 and 1 are covered by the golden runs above
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["localize", "examples/crowded-triple.json", "--optimize-r"],
        vec!["chain", "examples/iteration-factor.json", "examples/iteration-factor.json"],
        vec!["disks", "examples/coupled-triple.json"],
    ] {
        let a = eigencone(&args);
        let b = eigencone(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?} is not deterministic");
    }
}

#[test]
fn chain_composes_rates() {
    let out = eigencone(&[
        "chain",
        "examples/iteration-factor.json",
        "examples/iteration-factor.json",
        "examples/iteration-factor.json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(v["certified"]["composed"]["co"]["rational"], "132651/1000000");
    assert_eq!(v["certified"]["composed"]["ex"]["rational"], "3307949/1000000");
    assert_eq!(v["certified"]["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn file_output_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let svg_path = dir.path().join("figure.svg");
    let out = eigencone(&[
        "localize",
        "examples/mild-triple.json",
        "--json",
        json_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty(), "report went to the file, not stdout");

    let report = std::fs::read_to_string(&json_path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["certified"]["annulus_inner"]["rational"], "1/5");

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("</svg>"));
    assert!(svg.contains("uncertified eigenvalue approximation"));
}

#[test]
fn timing_is_opt_in() {
    let plain = eigencone(&["dominate", "examples/dominat-ineq.json"]);
    let timed = eigencone(&["dominate", "examples/dominat-ineq.json", "--timing"]);
    let p: serde_json::Value = serde_json::from_str(stdout_of(&plain)).unwrap();
    let t: serde_json::Value = serde_json::from_str(stdout_of(&timed)).unwrap();
    assert!(p["timing_ms"].is_null());
    assert!(t["timing_ms"].is_u64());
}

#[test]
fn gersch_mode_certifies_when_cones_cannot() {
    let out = eigencone(&["localize", "examples/coupled-triple.json", "--mode", "gersch"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(v["certified"]["mode"], "gersch");
    assert_eq!(v["certified"]["dominating"], true);
    assert_eq!(v["certified"]["eps_star"]["rational"], "49/50");

    let single = eigencone(&["localize", "examples/coupled-triple.json", "--mode", "block", "--k", "1"]);
    assert_eq!(single.status.code(), Some(3), "cone route stays undecided");
}

/// Every corpus file parses and drives at least one command to a
/// certified or certified-negative outcome without crashing.
#[test]
fn corpus_smoke() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        seen += 1;
        let arg = format!("examples/{}", path.file_name().unwrap().to_str().unwrap());
        let out = eigencone(&["disks", &arg]);
        assert_eq!(out.status.code(), Some(0), "disks fails on {arg}");
        let out = eigencone(&["dominate", &arg]);
        assert!(
            matches!(out.status.code(), Some(0 | 1 | 3)),
            "dominate crashed on {arg}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(seen >= 9, "examples corpus shrank to {seen} files");
}
