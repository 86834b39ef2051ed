//! Runs the `tenfold` binary on the inputs in `tests/data` and compares its
//! output with `tests/golden`. Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    code: i32,
}

const CASES: &[Case] = &[
    Case {
        name: "classify_d",
        args: &["classify", "class_d.json"],
        code: 0,
    },
    Case {
        name: "classify_bdi",
        args: &["classify", "class_bdi.json"],
        code: 0,
    },
    Case {
        name: "classify_a_fock",
        args: &["classify", "class_a_fock.json"],
        code: 0,
    },
    Case {
        name: "classify_d_text",
        args: &["classify", "class_d.json", "--format", "text"],
        code: 0,
    },
    Case {
        name: "malformed_table",
        args: &["classify", "malformed_table.json"],
        code: 2,
    },
    Case {
        name: "symmetry_violation",
        args: &["classify", "symmetry_violation.json"],
        code: 3,
    },
    Case {
        name: "gapless",
        args: &["classify", "gapless.json"],
        code: 4,
    },
    Case {
        name: "compare_flipped",
        args: &["compare", "class_d.json", "class_d_flipped.json"],
        code: 0,
    },
    Case {
        name: "compare_path",
        args: &[
            "compare",
            "class_d_pair.json",
            "class_d_pair_scaled.json",
            "--path",
            "--steps",
            "4",
        ],
        code: 0,
    },
    Case {
        name: "compare_mismatched_action",
        args: &["compare", "class_d.json", "class_bdi.json"],
        code: 2,
    },
    Case {
        name: "dirac_d1",
        args: &["dirac", "dirac_d1.json"],
        code: 0,
    },
    Case {
        name: "dirac_missing_section",
        args: &["dirac", "class_d.json"],
        code: 2,
    },
    Case {
        name: "classify_d_flipped",
        args: &["classify", "class_d_flipped.json"],
        code: 0,
    },
    Case {
        name: "compare_identical_path",
        args: &["compare", "class_d.json", "class_d.json", "--path", "--steps", "2"],
        code: 0,
    },
    Case {
        name: "compare_ai_path",
        args: &[
            "compare",
            "class_ai.json",
            "class_ai_scaled.json",
            "--path",
            "--steps",
            "4",
        ],
        code: 0,
    },
    Case {
        name: "dirac_d0",
        args: &["dirac", "dirac_d0.json"],
        code: 0,
    },
    Case {
        name: "dirac_bad_gamma",
        args: &["dirac", "dirac_bad_gamma.json"],
        code: 3,
    },
];

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

/// Runs the binary from the data directory so paths stay relative.
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tenfold"))
        .args(args)
        .current_dir(dir("data"))
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let (code, stdout, stderr) = run(case.args);
        assert_eq!(code, case.code, "{}: exit code (stderr: {stderr})", case.name);
        let (body, ext) = if code == 0 { (stdout, "out") } else { (stderr, "err") };
        let path = dir("golden").join(format!("{}.{ext}", case.name));
        if update {
            std::fs::write(&path, &body).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != body {
            failures.push(format!("{}:\n--- want\n{want}--- got\n{body}", case.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "compare",
        "class_d_pair.json",
        "class_d_pair_scaled.json",
        "--path",
        "--seed",
        "7",
    ];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn output_flag_writes_the_report() {
    let target = std::env::temp_dir().join(format!("tenfold-golden-{}.json", std::process::id()));
    let t = target.to_str().unwrap();
    let (code, stdout, _) = run(&["classify", "class_d.json", "-o", t]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    std::fs::remove_file(&target).ok();
    let (_, direct, _) = run(&["classify", "class_d.json"]);
    assert_eq!(written, direct);
}

#[test]
fn reports_carry_the_schema_version() {
    let (_, out, _) = run(&["classify", "class_bdi.json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["orbits"][0]["cartan"], "BDI");
    assert_eq!(v["component_count"], 2);
}

#[test]
fn command_line_tolerance_overrides_the_document() {
    // The gap of 1.5 no longer exceeds a tolerance of 2.
    let (code, _, err) = run(&["classify", "class_a_fock.json", "--tol", "2"]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn dirac_at_d0_matches_classify() {
    let (_, d, _) = run(&["dirac", "dirac_d0.json"]);
    let (_, c, _) = run(&["classify", "dirac_d0.json"]);
    let d: serde_json::Value = serde_json::from_str(&d).unwrap();
    let c: serde_json::Value = serde_json::from_str(&c).unwrap();
    assert_eq!(d["total"], c["component_count"]);
}

#[test]
fn equivalent_paths_stay_gapped() {
    let (code, out, err) = run(&["compare", "class_ai.json", "class_ai_scaled.json", "--path"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], true);
    let gaps = v["path"]["gaps"].as_array().unwrap();
    assert_eq!(gaps.len(), 65);
    assert!(gaps.iter().all(|g| g.as_f64().unwrap() > 1e-9));
}
