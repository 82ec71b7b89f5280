//! End-to-end runs of the `relprob` binary.
//!
//! Golden outputs live in `tests/golden`; set `RELPROB_BLESS=1` to rewrite
//! them after an intended change.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_relprob"))
        .args(args)
        .current_dir(tests_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("catalog_uniform", &["catalog", "uniform", "3"]),
    ("catalog_indeterminate", &["catalog", "indeterminate", "2"]),
    ("catalog_certain", &["catalog", "certain", "3", "1"]),
    ("catalog_empty", &["catalog", "empty"]),
    ("catalog_unit", &["catalog", "unit"]),
    ("catalog_geometric", &["catalog", "geometric", "3", "2"]),
    (
        "catalog_geometric_chain",
        &["catalog", "geometric", "3", "0"],
    ),
    ("catalog_binomial", &["catalog", "binomial", "3", "0.5"]),
    (
        "catalog_from_absolute",
        &["catalog", "from-absolute", "0.7", "0.2", "0.1"],
    ),
    ("validate", &["validate", "fixtures/certain_style.json"]),
    ("classify", &["classify", "fixtures/two_zeros.json"]),
    (
        "classify_json",
        &["classify", "fixtures/two_zeros.json", "--json"],
    ),
    ("show", &["show", "fixtures/geometric3.json"]),
    (
        "convert_classed",
        &["convert", "fixtures/geometric3.json", "--to", "classed"],
    ),
    (
        "convert_dense",
        &[
            "convert",
            "fixtures/two_zeros_classed.json",
            "--to",
            "dense",
        ],
    ),
    (
        "query_outcomes",
        &["query", "fixtures/geometric3.json", "--outcomes", "2", "0"],
    ),
    (
        "query_events",
        &["query", "fixtures/abc.json", "--events", "1,2", "0"],
    ),
    (
        "query_empty_event",
        &["query", "fixtures/abc.json", "--events", "", "0,1"],
    ),
    (
        "query_json",
        &[
            "query",
            "fixtures/geometric3.json",
            "--outcomes",
            "0",
            "2",
            "--json",
        ],
    ),
    ("to_absolute", &["to-absolute", "fixtures/geometric3.json"]),
    (
        "compose",
        &[
            "compose",
            "fixtures/ratio3.json",
            "fixtures/uniform2.json",
            "fixtures/uniform2.json",
        ],
    ),
    (
        "bayes",
        &[
            "bayes",
            "fixtures/geometric3.json",
            "fixtures/channel3.json",
        ],
    ),
    (
        "noisy_channel",
        &[
            "noisy-channel",
            "--k",
            "4",
            "--p",
            "0.9",
            "--counts",
            "3,1,0,0",
        ],
    ),
    (
        "limit_family",
        &["limit", "--family", "abs-lose-info", "--steps", "40"],
    ),
    (
        "limit_files",
        &[
            "limit",
            "fixtures/ratio2.json",
            "fixtures/ratio2.json",
            "fixtures/ratio2.json",
        ],
    ),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("RELPROB_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in GOLDEN {
        let r = run(args, None);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        let path = tests_dir().join("golden").join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &r.stdout).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(r.stdout.as_str()) {
            mismatched.push(*name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn document_outputs_close_the_pipeline() {
    for (name, args) in GOLDEN {
        let r = run(args, None);
        if !r.stdout.starts_with('{') || !r.stdout.contains("\"format\"") {
            continue;
        }
        let check = run(&["validate", "-"], Some(&r.stdout));
        assert_eq!(
            (check.code, check.stdout.as_str()),
            (0, "valid\n"),
            "{name}: {}",
            check.stderr
        );
        // canonical text survives a round trip through the parser
        let again = run(&["convert", "-", "--to", "dense"], Some(&r.stdout));
        let dense = run(&["convert", "-", "--to", "dense"], Some(&again.stdout));
        assert_eq!(again.stdout, dense.stdout, "{name}");
        if r.stdout.contains("rpf-dense-v1") {
            assert_eq!(again.stdout, r.stdout, "{name}");
        }
    }
}

#[test]
fn stdin_pipelines() {
    let doc = run(&["catalog", "uniform", "3"], None).stdout;
    assert_eq!(run(&["validate", "-"], Some(&doc)).code, 0);

    let channel = run(
        &[
            "noisy-channel",
            "--k",
            "4",
            "--p",
            "0.9",
            "--counts",
            "3,1,0,0",
        ],
        None,
    )
    .stdout;
    assert_eq!(
        run(&["query", "-", "--outcomes", "0", "1"], Some(&channel)).stdout,
        "1369\n"
    );

    let limit = run(
        &["limit", "--family", "abs-lose-info", "--steps", "40"],
        None,
    )
    .stdout;
    let bc = run(&["query", "-", "--outcomes", "1", "2"], Some(&limit)).stdout;
    assert!(
        (bc.trim().parse::<f64>().unwrap() - 2.0).abs() < 1e-6,
        "{bc}"
    );
    assert_eq!(
        run(&["query", "-", "--outcomes", "0", "1"], Some(&limit)).stdout,
        "inf\n"
    );
    assert_eq!(
        run(&["query", "-", "--outcomes", "1", "0"], Some(&limit)).stdout,
        "0\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let prior = dir.path().join("prior.json");
    std::fs::write(&prior, run(&["catalog", "uniform", "4"], None).stdout).unwrap();
    let posterior = run(&["bayes", prior.to_str().unwrap(), "-"], Some(&channel));
    assert_eq!(posterior.code, 0);
    assert_eq!(
        posterior.stdout, channel,
        "a uniform prior returns the likelihood"
    );
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["validate", "fixtures/uniform2.json"], 0, ""),
        (
            &["validate", "fixtures/bad_inverse.json"],
            1,
            "error[axioms]: inverse at (0, 1)",
        ),
        (
            &["query", "fixtures/bad_inverse.json", "--outcomes", "0", "1"],
            1,
            "error[axioms]",
        ),
        (&["validate", "fixtures/ragged.json"], 2, "error[parse]"),
        (&["validate", "fixtures/missing.json"], 2, "error[usage]"),
        (&["frobnicate"], 2, "unrecognized subcommand"),
        (&["catalog", "uniform", "three"], 2, "invalid value"),
        (&["query", "fixtures/uniform2.json"], 2, "required"),
        (
            &["query", "fixtures/uniform2.json", "--outcomes", "0", "5"],
            1,
            "error[domain]",
        ),
        (
            &[
                "query",
                "fixtures/indeterminate2.json",
                "--events",
                "0",
                "1",
            ],
            1,
            "error[domain]",
        ),
        (
            &["query", "fixtures/uniform2.json", "--events", "0,x", "1"],
            2,
            "error[usage]",
        ),
        (
            &["to-absolute", "fixtures/indeterminate2.json"],
            1,
            "error[domain]",
        ),
        (&["catalog", "certain", "3", "3"], 1, "error[domain]"),
        (&["catalog", "binomial", "3", "1.5"], 1, "error[domain]"),
        (
            &["catalog", "from-absolute", "0.5", "0.6"],
            1,
            "error[domain]",
        ),
        (&["catalog", "geometric", "2", "*"], 1, "error[domain]"),
        (
            &["noisy-channel", "--k", "2", "--p", "1", "--counts", "1,0"],
            1,
            "error[domain]",
        ),
        (
            &["noisy-channel", "--k", "3", "--p", "0.5", "--counts", "1,0"],
            1,
            "error[domain]",
        ),
        (
            &[
                "compose",
                "fixtures/uniform2.json",
                "fixtures/uniform2.json",
            ],
            1,
            "error[domain]",
        ),
        (
            &[
                "compose",
                "fixtures/uniform2.json",
                "fixtures/uniform2.json",
                "fixtures/indeterminate2.json",
            ],
            1,
            "error[domain]",
        ),
        (
            &[
                "bayes",
                "fixtures/uniform2.json",
                "fixtures/geometric3.json",
            ],
            1,
            "error[domain]",
        ),
        (
            &["limit", "--family", "abs-lose-info", "--steps", "10"],
            3,
            "error[not-converged]",
        ),
        (
            &[
                "limit",
                "fixtures/ratio2.json",
                "fixtures/ratio3.json",
                "fixtures/ratio2.json",
            ],
            3,
            "error[not-converged]",
        ),
        (&["limit", "fixtures/uniform2.json"], 1, "error[domain]"),
        (
            &[
                "limit",
                "fixtures/indeterminate2.json",
                "fixtures/indeterminate2.json",
            ],
            1,
            "error[domain]",
        ),
        (&["limit", "--family", "nope"], 2, "error[usage]"),
        (&["validate", "-", "-"], 2, ""),
    ];
    for (args, code, needle) in cases {
        let r = run(args, Some(""));
        assert_eq!(r.code, *code, "{args:?}: {}", r.stderr);
        assert!(r.stderr.contains(needle), "{args:?}: {}", r.stderr);
        if *code != 0 && r.stderr.starts_with("error[") {
            assert_eq!(r.stderr.lines().count(), 1, "{args:?}: one-line reason");
            assert!(r.stdout.is_empty());
        }
    }
}

#[test]
fn compose_reports_conditions_on_stderr() {
    let ok = run(
        &[
            "compose",
            "fixtures/uniform2.json",
            "fixtures/uniform2.json",
            "fixtures/uniform2.json",
        ],
        None,
    );
    assert_eq!(
        ok.stderr,
        "condition1=true condition2=true condition3=true\n"
    );
    let degenerate = run(
        &[
            "compose",
            "fixtures/uniform2.json",
            "fixtures/chain2.json",
            "fixtures/chain2.json",
        ],
        None,
    );
    assert_eq!(degenerate.code, 0);
    assert!(degenerate.stderr.contains("condition2=false"));
    let classes = run(&["classify", "-"], Some(&degenerate.stdout)).stdout;
    assert!(classes.contains("totally_comparable: false"));
}

#[test]
fn bayes_warns_about_degenerate_priors() {
    let r = run(
        &["bayes", "fixtures/chain2.json", "fixtures/uniform2.json"],
        None,
    );
    assert_eq!(r.code, 0);
    assert!(r.stderr.starts_with("warning:"));
    let quiet = run(
        &["bayes", "fixtures/uniform2.json", "fixtures/ratio2.json"],
        None,
    );
    assert!(quiet.stderr.is_empty());
}

#[test]
fn classed_input_is_accepted_everywhere() {
    let dense = run(&["show", "fixtures/two_zeros.json"], None).stdout;
    let classed = run(&["show", "fixtures/two_zeros_classed.json"], None).stdout;
    assert_eq!(dense, classed);
    assert_eq!(
        run(&["validate", "fixtures/two_zeros_classed.json"], None).code,
        0
    );
}
