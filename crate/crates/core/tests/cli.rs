//! End-to-end checks of the command-line interface: exit codes, dataset
//! reproducibility and the measures output.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clonedel"))
}

#[test]
fn unknown_figure_is_usage_error() {
    let out = bin().args(["figure", "fig12"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_state_spec_is_usage_error() {
    let out = bin().args(["measures", "warp:speed=9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["measures", "clone:alpha=0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "missing xi must be rejected");
}

#[test]
fn figure_rerun_is_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = bin()
            .args([
                "figure",
                "fig8",
                "--alpha-steps",
                "7",
                "--param-steps",
                "5",
                "--seed",
                "9",
                "--out",
            ])
            .arg(dir.path())
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir_a.path().join("fig8.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("fig8.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn measures_bell_point_values() {
    let out = bin()
        .args(["measures", "clone:xi=0.5,alpha=0.3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("negativity:         0.500000000000"),
        "{text}"
    );
    assert!(
        text.contains("geometric discord:  1.000000000000"),
        "{text}"
    );
    assert!(text.contains("fidelity: 0.500000000000"), "{text}");
}

#[test]
fn measures_deletion_floor() {
    let alpha = (0.5f64).sqrt();
    let out = bin()
        .args(["measures", &format!("delete:alpha={alpha}")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fidelity: 0.750000000000"), "{text}");
    assert!(
        text.contains("negativity:         0.154508497187"),
        "{text}"
    );
}

#[test]
fn compat_report_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = bin()
            .args([
                "compat",
                "--alpha-steps",
                "7",
                "--param-steps",
                "7",
                "--out",
            ])
            .arg(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read_to_string(dir.path().join("compat_report.txt")).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    assert!(a.contains("CLONE_DG"));
    assert!(a.contains("CONSISTENT"));
    assert!(a.contains("DISCREPANT"));
}
