//! End-to-end checks of the installed binary: exit codes, the documented
//! stdout anchors, and byte-identical artifacts across reruns and thread
//! counts.

use std::process::Command;

fn kloss3() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kloss3"))
}

#[test]
fn sum_prints_value_and_exits_zero() {
    let out = kloss3()
        .args(["sum", "--weyl", "wl", "--m", "1,1", "--n", "1,1", "--c", "2,1"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("1+0i\n"), "{stdout}");
}

#[test]
fn usage_error_exits_two() {
    let out = kloss3()
        .args(["sum", "--weyl", "wl", "--m", "1,1"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_violation_exits_one() {
    let out = kloss3()
        .args(["sum", "--weyl", "wl", "--m", "0,1", "--n", "1,1", "--c", "2,1"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("nonzero"), "{stderr}");
}

#[test]
fn csv_artifact_is_byte_identical_across_threads() {
    let dir = std::env::temp_dir().join("kloss3-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let mut artifacts = Vec::new();
    for (i, threads) in ["1", "2", "4"].iter().enumerate() {
        let path = dir.join(format!("smooth-{i}.csv"));
        let status = kloss3()
            .args([
                "--threads",
                threads,
                "--output",
                path.to_str().unwrap(),
                "smooth",
                "--m",
                "1,1",
                "--n",
                "1,1",
                "--X",
                "8",
                "--Y",
                "8",
            ])
            .status()
            .expect("spawn");
        assert!(status.success());
        artifacts.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(artifacts[0], artifacts[1]);
    assert_eq!(artifacts[1], artifacts[2]);
}

#[test]
fn env_thread_default_is_honored() {
    let out = kloss3()
        .env("KLOSS3_THREADS", "1")
        .args(["sum", "--weyl", "w4", "--m", "1,1", "--n", "1,1", "--c", "4,2", "--gated"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bounds_csv_has_header_and_holds() {
    let out = kloss3()
        .args(["bounds", "--kind", "weil", "--cmax", "50"])
        .output()
        .expect("spawn");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("sum_id,computed_abs,bound,holds"), "{stdout}");
    assert!(!stdout.contains(",false"), "a Weil bound failed:\n{stdout}");
}
