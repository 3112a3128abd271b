//! End-to-end runs of the `wklrw` binary.

use std::path::PathBuf;
use std::process::Command;

use wklrw::diagrams::dotidem;
use wklrw::{Context, Family, MultiPartition};

fn wklrw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wklrw")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("wklrw-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn gdim_of_main_example() {
    let (code, out) = wklrw(&["--n", "6", "gdim", "--lambda", "4,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("q^-2+2+2q^2+2q^4+q^6"), "{out}");
}

#[test]
fn compare_prints_both_families() {
    let (code, out) = wklrw(&["--n", "3", "--format", "json", "compare", "--beta", "0,1,2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let text = v.to_string();
    assert!(text.contains("1+q^2+q^4+q^6") && text.contains("1+q^2"), "{text}");
}

#[test]
fn classify_recovers_the_shape() {
    let c = Context::level_one(Family::Dtwo, 2, 6, 0).unwrap();
    let lam = MultiPartition::single(&c, &[4, 2]).unwrap();
    let path = scratch("dotidem.json", &serde_json::to_string(&dotidem(&c, &lam)).unwrap());
    let (code, out) = wklrw(&["--n", "6", "classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("(4,2)"), "{out}");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn classify_of_the_empty_diagram() {
    let c = Context::level_one(Family::Dtwo, 2, 0, 0).unwrap();
    let empty = MultiPartition::empty(&c);
    let path = scratch("empty.json", &serde_json::to_string(&dotidem(&c, &empty)).unwrap());
    let (code, out) = wklrw(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains('∅'), "{out}");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    let path = scratch("bad.json", "{not json");
    assert_eq!(wklrw(&["classify", path.to_str().unwrap()]).0, 2);
    std::fs::remove_file(path).unwrap();
    assert_eq!(wklrw(&["--e", "1", "partitions"]).0, 2);
    assert_eq!(wklrw(&["--n", "3", "gdim", "--beta", "0,1,2"]).0, 2);
    assert_eq!(wklrw(&["frobnicate"]).0, 2);
    assert_eq!(wklrw(&["--help"]).0, 0);
}

#[test]
fn quick_check_passes() {
    let (code, out) = wklrw(&["check", "--quick"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"), "{out}");
}
