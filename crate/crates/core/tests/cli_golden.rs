use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn dirconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_golden(args: &[&str], expected: &str) {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".fn") { golden(a).display().to_string() } else { a.to_string() })
        .collect();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let first = dirconv(&args);
    let second = dirconv(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout, "output differs between runs");
    let want = std::fs::read(golden(expected)).unwrap();
    assert_eq!(String::from_utf8_lossy(&first.stdout), String::from_utf8_lossy(&want));
}

fn values(out: &str) -> Vec<(u64, String)> {
    out.lines()
        .skip(1)
        .map(|l| {
            let (n, v) = l.split_once(' ').unwrap();
            (n.parse().unwrap(), v.to_string())
        })
        .collect()
}

#[test]
fn convolve_matches_divisor_counts() {
    run_golden(&["convolve", "one.fn", "one.fn"], "convolve_one_one.out");
    let out = std::fs::read_to_string(golden("convolve_one_one.out")).unwrap();
    for (n, v) in values(&out) {
        let tau = (1..=n).filter(|d| n % d == 0).count();
        assert_eq!(v, tau.to_string(), "tau({n})");
    }
}

#[test]
fn invert_golden() {
    run_golden(&["invert", "one.fn"], "invert_one.out");
    run_golden(&["invert", "e.fn"], "invert_e.out");
    assert_eq!(
        std::fs::read(golden("invert_e.out")).unwrap(),
        std::fs::read(golden("e.fn")).unwrap()
    );
}

#[test]
fn encode_golden() {
    run_golden(&["encode", "g3.fn", "--caps", "3,2,1"], "encode_g3.out");
}

#[test]
fn round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("dirconv-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ser = dir.join("g3.ser");
    let g3 = golden("g3.fn");
    let out = dirconv(&["encode", g3.to_str().unwrap(), "--caps", "3,2,1", "--out", ser.to_str().unwrap()]);
    assert!(out.status.success());
    let back = dirconv(&["decode", ser.to_str().unwrap()]);
    let text = String::from_utf8(back.stdout).unwrap();
    assert_eq!(values(&text), values(&std::fs::read_to_string(&g3).unwrap()));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let one = golden("one.fn");
    let one = one.to_str().unwrap();
    assert_eq!(dirconv(&["norm", one]).stdout, b"1\n");
    assert_eq!(dirconv(&["--ring", "Z", "norm", one]).status.code(), Some(2));
    assert_eq!(dirconv(&["--bound", "31", "norm", one]).status.code(), Some(2));
    assert_eq!(dirconv(&["norm", "/nonexistent.fn"]).status.code(), Some(1));
    assert_eq!(dirconv(&["encode", golden("g3.fn").to_str().unwrap(), "--caps", "4,2,2"]).status.code(), Some(2));
    let bad = dirconv(&["check", one, golden("g3.fn").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("g3.fn"));
    assert_eq!(dirconv(&["selftest"]).status.code(), Some(0));
}
