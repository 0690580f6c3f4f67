//! Helpers shared by the binary-level test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the binary and returns stdout, stderr and the exit code.
pub fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sigmatilt"))
        .args(args)
        .output()
        .expect("spawn sigmatilt");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().unwrap_or(-1),
    )
}

/// Golden baselines: file name and arguments. Quiver paths are given by
/// data file name and resolved at run time.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let raw: Vec<(&str, Vec<&str>)> = vec![
        ("std_a2.json", vec!["std", "@a2.json"]),
        ("std_a3.json", vec!["std", "@a3.json"]),
        ("std_d4.json", vec!["std", "@d4.json"]),
        ("tilt_a2.json", vec!["tilt", "@a2.json", "2+"]),
        ("tilt_a3.json", vec!["tilt", "@a3.json", "2+ 1- 3+", "--check"]),
        ("tilt_d4.txt", vec!["tilt", "@d4.json", "2+ 1- 3+ 4+", "--check", "--format", "text"]),
        ("explore_a2.dot", vec!["explore", "@a2.json", "--window", "0:1"]),
        ("explore_a3.json", vec!["explore", "@a3.json", "--window", "0:1", "--depth", "8", "--format", "json"]),
        ("explore_d4.dot", vec!["explore", "@d4.json", "--depth", "3"]),
    ];
    raw.into_iter()
        .map(|(name, args)| {
            let args = args
                .into_iter()
                .map(|a| match a.strip_prefix('@') {
                    Some(file) => data(file),
                    None => a.to_string(),
                })
                .collect();
            (name, args)
        })
        .collect()
}

/// Compares a case against its golden file, rewriting it when
/// `SIGMATILT_BLESS=1`. Returns a description of the first difference.
pub fn check_golden(name: &str, args: &[String]) -> Result<(), String> {
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let (out, err, code) = run(&argv);
    if code != 0 {
        return Err(format!("{name}: exit {code}: {err}"));
    }
    let path = golden_path(name);
    if std::env::var("SIGMATILT_BLESS").as_deref() == Ok("1") {
        std::fs::write(&path, &out).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
    if want != out {
        let line = want
            .lines()
            .zip(out.lines())
            .position(|(a, b)| a != b)
            .map_or_else(|| "length".to_string(), |k| format!("line {}", k + 1));
        return Err(format!("{name}: output differs from golden at {line}"));
    }
    Ok(())
}
