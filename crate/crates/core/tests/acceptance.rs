//! The fourteen acceptance criteria, run through the `qlab` binary.
//!
//! Criteria 1 to 13 are read off `qlab suite all --seed 0`; criterion 14 is
//! that command itself: exit 0, under ten minutes, and byte-identical output
//! on a second run. All comparisons are exact (tolerance zero).

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

const BUDGET: Duration = Duration::from_secs(600);

struct Run {
    stdout: Vec<u8>,
    code: Option<i32>,
    elapsed: Duration,
}

fn suite_all() -> Run {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qlab"))
        .args(["suite", "all", "--seed", "0"])
        .output()
        .expect("qlab runs");
    Run { stdout: out.stdout, code: out.status.code(), elapsed: started.elapsed() }
}

/// `(criterion, status, rest of line)` for every `cNN` check line.
fn criterion_lines(text: &str) -> Vec<(usize, String, String)> {
    text.lines()
        .filter_map(|line| {
            let mut parts = line.split_whitespace();
            let status = parts.next()?.to_string();
            let id = parts.next()?;
            let n = id.strip_prefix('c')?.parse().ok()?;
            Some((n, status, parts.collect::<Vec<_>>().join(" ")))
        })
        .collect()
}

/// Written past the test harness's capture so the lines always show.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let first = suite_all();
    let second = suite_all();
    let text = String::from_utf8(first.stdout.clone()).expect("utf-8 report");
    let lines = criterion_lines(&text);
    let mut failed = Vec::new();
    for n in 1..=13 {
        let found: Vec<_> = lines.iter().filter(|l| l.0 == n).collect();
        let ok = match found.as_slice() {
            [(_, status, _)] => status == "pass" || status == "verified-to-truncation",
            _ => false,
        };
        let detail = found.first().map(|(_, s, rest)| format!("{s} {rest}")).unwrap_or_else(|| "missing".into());
        report(format!("criterion {n:2}: {} (exact, tolerance 0) {detail}", if ok { "PASS" } else { "FAIL" }));
        if !ok {
            failed.push(n);
        }
    }
    let exit_ok = first.code == Some(0) && second.code == Some(0);
    let time_ok = first.elapsed < BUDGET && second.elapsed < BUDGET;
    let same = first.stdout == second.stdout;
    let ok = exit_ok && time_ok && same;
    report(format!(
        "criterion 14: {} (exit {:?}, {:.1}s and {:.1}s of {}s, byte-identical: {same})",
        if ok { "PASS" } else { "FAIL" },
        first.code,
        first.elapsed.as_secs_f64(),
        second.elapsed.as_secs_f64(),
        BUDGET.as_secs()
    ));
    if !ok {
        failed.push(14);
    }
    assert!(failed.is_empty(), "failing criteria {failed:?}\n{text}");
}
