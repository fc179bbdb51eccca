//! Run part of the acceptance battery and print its report.
//!
//! `cargo run --release --example suite -- order 7` runs the criteria of
//! one module with seed 7.

use qlab::cli::{run_suite, Scope};

fn main() -> qlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let scope: Scope = args.next().as_deref().unwrap_or("order").parse()?;
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let report = run_suite(scope, seed);
    print!("{}", report.to_text());
    std::process::exit(report.exit_code);
}
