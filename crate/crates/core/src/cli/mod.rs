//! The `qlab` command line: law checks, derivations, equivalence drivers,
//! tensors and the acceptance suite.
//!
//! Exit codes: 0 pass, 1 law failure, 2 parse or input error, 3 resource
//! guard hit.

mod commands;
mod report;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Check, RunReport, Status, Verified};
pub use suite::{run_suite, Scope};

use crate::dsl::{Diagnostic, Severity};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "qlab", version, about = "Checks and derivations for finite quantale-enriched structures")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Opts {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Longest list for (L,V) checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_len: usize,
    /// Most blocks in a split for (L,V) checks; defaults to --max-len.
    #[arg(long, global = true)]
    pub max_blocks: Option<usize>,
    /// Check every element instead of a generating family.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    /// Run the universal-property oracle after computing a tensor.
    #[arg(long, global = true)]
    pub verify_universal: bool,
}

impl Opts {
    pub fn blocks(&self, max_len: usize) -> usize {
        self.max_blocks.unwrap_or(max_len)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Law suites for the definitions in a file: `check FILE [NAME]`,
    /// `check vcat FILE [NAME]`, `check bimorphism FILE MONOID`.
    Check {
        #[arg(required = true, num_args = 1..=3)]
        args: Vec<String>,
    },
    /// Derived objects: `derive WHAT [FILE] NAME`.
    Derive {
        what: DeriveWhat,
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
    },
    /// Equivalences between representations.
    Equiv {
        route: Route,
        file: String,
        name: String,
        /// Send the result back and require the input again.
        #[arg(long)]
        roundtrip: bool,
        /// Station of NAME for `chain`; inferred from its kind if omitted.
        #[arg(long)]
        from: Option<String>,
    },
    /// Tensor products: `tensor KIND FILE A B`.
    Tensor { kind: TensorKind, file: String, left: String, right: String },
    /// The `P_V` monad on a finite set.
    Monad {
        #[command(subcommand)]
        which: MonadCmd,
    },
    /// Truncated (L,V)-category checks.
    Lv {
        #[command(subcommand)]
        which: LvCmd,
    },
    /// The acceptance battery, or the part of it owned by one module.
    Suite {
        #[arg(default_value = "all")]
        scope: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeriveWhat {
    Presheaf,
    Sup,
    Order,
    Copower,
    Residuation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    #[value(alias = "mod-to-vcat")]
    ModVcat,
    #[value(alias = "vcat-to-mod")]
    VcatMod,
    Roundtrip,
    MonoidQuant,
    QuantActed,
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TensorKind {
    Sup,
    Mod,
    Alg,
}

#[derive(Debug, Subcommand)]
pub enum MonadCmd {
    /// Unit, associativity and naturality on `POINTS` points.
    Laws {
        quantale: String,
        points: usize,
        #[arg(long)]
        file: Option<String>,
    },
    /// `P_V ≅ V⊗₂P₂` as monads.
    IsoPv {
        quantale: String,
        points: usize,
        #[arg(long)]
        file: Option<String>,
    },
    /// Strength diagrams, commutativity and `dst = dst'`.
    Strength {
        quantale: String,
        nx: usize,
        ny: usize,
        #[arg(long)]
        file: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum LvCmd {
    /// Unit and composition axioms of an `lvcategory` definition.
    Check { file: String, name: String },
    /// The two Yoneda bounds over the generated presheaf family.
    Yoneda { file: String, name: String },
    /// `P_V L` against `P_L` on `POINTS` points.
    CompareMonads {
        quantale: String,
        points: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        file: Option<String>,
    },
    /// The representable (L,V)-category of a `monoid` or `acted` definition.
    Station { file: String, name: String },
}

/// Runs one command line (program name first) and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let started = Instant::now();
    let echo = commands::echo(&cli.command);
    let report = match commands::dispatch(&cli) {
        Ok(r) => r.finish(),
        Err(e) => match failure_report(&echo, e) {
            Ok(r) => r.finish(),
            Err((code, diagnostics, message)) => {
                if cli.opts.json {
                    let j = serde_json::json!({ "command": echo, "error": message, "diagnostics": diagnostics, "exit_code": code });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serializes"));
                } else {
                    for d in &diagnostics {
                        let severity = match d.severity {
                            Severity::Error => "error",
                            Severity::Note => "note",
                        };
                        let _ = writeln!(err, "{}:{}: {severity}: {}", d.line, d.column, d.message);
                    }
                    let _ = writeln!(err, "error: {message}");
                }
                return code;
            }
        },
    };
    if cli.opts.json {
        let _ = writeln!(out, "{}", report.to_json());
    } else {
        let _ = write!(out, "{}", report.to_text());
        let _ = writeln!(err, "elapsed: {:.2}s", started.elapsed().as_secs_f64());
    }
    report.exit_code
}

/// Law-type errors become a failing report; input errors are returned with
/// their exit code.
fn failure_report(echo: &str, e: Error) -> Result<RunReport, (i32, Vec<Diagnostic>, String)> {
    let mut r = RunReport::new(echo);
    match e {
        Error::Law(lr) => r.push(Check::from_report(lr.subject.clone(), &lr, None)),
        Error::NotCocomplete { witness } => r.push(Check::fail(
            "cocomplete",
            crate::Violation { law: "sup".into(), witness, message: "presheaf has no supremum".into() },
        )),
        Error::Resource { guard, needed, limit } => {
            r.push(Check::skipped("resource", format!("guard `{guard}`: need {needed}, limit {limit}")))
        }
        Error::Internal(m) => r.push(Check::fail_msg("internal", "internal", m)),
        Error::Parse(d) => {
            let msg = d.first().map(|d| d.message.clone()).unwrap_or_default();
            return Err((2, d, format!("parse error: {msg}")));
        }
        other => return Err((2, vec![], other.to_string())),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qlab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn residuation_of_two_is_implication() {
        let (code, out, _) = run_str(&["--json", "derive", "residuation", "two"]);
        assert_eq!(code, 0, "{out}");
        let j: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["artifact"]["residual"], serde_json::json!([[1, 1], [0, 1]]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["check", "/nonexistent/file.qlab"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn monad_commands() {
        assert_eq!(run_str(&["monad", "laws", "two", "2"]).0, 0);
        assert_eq!(run_str(&["monad", "iso-pv", "chain_min(3)", "2"]).0, 0);
        assert_eq!(run_str(&["monad", "strength", "two", "2", "2"]).0, 0);
        assert_eq!(run_str(&["monad", "laws", "nosuch", "2"]).0, 2);
    }

    #[test]
    fn guards_exit_three() {
        let (code, out, _) = run_str(&["monad", "laws", "lukasiewicz(5)", "4"]);
        assert_eq!(code, 3, "{out}");
        assert!(out.contains("resource-skipped"));
    }

    #[test]
    fn compare_is_marked_truncated() {
        let (code, out, _) = run_str(&["--json", "lv", "compare-monads", "two", "1", "--samples", "10"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("\"verified\": \"truncated\""));
        assert!(!out.contains("\"verified\": \"full\""));
    }
}
