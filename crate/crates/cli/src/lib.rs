//! Command-line front end for `eurb`.
//!
//! [`run`] takes the argument list and two sinks so the whole CLI can be driven
//! in-process by tests; `main` only wires it to the real stdout and stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod family;
pub mod render;
pub mod svg;
pub mod verify;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Verification(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

fn verify(cli: &Cli, a: &args::VerifyArgs) -> Result<String, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if a.pairs == 0 {
        return Err(CliError::Usage("--pairs must be at least 1".into()));
    }
    if !a.tol.is_finite() {
        return Err(CliError::Usage(format!("--tol must be finite, got {}", a.tol)));
    }
    let opts = verify::Options { samples: a.samples, seed: a.seed, tol: a.tol, pairs: a.pairs, side: cli.side.into() };
    let summary = verify::run(&opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = verify::render(&summary, &opts, cli.format);
    if summary.ok() {
        return Ok(text);
    }
    let mut msg = text;
    for v in summary.violations.iter().take(20) {
        msg.push_str(&format!(
            "\nviolation: {} at sample {} (state seed {}, rank {}): margin {:e}",
            v.property, v.sample, v.state_seed, v.rank, v.margin
        ));
    }
    if summary.violations.len() > 20 {
        msg.push_str(&format!("\n... {} more", summary.violations.len() - 20));
    }
    msg.push_str(&format!(
        "\nreproduce with: eurb --side {} verify --samples {} --seed {} --tol {} --pairs {}",
        cli.side, a.samples, a.seed, a.tol, a.pairs
    ));
    Err(CliError::Verification(msg))
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Bounds(a) => commands::bounds(cli, a),
        Command::Sweep(a) => commands::sweep(cli, a),
        Command::Figure(a) => commands::figure(cli, a),
        Command::Verify(a) => verify(cli, a),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_IO
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("eurb").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &["bounds", "--state", "werner"][..],
            &["bounds", "--state", "werner", "--p", "2"],
            &["bounds", "--state", "nope", "--p", "0.5"],
            &["bounds", "--state", "werner", "--p", "0.5", "--obs-r", "200,0"],
            &["figure", "--id", "3"],
            &["verify", "--samples", "0"],
            &["--side", "C", "verify"],
        ] {
            let (code, out, err) = run_capture(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty(), "{args:?}");
            assert!(!err.is_empty(), "{args:?}");
        }
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn werner_zero_example() {
        let (code, out, _) = run_capture(&["--format", "csv", "bounds", "--state", "werner", "--p", "0"]);
        assert_eq!(code, EXIT_OK);
        let row: Vec<&str> = out.lines().nth(2).unwrap().split(',').collect();
        assert_eq!(row[1], "2.000000");
        assert_eq!(row[4], "2.000000");
    }

    #[test]
    fn observable_syntax() {
        let (code, out, _) =
            run_capture(&["--format", "csv", "bounds", "--state", "werner", "--p", "0.5", "--obs-r", "0,0", "--obs-s", "90,0"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("# args: bounds --state werner --p 0.5 --obs-r 0,0 --obs-s 90,0 --side B\n"));
        let (_, reference, _) = run_capture(&["--format", "csv", "bounds", "--state", "werner", "--p", "0.5"]);
        assert_eq!(out.lines().nth(2), reference.lines().nth(2));
    }

    #[test]
    fn negative_parameters_parse() {
        let (code, out, err) = run_capture(&[
            "--format", "json-lines", "bounds", "--state", "mm", "--cx", "0.5", "--cy", "-0.2", "--cz", "-0.3",
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!((v["L1"].as_f64().unwrap() - 1.5589).abs() < 1e-3);
        assert!((v["L2"].as_f64().unwrap() - 1.6226).abs() < 1e-3);
    }

    #[test]
    fn verify_violation_exits_one() {
        let (code, out, err) = run_capture(&["verify", "--samples", "2", "--seed", "3", "--tol", "-5", "--pairs", "1"]);
        assert_eq!(code, EXIT_VERIFY);
        assert!(out.is_empty());
        assert!(err.contains("state seed"));
        assert!(err.contains("reproduce with"));
    }
}
