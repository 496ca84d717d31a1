//! Command-line front end: polynomial parsing, subcommands, the audit
//! runner and report emission.

pub mod audit;
pub mod cmd;
pub mod manifest;
pub mod parse;
pub mod report;

use std::io::Write;

use clap::Parser;

use crate::cmd::Cli;
use crate::manifest::Manifest;
use crate::report::AuditReport;

/// Parses `args`, runs the subcommand and writes the report to `out`
/// (diagnostics to `err`). Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match cmd::execute(&cli.command) {
        Ok((config, items)) => {
            let report = AuditReport::finalize(config, items, &Manifest::builtin(), cli.timings);
            let doc = if cli.json { report.to_json() } else { report.to_text() };
            let _ = out.write_all(doc.as_bytes());
            report.exit_code(cli.expect_known)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
