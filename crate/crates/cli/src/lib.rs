//! `photon-kick` command-line front end: argument and config-file parsing,
//! the CSV and summary formats, and the exit-code contract
//! (0 success, 1 not converged, 2 usage, 3 I/O).

pub mod app;
pub mod args;
pub mod csv;
pub mod error;
pub mod summary;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub use args::{parse_args, CliInvocation, Subcommand, CONFIG_ENV};
pub use csv::{emit_csv, parse_csv, ROW_HEADER};
pub use error::CliError;
pub use summary::emit_summary;

/// Parses and runs one invocation, reporting errors on `stderr`. Returns the
/// process exit code.
pub fn main_with<I, T>(
    argv: I,
    env_config: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv, env_config).and_then(|inv| app::execute(&inv, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(CliError::Clap(e)) => {
            let rendered = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(stream, "{rendered}");
            CliError::Clap(e).exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "photon-kick: {e}");
            e.exit_code()
        }
    }
}
