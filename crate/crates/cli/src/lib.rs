//! Command-line front end for the lgroup engine: JSON workspace documents
//! in, value tables / reports out. See the repository README for the
//! document schema and the command surface.

pub mod commands;
pub mod error;
pub mod output;
pub mod workspace;

pub use commands::{run_with, Cli};
pub use error::CliError;
pub use workspace::{parse_workspace, Workspace};

/// Entry point used by the binary: real stdout/stderr, process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
