use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::aslt::{parse_source, write_aslt};
use crate::config::{load_config_file, DebugLevel};
use crate::diagnostics::{Diagnostic, Severity};

use super::report::{render_diagnostics, render_json, show_all_errors};
use super::run::{run_analysis, RunOptions, EXIT_CONFIG, EXIT_OK, EXIT_PARSE};
use super::testbed::gen_testbed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "aslt-analyser",
    version,
    about = "Static interface compatibility analyser"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse the project described by a constants.properties file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the file's DebugLevel.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        debug_level: Option<u8>,
        /// Accept primitive widening conversions.
        #[arg(long)]
        widening: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the .aslt form of a source file.
    Aslt { source: PathBuf },
    /// Write the three-class test environment into a directory.
    Testbed { dir: PathBuf },
}

pub fn parse_cli<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Runs one command line, writing to the given streams, and returns the
/// process exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_cli(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_CONFIG;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Run {
            config,
            debug_level,
            widening,
            format,
        } => {
            let loaded = match load_config_file(&config) {
                Ok(l) => l,
                Err(e) => {
                    let _ = writeln!(
                        stderr,
                        "{}",
                        Diagnostic::new(
                            Severity::Fatal,
                            Some(config.display().to_string()),
                            e.to_string()
                        )
                    );
                    return EXIT_CONFIG;
                }
            };
            let mut cfg = loaded.config;
            if let Some(n) = debug_level.and_then(DebugLevel::from_number) {
                cfg.debug_level = n;
            }
            let options = RunOptions {
                widening,
                ..RunOptions::default()
            };
            let mut run = run_analysis(&cfg, options);
            let file = config.display().to_string();
            let notices = loaded.unknown_keys.iter().map(|k| {
                Diagnostic::new(
                    Severity::Notice,
                    Some(file.clone()),
                    format!("ignoring unknown key `{k}`"),
                )
            });
            run.diagnostics.splice(0..0, notices);
            let body = match format {
                OutputFormat::Text => show_all_errors(&run),
                OutputFormat::Json => render_json(&run),
            };
            let _ = write!(stdout, "{body}");
            let _ = write!(stderr, "{}", render_diagnostics(&run));
            run.exit_code
        }
        Command::Aslt { source } => {
            let text = match fs::read_to_string(&source) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(stderr, "fatal: {}: {e}", source.display());
                    return EXIT_CONFIG;
                }
            };
            let name = source
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            match parse_source(&text, &name) {
                Ok(tree) => {
                    let _ = write!(stdout, "{}", write_aslt(&tree));
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {name}: {e}");
                    EXIT_PARSE
                }
            }
        }
        Command::Testbed { dir } => match gen_testbed(&dir) {
            Ok(files) => {
                for f in files {
                    let _ = writeln!(stdout, "{}", f.display());
                }
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(stderr, "fatal: {}: {e}", dir.display());
                EXIT_CONFIG
            }
        },
    }
}
