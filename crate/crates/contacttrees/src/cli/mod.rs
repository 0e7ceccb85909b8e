//! Command-line interface.
//!
//! Exit codes: 0 success, 1 I/O failure while writing output, 2 invalid
//! flags or parameter files, 3 data errors, 4 mapping errors, 5 too many
//! comparison panels.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "contacttrees", version, about = "Draw contact diaries as ContactTrees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Json,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct LayoutArgs {
    /// Mapping preset name or mapping JSON file.
    #[arg(long, default_value = "diary-default")]
    pub mapping: String,
    /// Layout parameter JSON file.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Style sheet JSON file.
    #[arg(long)]
    pub style: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lay out one ego's tree and write SVG and/or scene JSON.
    Render {
        /// Diary JSON file, CSV directory, or `TIES.csv,CONTACTS.csv`.
        #[arg(long)]
        data: String,
        #[arg(long)]
        ego: String,
        #[command(flatten)]
        layout: LayoutArgs,
        /// `FROM..TO` with `YYYY` or `YYYY-MM-DD` bounds.
        #[arg(long)]
        period: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
    /// Several trees side by side: one ego over periods, or over datasets.
    Compare {
        #[arg(long, required = true)]
        data: Vec<String>,
        #[arg(long)]
        ego: String,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long)]
        period: Vec<String>,
        /// Normalize leaf size and darkness over all panels together.
        #[arg(long)]
        shared_norm: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the validation report of a diary.
    Validate {
        #[arg(long)]
        data: String,
    },
    /// Write a seeded synthetic diary as JSON.
    Synth {
        #[arg(long)]
        seed: u64,
        /// `stress`, `small`, or a profile JSON file.
        #[arg(long, default_value = "small")]
        profile: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print per-ego tie and contact counts.
    Stats {
        #[arg(long)]
        data: String,
    },
    /// Print a mapping preset as JSON.
    Preset { name: String },
    /// Serve the layout API (and optionally a static viewer).
    Serve {
        #[arg(long, required = true)]
        data: Vec<String>,
        /// Falls back to CONTACTTREES_PORT, then 8080.
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                0
            } else {
                let _ = err.write_all(text.as_bytes());
                ExitCode::Usage as i32
            };
        }
    };
    match commands::execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            if let Some(detail) = &e.detail {
                let _ = writeln!(err, "{detail}");
            }
            e.code as i32
        }
    }
}
