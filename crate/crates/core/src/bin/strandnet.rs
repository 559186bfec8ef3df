use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use strandnet::run::{self, Format, RunOptions};
use strandnet::EnumConfig;

/// Enumerate the strand-displacement reaction network of a domain-level
/// system and write it as a CRN, JSON, DOT or SBML document.
///
/// Exit status: 0 success, 1 input error, 2 truncated at a limit (output
/// still written), 3 numerical error.
#[derive(Parser, Debug)]
#[command(name = "strandnet", version)]
struct Cli {
    /// Input file (`length NAME = INT`, `set KEY = VALUE`, `NAME = kernel`).
    input: PathBuf,

    /// Report reactions between resting sets instead of complexes.
    #[arg(long)]
    condense: bool,

    /// Helices shorter than this many nucleotides open spontaneously.
    #[arg(long, value_name = "L")]
    release_cutoff: Option<u32>,

    #[arg(long, value_name = "N")]
    max_complexes: Option<usize>,

    #[arg(long, value_name = "N")]
    max_reactions: Option<usize>,

    #[arg(long, default_value = "crn", value_parser = parse_format)]
    format: Format,

    /// Append rate constants to CRN lines.
    #[arg(long, overrides_with = "no_rates")]
    rates: bool,

    #[arg(long, overrides_with = "rates")]
    no_rates: bool,

    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,

    /// Configuration file in TOML (same keys as `set`, grouped under
    /// `[moves]` and `[kinetics]`).
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override a setting, e.g. `--set k_bind_bi=3e6`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    settings: Vec<String>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn options(cli: &Cli) -> Result<RunOptions, String> {
    let config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            toml::from_str::<EnumConfig>(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => EnumConfig::default(),
    };
    let mut overrides = Vec::new();
    for s in &cli.settings {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got '{s}'"))?;
        overrides.push((k.trim().to_string(), v.trim().to_string()));
    }
    let flags = [
        ("release_cutoff", cli.release_cutoff.map(|v| v.to_string())),
        ("max_complexes", cli.max_complexes.map(|v| v.to_string())),
        ("max_reactions", cli.max_reactions.map(|v| v.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            overrides.push((k.to_string(), v));
        }
    }
    Ok(RunOptions {
        condense: cli.condense,
        format: cli.format,
        rates: cli.rates && !cli.no_rates,
        config,
        overrides,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let opts = match options(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("strandnet: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("strandnet: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(1);
        }
    };
    let out = match run::run(&text, &opts) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("strandnet: {}: {e}", cli.input.display());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    for notice in &out.network.notices {
        eprintln!("strandnet: note: {notice}");
    }
    let written = match &cli.output {
        Some(path) => fs::write(path, &out.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("strandnet: {msg}");
        return ExitCode::from(1);
    }
    if out.truncated() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
