//! End-to-end pipeline: parse, enumerate, optionally condense, write.

use std::fmt;

use crate::condense::{self, CondensedNetwork};
use crate::enumerate::{self, EnumConfig};
use crate::error::{CondenseError, EnumerateError, InputError};
use crate::io::{self, View};
use crate::network::ReactionNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Crn,
    Json,
    Dot,
    Sbml,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "crn" => Ok(Format::Crn),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "sbml" => Ok(Format::Sbml),
            _ => Err(format!("unknown format '{s}' (expected crn, json, dot or sbml)")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub condense: bool,
    pub format: Format,
    pub rates: bool,
    pub config: EnumConfig,
    /// Applied after the input file's own `set` lines.
    pub overrides: Vec<(String, String)>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub text: String,
    pub network: ReactionNetwork,
    pub condensed: Option<CondensedNetwork>,
}

impl RunOutput {
    pub fn truncated(&self) -> bool {
        self.network.truncated
    }
}

#[derive(Debug)]
pub enum RunError {
    Input(InputError),
    Config(String),
    Enumerate(EnumerateError),
    Condense(CondenseError),
}

impl RunError {
    /// 1 for bad input, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) | RunError::Config(_) => 1,
            RunError::Enumerate(EnumerateError::Kinetics(_)) => 3,
            RunError::Enumerate(_) => 1,
            RunError::Condense(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(e) => write!(f, "input error: {e}"),
            RunError::Config(e) => write!(f, "configuration error: {e}"),
            RunError::Enumerate(e) => write!(f, "enumeration error: {e}"),
            RunError::Condense(e) => write!(f, "condensation error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

pub fn run(text: &str, opts: &RunOptions) -> Result<RunOutput, RunError> {
    let spec = io::parse_input(text).map_err(RunError::Input)?;
    let mut cfg = opts.config.clone();
    spec.apply_settings(&mut cfg).map_err(RunError::Input)?;
    for (k, v) in &opts.overrides {
        io::input::apply_setting(&mut cfg, k, v).map_err(RunError::Config)?;
    }
    let network = enumerate::enumerate(&spec.complexes, &cfg).map_err(RunError::Enumerate)?;
    let condensed = if opts.condense {
        Some(condense::condense(&network).map_err(RunError::Condense)?)
    } else {
        None
    };
    let text = render(&network, condensed.as_ref(), opts.format, opts.rates);
    Ok(RunOutput {
        text,
        network,
        condensed,
    })
}

/// Writes a network, or its condensation when given, in `format`.
pub fn render(
    network: &ReactionNetwork,
    condensed: Option<&CondensedNetwork>,
    format: Format,
    rates: bool,
) -> String {
    let view = match condensed {
        Some(cn) => View::condensed(cn),
        None => View::detailed(network),
    };
    match format {
        Format::Crn => io::write_crn(&view, rates),
        Format::Json => io::write_json(network, condensed),
        Format::Dot => io::write_dot(&view),
        Format::Sbml => io::write_sbml_min(&view),
    }
}
