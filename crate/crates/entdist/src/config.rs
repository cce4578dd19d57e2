use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::sweep::SweepGrid;
use crate::CliError;

/// The grid shipped with the tool; reproduces the default comparison with
/// no arguments.
pub const DEFAULT_SWEEP: &str = include_str!("../config/default_sweep.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub etas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub n_min: u32,
    pub n_max: u32,
}

impl SweepConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config {
            path: origin.to_string(),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_SWEEP, "<builtin>").expect("builtin sweep config parses")
    }

    pub fn into_grid(self) -> Result<SweepGrid, CliError> {
        SweepGrid::new(self.etas, self.lambdas, self.n_min, self.n_max)
    }
}
