use entdist_core::compare::emode_probability;
use entdist_core::{ComparisonPoint, MAX_QUBITS};
use rayon::prelude::*;

use crate::CliError;

/// Parameter grid; values are kept sorted ascending and deduplicated so the
/// row order is `(eta, lambda, N)` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    etas: Vec<f64>,
    lambdas: Vec<f64>,
    n_min: u32,
    n_max: u32,
}

impl SweepGrid {
    pub fn new(mut etas: Vec<f64>, mut lambdas: Vec<f64>, n_min: u32, n_max: u32) -> Result<Self, CliError> {
        if etas.is_empty() || lambdas.is_empty() {
            return Err(CliError::Grid("eta and lambda lists must be nonempty".into()));
        }
        if let Some(e) = etas.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(entdist_core::Error::EtaOutOfRange(*e).into());
        }
        if let Some(l) = lambdas.iter().find(|l| !(0.0..1.0).contains(*l)) {
            return Err(entdist_core::Error::LambdaOutOfRange(*l).into());
        }
        if n_min < 1 || n_max > MAX_QUBITS || n_min > n_max {
            return Err(CliError::Grid(format!(
                "N range [{n_min}, {n_max}] must satisfy 1 <= n_min <= n_max <= {MAX_QUBITS}"
            )));
        }
        etas.sort_by(f64::total_cmp);
        etas.dedup();
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup();
        Ok(SweepGrid {
            etas,
            lambdas,
            n_min,
            n_max,
        })
    }

    pub fn single(eta: f64, lambda: f64, n: u32) -> Result<Self, CliError> {
        Self::new(vec![eta], vec![lambda], n, n)
    }

    pub fn etas(&self) -> &[f64] {
        &self.etas
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn n_range(&self) -> (u32, u32) {
        (self.n_min, self.n_max)
    }

    pub fn len(&self) -> usize {
        self.etas.len() * self.lambdas.len() * (self.n_max - self.n_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid coordinates in output order.
    pub fn triples(&self) -> Vec<(f64, f64, u32)> {
        let mut out = Vec::with_capacity(self.len());
        for &eta in &self.etas {
            for &lambda in &self.lambdas {
                for n in self.n_min..=self.n_max {
                    out.push((eta, lambda, n));
                }
            }
        }
        out
    }

    /// Evaluates every point in parallel; results come back in grid order.
    pub fn evaluate(&self) -> Result<Vec<ComparisonPoint>, CliError> {
        self.triples()
            .into_par_iter()
            .map(|(eta, lambda, n)| emode_probability(lambda, eta, n).map_err(CliError::from))
            .collect()
    }
}
