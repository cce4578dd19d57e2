use nalgebra::DMatrix;
use num_complex::Complex64;

use super::kraus::LossChannel;
use super::spectrum::min_eigenvalue;
use super::{HERMITIAN_TOL, PSD_TOL};
use crate::error::{Error, Result};
use crate::states::{BipartiteVector, TAIL_TOL};

// Rounding slack on the upper trace bound.
const TRACE_SLACK: f64 = 1e-14;

fn validate(matrix: &DMatrix<Complex64>) -> Result<()> {
    let (r, c) = matrix.shape();
    if r != c {
        return Err(Error::DimensionMismatch { expected: r, found: c });
    }
    let mut deviation: f64 = 0.0;
    for j in 0..r {
        for i in j..r {
            deviation = deviation.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = matrix.trace().re;
    if !(1.0 - TAIL_TOL - TRACE_SLACK..=1.0 + TRACE_SLACK).contains(&trace) {
        return Err(Error::TraceOutOfRange { trace });
    }
    let min_eigenvalue = min_eigenvalue(matrix);
    if min_eigenvalue < PSD_TOL {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

/// Density matrix of one truncated mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeDensity {
    matrix: DMatrix<Complex64>,
}

impl SingleModeDensity {
    /// Validates Hermiticity, trace in `[1 - 1e-12, 1]` and positivity.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() == 0 {
            return Err(Error::CutoffTooSmall { dim: 0, min: 1 });
        }
        validate(&matrix)?;
        Ok(SingleModeDensity { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr[rho a^dagger a]`.
    pub fn mean_photons(&self) -> f64 {
        (0..self.dim()).map(|k| k as f64 * self.matrix[(k, k)].re).sum()
    }
}

/// Density matrix of two truncated modes, indexed `k_a * dim_b + k_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBipartiteDensity {
    dim_a: usize,
    dim_b: usize,
    matrix: DMatrix<Complex64>,
}

impl TruncatedBipartiteDensity {
    /// Validates shape, Hermiticity, trace in `[1 - 1e-12, 1]` and
    /// positivity.
    pub fn new(dim_a: usize, dim_b: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::CutoffTooSmall { dim: 0, min: 1 });
        }
        if matrix.nrows() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                found: matrix.nrows(),
            });
        }
        validate(&matrix)?;
        Ok(TruncatedBipartiteDensity { dim_a, dim_b, matrix })
    }

    /// `|v><v|`; the trace is `<v|v>`, which must meet the truncation budget.
    pub fn from_pure(v: &BipartiteVector) -> Result<Self> {
        let (dim_a, dim_b) = v.dims();
        Self::new(dim_a, dim_b, v.projector())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.matrix)
    }

    /// `Tr[rho a^dagger a]` for mode `a`.
    pub fn mean_photons_a(&self) -> f64 {
        self.diagonal_weighted(|ka, _| ka as f64)
    }

    /// `Tr[rho b^dagger b]` for mode `b`.
    pub fn mean_photons_b(&self) -> f64 {
        self.diagonal_weighted(|_, kb| kb as f64)
    }

    fn diagonal_weighted(&self, w: impl Fn(usize, usize) -> f64) -> f64 {
        let mut s = 0.0;
        for ka in 0..self.dim_a {
            for kb in 0..self.dim_b {
                let i = ka * self.dim_b + kb;
                s += w(ka, kb) * self.matrix[(i, i)].re;
            }
        }
        s
    }

    /// Reduced state of mode `a`.
    pub fn reduced_a(&self) -> DMatrix<Complex64> {
        let db = self.dim_b;
        DMatrix::from_fn(self.dim_a, self.dim_a, |i, j| {
            (0..db).map(|kb| self.matrix[(i * db + kb, j * db + kb)]).sum()
        })
    }
}

/// Applies loss `eta_a` to mode `a` and `eta_b` to mode `b`.
///
/// Each mode is damped in turn with the Kraus amplitudes
/// `<k-n|V_n|k>`, visiting only the nonzero entries of each `V_n`.
pub fn apply_loss(
    rho: &TruncatedBipartiteDensity,
    loss_a: &LossChannel,
    loss_b: &LossChannel,
) -> TruncatedBipartiteDensity {
    let (da, db) = (rho.dim_a, rho.dim_b);
    let after_a = damp_mode_a(&rho.matrix, da, db, loss_a);
    let matrix = damp_mode_b(&after_a, da, db, loss_b);
    TruncatedBipartiteDensity {
        dim_a: da,
        dim_b: db,
        matrix,
    }
}

/// Applies loss to a single mode.
pub fn apply_loss_single(rho: &SingleModeDensity, loss: &LossChannel) -> SingleModeDensity {
    SingleModeDensity {
        matrix: damp_mode_a(&rho.matrix, rho.dim(), 1, loss),
    }
}

fn damp_mode_a(m: &DMatrix<Complex64>, da: usize, db: usize, loss: &LossChannel) -> DMatrix<Complex64> {
    if loss.eta() == 1.0 {
        return m.clone();
    }
    let amps = loss.amplitudes(da);
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for ka in 0..da {
        for la in 0..da {
            for n in 0..=ka.min(la) {
                let w = amps[n][ka] * amps[n][la];
                if w == 0.0 {
                    continue;
                }
                for kb in 0..db {
                    for lb in 0..db {
                        out[((ka - n) * db + kb, (la - n) * db + lb)] += m[(ka * db + kb, la * db + lb)] * w;
                    }
                }
            }
        }
    }
    out
}

fn damp_mode_b(m: &DMatrix<Complex64>, da: usize, db: usize, loss: &LossChannel) -> DMatrix<Complex64> {
    if loss.eta() == 1.0 {
        return m.clone();
    }
    let amps = loss.amplitudes(db);
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for kb in 0..db {
        for lb in 0..db {
            for n in 0..=kb.min(lb) {
                let w = amps[n][kb] * amps[n][lb];
                if w == 0.0 {
                    continue;
                }
                for ka in 0..da {
                    for la in 0..da {
                        out[(ka * db + kb - n, la * db + lb - n)] += m[(ka * db + kb, la * db + lb)] * w;
                    }
                }
            }
        }
    }
    out
}
