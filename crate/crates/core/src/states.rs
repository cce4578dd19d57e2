//! Analytic models of the three bipartite pure states that enter the
//! comparison: the single-photon ebit, the twin beam, and the
//! `M`-dimensional maximally entangled target. Each comes with its
//! squared Schmidt spectrum and exact tail sums.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{check_eta, check_lambda};

/// Truncation-loss budget shared by every Fock-space entry point.
pub const TAIL_TOL: f64 = 1e-12;

/// Tolerance on the normalisation of an explicit spectrum.
const SPECTRUM_SUM_TOL: f64 = 1e-12;

/// Ordered squared Schmidt coefficients with exact tail sums.
///
/// All kinds are nonincreasing and normalised. `Geometric { ratio: x }` has
/// coefficients `(1 - x) x^n` (the twin beam with `x = |lambda|^2`).
#[derive(Debug, Clone, PartialEq)]
pub enum SchmidtSpectrum {
    FiniteUniform { rank: usize },
    Geometric { ratio: f64 },
    Explicit(ExplicitSpectrum),
}

/// A finite list of squared coefficients, sorted nonincreasing, with
/// precomputed suffix sums.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitSpectrum {
    coeffs: Vec<f64>,
    // tails[i] = sum of coeffs[i..]; one extra trailing zero.
    tails: Vec<f64>,
}

impl ExplicitSpectrum {
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }
}

impl SchmidtSpectrum {
    pub fn uniform(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpectrum("uniform rank must be >= 1"));
        }
        Ok(SchmidtSpectrum::FiniteUniform { rank })
    }

    pub fn geometric(ratio: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&ratio) {
            return Err(Error::InvalidSpectrum("geometric ratio must lie in [0, 1)"));
        }
        Ok(SchmidtSpectrum::Geometric { ratio })
    }

    /// Builds an explicit spectrum. The list is sorted nonincreasing; it
    /// must be nonnegative and sum to one within `1e-12`.
    pub fn explicit(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpectrum("explicit list is empty"));
        }
        if coeffs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidSpectrum("coefficients must be finite and nonnegative"));
        }
        coeffs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
        let mut tails = vec![0.0; coeffs.len() + 1];
        for i in (0..coeffs.len()).rev() {
            tails[i] = tails[i + 1] + coeffs[i];
        }
        if (tails[0] - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidSpectrum("coefficients must sum to 1 within 1e-12"));
        }
        Ok(SchmidtSpectrum::Explicit(ExplicitSpectrum { coeffs, tails }))
    }

    /// The `i`-th squared Schmidt coefficient.
    pub fn coefficient(&self, i: usize) -> f64 {
        match self {
            SchmidtSpectrum::FiniteUniform { rank } => {
                if i < *rank {
                    1.0 / *rank as f64
                } else {
                    0.0
                }
            }
            SchmidtSpectrum::Geometric { ratio } => (1.0 - ratio) * powi(*ratio, i),
            SchmidtSpectrum::Explicit(e) => e.coeffs.get(i).copied().unwrap_or(0.0),
        }
    }

    /// Tail mass `sum_{n >= i} c_n`, in closed form for the analytic kinds.
    /// `tail(0)` is exactly one.
    pub fn tail(&self, i: usize) -> f64 {
        if i == 0 {
            return 1.0;
        }
        match self {
            SchmidtSpectrum::FiniteUniform { rank } => {
                if i <= *rank {
                    (*rank - i) as f64 / *rank as f64
                } else {
                    0.0
                }
            }
            SchmidtSpectrum::Geometric { ratio } => powi(*ratio, i),
            SchmidtSpectrum::Explicit(e) => e.tails.get(i).copied().unwrap_or(0.0),
        }
    }

    /// Number of nonzero coefficients, `None` for an infinite geometric tail.
    pub fn rank(&self) -> Option<usize> {
        match self {
            SchmidtSpectrum::FiniteUniform { rank } => Some(*rank),
            SchmidtSpectrum::Geometric { ratio } => (*ratio == 0.0).then_some(1),
            SchmidtSpectrum::Explicit(e) => Some(e.coeffs.iter().filter(|c| **c > 0.0).count()),
        }
    }
}

/// `x^i` with an integer exponent.
pub(crate) fn powi(x: f64, i: usize) -> f64 {
    libm::pow(x, i as f64)
}

/// Twin beam (two-mode squeezed vacuum) with gain parameter `|lambda| < 1`.
///
/// Only the magnitude of the complex gain parameter enters any observable
/// quantity here, so the phase is dropped at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwinBeam {
    lambda: f64,
}

impl TwinBeam {
    pub fn new(lambda_mag: f64) -> Result<Self> {
        check_lambda(lambda_mag)?;
        Ok(TwinBeam { lambda: lambda_mag })
    }

    /// Builds from a complex gain parameter; only `|lambda|` is kept.
    pub fn from_complex(lambda: Complex64) -> Result<Self> {
        Self::new(lambda.norm())
    }

    /// Inverts `G = 1 / (1 - |lambda|^2)`.
    pub fn from_gain(gain: f64) -> Result<Self> {
        if !gain.is_finite() || gain < 1.0 {
            return Err(Error::GainOutOfRange(gain));
        }
        Self::new(libm::sqrt(1.0 - 1.0 / gain))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Parametric amplifier gain `G = (1 - |lambda|^2)^-1`.
    pub fn gain(&self) -> f64 {
        1.0 / (1.0 - self.lambda * self.lambda)
    }

    pub fn spectrum(&self) -> SchmidtSpectrum {
        SchmidtSpectrum::Geometric {
            ratio: self.lambda * self.lambda,
        }
    }

    /// Smallest cutoff whose neglected tail `|lambda|^(2 dim)` is within
    /// [`TAIL_TOL`].
    pub fn required_cutoff(&self) -> usize {
        required_cutoff(self.lambda)
    }
}

pub(crate) fn required_cutoff(lambda: f64) -> usize {
    let x = lambda * lambda;
    if x == 0.0 {
        return 1;
    }
    let mut dim = libm::ceil(libm::log(TAIL_TOL) / libm::log(x)).max(1.0) as usize;
    // Nudge across any rounding in the logarithm estimate.
    while dim > 1 && powi(x, dim - 1) <= TAIL_TOL {
        dim -= 1;
    }
    while powi(x, dim) > TAIL_TOL {
        dim += 1;
    }
    dim
}

/// Twin beam after loss `eta` on both arms keeps the form of a twin beam
/// with `lambda -> sqrt(eta) lambda` (the surviving component).
pub fn loss_rescaled(tb: TwinBeam, eta: f64) -> Result<TwinBeam> {
    check_eta(eta)?;
    Ok(TwinBeam {
        lambda: libm::sqrt(eta) * tb.lambda,
    })
}

/// Maximally entangled state of Schmidt rank `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxEntangled {
    rank: usize,
}

impl MaxEntangled {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpectrum("maximally entangled rank must be >= 1"));
        }
        Ok(MaxEntangled { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn spectrum(&self) -> SchmidtSpectrum {
        SchmidtSpectrum::FiniteUniform { rank: self.rank }
    }

    /// `M^{-1/2} sum_{i<M} |i>|i>` on a cutoff of `dim >= M` per mode.
    pub fn vector(&self, dim: usize) -> Result<BipartiteVector> {
        if dim < self.rank {
            return Err(Error::CutoffTooSmall { dim, min: self.rank });
        }
        let amp = 1.0 / libm::sqrt(self.rank as f64);
        let mut v = BipartiteVector::zeros(dim, dim);
        for i in 0..self.rank {
            v.set(i, i, Complex64::new(amp, 0.0));
        }
        Ok(v)
    }
}

/// Pure two-mode state on a truncated Fock basis, stored with mode `a` as
/// the slow index: `|k_a, k_b>` sits at `k_a * dim_b + k_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteVector {
    dim_a: usize,
    dim_b: usize,
    amps: DVector<Complex64>,
}

impl BipartiteVector {
    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        BipartiteVector {
            dim_a,
            dim_b,
            amps: DVector::zeros(dim_a * dim_b),
        }
    }

    /// Builds from the `dim_a x dim_b` coefficient matrix `C[k_a, k_b]`.
    pub fn from_coefficients(c: &DMatrix<Complex64>) -> Self {
        let (dim_a, dim_b) = c.shape();
        let amps = DVector::from_fn(dim_a * dim_b, |idx, _| c[(idx / dim_b, idx % dim_b)]);
        BipartiteVector { dim_a, dim_b, amps }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, ka: usize, kb: usize) -> Complex64 {
        self.amps[ka * self.dim_b + kb]
    }

    fn set(&mut self, ka: usize, kb: usize, value: Complex64) {
        self.amps[ka * self.dim_b + kb] = value;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn coefficient_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim_a, self.dim_b, |i, j| self.amplitude(i, j))
    }

    /// Unnormalised projector `|v><v|`.
    pub fn projector(&self) -> DMatrix<Complex64> {
        &self.amps * self.amps.adjoint()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &BipartiteVector) -> Complex64 {
        self.amps.dotc(&other.amps)
    }
}

/// The single-photon ebit `(|0>_a|1>_b + |1>_a|0>_b) / sqrt(2)`.
pub fn ebit_vector(dim: usize) -> Result<BipartiteVector> {
    if dim < 2 {
        return Err(Error::CutoffTooSmall { dim, min: 2 });
    }
    let amp = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut v = BipartiteVector::zeros(dim, dim);
    v.set(0, 1, amp);
    v.set(1, 0, amp);
    Ok(v)
}

/// `sqrt(1 - |lambda|^2) sum_i lambda^i |i>|i>` truncated at `dim` per mode.
///
/// The truncated vector is not renormalised: its norm falls short of one by
/// exactly the neglected tail `|lambda|^(2 dim)`, which must not exceed
/// [`TAIL_TOL`].
pub fn twin_beam_vector(tb: TwinBeam, dim: usize) -> Result<BipartiteVector> {
    if dim == 0 {
        return Err(Error::CutoffTooSmall { dim, min: 1 });
    }
    let x = tb.lambda * tb.lambda;
    let tail = powi(x, dim);
    if tail > TAIL_TOL {
        return Err(Error::TruncationBudget {
            lambda: tb.lambda,
            dim,
            tail,
            required: tb.required_cutoff(),
        });
    }
    let norm = libm::sqrt(1.0 - x);
    let mut v = BipartiteVector::zeros(dim, dim);
    for i in 0..dim {
        v.set(i, i, Complex64::new(norm * powi(tb.lambda, i), 0.0));
    }
    Ok(v)
}
