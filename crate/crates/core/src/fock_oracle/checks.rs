use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::{apply_loss, apply_loss_single, SingleModeDensity, TruncatedBipartiteDensity};
use super::kraus::{kraus_operator, LossChannel};
use super::spectrum::min_eigenvalue;
use crate::error::{Error, Result};
use crate::states::{loss_rescaled, twin_beam_vector, BipartiteVector, TwinBeam};

/// Max-abs deviation of `sum_{n<=k} V_n^dagger V_n` from the identity on
/// the protected subspace `|0>..|k>`, with operators built at cutoff `dim`.
pub fn kraus_completeness_residual(channel: &LossChannel, protected: usize, dim: usize) -> Result<f64> {
    if dim < protected + 1 {
        return Err(Error::CutoffTooSmall {
            dim,
            min: protected + 1,
        });
    }
    let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..=protected {
        let v = kraus_operator(n, channel, dim)?;
        sum += v.matrix().adjoint() * v.matrix();
    }
    let mut worst: f64 = 0.0;
    for i in 0..=protected {
        for j in 0..=protected {
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((sum[(i, j)] - Complex64::new(id, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// `<m| a^dagger^p a^q |k>` on the truncated basis.
///
/// The entries are computed from ladder-operator matrix elements directly,
/// not as products of truncated `a` and `a^dagger`, so they are exact for
/// every `m, k < dim`.
pub fn normal_ordered_operator(p: usize, q: usize, dim: usize) -> DMatrix<Complex64> {
    let mut o = DMatrix::zeros(dim, dim);
    for k in q..dim {
        let mid = k - q;
        let m = mid + p;
        if m >= dim {
            continue;
        }
        let down: f64 = (mid + 1..=k).map(|j| j as f64).product();
        let up: f64 = (mid + 1..=m).map(|j| j as f64).product();
        o[(m, k)] = Complex64::new(libm::sqrt(down * up), 0.0);
    }
    o
}

fn expectation(rho: &DMatrix<Complex64>, op: &DMatrix<Complex64>) -> Complex64 {
    (rho * op).trace()
}

/// `|Tr[L[rho] a^dagger^p a^q] - eta^((p+q)/2) Tr[rho a^dagger^p a^q]|`.
///
/// Requires `p + q <= dim - 1`.
pub fn check_dual_normal_order(p: usize, q: usize, rho: &SingleModeDensity, channel: &LossChannel) -> Result<f64> {
    let dim = rho.dim();
    if p + q > dim - 1 {
        return Err(Error::PowersExceedWindow { p, q, dim });
    }
    let op = normal_ordered_operator(p, q, dim);
    let lossy = apply_loss_single(rho, channel);
    let lhs = expectation(lossy.matrix(), &op);
    let scale = libm::pow(channel.eta(), (p + q) as f64 / 2.0);
    let rhs = expectation(rho.matrix(), &op) * scale;
    Ok((lhs - rhs).norm())
}

/// Measurements from splitting a lossy twin beam into its surviving
/// twin-beam component `V_0 (x) V_0 |chi>` and a remainder `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwinBeamDecomposition {
    pub dim: usize,
    /// Weight of the `V_0 (x) V_0` component.
    pub q_measured: f64,
    /// Gain parameter of the surviving component, read off the ratio of its
    /// `|11>` and `|00>` amplitudes.
    pub survivor_lambda: f64,
    /// Gain parameter the component was compared against.
    pub reference_lambda: f64,
    /// Fidelity of the normalised `V_0 (x) V_0` component with the
    /// reference twin beam.
    pub overlap: f64,
    pub sigma_min_eig: f64,
    pub sigma_trace: f64,
    /// Trace of the truncated input, `1 - |lambda|^(2 dim)`.
    pub input_trace: f64,
}

/// Splits `L (x) L [|chi(lambda)><chi(lambda)|]`, the twin beam with the
/// same loss on both arms, on cutoff `dim`, and compares the `V_0 (x) V_0`
/// component with `|chi(sqrt(eta) lambda)>`.
///
/// Fails with [`Error::TruncationBudget`] (carrying the required cutoff)
/// when `|lambda|^(2 dim)` exceeds the truncation budget.
pub fn check_twinbeam_decomposition(tb: TwinBeam, channel: &LossChannel, dim: usize) -> Result<TwinBeamDecomposition> {
    let reference = loss_rescaled(tb, channel.eta())?;
    check_twinbeam_decomposition_arms(tb, channel, channel, reference, dim)
}

/// Same split with independent losses on the two arms and an explicit
/// reference for the surviving component.
///
/// `V_0 (x) V_0` multiplies the `|ii>` amplitude by `(eta_a eta_b)^(i/2)`,
/// so the survivor is `|chi(sqrt(eta_a eta_b) lambda)>` with weight
/// `(1 - lambda^2) / (1 - eta_a eta_b lambda^2)`.
pub fn check_twinbeam_decomposition_arms(
    tb: TwinBeam,
    loss_a: &LossChannel,
    loss_b: &LossChannel,
    reference: TwinBeam,
    dim: usize,
) -> Result<TwinBeamDecomposition> {
    let psi = twin_beam_vector(tb, dim)?;
    let rho = TruncatedBipartiteDensity::from_pure(&psi)?;
    let lossy = apply_loss(&rho, loss_a, loss_b);

    let va = kraus_operator(0, loss_a, dim)?;
    let vb = kraus_operator(0, loss_b, dim)?;
    let coeffs = va.matrix() * psi.coefficient_matrix() * vb.matrix().transpose();
    let survivor = BipartiteVector::from_coefficients(&coeffs);
    let q_measured = survivor.norm_sqr();
    let survivor_lambda = if dim > 1 && coeffs[(0, 0)].norm() > 0.0 {
        coeffs[(1, 1)].norm() / coeffs[(0, 0)].norm()
    } else {
        0.0
    };

    let target = twin_beam_vector(reference, dim)?;
    let overlap = if q_measured > 0.0 {
        target.inner(&survivor).norm_sqr() / (q_measured * target.norm_sqr())
    } else {
        0.0
    };

    let sigma = lossy.into_matrix() - survivor.projector();
    Ok(TwinBeamDecomposition {
        dim,
        q_measured,
        survivor_lambda,
        reference_lambda: reference.lambda(),
        overlap,
        sigma_min_eig: min_eigenvalue(&sigma),
        sigma_trace: sigma.trace().re,
        input_trace: rho.trace(),
    })
}
