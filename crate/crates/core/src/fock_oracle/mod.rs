//! Brute-force truncated-Fock-space linear algebra.
//!
//! Dense matrices on `|0>..|dim-1>` per mode, used to check the closed forms
//! of the other modules from first principles: Kraus operators of the
//! photon-loss channel, their action on one- and two-mode states, the
//! scaling of normal-ordered moments, and the decomposition of lossy ebits
//! and twin beams.
//!
//! The loss channel never raises photon number, so a truncated space is
//! mapped into itself and the Kraus sum `sum_{n < dim} V_n rho V_n^dagger`
//! is exact there. The only approximation is the truncation of the input.

mod checks;
mod density;
mod kraus;
mod spectrum;

pub use checks::{
    check_dual_normal_order, check_twinbeam_decomposition, check_twinbeam_decomposition_arms,
    kraus_completeness_residual, normal_ordered_operator, TwinBeamDecomposition,
};
pub use density::{apply_loss, apply_loss_single, SingleModeDensity, TruncatedBipartiteDensity};
pub use kraus::{annihilation_operator, kraus_operator, FockOperator, LossChannel};
pub use spectrum::{hermitian_eigenvalues, min_eigenvalue};

/// Elementwise Hermiticity tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-10;
