//! Core numerics for comparing two ways of sharing `N` ebits across a lossy
//! optical link: `N` single-photon ebits, or one twin beam upgraded to a
//! `2^N`-dimensional maximally entangled state by optimal LOCC.
//!
//! * [`states`]: ebit, twin beam and maximally entangled states with their
//!   Schmidt spectra.
//! * [`locc`]: optimal single-copy conversion probability between pure
//!   states and its twin-beam specialisation.
//! * [`compare`]: success probabilities of both schemes and the ratio bound.
//! * [`fock_oracle`]: dense truncated-Fock-space linear algebra that checks
//!   the analytic results independently.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod compare;
pub mod error;
pub mod fock_oracle;
pub mod locc;
pub mod states;

pub use compare::{ComparisonPoint, Ratio};
pub use error::{Error, Result};
pub use fock_oracle::{FockOperator, LossChannel, SingleModeDensity, TruncatedBipartiteDensity};
pub use locc::{ConversionQuery, ConversionResult};
pub use states::{BipartiteVector, MaxEntangled, SchmidtSpectrum, TwinBeam};

/// Largest supported qubit count; `M = 2^N` must stay indexable.
pub const MAX_QUBITS: u32 = 30;

pub(crate) fn check_eta(eta: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&eta) {
        Ok(eta)
    } else {
        Err(Error::EtaOutOfRange(eta))
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<f64> {
    if (0.0..1.0).contains(&lambda) {
        Ok(lambda)
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

pub(crate) fn check_qubits(n: u32) -> Result<u32> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(n)
    } else {
        Err(Error::QubitCountOutOfRange(n))
    }
}
