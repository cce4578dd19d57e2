use thiserror::Error;

/// Everything that can go wrong in the core library.
///
/// Validation failures carry the offending value so the CLI can report the
/// violated bound in a single line.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("attenuation eta = {0} outside [0, 1]")]
    EtaOutOfRange(f64),
    #[error("gain parameter |lambda| = {0} outside [0, 1)")]
    LambdaOutOfRange(f64),
    #[error("amplifier gain G = {0} must be finite and >= 1")]
    GainOutOfRange(f64),
    #[error("Kraus operator V_{n} is singular at eta = 0; use the total-loss branch")]
    SingularKraus { n: usize },
    #[error("Fock cutoff {dim} too small (need at least {min})")]
    CutoffTooSmall { dim: usize, min: usize },
    #[error(
        "truncation budget exceeded: |lambda| = {lambda} at cutoff {dim} leaves tail {tail:e} > 1e-12; need cutoff >= {required}"
    )]
    TruncationBudget {
        lambda: f64,
        dim: usize,
        tail: f64,
        required: usize,
    },
    #[error("invalid Schmidt spectrum: {0}")]
    InvalidSpectrum(&'static str),
    #[error("LOCC target must have finite Schmidt rank")]
    InfiniteTargetRank,
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("density trace {trace} outside [1 - 1e-12, 1]")]
    TraceOutOfRange { trace: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("normal-ordered powers p = {p}, q = {q} exceed safe window of cutoff {dim}")]
    PowersExceedWindow { p: usize, q: usize, dim: usize },
    #[error("qubit count N = {0} outside [1, 30]")]
    QubitCountOutOfRange(u32),
    #[error("eta * |lambda|^2 = 0: ratio r diverges, ebits dominate trivially")]
    DegenerateRatio,
    #[error("no crossover with r > 1 for N <= 30 (eta * |lambda|^2 = {0})")]
    NoCrossover(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
