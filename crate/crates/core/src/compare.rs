//! Success probabilities of the two ways of sharing `N` ebits over a lossy
//! link, and the ratio bound comparing them.
//!
//! * `p_b = eta^N` for `N` single-photon ebits.
//! * `p_C = q p*` for one twin beam: `q` is the probability that the beam
//!   survives as a (rescaled) twin beam, `p*` the optimal LOCC probability
//!   of reaching the rank-`2^N` maximally entangled state. The same quantity
//!   is sometimes written `p_m`.
//! * `r = p_b / p'` is a lower bound on the true advantage `p_b / p_C`:
//!   `r <= p_b / (q p') <= p_b / (q p*)`.
//!
//! `p'` contains `x^(2^N - 1)`, which underflows long before `N = 30`, so
//! every quantity also carries its natural logarithm and all comparisons are
//! done on logs.

use crate::error::{Error, Result};
use crate::locc::{effective_ratio, twinbeam_to_maxent};
use crate::{check_eta, check_lambda, check_qubits};

/// Relative slack allowed in [`chain_check`].
pub const CHAIN_REL_TOL: f64 = 1e-12;

/// `r` together with `ln r`; `r` itself overflows to infinity quickly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub r: f64,
    pub ln_r: f64,
}

impl Ratio {
    pub fn exceeds_one(&self) -> bool {
        self.ln_r > 0.0
    }
}

/// One `(N, eta, |lambda|)` point with every derived quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonPoint {
    pub n: u32,
    /// Target rank `M = 2^N`.
    pub m: u64,
    pub eta: f64,
    pub lambda: f64,
    /// `eta |lambda|^2`.
    pub x: f64,
    pub p_b: f64,
    pub q: f64,
    pub p_star: f64,
    pub argmin_index: usize,
    /// Bound `M x^(M-1)`; may exceed one.
    pub p_prime: f64,
    /// `q p*`, also known as `p_m`.
    pub p_c: f64,
    /// `None` when `x = 0`, where `r` diverges.
    pub ratio: Option<Ratio>,
    pub ln_p_b: f64,
    pub ln_q: f64,
    pub ln_p_star: f64,
    pub ln_p_prime: f64,
    pub ln_p_c: f64,
}

impl ComparisonPoint {
    pub fn evaluate(eta: f64, lambda_mag: f64, n: u32) -> Result<Self> {
        emode_probability(lambda_mag, eta, n)
    }

    /// `ln(p_b / p_C)`, the log of the true advantage of ebits.
    pub fn ln_advantage(&self) -> f64 {
        self.ln_p_b - self.ln_p_c
    }
}

/// `p_b = eta^N`.
pub fn ebit_probability(eta: f64, n: u32) -> Result<f64> {
    check_eta(eta)?;
    check_qubits(n)?;
    Ok(libm::pow(eta, n as f64))
}

/// `q = (1 - |lambda|^2) / (1 - eta |lambda|^2)`.
pub fn survival_q(lambda_mag: f64, eta: f64) -> Result<f64> {
    let x = effective_ratio(lambda_mag, eta)?;
    Ok((1.0 - lambda_mag * lambda_mag) / (1.0 - x))
}

/// Evaluates the twin-beam scheme at `(|lambda|, eta, N)` and fills in
/// every field of the comparison.
pub fn emode_probability(lambda_mag: f64, eta: f64, n: u32) -> Result<ComparisonPoint> {
    check_lambda(lambda_mag)?;
    check_eta(eta)?;
    check_qubits(n)?;
    let m = 1u64 << n;
    let x = eta * lambda_mag * lambda_mag;
    let q = survival_q(lambda_mag, eta)?;
    let p_b = ebit_probability(eta, n)?;
    let conv = twinbeam_to_maxent(x, m as usize)?;
    let p_star = conv.p_star;
    let p_c = q * p_star;
    let ln_q = libm::log(q);
    let ratio = if x > 0.0 {
        Some(ratio_r(eta, lambda_mag, n)?)
    } else {
        None
    };
    Ok(ComparisonPoint {
        n,
        m,
        eta,
        lambda: lambda_mag,
        x,
        p_b,
        q,
        p_star,
        argmin_index: conv.argmin_index,
        p_prime: conv.p_prime.unwrap_or(f64::NAN),
        p_c,
        ratio,
        ln_p_b: n as f64 * libm::log(eta),
        ln_q,
        ln_p_star: conv.ln_p_star,
        ln_p_prime: conv.ln_p_prime.unwrap_or(f64::NAN),
        ln_p_c: ln_q + conv.ln_p_star,
    })
}

/// `r = (eta/2)^N (eta |lambda|^2)^-(2^N - 1)`, evaluated as
/// `exp((1 - 2^N) ln x + N ln(eta/2))`.
pub fn ratio_r(eta: f64, lambda_mag: f64, n: u32) -> Result<Ratio> {
    let x = effective_ratio(lambda_mag, eta)?;
    check_qubits(n)?;
    if x == 0.0 {
        return Err(Error::DegenerateRatio);
    }
    let ln_r = (1.0 - libm::ldexp(1.0, n as i32)) * libm::log(x) + n as f64 * libm::log(eta / 2.0);
    Ok(Ratio {
        r: libm::exp(ln_r),
        ln_r,
    })
}

/// Smallest `N >= 1` with `r > 1`, by linear scan up to [`crate::MAX_QUBITS`].
pub fn crossover_n(eta: f64, lambda_mag: f64) -> Result<u32> {
    let x = effective_ratio(lambda_mag, eta)?;
    if x == 0.0 {
        return Err(Error::DegenerateRatio);
    }
    for n in 1..=crate::MAX_QUBITS {
        if ratio_r(eta, lambda_mag, n)?.exceeds_one() {
            return Ok(n);
        }
    }
    Err(Error::NoCrossover(x))
}

/// Result of checking `r <= p_b / (q p') <= p_b / p_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOutcome {
    Holds,
    Violated,
    /// `p_C = 0`: the right-hand side is infinite.
    Vacuous,
}

impl ChainOutcome {
    pub fn is_satisfied(self) -> bool {
        !matches!(self, ChainOutcome::Violated)
    }
}

/// Checks the inequality chain on logs with [`CHAIN_REL_TOL`] relative slack.
pub fn chain_check(point: &ComparisonPoint) -> ChainOutcome {
    let ratio = match point.ratio {
        Some(r) if point.ln_p_c > f64::NEG_INFINITY => r,
        _ => return ChainOutcome::Vacuous,
    };
    let slack = libm::log1p(CHAIN_REL_TOL);
    let middle = point.ln_p_b - point.ln_q - point.ln_p_prime;
    let right = point.ln_advantage();
    if ratio.ln_r <= middle + slack && middle <= right + slack {
        ChainOutcome::Holds
    } else {
        ChainOutcome::Violated
    }
}
