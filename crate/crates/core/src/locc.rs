//! Optimal LOCC conversion between bipartite pure states.
//!
//! The maximal single-copy probability of turning `|chi>` into `|phi>` is
//! the smallest ratio of Schmidt tail sums,
//! `p* = min_i T_chi(i) / T_phi(i)`, with the minimum over the indices where
//! the target tail is nonzero. For a twin beam damaged by loss
//! (`x = eta |lambda|^2`) converted to the rank-`M` maximally entangled
//! state this reads `p* = min_{0 <= i < M} M x^i / (M - i)`, bounded above by
//! `p' = M x^(M-1)`.
//!
//! When `x <= 1/e` the bound is tight: writing `k = M - 1 - i`, the ratio of
//! the `i`-th term to the last one is `x^-k / (k + 1) >= e^k / (k + 1) >= 1`.

use crate::error::{Error, Result};
use crate::states::{powi, SchmidtSpectrum, TwinBeam};
use crate::{check_eta, check_lambda};

/// Source and target spectra of a conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionQuery {
    pub source: SchmidtSpectrum,
    pub target: SchmidtSpectrum,
}

/// Outcome of an optimal conversion.
///
/// `p_prime` is the closed-form bound `M x^(M-1)` and is only set by the
/// twin-beam specialisation. It is a bound expression, not a probability,
/// and exceeds one once `x` is large enough. Log values are carried so that
/// callers can work past the underflow of `x^(M-1)` at large `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversionResult {
    pub p_star: f64,
    pub ln_p_star: f64,
    /// Index attaining the minimum; ties go to the smallest index.
    pub argmin_index: usize,
    pub p_prime: Option<f64>,
    pub ln_p_prime: Option<f64>,
}

/// Tail ratio at index `i`. A uniform target tail is the rational
/// `(M - i) / M`, so it is applied as a multiply-then-divide.
fn tail_ratio(source: &SchmidtSpectrum, target: &SchmidtSpectrum, i: usize) -> f64 {
    match target {
        SchmidtSpectrum::FiniteUniform { rank } => source.tail(i) * *rank as f64 / (*rank - i) as f64,
        _ => source.tail(i) / target.tail(i),
    }
}

/// General min-over-tails formula by direct enumeration of every index with
/// a nonzero target tail.
pub fn vidal_probability(query: &ConversionQuery) -> Result<ConversionResult> {
    let rank = query.target.rank().ok_or(Error::InfiniteTargetRank)?;
    let mut best = (0, tail_ratio(&query.source, &query.target, 0));
    for i in 1..rank {
        let r = tail_ratio(&query.source, &query.target, i);
        if r < best.1 {
            best = (i, r);
        }
    }
    Ok(ConversionResult {
        p_star: best.1,
        ln_p_star: libm::log(best.1),
        argmin_index: best.0,
        p_prime: None,
        ln_p_prime: None,
    })
}

/// Up to this rank the closed form enumerates every index; above it only a
/// window around the analytic minimiser is scanned.
const ENUMERATION_LIMIT: usize = 1 << 16;
const WINDOW: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Term {
    index: usize,
    value: f64,
    ln: f64,
}

impl Term {
    fn new(x: f64, rank: usize, index: usize) -> Self {
        let m = rank as f64;
        let value = m * powi(x, index) / (rank - index) as f64;
        let ln = if index == 0 {
            0.0
        } else {
            libm::log(m) + index as f64 * libm::log(x) - libm::log((rank - index) as f64)
        };
        Term { index, value, ln }
    }

    fn less_than(&self, other: &Term) -> bool {
        let normal = |v: f64| v >= f64::MIN_POSITIVE;
        if normal(self.value) && normal(other.value) {
            self.value < other.value
        } else {
            self.ln < other.ln
        }
    }
}

fn argmin<I: Iterator<Item = usize>>(x: f64, rank: usize, indices: I) -> Term {
    let mut best: Option<Term> = None;
    for i in indices {
        let t = Term::new(x, rank, i);
        match best {
            Some(b) if !t.less_than(&b) => {}
            _ => best = Some(t),
        }
    }
    best.expect("index range is nonempty")
}

/// Closed-form conversion of a geometric spectrum with ratio `x` into the
/// rank-`M` maximally entangled state. Returns the same `p*` as
/// [`vidal_probability`] on `(Geometric(x), FiniteUniform(M))` together
/// with the bound `p'`.
pub fn twinbeam_to_maxent(x: f64, rank: usize) -> Result<ConversionResult> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidSpectrum("effective ratio x must lie in [0, 1)"));
    }
    if rank == 0 {
        return Err(Error::InvalidSpectrum("target rank must be >= 1"));
    }
    let best = if x == 0.0 {
        // Vacuum source: every term past the first vanishes.
        argmin(x, rank, 0..rank.min(2))
    } else if rank <= ENUMERATION_LIMIT {
        argmin(x, rank, 0..rank)
    } else {
        windowed_argmin(x, rank)
    };
    Ok(ConversionResult {
        p_star: best.value,
        ln_p_star: best.ln,
        argmin_index: best.index,
        p_prime: Some(rank as f64 * powi(x, rank - 1)),
        ln_p_prime: Some(ln_bound(x, rank)),
    })
}

/// `ln(M x^(M-1))` without forming the power.
fn ln_bound(x: f64, rank: usize) -> f64 {
    if rank == 1 {
        0.0
    } else {
        libm::log(rank as f64) + (rank - 1) as f64 * libm::log(x)
    }
}

/// The terms are log-convex in `i` and increase from `i` to `i + 1` exactly
/// when `M - i <= 1 / (1 - x)`, so the minimiser sits near
/// `M - floor(1 / (1 - x))`.
fn windowed_argmin(x: f64, rank: usize) -> Term {
    let turn = libm::floor(1.0 / (1.0 - x));
    let centre = if turn >= rank as f64 { 0 } else { rank - turn as usize };
    let lo = centre.saturating_sub(WINDOW);
    let hi = (centre + WINDOW).min(rank - 1);
    argmin(x, rank, lo..=hi)
}

/// `x = eta |lambda|^2`, the geometric ratio of a twin beam after loss.
pub fn effective_ratio(lambda_mag: f64, eta: f64) -> Result<f64> {
    check_lambda(lambda_mag)?;
    check_eta(eta)?;
    Ok(eta * lambda_mag * lambda_mag)
}

/// Converts a lossy twin beam into the rank-`M` maximally entangled state.
pub fn twin_beam_conversion(tb: TwinBeam, eta: f64, rank: usize) -> Result<ConversionResult> {
    twinbeam_to_maxent(effective_ratio(tb.lambda(), eta)?, rank)
}

/// Whether `|lambda| <= (eta e)^(-1/2)`, i.e. `x <= 1/e`, where the bound
/// `p'` is attained for every target rank.
pub fn threshold_holds(lambda_mag: f64, eta: f64) -> Result<bool> {
    let x = effective_ratio(lambda_mag, eta)?;
    Ok(x <= libm::exp(-1.0))
}
