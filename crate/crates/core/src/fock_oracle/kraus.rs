use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::check_eta;
use crate::error::{Error, Result};

/// Single-mode photon loss with energy transmissivity `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel {
    eta: f64,
}

impl LossChannel {
    pub fn new(eta: f64) -> Result<Self> {
        Ok(LossChannel { eta: check_eta(eta)? })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Table `A[n][k] = <k-n| V_n |k>` for `n, k < dim`.
    ///
    /// Expanding `V_n = (1/eta - 1)^(n/2) / sqrt(n!) a^n eta^(a^dagger a / 2)`
    /// on `|k>` gives `sqrt(C(k, n)) (1 - eta)^(n/2) eta^((k - n)/2)`, which
    /// stays finite as `eta -> 0`. At `eta = 0` the channel sends every
    /// state to vacuum, `A[n][k] = delta_nk`.
    pub(crate) fn amplitudes(&self, dim: usize) -> Vec<Vec<f64>> {
        let mut table = vec![vec![0.0; dim]; dim];
        if self.eta == 0.0 {
            for (n, row) in table.iter_mut().enumerate() {
                row[n] = 1.0;
            }
            return table;
        }
        for (n, row) in table.iter_mut().enumerate() {
            let loss = libm::pow(1.0 - self.eta, n as f64 / 2.0);
            for (k, a) in row.iter_mut().enumerate().skip(n) {
                *a = libm::sqrt(binomial(k, n)) * loss * libm::pow(self.eta, (k - n) as f64 / 2.0);
            }
        }
        table
    }
}

/// `C(k, n)` as a float; exact while it fits in 53 bits.
fn binomial(k: usize, n: usize) -> f64 {
    let n = n.min(k - n);
    let mut c = 1.0;
    for j in 0..n {
        c = c * (k - j) as f64 / (j + 1) as f64;
    }
    c
}

/// Dense operator on a single truncated mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r == 0 {
            return Err(Error::CutoffTooSmall { dim: 0, min: 1 });
        }
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, found: c });
        }
        Ok(FockOperator { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * v
    }
}

/// The loss Kraus operator `V_n` truncated to `dim` levels.
///
/// `V_n` with `n >= 1` does not exist at `eta = 0` (its prefactor
/// diverges); [`apply_loss`](super::apply_loss) handles total loss on its
/// own branch.
pub fn kraus_operator(n: usize, channel: &LossChannel, dim: usize) -> Result<FockOperator> {
    if dim == 0 {
        return Err(Error::CutoffTooSmall { dim, min: 1 });
    }
    if channel.eta == 0.0 && n >= 1 {
        return Err(Error::SingularKraus { n });
    }
    let mut m = DMatrix::zeros(dim, dim);
    if n < dim {
        let amps = channel.amplitudes(dim);
        for k in n..dim {
            m[(k - n, k)] = Complex64::new(amps[n][k], 0.0);
        }
    }
    FockOperator::new(m)
}

/// Truncated annihilation operator, `a|k> = sqrt(k)|k-1>`.
pub fn annihilation_operator(dim: usize) -> Result<FockOperator> {
    if dim == 0 {
        return Err(Error::CutoffTooSmall { dim, min: 1 });
    }
    let mut m = DMatrix::zeros(dim, dim);
    for k in 1..dim {
        m[(k - 1, k)] = Complex64::new(libm::sqrt(k as f64), 0.0);
    }
    FockOperator::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(10, 10), 1.0);
        assert_eq!(binomial(50, 25), 126_410_606_437_752.0);
    }

    #[test]
    fn v0_is_diagonal_damping() {
        let ch = LossChannel::new(0.5).unwrap();
        let v = kraus_operator(0, &ch, 3).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(0.5f64.sqrt()), c(0.5)]));
        assert!((v.matrix() - expected).norm() < 1e-15);
    }

    #[test]
    fn v1_on_single_photon() {
        let ch = LossChannel::new(0.5).unwrap();
        let v = kraus_operator(1, &ch, 2).unwrap();
        let one = DVector::from_vec(vec![c(0.0), c(1.0)]);
        let out = v.apply(&one);
        assert!((out[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(out[1], c(0.0));
    }

    #[test]
    fn lossless_v0_is_identity() {
        let ch = LossChannel::new(1.0).unwrap();
        let v = kraus_operator(0, &ch, 4).unwrap();
        assert_eq!(v.matrix(), &DMatrix::identity(4, 4));
        assert_eq!(kraus_operator(2, &ch, 4).unwrap().matrix(), &DMatrix::zeros(4, 4));
    }

    #[test]
    fn total_loss_branch() {
        let ch = LossChannel::new(0.0).unwrap();
        assert_eq!(kraus_operator(1, &ch, 3), Err(Error::SingularKraus { n: 1 }));
        let v0 = kraus_operator(0, &ch, 3).unwrap();
        let mut vac = DMatrix::zeros(3, 3);
        vac[(0, 0)] = c(1.0);
        assert_eq!(v0.matrix(), &vac);
        let a = ch.amplitudes(3);
        assert_eq!(a[2][2], 1.0);
        assert_eq!(a[1][2], 0.0);
    }

    #[test]
    fn literal_operator_product_matches_simplified_form() {
        // (1/eta - 1)^(n/2) / sqrt(n!) * a^n * eta^(N/2), built by matrix
        // products on a cutoff large enough that a^n is exact on k <= 4.
        let dim = 6;
        let a = annihilation_operator(dim).unwrap();
        for eta in [0.1, 0.37, 0.5, 0.9] {
            let ch = LossChannel::new(eta).unwrap();
            let damp = DMatrix::from_fn(
                dim,
                dim,
                |i, j| {
                    if i == j {
                        c(eta.powf(i as f64 / 2.0))
                    } else {
                        c(0.0)
                    }
                },
            );
            let mut a_pow = DMatrix::<Complex64>::identity(dim, dim);
            let mut fact = 1.0;
            for n in 0..=4usize {
                if n > 0 {
                    a_pow = &a_pow * a.matrix();
                    fact *= n as f64;
                }
                let pref = (1.0 / eta - 1.0).powf(n as f64 / 2.0) / fact.sqrt();
                let literal = (&a_pow * &damp) * c(pref);
                let simplified = kraus_operator(n, &ch, dim).unwrap();
                for k in 0..=4 {
                    for m in 0..dim {
                        let d = (literal[(m, k)] - simplified.matrix()[(m, k)]).norm();
                        assert!(d < 1e-13, "eta={eta} n={n} k={k} m={m} diff={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(LossChannel::new(1.5).is_err());
        assert!(LossChannel::new(-0.1).is_err());
        assert!(LossChannel::new(f64::NAN).is_err());
        let ch = LossChannel::new(0.5).unwrap();
        assert!(kraus_operator(0, &ch, 0).is_err());
        assert!(FockOperator::new(DMatrix::zeros(2, 3)).is_err());
    }
}
