use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix, computed block by block.
///
/// Indices coupled by a nonzero off-diagonal entry are grouped with a
/// union-find; permuting each group together makes the matrix block
/// diagonal, and the spectrum is the union of the block spectra. Loss
/// preserves the photon-number difference between the two modes of a
/// twin beam, so its lossy states split into small blocks this way.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "matrix must be square");
    let mut parent: Vec<usize> = (0..n).collect();
    for j in 0..n {
        for i in (j + 1)..n {
            if m[(i, j)] != Complex64::new(0.0, 0.0) || m[(j, i)] != Complex64::new(0.0, 0.0) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let root = find(&mut parent, i);
        groups[root].push(i);
    }
    let mut out = Vec::with_capacity(n);
    for g in groups.iter().filter(|g| !g.is_empty()) {
        if g.len() == 1 {
            out.push(m[(g[0], g[0])].re);
            continue;
        }
        let block = DMatrix::from_fn(g.len(), g.len(), |r, c| m[(g[r], g[c])]);
        out.extend(block.symmetric_eigenvalues().iter().copied());
    }
    out
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(m).into_iter().fold(f64::INFINITY, f64::min)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}
