//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Approx;

/// Sweep limit before the solver reports non-convergence.
pub const MAX_SWEEPS: usize = 64;

/// Relative off-diagonal tolerance: converged once the off-diagonal
/// Frobenius norm is at most `EIG_REL_TOL * ||H||_F`.
pub const EIG_REL_TOL: f64 = 1e-12;

/// Eigenvalues of a Hermitian matrix in weakly decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values into decreasing order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Absolute eigenvalues, sorted decreasing (the singular values).
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Eigenvalues of `h` by cyclic complex Jacobi rotations.
pub fn hermitian_eigenvalues(h: &HermitianMatrix<Approx>) -> Result<Spectrum> {
    let m = h.inner();
    let n = m.n();
    let mut a: Vec<Complex64> = m.entries().to_vec();
    let tol = EIG_REL_TOL * m.frobenius_norm();

    for sweep in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= tol {
            return Ok(Spectrum::from_unsorted((0..n).map(|i| a[i * n + i].re).collect()));
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_diagonal: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    unreachable!("loop returns on the final sweep")
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `V = diag(1, e^{-i phi}) R(theta)`
/// in the `(p, q)` plane, then applies `A <- V* A V`.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / mag;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // columns: A <- A V with V_pp = c, V_pq = s, V_qp = -s e^{-i phi}, V_qq = c e^{-i phi}
    let ph_conj = phase.conj();
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * ph_conj * s;
        a[k * n + q] = akp * s + akq * ph_conj * c;
    }
    // rows: A <- V* A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * phase * s;
        a[q * n + k] = apk * s + aqk * phase * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}
