//! Symmetric tensor powers (induced matrices) of a square matrix.
//!
//! The trace of the `k`-th symmetric power of a Hermitian matrix is
//! `h_k` of its eigenvalues, which gives an oracle for the CHS norms that
//! shares no code with the spectral or trace-polynomial routes.

use crate::error::{Error, Result};
use crate::hermitian_norm::{check_even_degree, Method, NormResult};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::partitions::binomial_saturating;
use crate::scalar::{Approx, Real, Scalar};

/// Largest permanent order accepted.
pub const PERMANENT_MAX_K: usize = 10;

/// Largest induced-matrix dimension accepted.
pub const SYM_POWER_MAX_SIZE: u128 = 2000;

/// All size-`k` multisets over `{0..n-1}` as non-decreasing tuples, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetBasis {
    n: usize,
    k: usize,
    elements: Vec<Vec<usize>>,
}

impl MultisetBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let size = binomial_saturating((n + k).saturating_sub(1) as u64, k as u64);
        if size > SYM_POWER_MAX_SIZE {
            return Err(Error::SizeGuard { what: "symmetric power dimension", size, limit: SYM_POWER_MAX_SIZE });
        }
        let mut elements = Vec::with_capacity(size as usize);
        let mut current = Vec::with_capacity(k);
        fill(n, k, 0, &mut current, &mut elements);
        Ok(Self { n, k, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn fill(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for i in start..n {
        current.push(i);
        fill(n, k, i, current, out);
        current.pop();
    }
}

/// `mu(alpha) = prod_i m_i(alpha)!`.
fn multiplicity_factor(alpha: &[usize]) -> u128 {
    let mut out = 1;
    let mut run = 0u32;
    for (i, x) in alpha.iter().enumerate() {
        run = if i > 0 && alpha[i - 1] == *x { run + 1 } else { 1 };
        out *= run as u128;
    }
    out
}

/// Matrix permanent by Ryser's formula with Gray-code row sums.
pub fn permanent<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    let k = m.n();
    if k > PERMANENT_MAX_K {
        return Err(Error::SizeGuard { what: "permanent order", size: k as u128, limit: PERMANENT_MAX_K as u128 });
    }
    let mut row_sums = vec![S::zero(); k];
    let mut total = S::zero();
    let mut gray = 0u32;
    for step in 1u32..1 << k {
        let j = step.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (i, s) in row_sums.iter_mut().enumerate() {
            let e = m.get(i, j).clone();
            *s = if adding { s.clone() + e } else { s.clone() - e };
        }
        let prod = row_sums.iter().fold(S::one(), |acc, s| acc * s.clone());
        // sign (-1)^{k - |S|}
        if (k - gray.count_ones() as usize) % 2 == 0 {
            total = total + prod;
        } else {
            total = total - prod;
        }
    }
    Ok(total)
}

fn submatrix<S: Scalar>(a: &Matrix<S>, rows: &[usize], cols: &[usize]) -> Matrix<S> {
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &r in rows {
        for &c in cols {
            data.push(a.get(r, c).clone());
        }
    }
    Matrix::new(rows.len(), data).expect("square submatrix")
}

/// The induced matrix on the normalized symmetric basis.
pub fn sym_power_matrix(a: &Matrix<Approx>, k: usize) -> Result<Matrix<Approx>> {
    let basis = MultisetBasis::new(a.n(), k)?;
    if k > PERMANENT_MAX_K {
        return Err(Error::SizeGuard { what: "permanent order", size: k as u128, limit: PERMANENT_MAX_K as u128 });
    }
    let els = basis.elements();
    let mu: Vec<f64> = els.iter().map(|e| multiplicity_factor(e) as f64).collect();
    let mut data = Vec::with_capacity(els.len() * els.len());
    for (i, alpha) in els.iter().enumerate() {
        for (j, beta) in els.iter().enumerate() {
            let p = permanent(&submatrix(a, alpha, beta))?;
            data.push(p / (mu[i] * mu[j]).sqrt());
        }
    }
    Matrix::new(els.len(), data)
}

/// `tr(A^{Sym_k}) = sum_alpha per(A[alpha|alpha]) / mu(alpha)`, exact on
/// the exact tower.
pub fn sym_power_trace<S: Scalar>(a: &Matrix<S>, k: usize) -> Result<S> {
    let basis = MultisetBasis::new(a.n(), k)?;
    let mut total = S::zero();
    for alpha in basis.elements() {
        let p = permanent(&submatrix(a, alpha, alpha))?;
        total = total + p.div_int(multiplicity_factor(alpha));
    }
    Ok(total)
}

/// Norm as the trace of the `d`-th symmetric power.
pub fn norm_via_tensor<S: Scalar>(h: &HermitianMatrix<S>, d: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    let t = sym_power_trace(h.inner(), d)?;
    Ok(NormResult::new(d, t.re().to_value(), Method::Tensor))
}
