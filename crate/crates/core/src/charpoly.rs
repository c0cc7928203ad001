//! Characteristic polynomials by the Faddeev-LeVerrier recursion.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Monic characteristic polynomial `det(xI - A)`.
///
/// `coeffs[i]` is the coefficient of `x^i`; `coeffs[n] == 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> CharPoly<S> {
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `x^n p(1/x) = det(I - xA)`, constant term first.
    pub fn reciprocal(&self) -> Vec<S> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix<S>) -> Matrix<S> {
        let n = a.n();
        let mut acc = Matrix::zeros(n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &Matrix::identity(n).scale(c);
        }
        acc
    }
}

/// Characteristic polynomial by Faddeev-LeVerrier.
///
/// With `M_0 = 0` and `c_n = 1`, each step sets `M_k = A M_{k-1} + c_{n-k+1} I`
/// and `c_{n-k} = -tr(A M_k) / k`. Division is by integers only, so the
/// recursion is exact over Gaussian rationals.
pub fn char_poly<S: Scalar>(a: &Matrix<S>) -> CharPoly<S> {
    let n = a.n();
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    let mut m = Matrix::zeros(n);
    for k in 1..=n {
        let shift = Matrix::identity(n).scale(&coeffs[n - k + 1]);
        m = &(a * &m) + &shift;
        coeffs[n - k] = -a.trace_of_product(&m).div_int(k as u128);
    }
    CharPoly { coeffs }
}
