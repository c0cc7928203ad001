//! Dense square matrices over the scalar tower.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Approx, Exact, Ring, Scalar};

/// Dense `n x n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    /// Builds a matrix from `n * n` row-major entries.
    pub fn new(n: usize, data: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::EntryCount { expected: n * n, found: data.len() });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from nested rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            let found = rows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n);
            return Err(Error::DimensionMismatch { left: n, right: found });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Integer-valued matrix, convenient for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| S::from_i64(v)).collect()).collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(values: &[S]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i].clone() } else { S::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| c.clone() * v.clone())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Projects onto the double-precision tower.
    pub fn to_approx(&self) -> Matrix<Approx> {
        self.map(Scalar::to_approx)
    }

    /// Trace of the product `self * other` without forming it.
    pub fn trace_of_product(&self, other: &Self) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for i in 0..n {
            for k in 0..n {
                acc = acc + self.get(i, k).clone() * other.get(k, i).clone();
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.to_approx().norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self.get(i, j).to_approx() - self.get(j, i).to_approx().conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Exact check on the rational tower, tolerance-based on the float tower.
    pub fn is_hermitian(&self) -> bool {
        if S::EXACT {
            *self == self.adjoint()
        } else {
            self.hermitian_residual() <= hermitian_tolerance(self.frobenius_norm())
        }
    }

    /// Matrix power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a.clone() * other.data[k * n + j].clone();
                    let slot = &mut data[i * n + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Self { n, data }
    }
}

impl Matrix<Exact> {
    /// Lifts an exact integer or rational real matrix, mostly for tests.
    pub fn from_real_rationals(n: usize, entries: Vec<<Exact as Scalar>::Real>) -> Result<Self> {
        Self::new(n, entries.into_iter().map(Exact::from_real).collect())
    }
}

/// Acceptance tolerance for Hermitian symmetry of approximate input.
pub fn hermitian_tolerance(frobenius: f64) -> f64 {
    1e-10 * frobenius.max(1.0)
}

// Operators panic on dimension mismatch; use the checked_* methods for
// fallible call sites.

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.checked_add(rhs).expect("matrix dimensions must agree")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.checked_sub(rhs).expect("matrix dimensions must agree")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|v| -v.clone())
    }
}

/// A matrix validated to equal its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<S> {
    inner: Matrix<S>,
}

impl<S: Scalar> HermitianMatrix<S> {
    pub fn new(inner: Matrix<S>) -> Result<Self> {
        if inner.is_hermitian() {
            Ok(Self { inner })
        } else {
            Err(Error::NotHermitian {
                residual: inner.hermitian_residual(),
                tolerance: if S::EXACT { 0.0 } else { hermitian_tolerance(inner.frobenius_norm()) },
            })
        }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[S::Real]) -> Self {
        let entries: Vec<S> = values.iter().cloned().map(S::from_real).collect();
        Self { inner: Matrix::diag(&entries) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: Matrix::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { inner: Matrix::zeros(n) }
    }

    pub fn inner(&self) -> &Matrix<S> {
        &self.inner
    }

    pub fn into_inner(self) -> Matrix<S> {
        self.inner
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    /// Trace as a real number (the imaginary part of a Hermitian trace is zero).
    pub fn real_trace(&self) -> S::Real {
        self.inner.trace().re()
    }

    /// Real multiple `c * H`, which stays Hermitian.
    pub fn scale_real(&self, c: &S::Real) -> Self {
        Self { inner: self.inner.scale(&S::from_real(c.clone())) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.checked_add(&other.inner)? })
    }

    /// `U H U*`, Hermitian for any square `U` of matching size.
    pub fn conjugate_by(&self, u: &Matrix<S>) -> Result<Self> {
        let left = u.checked_mul(&self.inner)?;
        let inner = left.checked_mul(&u.adjoint())?;
        Ok(Self { inner: symmetrize(inner) })
    }

    pub fn to_approx(&self) -> HermitianMatrix<Approx> {
        HermitianMatrix { inner: symmetrize(self.inner.to_approx()) }
    }
}

/// Replaces `M` by `(M + M*) / 2`; exact tower input is returned unchanged
/// when already Hermitian.
fn symmetrize<S: Scalar>(m: Matrix<S>) -> Matrix<S> {
    if S::EXACT {
        return m;
    }
    let adj = m.adjoint();
    let n = m.n();
    Matrix::from_fn(n, |i, j| (m.get(i, j).clone() + adj.get(i, j).clone()).div_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Approx {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_examples() {
        let j = Matrix::<Approx>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let jt = Matrix::<Approx>::from_int_rows(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(j.adjoint(), jt);
        let m = Matrix::new(1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.adjoint(), Matrix::new(1, vec![c(0.0, -1.0)]).unwrap());
    }

    #[test]
    fn adjoint_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = sampling::complex_matrix(&mut rng, 4);
        let back = a.adjoint().adjoint();
        for (x, y) in a.entries().iter().zip(back.entries()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(Matrix::<Exact>::identity(3).trace(), Exact::from_i64(3));
        let fib = Matrix::<Exact>::from_int_rows(&[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(fib.trace(), Exact::from_i64(1));
    }

    #[test]
    fn trace_is_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = sampling::complex_matrix(&mut rng, 3);
            let b = sampling::complex_matrix(&mut rng, 3);
            let ab = (&a * &b).trace();
            let ba = (&b * &a).trace();
            assert!((ab - ba).norm() < 1e-13);
        }
        let a = sampling::gaussian_integer_matrix(&mut rng, 3, 4);
        let b = sampling::gaussian_integer_matrix(&mut rng, 3, 4);
        assert_eq!((&a * &b).trace(), (&b * &a).trace());
    }

    #[test]
    fn multiplication_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = sampling::gaussian_integer_matrix(&mut rng, 3, 5);
        let b = sampling::gaussian_integer_matrix(&mut rng, 3, 5);
        let cm = sampling::gaussian_integer_matrix(&mut rng, 3, 5);
        assert_eq!(&a * &Matrix::identity(3), a);
        let j = Matrix::<Exact>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert!((&j * &j).is_zero());
        assert_eq!(&(&a + &b) * &cm, &(&a * &cm) + &(&b * &cm));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Matrix::<Approx>::identity(2);
        let b = Matrix::<Approx>::identity(3);
        assert_eq!(a.checked_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.checked_add(&b).is_err());
        assert_eq!(Matrix::<Approx>::new(2, vec![c(0.0, 0.0); 3]).unwrap_err(), Error::EntryCount { expected: 4, found: 3 });
        assert_eq!(Matrix::<Approx>::new(0, vec![]).unwrap_err(), Error::EmptyMatrix);
    }

    #[test]
    fn hermitian_validation() {
        let h = Matrix::<Exact>::from_rows(vec![
            vec![Exact::from_i64(1), Exact::i()],
            vec![-Exact::i(), Exact::from_i64(2)],
        ])
        .unwrap();
        assert!(HermitianMatrix::new(h).is_ok());
        let j = Matrix::<Exact>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(matches!(HermitianMatrix::new(j), Err(Error::NotHermitian { .. })));

        let mut near = Matrix::<Approx>::from_int_rows(&[&[1, 2], &[2, 1]]).unwrap();
        near.set(0, 1, c(2.0 + 1e-12, 0.0));
        assert!(HermitianMatrix::new(near.clone()).is_ok());
        near.set(0, 1, c(2.0 + 1e-6, 0.0));
        assert!(HermitianMatrix::new(near).is_err());
    }
}
