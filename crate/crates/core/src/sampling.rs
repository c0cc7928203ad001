//! Seeded random inputs for property suites and the selftest.
//!
//! Every generator takes the caller's RNG; suites use `ChaCha8Rng` seeded
//! with `seed_from_u64`, which is stable across platforms.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::matrix::{HermitianMatrix, Matrix};
use crate::scalar::{Approx, Exact, Scalar};

fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

/// Entries with real and imaginary parts uniform on `[-1, 1]`.
pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<Approx> {
    Matrix::from_fn(n, |_, _| Complex64::new(unit(rng), unit(rng)))
}

/// `(M + M*) / 2` for a random complex `M`.
pub fn hermitian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianMatrix<Approx> {
    let m = complex_matrix(rng, n);
    let adj = m.adjoint();
    let h = Matrix::from_fn(n, |i, j| (m.get(i, j) + adj.get(i, j)) * 0.5);
    HermitianMatrix::new(h).expect("symmetrized matrix is Hermitian")
}

/// Real symmetric matrix with entries uniform on `[-1, 1]`.
pub fn real_symmetric_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianMatrix<Approx> {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = Complex64::new(unit(rng), 0.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    HermitianMatrix::new(m).expect("symmetric real matrix is Hermitian")
}

pub fn real_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| unit(rng)).collect()
}

/// Unitary built as a product of random complex Givens rotations and a
/// diagonal phase.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<Approx> {
    let mut u = Matrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    for _ in 0..2 {
        for p in 0..n {
            for q in p + 1..n {
                let theta = rng.gen_range(0.0..2.0 * PI);
                let phi = rng.gen_range(0.0..2.0 * PI);
                let (s, c) = theta.sin_cos();
                let e = Complex64::from_polar(1.0, phi);
                let mut g = Matrix::<Approx>::identity(n);
                g.set(p, p, Complex64::new(c, 0.0));
                g.set(p, q, e * s);
                g.set(q, p, -e.conj() * s);
                g.set(q, q, Complex64::new(c, 0.0));
                u = &g * &u;
            }
        }
    }
    u
}

fn small_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Gaussian-integer matrix with parts in `[-bound, bound]`.
pub fn gaussian_integer_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Matrix<Exact> {
    Matrix::from_fn(n, |_, _| Exact::new(small_int(rng, bound), small_int(rng, bound)))
}

/// Exact Hermitian matrix with Gaussian-integer entries.
pub fn gaussian_integer_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> HermitianMatrix<Exact> {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, i, Exact::from_real(small_int(rng, bound)));
        for j in i + 1..n {
            let v = Exact::new(small_int(rng, bound), small_int(rng, bound));
            m.set(j, i, v.conj());
            m.set(i, j, v);
        }
    }
    HermitianMatrix::new(m).expect("constructed Hermitian")
}
