//! Checkable forms of the inequalities satisfied by the CHS norms.

use serde::{Deserialize, Serialize};

use crate::dispatch;
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::hermitian_norm::check_even_degree;
use crate::matrix::{HermitianMatrix, Matrix};
use crate::partitions::{binomial, factorial};
use crate::scalar::Scalar;

/// Relative gap below which a bound is reported as attained.
pub const EQUALITY_REL_TOL: f64 = 1e-8;

/// Relative slack allowed before a bound counts as violated.
pub const VIOLATION_REL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `actual >= bound`
    Lower,
    /// `actual <= bound`
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub bound_value: f64,
    pub actual_value: f64,
    pub satisfied: bool,
    /// Distance from the bound in the direction of the inequality;
    /// negative when violated.
    pub slack: f64,
    pub equality_case: bool,
}

impl BoundReport {
    pub fn new(kind: BoundKind, bound_value: f64, actual_value: f64) -> Self {
        let slack = match kind {
            BoundKind::Lower => actual_value - bound_value,
            BoundKind::Upper => bound_value - actual_value,
        };
        let scale = bound_value.abs().max(actual_value.abs());
        let satisfied = slack >= -VIOLATION_REL_TOL * scale.max(1.0);
        let equality_case = slack.abs() <= EQUALITY_REL_TOL * scale || scale == 0.0;
        Self { kind, bound_value, actual_value, satisfied, slack, equality_case }
    }
}

fn abs_trace<S: Scalar>(a: &Matrix<S>) -> f64 {
    a.trace().to_approx().norm()
}

/// `||A||_d >= binom(n+d-1, d)^{1/d} |tr A| / n`.
pub fn tracial_lower_bound<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<BoundReport> {
    let n = a.n();
    let actual = dispatch::norm(a, d)?.value;
    let c = (binomial((n + d - 1) as u64, d as u64) as f64).powf(1.0 / d as f64);
    Ok(BoundReport::new(BoundKind::Lower, c * abs_trace(a) / n as f64, actual))
}

/// The weaker consequence `||A||_d >= |tr A| / n`.
pub fn trace_mean_bound<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<BoundReport> {
    let actual = dispatch::norm(a, d)?.value;
    Ok(BoundReport::new(BoundKind::Lower, abs_trace(a) / a.n() as f64, actual))
}

/// Largest singular value, from the eigenvalues of `A* A`.
pub fn operator_norm<S: Scalar>(a: &Matrix<S>) -> Result<f64> {
    let a = a.to_approx();
    let gram = HermitianMatrix::new(&a.adjoint() * &a)?;
    Ok(hermitian_eigenvalues(&gram)?.spectral_radius().sqrt())
}

/// Bounds relating `||A||_d` to the operator norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// Present for Hermitian input only.
    pub lower: Option<BoundReport>,
    pub upper: BoundReport,
    pub operator_norm: f64,
}

/// For Hermitian `A`:
/// `(2^{d/2} (d/2)!)^{-1/d} ||A||_op <= ||A||_d <= binom(n+d-1,d)^{1/d} ||A||_op`.
///
/// For other `A` only the upper bound
/// `||A||_d <= 2 (binom(n+d-1,d) / binom(d,d/2))^{1/d} ||A||_op` is checked.
pub fn equivalence_bounds<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<EquivalenceReport> {
    check_even_degree(d)?;
    let n = a.n();
    let op = operator_norm(a)?;
    let actual = dispatch::norm(a, d)?.value;
    let inv_d = 1.0 / d as f64;
    let monomials = binomial((n + d - 1) as u64, d as u64) as f64;
    if a.is_hermitian() {
        let p = d / 2;
        let lower_c = (1.0 / ((1u128 << p) * factorial(p as u32)) as f64).powf(inv_d);
        Ok(EquivalenceReport {
            lower: Some(BoundReport::new(BoundKind::Lower, lower_c * op, actual)),
            upper: BoundReport::new(BoundKind::Upper, monomials.powf(inv_d) * op, actual),
            operator_norm: op,
        })
    } else {
        let c = 2.0 * (monomials / binomial(d as u64, d as u64 / 2) as f64).powf(inv_d);
        Ok(EquivalenceReport { lower: None, upper: BoundReport::new(BoundKind::Upper, c * op, actual), operator_norm: op })
    }
}

/// `c_p ||A||_p <= c_q ||A||_q` with `c_d = (d!)^{1/d}` on the Hermitian
/// path and `c_d = (binom(d,d/2) d!)^{1/d}` otherwise.
pub fn monotonicity_check<S: Scalar>(a: &Matrix<S>, p: usize, q: usize, hermitian_path: bool) -> Result<BoundReport> {
    check_even_degree(p)?;
    check_even_degree(q)?;
    if p >= q {
        return Err(Error::Parse(format!("monotonicity needs p < q, got p = {p}, q = {q}")));
    }
    if hermitian_path && !a.is_hermitian() {
        return Err(Error::RequiresHermitian { method: "hermitian monotonicity" });
    }
    let c = |d: usize| {
        let f = factorial(d as u32) as f64;
        let w = if hermitian_path { f } else { binomial(d as u64, d as u64 / 2) as f64 * f };
        w.powf(1.0 / d as f64)
    };
    let left = c(p) * dispatch::norm(a, p)?.value;
    let right = c(q) * dispatch::norm(a, q)?.value;
    Ok(BoundReport::new(BoundKind::Upper, right, left))
}

/// `||A+B||_d^2 + ||A-B||_d^2 - 2 (||A||_d^2 + ||B||_d^2)`; zero for every
/// pair exactly when the norm comes from an inner product.
pub fn parallelogram_defect<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, d: usize) -> Result<f64> {
    let sq = |m: &Matrix<S>| dispatch::norm(m, d).map(|r| r.value * r.value);
    let sum = a.checked_add(b)?;
    let diff = a.checked_sub(b)?;
    Ok(sq(&sum)? + sq(&diff)? - 2.0 * (sq(a)? + sq(b)?))
}

/// `2 ||AB||_2 <= (2 ||A||_2)(2 ||B||_2)`.
pub fn submult_check_d2<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<BoundReport> {
    let ab = a.checked_mul(b)?;
    let left = 2.0 * dispatch::norm(&ab, 2)?.value;
    let right = 4.0 * dispatch::norm(a, 2)?.value * dispatch::norm(b, 2)?.value;
    Ok(BoundReport::new(BoundKind::Upper, right, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::scalar::{Approx, Exact, Ring};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Approx {
        Complex64::new(re, im)
    }

    fn diag_unit(n: usize, i: usize) -> Matrix<Approx> {
        Matrix::from_fn(n, |r, s| if r == i && s == i { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    /// Largest singular value by power iteration on `A* A`.
    fn power_iteration(a: &Matrix<Approx>) -> f64 {
        let g = &a.adjoint() * a;
        let n = a.n();
        let mut v: Vec<Approx> = (0..n).map(|i| c(1.0 + i as f64 * 0.37, 0.5 - i as f64 * 0.11)).collect();
        let mut lambda = 0.0;
        for _ in 0..5000 {
            let w: Vec<Approx> = (0..n).map(|i| (0..n).map(|j| g.get(i, j) * v[j]).sum()).collect();
            let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            lambda = norm / v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            v = w.into_iter().map(|x| x / norm).collect();
        }
        lambda.sqrt()
    }

    #[test]
    fn report_flags() {
        let r = BoundReport::new(BoundKind::Lower, 1.0, 2.0);
        assert!(r.satisfied && !r.equality_case && r.slack == 1.0);
        let r = BoundReport::new(BoundKind::Upper, 1.0, 2.0);
        assert!(!r.satisfied);
        assert!(BoundReport::new(BoundKind::Upper, 0.0, 0.0).equality_case);
        assert!(BoundReport::new(BoundKind::Lower, 3.0, 3.0 * (1.0 + 1e-12)).equality_case);
    }

    #[test]
    fn tracial_bound_equality_for_scalar_matrices() {
        for n in 1..=4 {
            for d in [2usize, 4, 6] {
                let a = Matrix::<Approx>::identity(n).scale(&c(0.7, -1.3));
                let r = tracial_lower_bound(&a, d).unwrap();
                assert!(r.satisfied && r.equality_case && r.slack.abs() <= 1e-10, "{r:?}");
                let e = Matrix::<Exact>::identity(n).scale(&Exact::from_i64(3));
                assert!(tracial_lower_bound(&e, d).unwrap().equality_case);
            }
        }
    }

    #[test]
    fn tracial_bound_traceless_and_random() {
        let j = Matrix::<Approx>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let r = tracial_lower_bound(&j, 4).unwrap();
        assert_eq!(r.bound_value, 0.0);
        assert!(r.satisfied && !r.equality_case);
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for _ in 0..100 {
            let a = sampling::complex_matrix(&mut rng, 4);
            for d in [2usize, 4] {
                let r = tracial_lower_bound(&a, d).unwrap();
                assert!(r.satisfied && r.slack > 1e-6 && !r.equality_case, "{r:?}");
                assert!(trace_mean_bound(&a, d).unwrap().satisfied);
            }
        }
    }

    #[test]
    fn operator_norm_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        let u = sampling::unitary(&mut rng, 4);
        assert!((operator_norm(&u).unwrap() - 1.0).abs() < 1e-12);
        let d = Matrix::<Approx>::diag(&[c(3.0, 0.0), c(-5.0, 0.0)]);
        assert!((operator_norm(&d).unwrap() - 5.0).abs() < 1e-12);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let a = sampling::complex_matrix(&mut rng, n);
            assert!((operator_norm(&a).unwrap() - power_iteration(&a)).abs() < 1e-6);
        }
    }

    #[test]
    fn equivalence_identity_is_tight_above() {
        for n in 1..=4 {
            for d in [2usize, 4, 6, 8] {
                let r = equivalence_bounds(&Matrix::<Exact>::identity(n), d).unwrap();
                assert!(r.upper.equality_case, "n={n} d={d}");
                assert!(r.lower.unwrap().satisfied);
            }
        }
    }

    #[test]
    fn equivalence_rank_one_projection() {
        for n in 2..=4 {
            for d in [4usize, 6, 8] {
                let r = equivalence_bounds(&diag_unit(n, 0), d).unwrap();
                assert!((r.upper.actual_value - 1.0).abs() < 1e-12);
                let lower = r.lower.unwrap();
                assert!(lower.satisfied && !lower.equality_case);
                assert!(r.upper.satisfied && !r.upper.equality_case);
            }
        }
    }

    #[test]
    fn equivalence_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(93);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let h = sampling::hermitian_matrix(&mut rng, n);
            for d in [2usize, 4, 6, 8] {
                let r = equivalence_bounds(h.inner(), d).unwrap();
                assert!(r.upper.satisfied && r.lower.unwrap().satisfied);
            }
        }
        for _ in 0..50 {
            let a = sampling::complex_matrix(&mut rng, 3);
            let r = equivalence_bounds(&a, 4).unwrap();
            assert!(r.lower.is_none() && r.upper.satisfied);
        }
    }

    #[test]
    fn monotonicity() {
        let z = Matrix::<Approx>::zeros(3);
        let r = monotonicity_check(&z, 2, 4, true).unwrap();
        assert!(r.satisfied && r.equality_case);

        // ||F||_2^2 = 2 and ||F||_4^4 = 5 for the Fibonacci matrix.
        let f = Matrix::<Exact>::from_int_rows(&[&[1, 1], &[1, 0]]).unwrap();
        let r = monotonicity_check(&f, 2, 4, true).unwrap();
        assert!((r.actual_value - 2.0).abs() < 1e-12);
        assert!((r.bound_value - (24.0f64 * 5.0).powf(0.25)).abs() < 1e-12);
        assert!(r.satisfied);

        let mut rng = ChaCha8Rng::seed_from_u64(94);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let a = sampling::complex_matrix(&mut rng, n);
            let h = sampling::hermitian_matrix(&mut rng, n);
            for (p, q) in [(2, 4), (4, 6), (2, 6)] {
                assert!(monotonicity_check(&a, p, q, false).unwrap().satisfied);
                assert!(monotonicity_check(h.inner(), p, q, true).unwrap().satisfied);
            }
        }
        assert!(monotonicity_check(&z, 4, 2, true).is_err());
        let j = Matrix::<Approx>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(monotonicity_check(&j, 2, 4, true).is_err());
    }

    #[test]
    fn parallelogram() {
        let mut rng = ChaCha8Rng::seed_from_u64(95);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let a = sampling::complex_matrix(&mut rng, n);
            let b = sampling::complex_matrix(&mut rng, n);
            assert!(parallelogram_defect(&a, &b, 2).unwrap().abs() <= 1e-9);
        }
        for n in 2..=4 {
            for d in [4usize, 6, 8] {
                let defect = parallelogram_defect(&diag_unit(n, 0), &diag_unit(n, 1), d).unwrap();
                let want = ((d + 1) as f64).powf(2.0 / d as f64) - 3.0;
                assert!((defect - want).abs() <= 1e-9 && want.abs() > 0.1);
            }
        }
        for d in [2usize, 4, 6, 8] {
            let a = Matrix::<Approx>::diag(&[c(rng.gen(), rng.gen())]);
            let b = Matrix::<Approx>::diag(&[c(rng.gen(), rng.gen())]);
            assert!(parallelogram_defect(&a, &b, d).unwrap().abs() <= 1e-9);
        }
    }

    #[test]
    fn submultiplicativity() {
        let j = Matrix::<Exact>::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let r = submult_check_d2(&j, &j.adjoint()).unwrap();
        assert!(r.satisfied && r.equality_case);
        assert!((r.actual_value - 2.0).abs() < 1e-12);
        let i = Matrix::<Exact>::identity(2);
        let r = submult_check_d2(&i, &i).unwrap();
        assert!(r.satisfied && !r.equality_case);
        let mut rng = ChaCha8Rng::seed_from_u64(96);
        for _ in 0..500 {
            let n = rng.gen_range(1..=4);
            let a = sampling::complex_matrix(&mut rng, n);
            let b = sampling::complex_matrix(&mut rng, n);
            assert!(submult_check_d2(&a, &b).unwrap().satisfied);
        }
    }
}
