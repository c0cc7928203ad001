//! Complete homogeneous symmetric polynomials `h_d` on real vectors.
//!
//! Three independent evaluators are provided: the defining sum over
//! multisets ([`h_direct`]), the power-sum expansion over partitions
//! ([`h_powersum`]), and the Newton-Girard recursion
//! ([`h_newton_girard`]). A seeded Monte Carlo estimator of the
//! exponential-moment identity and the Hunter and Baston lower bounds
//! complete the module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partitions::{binomial, binomial_saturating, factorial, partitions_of};
use crate::scalar::Real;

/// Largest number of monomials [`h_direct`] will enumerate.
pub const DIRECT_TERM_LIMIT: u128 = 100_000_000;

/// Sum of every degree-`d` monomial in the entries of `x`.
///
/// Enumerates non-decreasing index tuples `i_1 <= ... <= i_d` in
/// lexicographic order, carrying the running product.
pub fn h_direct<R: Real>(d: usize, x: &[R]) -> Result<R> {
    let n = x.len();
    if n == 0 {
        return Ok(if d == 0 { R::one() } else { R::zero() });
    }
    let terms = binomial_saturating((n + d - 1) as u64, d as u64);
    if terms > DIRECT_TERM_LIMIT {
        return Err(Error::SizeGuard { what: "monomial count", size: terms, limit: DIRECT_TERM_LIMIT });
    }
    Ok(multiset_sum(x, d, 0, R::one()))
}

fn multiset_sum<R: Real>(x: &[R], remaining: usize, start: usize, prefix: R) -> R {
    if remaining == 0 {
        return prefix;
    }
    let mut acc = R::zero();
    for i in start..x.len() {
        acc = acc + multiset_sum(x, remaining - 1, i, prefix.clone() * x[i].clone());
    }
    acc
}

/// `p_k(x) = sum_i x_i^k` for `k = 1..=d_max`; entry `k - 1` holds `p_k`.
pub fn power_sums<R: Real>(x: &[R], d_max: usize) -> Vec<R> {
    let mut sums = vec![R::zero(); d_max];
    for xi in x {
        let mut pw = R::one();
        for s in sums.iter_mut() {
            pw = pw * xi.clone();
            *s = s.clone() + pw.clone();
        }
    }
    sums
}

/// `h_d(x) = sum_{pi |- d} p_pi(x) / z_pi`.
pub fn h_powersum<R: Real>(d: usize, x: &[R]) -> R {
    if d == 0 {
        return R::one();
    }
    let ps = power_sums(x, d);
    partitions_of(d).iter().fold(R::zero(), |acc, part| {
        let prod = part.parts().iter().fold(R::one(), |p, &k| p * ps[k - 1].clone());
        acc + prod.div_int(part.z_weight())
    })
}

/// `h_0, ..., h_{d_max}` from power sums `p_1..p_{d_max}` via
/// `h_d = (1/d) sum_{i=1}^{d} h_{d-i} p_i`.
pub fn h_sequence_from_power_sums<R: Real>(power_sums: &[R]) -> Vec<R> {
    let mut h = Vec::with_capacity(power_sums.len() + 1);
    h.push(R::one());
    for d in 1..=power_sums.len() {
        let sum = (1..=d).fold(R::zero(), |acc, i| acc + h[d - i].clone() * power_sums[i - 1].clone());
        h.push(sum.div_int(d as u128));
    }
    h
}

/// `h_d` from the first `d` power sums by the Newton-Girard recursion.
pub fn h_newton_girard<R: Real>(d: usize, power_sums: &[R]) -> R {
    assert!(power_sums.len() >= d, "need p_1..p_d");
    h_sequence_from_power_sums(&power_sums[..d]).pop().expect("h_0 is always present")
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Minimum sample count accepted by [`expectation_estimate`].
pub const MIN_SAMPLES: usize = 1_000;

/// Estimates `E[|<xi, x>|^d] / d!` with `xi` a vector of independent
/// standard exponentials, drawn as `-ln(1 - u)` from a `ChaCha8Rng`
/// seeded with `seed`.
pub fn expectation_estimate(d: usize, x: &[f64], samples: usize, seed: u64) -> Result<McEstimate> {
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::SizeGuard { what: "sample count below minimum", size: samples as u128, limit: MIN_SAMPLES as u128 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d_fact = factorial(d as u32) as f64;
    // Welford accumulation
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 0..samples {
        let dot: f64 = x.iter().map(|&xi| xi * -(1.0 - rng.gen::<f64>()).ln()).sum();
        let y = dot.abs().powi(d as i32) / d_fact;
        let delta = y - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (y - mean);
    }
    let variance = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
    Ok(McEstimate { mean, std_error: (variance / samples as f64).sqrt(), samples })
}

fn half_degree(d: usize) -> Result<u32> {
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    if d == 0 {
        return Err(Error::DegreeTooSmall { d, min: 2 });
    }
    Ok((d / 2) as u32)
}

/// Hunter: `h_{2p}(x) >= ||x||_2^{2p} / (2^p p!)`.
pub fn hunter_bound<R: Real>(d: usize, x: &[R]) -> Result<R> {
    let p = half_degree(d)?;
    let sq = x.iter().fold(R::zero(), |acc, v| acc + v.clone() * v.clone());
    Ok(sq.pow(p).div_int(2u128.pow(p) * factorial(p)))
}

/// Baston: Hunter's term plus `lambda_p (sum_i x_i)^{2p}` with
/// `lambda_p = n^{-p} (binom(n+2p-1, 2p) n^{-p} - 1/(2^p p!))`.
pub fn baston_bound<R: Real>(d: usize, x: &[R]) -> Result<R> {
    let p = half_degree(d)?;
    let n = x.len() as u128;
    let hunter = hunter_bound(d, x)?;
    let np = n.pow(p);
    let c = 2u128.pow(p) * factorial(p);
    let lambda = (R::from_u128(binomial(n as u64 + d as u64 - 1, d as u64)).div_int(np) - R::one().div_int(c)).div_int(np);
    let sum = x.iter().fold(R::zero(), |acc, v| acc + v.clone());
    Ok(hunter + lambda * sum.pow(2 * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn direct_small_cases() {
        assert_eq!(h_direct(2, &qs(&[1, 2])).unwrap(), q(7));
        assert_eq!(h_direct(0, &qs(&[3, -5])).unwrap(), q(1));
        assert_eq!(h_direct(3, &qs(&[1, 1])).unwrap(), q(4));
        for n in 1..=5usize {
            for d in 0..=6usize {
                let ones = vec![q(1); n];
                assert_eq!(h_direct(d, &ones).unwrap(), q(binomial((n + d - 1) as u64, d as u64) as i64));
            }
        }
    }

    #[test]
    fn direct_guard() {
        let x = vec![1.0; 40];
        assert!(matches!(h_direct(20, &x), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn powersum_small_cases() {
        assert_eq!(h_powersum(2, &qs(&[1, 2])), q(7));
        assert_eq!(h_powersum(3, &qs(&[1, 1])), q(4));
        let x = qs(&[1, -2, 1, 1, 1]);
        assert_eq!(h_powersum(4, &x), h_direct(4, &x).unwrap());
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(power_sums(&qs(&[1, 1, 1]), 2)[1], q(3));
        assert_eq!(power_sums(&qs(&[1, 2]), 3)[2], q(9));
    }

    #[test]
    fn newton_girard_cases() {
        // x = (1, 2): p = (3, 5)
        assert_eq!(h_newton_girard(2, &qs(&[3, 5])), h_direct(2, &qs(&[1, 2])).unwrap());
        assert_eq!(h_newton_girard(5, &qs(&[0, 0, 0, 0, 0])), q(0));
    }

    #[test]
    fn newton_girard_on_golden_ratio_pair() {
        // eigenvalues of [[1,1],[1,0]] have power sums p_k = L_k (Lucas numbers)
        let lucas = [1i64, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322];
        let h = h_sequence_from_power_sums(&qs(&lucas));
        let fib_shifted = [1i64, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];
        assert_eq!(h, qs(&fib_shifted));
    }

    #[test]
    fn evaluators_agree_exactly_on_rationals() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let d = rng.gen_range(1..=8);
            let x: Vec<BigRational> = (0..n)
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))))
                .collect();
            let direct = h_direct(d, &x).unwrap();
            assert_eq!(h_powersum(d, &x), direct);
            assert_eq!(h_newton_girard(d, &power_sums(&x, d)), direct);
        }
    }

    #[test]
    fn evaluators_agree_on_floats() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let d = rng.gen_range(1..=10);
            let x = sampling::real_vector(&mut rng, n);
            let direct = h_direct(d, &x).unwrap();
            let ps = h_powersum(d, &x);
            let ng = h_newton_girard(d, &power_sums(&x, d));
            // absolute floor scaled by the magnitude of the summands
            let scale = h_direct(d, &x.iter().map(|v| v.abs()).collect::<Vec<_>>()).unwrap();
            assert!((direct - ps).abs() <= 1e-11 * scale + 1e-13, "{direct} {ps}");
            assert!((direct - ng).abs() <= 1e-11 * scale + 1e-13, "{direct} {ng}");
        }
    }

    #[test]
    fn monte_carlo_zero_vector() {
        let est = expectation_estimate(4, &[0.0, 0.0], 1000, 7).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn monte_carlo_is_deterministic_and_rejects_bad_input() {
        let a = expectation_estimate(2, &[1.0, 2.0], 2000, 9).unwrap();
        let b = expectation_estimate(2, &[1.0, 2.0], 2000, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(expectation_estimate(3, &[1.0], 2000, 9), Err(Error::OddDegree(3)));
        assert!(expectation_estimate(2, &[1.0], 10, 9).is_err());
    }

    #[test]
    fn monte_carlo_matches_direct() {
        for (d, x, seed) in [(2usize, vec![1.0, 2.0], 1u64), (4, vec![1.0, -1.0, 1.0], 2)] {
            let est = expectation_estimate(d, &x, 1_000_000, seed).unwrap();
            let want = h_direct(d, &x).unwrap();
            assert!((est.mean - want).abs() <= 5.0 * est.std_error, "{est:?} vs {want}");
        }
    }

    #[test]
    fn hunter_and_baston_examples() {
        assert_eq!(hunter_bound(2, &qs(&[1, 0])).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(h_direct(2, &qs(&[1, 0])).unwrap(), q(1));
        for n in 1..=4usize {
            for d in [2usize, 4, 6, 8] {
                let x = vec![q(3); n];
                assert_eq!(baston_bound(d, &x).unwrap(), h_direct(d, &x).unwrap(), "n={n} d={d}");
            }
        }
        // p = 1: equality for every vector
        let x = qs(&[2, -7, 5]);
        assert_eq!(baston_bound(2, &x).unwrap(), h_direct(2, &x).unwrap());
        assert_eq!(hunter_bound(3, &x), Err(Error::OddDegree(3)));
    }

    #[test]
    fn hunter_baston_chain_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let x = sampling::real_vector(&mut rng, 4);
            for d in [2usize, 4, 6] {
                let h = h_direct(d, &x).unwrap();
                let hunter = hunter_bound(d, &x).unwrap();
                let baston = baston_bound(d, &x).unwrap();
                assert!(hunter <= baston + 1e-14 && baston <= h + 1e-12 * h.abs().max(1.0), "{hunter} {baston} {h}");
            }
        }
    }

    fn vec_strategy() -> impl Strategy<Value = Vec<f64>> {
        (1usize..=5).prop_flat_map(|n| prop::collection::vec(-3.0f64..3.0, n))
    }

    proptest! {
        #[test]
        fn positivity_for_even_degree(x in vec_strategy(), half in 1usize..=4) {
            prop_assume!(x.iter().any(|v| v.abs() > 1e-3));
            prop_assert!(h_powersum(2 * half, &x) > 0.0);
        }

        #[test]
        fn triangle_inequality_on_vectors(
            (x, y) in (1usize..=5).prop_flat_map(|n| (prop::collection::vec(-3.0f64..3.0, n), prop::collection::vec(-3.0f64..3.0, n))),
            half in 1usize..=4,
        ) {
            let d = 2 * half;
            let root = |v: &[f64]| h_powersum(d, v).max(0.0).powf(1.0 / d as f64);
            let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            prop_assert!(root(&sum) <= root(&x) + root(&y) + 1e-10);
        }

        #[test]
        fn schur_convex_against_mean_vector(x in vec_strategy(), half in 1usize..=4) {
            let d = 2 * half;
            let mu = x.iter().sum::<f64>() / x.len() as f64;
            let flat = vec![mu; x.len()];
            let hx = h_powersum(d, &x);
            prop_assert!(hx >= h_powersum(d, &flat) - 1e-10 * hx.abs().max(1.0));
        }

        #[test]
        fn powersum_agrees_with_direct(x in vec_strategy(), d in 0usize..=8) {
            let a = h_direct(d, &x).unwrap();
            let b = h_powersum(d, &x);
            let scale = h_direct(d, &x.iter().map(|v| v.abs()).collect::<Vec<_>>()).unwrap();
            prop_assert!((a - b).abs() <= 1e-11 * scale + 1e-13);
        }
    }
}
