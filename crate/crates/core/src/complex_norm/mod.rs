//! The extension of the CHS norms to all square complex matrices.
//!
//! Three independent routes compute `||A||_d^d`:
//!
//! * [`norm_via_words`]: the partition sum `sum_pi T_pi(A) / z_pi`, where
//!   `T_pi` averages products of traces of words in `A` and `A*` over every
//!   placement of `d/2` adjoints among `d` letters;
//! * [`norm_via_quadrature`]: the periodic trapezoid rule applied to
//!   `t -> ||e^{it} A + e^{-it} A*||_d^d`, whose integrand is a trigonometric
//!   polynomial of degree at most `d`;
//! * [`norm_via_det_series`]: the `z^{d/2} zbar^{d/2}` coefficient of
//!   `det(I - zA - zbar A*)^{-1}` divided by `binom(d, d/2)`.

mod series;

pub use series::{det_inverse_series, BivariateSeries};

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian_norm::{check_even_degree, dth_power_via_spectrum, Method, NormResult};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::partitions::{binomial, partitions_of, Partition};
use crate::scalar::{Approx, Real, Scalar};

/// Largest `d` accepted by [`star_placements`].
pub const PLACEMENT_MAX_D: usize = 16;

/// Default largest `d` for the word method.
pub const WORDS_MAX_D: usize = 12;

/// A letter of the free monoid on `x` and `x*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Plain,
    Star,
}

/// A word in `x` and `x*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// Word whose `i`-th letter is a star iff bit `i` of `bits` is set.
    pub fn from_bits(len: usize, bits: u32) -> Self {
        Self::new((0..len).map(|i| if bits >> i & 1 == 1 { Letter::Star } else { Letter::Plain }).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn star_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::Star).count()
    }

    /// Substitutes `A` for `x` and `A*` for `x*`.
    pub fn evaluate<S: Scalar>(&self, a: &Matrix<S>) -> Matrix<S> {
        let adj = a.adjoint();
        self.letters.iter().fold(Matrix::identity(a.n()), |acc, l| match l {
            Letter::Plain => &acc * a,
            Letter::Star => &acc * &adj,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::Plain => "x",
                Letter::Star => "x*",
            })?;
        }
        Ok(())
    }
}

fn placement_masks(d: usize) -> Result<Vec<u32>> {
    check_even_degree(d)?;
    if d > PLACEMENT_MAX_D {
        return Err(Error::DegreeTooLarge { d, max: PLACEMENT_MAX_D });
    }
    Ok((0u32..1 << d).filter(|m| m.count_ones() as usize == d / 2).collect())
}

/// All length-`d` masks with exactly `d/2` stars, in increasing order of
/// their bit encoding (bit `i` marks position `i`).
pub fn star_placements(d: usize) -> Result<Vec<Vec<bool>>> {
    Ok(placement_masks(d)?.into_iter().map(|m| (0..d).map(|i| m >> i & 1 == 1).collect()).collect())
}

/// `tr(w(A))` for every word of length `1..=max_len`.
struct WordTraces<S> {
    /// `by_len[k][bits]` for words of length `k`.
    by_len: Vec<Vec<S>>,
}

impl<S: Scalar> WordTraces<S> {
    fn new(a: &Matrix<S>, max_len: usize) -> Self {
        let adj = a.adjoint();
        let mut by_len = vec![vec![S::from_i64(a.n() as i64)]];
        let mut prefixes = vec![Matrix::identity(a.n())];
        for k in 1..=max_len {
            let last = k == max_len;
            let mut traces = Vec::with_capacity(1 << k);
            let mut next = Vec::with_capacity(if last { 0 } else { 1 << k });
            for bits in 0u32..1 << k {
                let prefix = &prefixes[(bits & ((1 << (k - 1)) - 1)) as usize];
                let letter = if bits >> (k - 1) & 1 == 1 { &adj } else { a };
                if last {
                    traces.push(prefix.trace_of_product(letter));
                } else {
                    let w = prefix * letter;
                    traces.push(w.trace());
                    next.push(w);
                }
            }
            by_len.push(traces);
            prefixes = next;
        }
        Self { by_len }
    }

    /// Sum over masks of the product of block traces for one partition.
    fn placement_sum(&self, masks: &[u32], part: &Partition) -> S {
        masks.iter().fold(S::zero(), |acc, &mask| {
            let mut start = 0;
            let mut prod = S::one();
            for &len in part.parts() {
                let bits = (mask >> start) & ((1u32 << len) - 1);
                prod = prod * self.by_len[len][bits as usize].clone();
                start += len;
            }
            acc + prod
        })
    }
}

/// `T_pi(A)`: the average over star placements of
/// `tr(w_1(A)) ... tr(w_r(A))`, where the placement is cut into consecutive
/// blocks of lengths `pi_1, ..., pi_r`.
///
/// The result is real in exact arithmetic; it is returned as a complex
/// scalar so callers can inspect the imaginary part.
pub fn t_pi<S: Scalar>(a: &Matrix<S>, part: &Partition) -> Result<S> {
    let d = part.size();
    let masks = placement_masks(d)?;
    let traces = WordTraces::new(a, part.parts()[0]);
    Ok(traces.placement_sum(&masks, part).div_int(binomial(d as u64, d as u64 / 2)))
}

/// `sum_{pi |- d} T_pi(A) / z_pi` as a complex scalar.
pub fn words_dth_power<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<S> {
    check_even_degree(d)?;
    if d > WORDS_MAX_D {
        return Err(Error::DegreeTooLarge { d, max: WORDS_MAX_D });
    }
    let masks = placement_masks(d)?;
    let traces = WordTraces::new(a, d);
    let total = partitions_of(d)
        .iter()
        .fold(S::zero(), |acc, part| acc + traces.placement_sum(&masks, part).div_int(part.z_weight()));
    Ok(total.div_int(binomial(d as u64, d as u64 / 2)))
}

/// Norm through the partition/word trace polynomial.
pub fn norm_via_words<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<NormResult> {
    let total = words_dth_power(a, d)?;
    Ok(NormResult::new(d, total.re().to_value(), Method::Words))
}

/// Default quadrature node count `2d + 2`.
pub fn default_nodes(d: usize) -> usize {
    2 * d + 2
}

/// Norm through the trapezoid rule on `N` equispaced nodes of `[0, 2 pi)`.
///
/// Exact up to eigensolver error whenever `N >= d + 1`.
pub fn norm_via_quadrature<S: Scalar>(a: &Matrix<S>, d: usize, nodes: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    if nodes < d + 1 {
        return Err(Error::TooFewNodes { nodes, min: d + 1 });
    }
    let a = a.to_approx();
    let adj = a.adjoint();
    let mut sum = 0.0;
    for k in 0..nodes {
        let t = 2.0 * PI * k as f64 / nodes as f64;
        let e = Complex64::from_polar(1.0, t);
        let b = &a.scale(&e) + &adj.scale(&e.conj());
        sum += dth_power_via_spectrum(&HermitianMatrix::new(b)?, d)?;
    }
    let mean = sum / nodes as f64;
    Ok(NormResult::new(d, crate::scalar::Value::Approx(mean / binomial(d as u64, d as u64 / 2) as f64), Method::Quadrature))
}

/// Norm through the determinantal series.
pub fn norm_via_det_series<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    let series = det_inverse_series(a, d);
    let c = series.coeff(d / 2, d / 2).div_int(binomial(d as u64, d as u64 / 2));
    Ok(NormResult::new(d, c.re().to_value(), Method::Detseries))
}

/// Words for `d <= 8`, the determinantal series beyond.
pub fn complex_norm<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<NormResult> {
    if d <= 8 {
        norm_via_words(a, d)
    } else {
        norm_via_det_series(a, d)
    }
}

/// Convenience for the common approximate case.
pub fn complex_norm_value(a: &Matrix<Approx>, d: usize) -> Result<f64> {
    Ok(complex_norm(a, d)?.value)
}
