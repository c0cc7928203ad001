//! Truncated bivariate power series in commuting variables `z`, `zbar`,
//! and the Taylor expansion of `det(I - zA - zbar A*)^{-1}`.

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Power series truncated above total degree `max_total_degree`.
///
/// Keys are bidegrees `(a, b)` for `z^a zbar^b`; absent keys are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<S> {
    max_total_degree: usize,
    coeffs: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> BivariateSeries<S> {
    pub fn zero(max_total_degree: usize) -> Self {
        Self { max_total_degree, coeffs: BTreeMap::new() }
    }

    pub fn one(max_total_degree: usize) -> Self {
        Self::from_terms(max_total_degree, [((0, 0), S::one())])
    }

    /// Collects terms, summing repeats and dropping zeros and anything above
    /// the truncation degree.
    pub fn from_terms(max_total_degree: usize, terms: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut s = Self::zero(max_total_degree);
        for ((a, b), v) in terms {
            s.add_to(a, b, v);
        }
        s
    }

    /// Integer-coefficient polynomial, e.g. `[((0,0), 1), ((1,1), -4)]`.
    pub fn from_int_terms(max_total_degree: usize, terms: &[((usize, usize), i64)]) -> Self {
        Self::from_terms(max_total_degree, terms.iter().map(|&(k, v)| (k, S::from_i64(v))))
    }

    pub fn max_total_degree(&self) -> usize {
        self.max_total_degree
    }

    pub fn coeff(&self, a: usize, b: usize) -> S {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero terms in bidegree order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.coeffs.iter()
    }

    fn add_to(&mut self, a: usize, b: usize, v: S) {
        if a + b > self.max_total_degree {
            return;
        }
        let sum = self.coeff(a, b) + v;
        if sum.is_zero() {
            self.coeffs.remove(&(a, b));
        } else {
            self.coeffs.insert((a, b), sum);
        }
    }

    /// Truncated product; the result keeps the smaller truncation degree.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.max_total_degree.min(other.max_total_degree);
        let mut out = Self::zero(t);
        for (&(a, b), x) in &self.coeffs {
            for (&(c, e), y) in &other.coeffs {
                out.add_to(a + c, b + e, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_total_degree.min(other.max_total_degree));
        for (&(a, b), v) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_to(a, b, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.max_total_degree, self.coeffs.iter().map(|(&k, v)| (k, c.clone() * v.clone())))
    }
}

/// Taylor expansion of `det(I - zA - zbar A*)^{-1}` through total degree `t`.
///
/// With `Q_{0,0} = I` and `Q_{a,b} = A Q_{a-1,b} + A* Q_{a,b-1}`, the
/// logarithm of the series is `sum_k (1/k) sum_{a+b=k} tr(Q_{a,b}) z^a zbar^b`.
/// Applying the total-degree Euler operator to `F = exp(L)` gives
/// `m F[a,b] = sum tr(Q_{c,e}) F[a-c, b-e]` over `1 <= c+e`, which is exact
/// over the rationals.
pub fn det_inverse_series<S: Scalar>(a: &Matrix<S>, t: usize) -> BivariateSeries<S> {
    let n = a.n();
    let adj = a.adjoint();

    // traces[a][b] = tr(Q_{a,b}) for a + b <= t
    let mut traces: Vec<Vec<S>> = (0..=t).map(|i| vec![S::zero(); t + 1 - i]).collect();
    let mut level: Vec<Matrix<S>> = vec![Matrix::identity(n)];
    traces[0][0] = S::from_i64(n as i64);
    for k in 1..=t {
        let mut next = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let j = k - i;
            // level[i'] holds Q_{i', k-1-i'}
            let mut q = Matrix::zeros(n);
            if i >= 1 {
                q = &q + &(a * &level[i - 1]);
            }
            if j >= 1 {
                q = &q + &(&adj * &level[i]);
            }
            traces[i][j] = q.trace();
            next.push(q);
        }
        level = next;
    }

    let mut f: Vec<Vec<S>> = (0..=t).map(|i| vec![S::zero(); t + 1 - i]).collect();
    f[0][0] = S::one();
    for m in 1..=t {
        for i in 0..=m {
            let j = m - i;
            let mut acc = S::zero();
            for c in 0..=i {
                for e in 0..=j {
                    if c + e == 0 {
                        continue;
                    }
                    let s = &traces[c][e];
                    let g = &f[i - c][j - e];
                    if s.is_zero() || g.is_zero() {
                        continue;
                    }
                    acc = acc + s.clone() * g.clone();
                }
            }
            f[i][j] = acc.div_int(m as u128);
        }
    }

    BivariateSeries::from_terms(
        t,
        f.into_iter().enumerate().flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| ((i, j), v))),
    )
}
