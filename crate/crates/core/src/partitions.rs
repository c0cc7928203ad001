//! Integer partitions and their centralizer weights `z_pi`.

use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let valid = !parts.is_empty() && parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if valid {
            Ok(Self { parts })
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts[0] + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_pi = prod_i i^{m_i} m_i!`.
    pub fn z_weight(&self) -> u128 {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &m)| (i as u128).pow(m as u32) * factorial(m as u32))
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `d` in reverse-lexicographic order, starting at `(d)`.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    assert!(d >= 1, "partitions_of needs d >= 1");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(d, d, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

/// Binomial coefficient; panics on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

/// Saturating binomial for size guards.
pub fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        match acc.checked_mul(n as u128 - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}
