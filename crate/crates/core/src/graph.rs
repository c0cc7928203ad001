//! Simple graphs, their adjacency matrices, and spectral comparisons.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dispatch;
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::scalar::{Exact, Scalar, Value};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    /// Edge-list text: the vertex count on the first line, then one
    /// 0-indexed `u v` pair per line. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
        let mut edges = Vec::new();
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: bad vertex {s:?}", no + 1)));
            match fields.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => return Err(Error::Parse(format!("line {}: expected two vertices", no + 1))),
            }
        }
        Self::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Symmetric 0/1 adjacency matrix.
    pub fn adjacency<S: Scalar>(&self) -> HermitianMatrix<S> {
        let m = Matrix::from_fn(self.n, |i, j| {
            if self.edges.contains(&(i.min(j), i.max(j))) {
                S::one()
            } else {
                S::zero()
            }
        });
        HermitianMatrix::new(m).expect("adjacency is symmetric")
    }
}

fn blocks<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, diagonal: bool) -> Result<Matrix<S>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let k = a.n();
    Ok(Matrix::from_fn(2 * k, |i, j| match (i < k, j < k) {
        (true, true) if diagonal => a.get(i, j).clone(),
        (false, false) if diagonal => b.get(i - k, j - k).clone(),
        (true, false) if !diagonal => a.get(i, j - k).clone(),
        (false, true) if !diagonal => b.get(i - k, j).clone(),
        _ => S::zero(),
    }))
}

/// `[[A, 0], [0, B]]`.
pub fn block_diag<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    blocks(a, b, true)
}

/// `[[0, A], [B, 0]]`.
pub fn anti_diag<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    blocks(a, b, false)
}

fn sorted_close(mut x: Vec<f64>, mut y: Vec<f64>, tol: f64) -> bool {
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    x.len() == y.len() && x.iter().zip(&y).all(|(a, b)| (a - b).abs() <= tol)
}

/// Equal eigenvalue multisets.
pub fn cospectral<S: Scalar>(a: &HermitianMatrix<S>, b: &HermitianMatrix<S>, tol: f64) -> Result<bool> {
    let x = hermitian_eigenvalues(&a.to_approx())?;
    let y = hermitian_eigenvalues(&b.to_approx())?;
    Ok(sorted_close(x.values().to_vec(), y.values().to_vec(), tol))
}

/// Equal singular value multisets, i.e. equal `|eigenvalue|` multisets.
pub fn singularly_cospectral<S: Scalar>(a: &HermitianMatrix<S>, b: &HermitianMatrix<S>, tol: f64) -> Result<bool> {
    let x = hermitian_eigenvalues(&a.to_approx())?;
    let y = hermitian_eigenvalues(&b.to_approx())?;
    Ok(sorted_close(x.singular_values(), y.singular_values(), tol))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistinguishRow {
    pub d: usize,
    pub left: Value,
    pub right: Value,
    pub distinguished: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistinguishReport {
    pub rows: Vec<DistinguishRow>,
    /// Smallest listed `d` at which the two norms differ.
    pub first_distinguishing: Option<usize>,
}

/// `||A||_d^d` and `||B||_d^d` for each `d`, exact on the exact tower.
/// Floating values count as different when they disagree beyond a relative
/// `1e-10`.
pub fn chs_distinguish<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, d_list: &[usize]) -> Result<DistinguishReport> {
    let mut rows = Vec::with_capacity(d_list.len());
    for &d in d_list {
        let left = dispatch::norm(a, d)?.dth_power;
        let right = dispatch::norm(b, d)?.dth_power;
        let distinguished = !left.agrees_with(&right, 1e-10);
        rows.push(DistinguishRow { d, left, right, distinguished });
    }
    let first_distinguishing = rows.iter().filter(|r| r.distinguished).map(|r| r.d).min();
    Ok(DistinguishReport { rows, first_distinguishing })
}

/// The doubled-triangle pair: two disjoint triangles versus the bipartite
/// double cover of a triangle (a hexagon).
pub fn doubled_triangle_pair() -> (Matrix<Exact>, Matrix<Exact>) {
    let k = Graph::complete(3).adjacency::<Exact>().into_inner();
    (block_diag(&k, &k).expect("same size"), anti_diag(&k, &k).expect("same size"))
}
