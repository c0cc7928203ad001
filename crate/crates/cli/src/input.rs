use std::path::Path;

use chs_core::graph::Graph;
use chs_core::matrix_file::{parse_matrix, MatrixData};

/// Reads a matrix file; `exact` lifts floating-point entries to rationals.
pub fn load(path: &Path, exact: bool) -> Result<MatrixData, String> {
    let data = parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    lift(data, exact).map_err(|e| format!("{}: {e}", path.display()))
}

fn lift(data: MatrixData, exact: bool) -> chs_core::Result<MatrixData> {
    if exact {
        Ok(MatrixData::Exact(data.into_exact()?))
    } else {
        Ok(data)
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// A JSON matrix document or an edge list, told apart by the leading `{`.
pub fn load_graph_or_matrix(path: &Path) -> Result<MatrixData, String> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        parse_matrix(&text)
    } else {
        Graph::parse(&text).map(|g| MatrixData::Exact(g.adjacency().into_inner()))
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

/// Loads both inputs on a common tower: exact only if both are exact.
pub fn load_pair(left: &Path, right: &Path) -> Result<(MatrixData, MatrixData), String> {
    let a = load_graph_or_matrix(left)?;
    let b = load_graph_or_matrix(right)?;
    if a.n() != b.n() {
        return Err(format!("inputs have different sizes {} and {}", a.n(), b.n()));
    }
    Ok(match (a, b) {
        (a @ MatrixData::Exact(_), b @ MatrixData::Exact(_)) => (a, b),
        (a, b) => (MatrixData::Approx(a.to_approx()), MatrixData::Approx(b.to_approx())),
    })
}
