//! Complete homogeneous symmetric polynomial norms on Hermitian and complex
//! matrices.

pub mod bounds;
pub mod charpoly;
pub mod chs_poly;
pub mod complex_norm;
pub mod dispatch;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod hermitian_norm;
pub mod matrix;
pub mod matrix_file;
pub mod partitions;
pub mod sampling;
pub mod scalar;
pub mod suite;
pub mod tensor_power;

pub use dispatch::{applicable_methods, compute_norm, default_method};
pub use error::{Error, Result};
pub use hermitian_norm::{Method, NormResult};
pub use matrix::{HermitianMatrix, Matrix};
pub use scalar::{Approx, Exact, Value};
