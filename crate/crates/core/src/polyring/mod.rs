//! Homogeneous polynomials over cyclotomic fields, square matrices, and their text formats.

pub mod exponent;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use exponent::{monomials, Exponent};
pub use matrix::SquareMatrix;
pub use parse::{conductor_of, max_variable, parse_matrices, parse_poly, parse_poly_auto, parse_scalar};
pub use poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("E({needed}) does not live in conductor {ambient}")]
    ConductorTooSmall { needed: u64, ambient: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("variable x{var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
}
