//! Exact integer linear algebra: normal forms, determinants and the
//! determinant pencil `det(q*A - I)`.

mod int;
pub mod matrix;
mod normal_form;
mod poly;

pub use int::{ext_gcd, ExactInt};
pub use matrix::IntMatrix;
pub use normal_form::{
    char_poly_i64,    det_i64, det_pencil, det_pencil_i64, determinant, hnf_canonical, hnf_i64, inverse_unimodular, smith_i64,
    smith_normal_form, SmallSmith, SmithForm,
};
pub use poly::IntPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("shape mismatch: {left:?} against {right:?}")]
    Shape { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
}
