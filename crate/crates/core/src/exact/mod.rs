//! Exact scalars (rationals, Gaussian rationals), polynomials, root
//! extraction and dense linear algebra.

pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use matrix::Matrix;
pub use poly::Poly;
pub use roots::{gaussian_rational_roots, rational_roots, root_multiplicities, DEFAULT_NORM_CAP};
pub use scalar::{field_arith, int, rat, ArithOp, FieldTag, GaussianRational, Rational, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("value {value} exceeds the factorization cap {cap}")]
    NormCapExceeded { value: String, cap: u64 },
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}
