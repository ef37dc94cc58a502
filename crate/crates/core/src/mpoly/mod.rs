//! Sparse multivariate polynomials, term orders, affine coordinate changes,
//! resultants and Jacobian minors.

mod coord;
mod jacobian;
mod monomial;
mod order;
mod parse;
mod poly;
mod resultant;

pub use coord::{apply_coord_change, apply_inverse_coord_change, substitute_affine, CoordChange};
pub use jacobian::jacobian_minors;
pub use monomial::Monomial;
pub use order::{DegreeOrder, TermOrder};
pub use parse::{parse_poly, parse_poly_at_line};
pub use poly::{default_var_names, MultiPoly};
pub use resultant::{bareiss_determinant, resultant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MpolyError {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("coordinate change matrix is singular")]
    SingularMatrix,
    #[error("polynomial has degree 0 in variable {0}")]
    DegreeZeroInVariable(usize),
    #[error("minor size {k} exceeds the {rows}x{cols} Jacobian")]
    SizeTooLarge { k: usize, rows: usize, cols: usize },
    #[error("variable count mismatch")]
    VariableCountMismatch,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
