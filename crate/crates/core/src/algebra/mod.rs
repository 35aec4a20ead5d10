//! Exact arithmetic: Laurent polynomials over the integers and integer
//! skew-symmetric forms.

mod laurent;
mod symplectic;

pub use laurent::{solve_2x2_laurent, LaurentPoly};
pub use symplectic::{
    determinant, identity, mat_mul, mat_vec, mod2_rank, standard_symplectic, symplectic_reduce,
    transpose, IntMatrix, SkewForm, SymplecticBasis,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("quotient is not a Laurent polynomial")]
    Indivisible,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("linear system has no solution in Z[A, A^-1]")]
    NoLaurentSolution,
    #[error("matrix is not skew-symmetric of even dimension")]
    NotSkew,
    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(i64),
}
