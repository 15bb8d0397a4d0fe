//! Exact rational arithmetic, graded polynomials and linear algebra over ℚ.

mod eigen;
mod graded;
mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use eigen::{
    assert_single_eigenvalue, characteristic_polynomial, generalized_eigenspace, generalized_eigenspace_projectors,
    UniPoly,
};
pub use graded::GradedVectorSpace;
pub use matrix::{echelon_rows, Matrix, Rref, Vector};
pub use poly::{Exponents, Polynomial, Var, VarSet};
pub use scalar::Scalar;
pub use subspace::{unit_vectors, Quotient, Subspace};

/// `ker m`, echelonized.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// Some `x` with `m·x = b`, `None` if inconsistent, error on a length mismatch.
pub fn solve(m: &Matrix, b: &[Scalar]) -> crate::Result<Option<Vector>> {
    m.solve(b)
}
