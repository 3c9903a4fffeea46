//! Exact scalars, sparse linear algebra, graded spaces and complexes: the
//! substrate every other module computes on.

pub mod complex;
pub mod eigen;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod space;

pub use complex::{
    homology, BigradedComplex, Cell, Direction, HomologyBasis, HomologyCell,
};
pub use eigen::{eigenspace_decomposition, minimal_polynomial, Eigenspace};
pub use matrix::{
    unit_vector, vec_add, vec_axpy, vec_is_zero, vec_scale, vec_sub, zero_vector,
    RowSpace, SparseMatrix, Vector,
};
pub use poly::Poly;
pub use scalar::{Field, Scalar};
pub use space::GradedVectorSpace;
