//! Quadratic presentations, graded expansion, quadratic duals, the Koszul
//! dual coalgebra, graded automorphisms and Koszulity certification.

pub mod automorphism;
pub mod coalgebra;
pub mod graded;
pub mod koszul;
pub mod presentation;

pub use automorphism::{extend_automorphism, restrict_to_coalgebra, AlgebraAutomorphism};
pub use coalgebra::{koszul_dual_coalgebra, DualCoalgebra};
pub use graded::{expand, GradedAlgebra};
pub use koszul::{check_koszul, koszul_complex, KoszulReport};
pub use presentation::{index_word, word_index, QuadraticPresentation};
