//! Builders for the Hochschild-type complexes: bar chains of the graded
//! algebra with plain or twisted coefficients, cochains of the
//! finite-dimensional dual, chains of the dual coalgebra, and the cobar
//! construction, together with the cyclic operators and the slotwise
//! automorphism action.

pub mod bar;
pub mod cells;
pub mod coalgebra_chains;
pub mod dual_bar;
pub mod dual_cochain;
pub mod eigen;

pub use bar::BarComplex;
pub use coalgebra_chains::CoalgebraChains;
pub use dual_bar::DualBar;
pub use dual_cochain::DualCochain;
pub use cells::{Sector, TensorCell};
pub use eigen::{cell_eigen, concentration_blocks, CellEigen, SlotEigen};
