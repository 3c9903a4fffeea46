//! The operator algebra: cup and insertion products, the derived bracket,
//! cap actions, convolution on the small model, and executable checkers for
//! the calculus and Batalin-Vilkovisky axioms.

pub mod cap;
pub mod checks;
pub mod classes;
pub mod ops;

pub use cap::{cap_on_bar, cap_star, lie_star, CellMap};
pub use checks::{gerstenhaber_reports, AxiomReport};
pub use classes::{DualClasses, Identification, KClasses};
pub use ops::{
    add_cochains, basis_cochains, bracket, check_cup_leibniz, circle, cup,
    differential, k_differential, k_product, scale_cochain, unit_cochain,
    zero_cochain, Cochain, KElement,
};
