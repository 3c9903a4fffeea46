//! Poincaré- and Koszul-duality machinery: the small models, the comparison
//! maps, both Δ pipelines, and the end-to-end verifier.

pub mod context;
pub mod kmodel;
pub mod delta;
pub mod lzz;
pub mod verify;
pub mod restriction;

pub use context::Context;
pub use kmodel::{induced_on_homology, InclusionQ, KCochain, KTwisted, PdMap};
pub use restriction::Restriction;
pub use lzz::LzzMap;
pub use delta::{compare_deltas, DeltaA, DeltaAInputs, DeltaDual};
pub use verify::{verify_main_theorem, VerifyOptions};
