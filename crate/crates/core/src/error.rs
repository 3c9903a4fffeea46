//! Error type shared across the engine.
//!
//! Mathematical failures (an identity that does not hold, a map that is not a
//! quasi-isomorphism) are separated from input errors so the CLI can map them
//! to distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not semisimple over this field: {0}")]
    NotSemisimpleOverField(String),

    #[error("matrix does not restrict to an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("algebra is not Frobenius: {0}")]
    NotFrobenius(String),

    #[error("differential does not square to zero at cell ({h}, {w})")]
    DifferentialSquare { h: i64, w: i64 },

    #[error("operator identity `{identity}` violated at cell ({h}, {w})")]
    IdentityViolated {
        identity: &'static str,
        h: i64,
        w: i64,
    },

    #[error("{map} is not a chain map at cell ({h}, {w})")]
    ChainMapViolated {
        map: &'static str,
        h: i64,
        w: i64,
    },

    #[error("{map} is not a quasi-isomorphism at cell ({h}, {w}): ranks {left} vs {right}")]
    NotQuasiIso {
        map: &'static str,
        h: i64,
        w: i64,
        left: usize,
        right: usize,
    },

    #[error("class has no preimage under {map} at cell ({h}, {w})")]
    ClassNotInImage {
        map: &'static str,
        h: i64,
        w: i64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Input errors get CLI exit code 2; everything else is a mathematical
    /// failure (exit code 1).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}
