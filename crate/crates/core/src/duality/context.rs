//! Shared context for the duality pipeline: the algebra, its quadratic dual,
//! the dual coalgebra, the Frobenius structure and the automorphisms, all
//! expanded to compatible bounds.

use crate::algebra::{
    expand, koszul_dual_coalgebra, AlgebraAutomorphism, DualCoalgebra, GradedAlgebra,
    QuadraticPresentation,
};
use crate::error::Error;
use crate::frobenius::{
    detect_frobenius, nakayama_of_a, psi_matrices, sigma_on_coalgebra, FrobeniusStructure,
};
use crate::kernel::{Field, SparseMatrix};

pub struct Context {
    pub field: Field,
    pub pres: QuadraticPresentation,
    pub alg: GradedAlgebra,
    pub dual_pres: QuadraticPresentation,
    pub dual: GradedAlgebra,
    pub coalg: DualCoalgebra,
    pub frob: FrobeniusStructure,
    /// Nakayama automorphism of the regular side (adjoint transport).
    pub nakayama: AlgebraAutomorphism,
    /// The wrap-face twist used by the twisted complexes in this engine's
    /// orientation: the inverse Nakayama automorphism. In the mirrored tuple
    /// convention this is the usual twisted-coefficient module.
    pub tau: AlgebraAutomorphism,
    /// Action induced by `tau` on the dual coalgebra components.
    pub tau_coalg: Vec<SparseMatrix>,
    /// Pairing isomorphism components `ψ_d` onto the dual coalgebra.
    pub psi: Vec<SparseMatrix>,
}

impl Context {
    /// `a_bound` controls how far the regular side is tabled; it must cover
    /// every algebra degree the verification window touches.
    pub fn new(pres: &QuadraticPresentation, a_bound: usize) -> Result<Self, Error> {
        let field = pres.field();
        let alg = expand(pres, a_bound)?;
        let dual_pres = pres.quadratic_dual();
        let dual = expand(&dual_pres, a_bound.max(4))?;
        let frob = detect_frobenius(&dual, None)?;
        let n = frob.top_degree;
        let coalg = koszul_dual_coalgebra(pres, a_bound.max(n + 1))?;
        let nakayama = nakayama_of_a(&frob, &alg)?;
        let tau = nakayama.inverse();
        let tau_coalg = sigma_on_coalgebra(&coalg, &tau)?;
        let psi = psi_matrices(&dual, &coalg, &frob)?;
        Ok(Context {
            field,
            pres: pres.clone(),
            alg,
            dual_pres,
            dual,
            coalg,
            frob,
            nakayama,
            tau,
            tau_coalg,
            psi,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.frob.top_degree
    }
}
