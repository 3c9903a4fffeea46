//! Frobenius structure on the finite-dimensional quadratic dual: the graded
//! pairing, the Nakayama automorphism on both sides of the duality, and the
//! pairing isomorphism onto the dual coalgebra.

use crate::algebra::{
    extend_automorphism, restrict_to_coalgebra, AlgebraAutomorphism, DualCoalgebra,
    GradedAlgebra,
};
use crate::error::Error;
use crate::kernel::{unit_vector, Eigenspace, Field, Scalar, SparseMatrix};

/// Frobenius data for a finite-dimensional graded algebra with
/// one-dimensional top degree.
///
/// The functional `λ` is the dual of the lexicographically first top basis
/// element; the pairing is `⟨a, b⟩ = λ(ab)`. The Nakayama automorphism is the
/// unique graded automorphism with
/// `⟨ab, c⟩ = (-1)^{|c|(|a|+|b|)} ⟨σ(c) a, b⟩` on all tabled triples.
#[derive(Clone)]
pub struct FrobeniusStructure {
    pub top_degree: usize,
    /// `pairings[i]`: rows indexed by the degree-`i` basis, columns by the
    /// complementary degree; entry `λ(a·b)`. All invertible.
    pub pairings: Vec<SparseMatrix>,
    /// Nakayama automorphism of the finite-dimensional algebra.
    pub nakayama_dual: AlgebraAutomorphism,
}

impl FrobeniusStructure {
    pub fn field(&self) -> Field {
        self.nakayama_dual.field()
    }

    pub fn pairing(&self, i: usize) -> &SparseMatrix {
        &self.pairings[i]
    }
}

/// Detects the Frobenius structure of an expanded finite-dimensional algebra.
/// `lambda_scale` rescales the functional; the Nakayama automorphism must not
/// depend on it (tested), so callers normally pass `None`.
pub fn detect_frobenius(
    dual: &GradedAlgebra,
    lambda_scale: Option<Scalar>,
) -> Result<FrobeniusStructure, Error> {
    let field = dual.field();
    // locate the top degree: connected graded algebras generated in degree 1
    // vanish above the first zero component
    let mut top = None;
    for d in 1..=dual.bound() {
        if dual.dim(d as i64) == 0 {
            top = Some(d - 1);
            break;
        }
    }
    let Some(n) = top else {
        return Err(Error::NotFrobenius(format!(
            "no vanishing component up to the expansion bound {}; not finite-dimensional as tabled",
            dual.bound()
        )));
    };
    if dual.dim(n as i64) != 1 {
        return Err(Error::NotFrobenius(format!(
            "top component has dimension {}, expected 1",
            dual.dim(n as i64)
        )));
    }
    let scale = lambda_scale.unwrap_or_else(|| field.one());
    if scale.is_zero() {
        return Err(Error::InvalidInput("lambda scale must be nonzero".into()));
    }

    // pairing matrices and nondegeneracy; λ picks the top coefficient
    let mut pairings = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let di = dual.dim(i as i64);
        let dj = dual.dim((n - i) as i64);
        let mut p = SparseMatrix::zero(field, di, dj);
        for a in 0..di {
            for b in 0..dj {
                let prod = dual.mul_basis(i, a, n - i, b);
                p.set(a, b, &scale * &prod[0]);
            }
        }
        if p.inverse().is_none() {
            return Err(Error::NotFrobenius(format!(
                "pairing between degrees {i} and {} is singular",
                n - i
            )));
        }
        pairings.push(p);
    }

    // Solve the Nakayama identity degreewise with b = 1:
    // λ(σ(c) a) = (-1)^{|a||c|} λ(a c) for all a; as matrices
    // pairings[d]^T σ(c) = ± column_c(pairings[n-d]).
    let mut per_degree = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let dd = dual.dim(d as i64);
        let pt = pairings[d].transpose();
        let pt_inv = pt.inverse().expect("nondegenerate pairing");
        let sign_even = (d * (n - d)) % 2 == 0;
        let mut m = SparseMatrix::zero(field, dd, dd);
        for c in 0..dd {
            let q = pairings[n - d].column(c);
            let q: Vec<Scalar> = if sign_even {
                q
            } else {
                q.into_iter().map(|s| -s).collect()
            };
            let sc = pt_inv.apply(&q);
            for (r, s) in sc.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, c, s);
                }
            }
        }
        per_degree.push(m);
    }

    // the degree-1 matrix must extend to an algebra automorphism matching the
    // solved matrices in every degree
    let nakayama_dual = extend_automorphism(dual, &per_degree[1]).map_err(|e| {
        Error::NotFrobenius(format!("solved Nakayama matrix does not extend: {e}"))
    })?;
    for d in 0..=n {
        if nakayama_dual.on_degree(d) != &per_degree[d] {
            return Err(Error::NotFrobenius(format!(
                "Nakayama solution is not multiplicative at degree {d}"
            )));
        }
    }

    let frob = FrobeniusStructure {
        top_degree: n,
        pairings,
        nakayama_dual,
    };
    verify_nakayama_identity(dual, &frob)?;
    Ok(frob)
}

/// Full graded Nakayama identity on all tabled triples.
fn verify_nakayama_identity(
    dual: &GradedAlgebra,
    frob: &FrobeniusStructure,
) -> Result<(), Error> {
    let field = dual.field();
    let n = frob.top_degree;
    let lam_pair = |da: usize, a: &[Scalar], db: usize, b: &[Scalar]| -> Scalar {
        if da + db != n {
            return field.zero();
        }
        let mut acc = field.zero();
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                acc += ca * cb * frob.pairings[da].get(i, j);
            }
        }
        acc
    };
    for da in 0..=n {
        for db in 0..=(n - da) {
            let dc = n - da - db;
            for ia in 0..dual.dim(da as i64) {
                for ib in 0..dual.dim(db as i64) {
                    for ic in 0..dual.dim(dc as i64) {
                        let a = unit_vector(field, dual.dim(da as i64), ia);
                        let b = unit_vector(field, dual.dim(db as i64), ib);
                        let c = unit_vector(field, dual.dim(dc as i64), ic);
                        let ab = dual.mul(da, &a, db, &b);
                        let lhs = lam_pair(da + db, &ab, dc, &c);
                        let sc = frob.nakayama_dual.on_degree(dc).apply(&c);
                        let sca = dual.mul(dc, &sc, da, &a);
                        let mut rhs = lam_pair(dc + da, &sca, db, &b);
                        if (dc * (da + db)) % 2 == 1 {
                            rhs = -rhs;
                        }
                        if lhs != rhs {
                            return Err(Error::NotFrobenius(format!(
                                "Nakayama identity fails on triple of degrees ({da},{db},{dc})"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Eigendata of an automorphism on every tabled degree, with the product
/// compatibility check. Fails with `NotSemisimpleOverField` when the
/// generator matrix does not diagonalize.
pub fn check_semisimple(
    sigma: &AlgebraAutomorphism,
    max_degree: usize,
) -> Result<Vec<Vec<Eigenspace>>, Error> {
    (0..=max_degree).map(|d| sigma.degree_eigendata(d)).collect()
}

/// Nakayama automorphism of the Koszul-regular side: the adjoint of the dual
/// Nakayama automorphism under the dual bases (plain transpose on the
/// generator space), extended over the algebra.
pub fn nakayama_of_a(
    frob: &FrobeniusStructure,
    alg: &GradedAlgebra,
) -> Result<AlgebraAutomorphism, Error> {
    let adjoint = frob.nakayama_dual.on_degree(1).transpose();
    extend_automorphism(alg, &adjoint)
}

/// Canonical pairing between the degree-`m` parts of the expanded dual
/// algebra and the dual coalgebra: the chosen word functional of each basis
/// class evaluated on the tensor basis. Always invertible.
pub fn canonical_pairing(
    dual: &GradedAlgebra,
    coalg: &DualCoalgebra,
    m: usize,
) -> SparseMatrix {
    let field = dual.field();
    let n = dual.num_generators();
    let rows = dual.dim(m as i64);
    let cols = coalg.dim(m as i64);
    let mut q = SparseMatrix::zero(field, rows, cols);
    for (k, word) in dual.basis_words(m).iter().enumerate() {
        let widx = crate::algebra::word_index(n, word);
        for l in 0..cols {
            let v = coalg.basis_matrix(m).get(widx, l);
            if !v.is_zero() {
                q.set(k, l, v);
            }
        }
    }
    q
}

/// The pairing isomorphism onto the dual coalgebra: degree-`d` elements map
/// to the degree-`n-d` coalgebra component by `a ↦ ⟨-, a⟩`, coordinates taken
/// through the canonical pairing. Each component is invertible.
pub fn psi_matrices(
    dual: &GradedAlgebra,
    coalg: &DualCoalgebra,
    frob: &FrobeniusStructure,
) -> Result<Vec<SparseMatrix>, Error> {
    let n = frob.top_degree;
    let mut out = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let q = canonical_pairing(dual, coalg, n - d);
        let q_inv = q.inverse().ok_or_else(|| {
            Error::Internal(format!("canonical pairing singular at degree {}", n - d))
        })?;
        // functional values of ψ(basis a) on the complementary basis are the
        // columns of pairings[n-d]
        let psi = q_inv.mul(&frob.pairings[n - d]);
        if psi.inverse().is_none() {
            return Err(Error::Internal(format!(
                "pairing isomorphism singular at degree {d}"
            )));
        }
        out.push(psi);
    }
    Ok(out)
}

/// Action on the dual coalgebra induced by the Nakayama automorphism of the
/// regular side: restriction of its tensor powers. Coincides with
/// conjugating the dual Nakayama matrices through the canonical pairing
/// (tested).
pub fn sigma_on_coalgebra(
    coalg: &DualCoalgebra,
    nakayama_a: &AlgebraAutomorphism,
) -> Result<Vec<SparseMatrix>, Error> {
    restrict_to_coalgebra(coalg, nakayama_a.v_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expand, koszul_dual_coalgebra, QuadraticPresentation};

    fn poly2() -> QuadraticPresentation {
        let f = Field::Q;
        QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])]],
        )
        .unwrap()
    }

    fn qplane() -> QuadraticPresentation {
        let f = Field::Q;
        QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]],
        )
        .unwrap()
    }

    fn kx() -> QuadraticPresentation {
        QuadraticPresentation::new(Field::Q, vec!["x".into()], vec![]).unwrap()
    }

    /// Independent dense oracle for the Nakayama generator matrix: set up the
    /// defining identity as one linear system and solve it directly.
    fn brute_force_nakayama_on_generators(dual: &GradedAlgebra, n: usize) -> SparseMatrix {
        let f = dual.field();
        let d1 = dual.dim(1);
        let dtop = dual.dim((n - 1) as i64);
        // unknowns: σ(c_j) = sum_i m[i][j] c_i; equations over a in degree n-1
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for j in 0..d1 {
            for a in 0..dtop {
                let mut row = vec![f.zero(); d1 * d1];
                for i in 0..d1 {
                    // coefficient of m[i][j]: λ(c_i · a)
                    let prod = dual.mul_basis(1, i, n - 1, a);
                    row[i * d1 + j] = prod[0].clone();
                }
                rows.push(row);
                // rhs: ± λ(a · c_j)
                let prod = dual.mul_basis(n - 1, a, 1, j);
                let mut v = prod[0].clone();
                if (n - 1) % 2 == 1 {
                    v = -v;
                }
                rhs.push(v);
            }
        }
        let m = SparseMatrix::from_dense(f, rows);
        let sol = m.solve(&rhs).expect("Nakayama system has a solution");
        let mut out = SparseMatrix::zero(f, d1, d1);
        for i in 0..d1 {
            for j in 0..d1 {
                out.set(i, j, sol[i * d1 + j].clone());
            }
        }
        out
    }

    #[test]
    fn exterior_dual_of_polynomial_plane() {
        let dual = expand(&poly2().quadratic_dual(), 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        assert_eq!(frob.top_degree, 2);
        // commutative case: Nakayama is the identity on generators
        assert!(
            frob.nakayama_dual.on_degree(1).clone()
                == SparseMatrix::identity(Field::Q, 2)
        );
        // degree-1 pairing is antisymmetric
        let p1 = frob.pairing(1);
        assert_eq!(p1.get(0, 1), -p1.get(1, 0));
    }

    #[test]
    fn quantum_plane_nakayama_eigenvalues() {
        let dual = expand(&qplane().quadratic_dual(), 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        assert_eq!(frob.top_degree, 2);
        let eig = frob.nakayama_dual.generator_eigendata().unwrap();
        let values: Vec<String> = eig.iter().map(|e| e.value.literal()).collect();
        assert_eq!(values, vec!["1/2", "2"]);
        // top degree eigenvalue is the product 2 * 1/2 = 1
        let top = frob.nakayama_dual.on_degree(2);
        assert!(top.get(0, 0).is_one());
        // independent brute-force oracle agrees on generators
        let oracle = brute_force_nakayama_on_generators(&dual, 2);
        assert_eq!(&oracle, frob.nakayama_dual.on_degree(1));
    }

    #[test]
    fn dual_numbers_from_free_line() {
        let dual = expand(&kx().quadratic_dual(), 3).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        assert_eq!(frob.top_degree, 1);
        assert!(frob.nakayama_dual.on_degree(1).get(0, 0).is_one());
    }

    #[test]
    fn lambda_rescaling_keeps_nakayama() {
        let dual = expand(&qplane().quadratic_dual(), 4).unwrap();
        let a = detect_frobenius(&dual, None).unwrap();
        let b = detect_frobenius(&dual, Some(Field::Q.from_i64(7))).unwrap();
        for d in 0..=2usize {
            assert_eq!(a.nakayama_dual.on_degree(d), b.nakayama_dual.on_degree(d));
        }
        // the pairing itself does rescale
        assert_eq!(
            b.pairing(0).get(0, 0),
            Field::Q.from_i64(7) * a.pairing(0).get(0, 0)
        );
    }

    #[test]
    fn non_frobenius_rejected() {
        // the polynomial plane itself is not finite-dimensional
        let alg = expand(&poly2(), 4).unwrap();
        assert!(matches!(
            detect_frobenius(&alg, None),
            Err(Error::NotFrobenius(_))
        ));
    }

    #[test]
    fn nakayama_of_regular_side() {
        let p = qplane();
        let alg = expand(&p, 4).unwrap();
        let dual = expand(&p.quadratic_dual(), 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        let sig = nakayama_of_a(&frob, &alg).unwrap();
        let eig = sig.generator_eigendata().unwrap();
        let values: Vec<String> = eig.iter().map(|e| e.value.literal()).collect();
        assert_eq!(values, vec!["1/2", "2"]);
        // polynomial case: identity
        let p0 = poly2();
        let alg0 = expand(&p0, 4).unwrap();
        let dual0 = expand(&p0.quadratic_dual(), 4).unwrap();
        let frob0 = detect_frobenius(&dual0, None).unwrap();
        let sig0 = nakayama_of_a(&frob0, &alg0).unwrap();
        assert!(sig0.is_identity());
    }

    #[test]
    fn semisimple_check_propagates() {
        let dual = expand(&qplane().quadratic_dual(), 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        let eig = check_semisimple(&frob.nakayama_dual, 2).unwrap();
        assert_eq!(eig[1].len(), 2);
        // degree 2: single eigenvalue 1
        assert_eq!(eig[2].len(), 1);
        assert!(eig[2][0].value.is_one());
    }

    #[test]
    fn psi_components_invertible() {
        let p = poly2();
        let dual = expand(&p.quadratic_dual(), 4).unwrap();
        let coalg = koszul_dual_coalgebra(&p, 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        let psi = psi_matrices(&dual, &coalg, &frob).unwrap();
        assert_eq!(psi.len(), 3);
        for (d, m) in psi.iter().enumerate() {
            assert!(m.inverse().is_some(), "psi singular at degree {d}");
        }
        assert!(!psi[0].is_zero_matrix());
    }

    #[test]
    fn coalgebra_twist_matches_pairing_conjugation() {
        let p = qplane();
        let alg = expand(&p, 4).unwrap();
        let dual = expand(&p.quadratic_dual(), 4).unwrap();
        let coalg = koszul_dual_coalgebra(&p, 4).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        let sig_a = nakayama_of_a(&frob, &alg).unwrap();
        let on_coalg = sigma_on_coalgebra(&coalg, &sig_a).unwrap();
        for m in 0..=2usize {
            let q = canonical_pairing(&dual, &coalg, m);
            let qinv = q.inverse().unwrap();
            let conj = qinv
                .mul(&frob.nakayama_dual.on_degree(m).transpose())
                .mul(&q);
            assert_eq!(conj, on_coalg[m], "twist mismatch at degree {m}");
        }
    }
}
