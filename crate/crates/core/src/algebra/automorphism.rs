//! Graded algebra automorphisms extended from the generator space.

use crate::error::Error;
use crate::kernel::{
    eigenspace_decomposition, Eigenspace, Field, RowSpace, Scalar, SparseMatrix,
};

use super::coalgebra::DualCoalgebra;
use super::graded::GradedAlgebra;

/// An automorphism of a graded algebra, stored as its matrix on the
/// generator space together with the induced matrices on every tabled degree.
#[derive(Clone)]
pub struct AlgebraAutomorphism {
    field: Field,
    v_matrix: SparseMatrix,
    on_degree: Vec<SparseMatrix>,
}

impl AlgebraAutomorphism {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn v_matrix(&self) -> &SparseMatrix {
        &self.v_matrix
    }

    /// Matrix on the degree-`d` component.
    pub fn on_degree(&self, d: usize) -> &SparseMatrix {
        &self.on_degree[d]
    }

    pub fn bound(&self) -> usize {
        self.on_degree.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        let n = self.v_matrix.rows();
        self.v_matrix == SparseMatrix::identity(self.field, n)
    }

    /// Eigenvalues with eigenbases on the generator space.
    pub fn generator_eigendata(&self) -> Result<Vec<Eigenspace>, Error> {
        eigenspace_decomposition(&self.v_matrix)
    }

    /// Eigenvalues with eigenbases on the degree-`d` component; verifies that
    /// every eigenvalue is a product of generator eigenvalues.
    pub fn degree_eigendata(&self, d: usize) -> Result<Vec<Eigenspace>, Error> {
        let spaces = eigenspace_decomposition(&self.on_degree[d])?;
        let gen_values: Vec<Scalar> = self
            .generator_eigendata()?
            .into_iter()
            .map(|e| e.value)
            .collect();
        for s in &spaces {
            if !is_product_of(&s.value, &gen_values, d) {
                return Err(Error::Internal(format!(
                    "eigenvalue {} on degree {d} is not a product of generator eigenvalues",
                    s.value.literal()
                )));
            }
        }
        Ok(spaces)
    }

    /// The inverse automorphism (needed for adjoint transports).
    pub fn inverse(&self) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            field: self.field,
            v_matrix: self.v_matrix.inverse().expect("automorphisms are invertible"),
            on_degree: self
                .on_degree
                .iter()
                .map(|m| m.inverse().expect("automorphisms are invertible"))
                .collect(),
        }
    }
}

fn is_product_of(value: &Scalar, gens: &[Scalar], d: usize) -> bool {
    if d == 0 {
        return value.is_one();
    }
    let mut products: Vec<Scalar> = vec![value.field().one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &products {
            for g in gens {
                next.push(p * g);
            }
        }
        products = next;
        products.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        products.dedup();
    }
    products.contains(value)
}

/// Extends a generator-space matrix to an automorphism of the tabled algebra.
/// Fails when the matrix is singular or does not preserve the relation space.
pub fn extend_automorphism(
    alg: &GradedAlgebra,
    v_matrix: &SparseMatrix,
) -> Result<AlgebraAutomorphism, Error> {
    let field = alg.field();
    let n = alg.num_generators();
    assert_eq!((v_matrix.rows(), v_matrix.cols()), (n, n));
    if v_matrix.inverse().is_none() {
        return Err(Error::NotAnAutomorphism("generator matrix is singular".into()));
    }
    // relation stability: (σ ⊗ σ) R = R
    let rel = alg.pres().relation_matrix();
    let mut rs = RowSpace::new(field, n * n, false);
    for r in 0..rel.rows() {
        let row: Vec<Scalar> = (0..n * n).map(|c| rel.get(r, c)).collect();
        rs.insert(&row);
    }
    let sigma2 = v_matrix.kron(v_matrix);
    for r in 0..rel.rows() {
        let row: Vec<Scalar> = (0..n * n).map(|c| rel.get(r, c)).collect();
        let moved = sigma2.apply(&row);
        if !rs.contains(&moved) {
            return Err(Error::NotAnAutomorphism(
                "matrix does not preserve the relation space".into(),
            ));
        }
    }
    // induced matrices per degree: image of each basis word under σ^{⊗d},
    // reduced back to the chosen basis
    let mut on_degree = Vec::with_capacity(alg.bound() + 1);
    for d in 0..=alg.bound() {
        let dim = alg.dim(d as i64);
        let mut m = SparseMatrix::zero(field, dim, dim);
        for (k, word) in alg.basis_words(d).iter().enumerate() {
            // σ(x_{w_1} ... x_{w_d}) = σ(x_{w_1}) ... σ(x_{w_d})
            let mut coords = vec![field.one()]; // scalar in V^{⊗0}
            let mut cur_len = 0usize;
            for &letter in word {
                let col = v_matrix.column(letter);
                // tensor product coords ⊗ col
                let mut next = vec![field.zero(); n.pow((cur_len + 1) as u32)];
                for (idx, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, cj) in col.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        next[idx * n + j] = c * cj;
                    }
                }
                coords = next;
                cur_len += 1;
            }
            let reduced = alg.reduce_matrix(d).apply(&coords);
            for (r, s) in reduced.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, k, s);
                }
            }
        }
        on_degree.push(m);
    }
    Ok(AlgebraAutomorphism {
        field,
        v_matrix: v_matrix.clone(),
        on_degree,
    })
}

/// Restriction of a generator automorphism to the dual coalgebra components:
/// matrices of `σ^{⊗d}` on each component. Verifies stability and that the
/// result is a coalgebra map: `(σ ⊗ σ) ∘ Δ = Δ ∘ σ` on every tabled split.
pub fn restrict_to_coalgebra(
    coalg: &DualCoalgebra,
    v_matrix: &SparseMatrix,
) -> Result<Vec<SparseMatrix>, Error> {
    let field = coalg.field();
    let n = coalg.num_generators();
    let mut per_degree = Vec::with_capacity(coalg.bound() + 1);
    for d in 0..=coalg.bound() {
        let mut power = SparseMatrix::identity(field, 1);
        for _ in 0..d {
            power = power.kron(v_matrix);
        }
        let moved = power.mul(coalg.basis_matrix(d));
        // verify stability of the component
        let coords = coalg.coords_matrix(d).mul(&moved);
        let back = coalg.basis_matrix(d).mul(&coords);
        if back != moved {
            return Err(Error::NotAnAutomorphism(format!(
                "generator matrix does not preserve the dual coalgebra component at degree {d}"
            )));
        }
        per_degree.push(coords);
    }
    for d in 0..=coalg.bound() {
        for i in 0..=d {
            let split = coalg.split(d, i);
            let lhs = per_degree[i].kron(&per_degree[d - i]).mul(&split);
            let rhs = split.mul(&per_degree[d]);
            if lhs != rhs {
                return Err(Error::NotAnAutomorphism(format!(
                    "induced map is not a coalgebra map at split ({d},{i})"
                )));
            }
        }
    }
    let _ = n;
    Ok(per_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coalgebra::koszul_dual_coalgebra;
    use crate::algebra::graded::expand;
    use crate::algebra::presentation::QuadraticPresentation;

    fn poly2_alg() -> GradedAlgebra {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])]],
        )
        .unwrap();
        expand(&p, 4).unwrap()
    }

    #[test]
    fn identity_extends_to_identity() {
        let a = poly2_alg();
        let id = SparseMatrix::identity(Field::Q, 2);
        let s = extend_automorphism(&a, &id).unwrap();
        for d in 0..=4usize {
            assert_eq!(
                s.on_degree(d),
                &SparseMatrix::identity(Field::Q, a.dim(d as i64))
            );
        }
        let eig = s.generator_eigendata().unwrap();
        assert_eq!(eig.len(), 1);
        assert!(eig[0].value.is_one());
    }

    #[test]
    fn diagonal_automorphism_on_degree_two() {
        let f = Field::Q;
        let a = poly2_alg();
        let m = SparseMatrix::from_i64(f, &[&[2, 0], &[0, 3]]);
        let s = extend_automorphism(&a, &m).unwrap();
        // basis of degree 2 is xx, xy, yy -> eigenvalues 4, 6, 9
        let d2 = s.on_degree(2);
        assert_eq!(d2.get(0, 0).literal(), "4");
        assert_eq!(d2.get(1, 1).literal(), "6");
        assert_eq!(d2.get(2, 2).literal(), "9");
    }

    #[test]
    fn upper_triangular_fixes_relations_but_is_not_semisimple() {
        let f = Field::Q;
        let a = poly2_alg();
        let m = SparseMatrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let s = extend_automorphism(&a, &m).unwrap();
        assert!(matches!(
            s.generator_eigendata(),
            Err(Error::NotSemisimpleOverField(_))
        ));
    }

    #[test]
    fn relation_breaking_matrix_rejected() {
        let f = Field::Q;
        // quantum plane relations are not preserved by the swap x <-> y
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]],
        )
        .unwrap();
        let a = expand(&p, 3).unwrap();
        let swap = SparseMatrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        assert!(matches!(
            extend_automorphism(&a, &swap),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn multiplicativity_on_tabled_products() {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]],
        )
        .unwrap();
        let a = expand(&p, 4).unwrap();
        let m = SparseMatrix::from_dense(
            f,
            vec![
                vec![f.from_i64(2), f.zero()],
                vec![f.zero(), f.from_ratio(1, 2).unwrap()],
            ],
        );
        let s = extend_automorphism(&a, &m).unwrap();
        for da in 0..=2usize {
            for db in 0..=2usize {
                if da + db > 4 {
                    continue;
                }
                for i in 0..a.dim(da as i64) {
                    for j in 0..a.dim(db as i64) {
                        let ei = crate::kernel::unit_vector(f, a.dim(da as i64), i);
                        let ej = crate::kernel::unit_vector(f, a.dim(db as i64), j);
                        let lhs = s.on_degree(da + db).apply(&a.mul(da, &ei, db, &ej));
                        let rhs = a.mul(
                            da,
                            &s.on_degree(da).apply(&ei),
                            db,
                            &s.on_degree(db).apply(&ej),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn coalgebra_restriction_is_coalgebra_map() {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]],
        )
        .unwrap();
        let c = koszul_dual_coalgebra(&p, 4).unwrap();
        let m = SparseMatrix::from_dense(
            f,
            vec![
                vec![f.from_i64(2), f.zero()],
                vec![f.zero(), f.from_ratio(1, 2).unwrap()],
            ],
        );
        let res = restrict_to_coalgebra(&c, &m).unwrap();
        assert_eq!(res.len(), 5);
    }
}
