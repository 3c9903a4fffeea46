//! Quadratic presentations `T(V)/(R)` and the quadratic dual.

use crate::error::Error;
use crate::kernel::{Field, RowSpace, Scalar, SparseMatrix, Vector};

/// A quadratic presentation: generators of degree 1 and a space of relations
/// inside `V ⊗ V`. Relations are reduced to a linearly independent set on
/// ingestion.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    field: Field,
    generators: Vec<String>,
    /// rows = relation basis vectors in V⊗V word coordinates
    relations: SparseMatrix,
}

impl QuadraticPresentation {
    /// `relations`: each relation is a list of (coefficient, [i, j]) terms
    /// over generator indices.
    pub fn new(
        field: Field,
        generators: Vec<String>,
        relations: Vec<Vec<(Scalar, [usize; 2])>>,
    ) -> Result<Self, Error> {
        field.validate()?;
        let n = generators.len();
        if n == 0 {
            return Err(Error::InvalidInput("no generators".into()));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for g in &generators {
                if !seen.insert(g.clone()) {
                    return Err(Error::InvalidInput(format!("duplicate generator {g:?}")));
                }
            }
        }
        let mut rows: Vec<Vector> = Vec::new();
        let mut rs = RowSpace::new(field, n * n, false);
        for rel in relations {
            let mut v = vec![field.zero(); n * n];
            for (c, [i, j]) in rel {
                if i >= n || j >= n {
                    return Err(Error::InvalidInput(format!(
                        "relation references generator {} but there are only {n}",
                        i.max(j)
                    )));
                }
                if c.field() != field {
                    return Err(Error::InvalidInput("relation coefficient in wrong field".into()));
                }
                v[i * n + j] += c;
            }
            if rs.insert(&v).is_none() {
                rows.push(v);
            }
        }
        let relations = SparseMatrix::from_dense(field, rows);
        let relations = if relations.rows() == 0 {
            SparseMatrix::zero(field, 0, n * n)
        } else {
            relations
        };
        Ok(QuadraticPresentation {
            field,
            generators,
            relations,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    /// Relation basis as rows in V⊗V word coordinates.
    pub fn relation_matrix(&self) -> &SparseMatrix {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.rows()
    }

    /// The quadratic dual: generators are the dual basis of `V*`, relations
    /// span the annihilator of `R` under the evaluation pairing
    /// `(x_i* ⊗ x_j*)(x_k ⊗ x_l) = δ_ik δ_jl`.
    pub fn quadratic_dual(&self) -> QuadraticPresentation {
        let n = self.num_generators();
        let dual_gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{g}*"))
            .collect();
        let ann = self.relations.kernel_basis();
        let dual_rel = if ann.is_empty() {
            SparseMatrix::zero(self.field, 0, n * n)
        } else {
            SparseMatrix::from_dense(self.field, ann)
        };
        QuadraticPresentation {
            field: self.field,
            generators: dual_gens,
            relations: dual_rel,
        }
    }

    /// Conjugates the presentation by an invertible change of generators
    /// `g`: new relation space is `(g ⊗ g)^{-1} R`-style transport. Used to
    /// test basis independence of derived invariants.
    pub fn change_basis(&self, g: &SparseMatrix) -> Result<QuadraticPresentation, Error> {
        let n = self.num_generators();
        assert_eq!((g.rows(), g.cols()), (n, n));
        let ginv = g
            .inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        // new generators y_i = sum_j g[j][i] x_j; relations rewritten in y's
        let gg = ginv.kron(&ginv);
        let new_rel = self.relations.mul(&gg.transpose());
        Ok(QuadraticPresentation {
            field: self.field,
            generators: (0..n).map(|i| format!("y{i}")).collect(),
            relations: new_rel,
        })
    }
}

/// Word index helpers: a word `[i_0, .., i_{d-1}]` over `n` generators is
/// flattened big-endian, matching the Kronecker block layout.
pub fn word_index(n: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn index_word(n: usize, d: usize, mut idx: usize) -> Vec<usize> {
    let mut w = vec![0usize; d];
    for k in (0..d).rev() {
        w[k] = idx % n;
        idx /= n;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly2() -> QuadraticPresentation {
        // commutative polynomial presentation on x, y: xy - yx
        let f = Field::Q;
        QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])]],
        )
        .unwrap()
    }

    #[test]
    fn dual_of_commutative_presentation() {
        let p = poly2();
        let d = p.quadratic_dual();
        // annihilator of the 1-dim antisymmetric line is 3-dimensional
        assert_eq!(d.relation_count(), 3);
        // and contains x*x*, y*y*, x*y* + y*x*
        let f = Field::Q;
        let mut probe = vec![f.zero(); 4];
        probe[0] = f.one(); // x*⊗x*
        let mut rs = RowSpace::new(f, 4, false);
        for r in 0..d.relation_matrix().rows() {
            let row: Vec<Scalar> = (0..4).map(|c| d.relation_matrix().get(r, c)).collect();
            rs.insert(&row);
        }
        assert!(rs.contains(&probe));
        let mut sym = vec![f.zero(); 4];
        sym[1] = f.one();
        sym[2] = f.one();
        assert!(rs.contains(&sym));
    }

    #[test]
    fn dual_of_free_line_is_dual_numbers() {
        // one generator, no relations: dual relation space is everything
        let f = Field::Q;
        let p = QuadraticPresentation::new(f, vec!["x".into()], vec![]).unwrap();
        let d = p.quadratic_dual();
        assert_eq!(d.relation_count(), 1);
    }

    #[test]
    fn double_dual_recovers_relation_space() {
        for pres in [
            poly2(),
            QuadraticPresentation::new(
                Field::Q,
                vec!["x".into(), "y".into()],
                vec![vec![
                    (Field::Q.one(), [0, 1]),
                    (Field::Q.from_i64(-2), [1, 0]),
                ]],
            )
            .unwrap(),
        ] {
            let dd = pres.quadratic_dual().quadratic_dual();
            assert_eq!(dd.relation_count(), pres.relation_count());
            let n2 = pres.num_generators().pow(2);
            let mut rs = RowSpace::new(pres.field(), n2, false);
            for r in 0..pres.relation_matrix().rows() {
                let row: Vec<Scalar> =
                    (0..n2).map(|c| pres.relation_matrix().get(r, c)).collect();
                rs.insert(&row);
            }
            for r in 0..dd.relation_matrix().rows() {
                let row: Vec<Scalar> =
                    (0..n2).map(|c| dd.relation_matrix().get(r, c)).collect();
                assert!(rs.contains(&row), "double dual relation escapes R");
            }
        }
    }

    #[test]
    fn relation_reduction_drops_dependent_tensors() {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![
                vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])],
                vec![(f.from_i64(2), [0, 1]), (f.from_i64(-2), [1, 0])],
            ],
        )
        .unwrap();
        assert_eq!(p.relation_count(), 1);
    }
}
