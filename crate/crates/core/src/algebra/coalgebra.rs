//! The Koszul dual coalgebra: weightwise subspaces of tensor powers of the
//! generator space, with deconcatenation coproduct and slot contractions.
//!
//! Degree `d >= 2` components are cut out as the common kernel of every
//! window placement of the dual relations, equivalently the intersection of
//! the window subspaces built from the relation space itself; the two
//! descriptions are tested against each other.

use crate::error::Error;
use crate::kernel::{Field, Scalar, SparseMatrix, Vector};

use super::presentation::QuadraticPresentation;

#[derive(Clone)]
pub struct DualCoalgebra {
    field: Field,
    n: usize,
    bound: usize,
    /// basis[d]: columns are basis vectors inside V^{⊗d}
    basis: Vec<SparseMatrix>,
    /// coords[d]: left inverse of basis[d]; exact on vectors lying in the
    /// component
    coords: Vec<SparseMatrix>,
}

impl DualCoalgebra {
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn num_generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 || d as usize > self.bound {
            0
        } else {
            self.basis[d as usize].cols()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.bound).map(|d| self.dim(d as i64)).collect()
    }

    /// Basis vectors of the degree-`d` component as columns in `V^{⊗d}`.
    pub fn basis_matrix(&self, d: usize) -> &SparseMatrix {
        &self.basis[d]
    }

    /// Coordinates of a `V^{⊗d}` vector known to lie in the component.
    pub fn coords_matrix(&self, d: usize) -> &SparseMatrix {
        &self.coords[d]
    }

    /// Checked coordinate extraction: errors if the vector escapes the
    /// component.
    pub fn coords_of(&self, d: usize, v: &[Scalar]) -> Result<Vector, Error> {
        let c = self.coords[d].apply(v);
        let back = self.basis[d].apply(&c);
        if back != v.to_vec() {
            return Err(Error::Internal(format!(
                "vector does not lie in the dual coalgebra component at degree {d}"
            )));
        }
        Ok(c)
    }

    /// Deconcatenation component `C_d -> C_i ⊗ C_{d-i}` (unsigned), as a
    /// matrix from component coordinates to tensor-pair coordinates.
    pub fn split(&self, d: usize, i: usize) -> SparseMatrix {
        assert!(i <= d && d <= self.bound);
        let pair_coords = self.coords[i].kron(&self.coords[d - i]);
        pair_coords.mul(&self.basis[d])
    }

    /// Contraction of the first tensor slot against the dual generator `g`:
    /// `C_d -> C_{d-1}`.
    pub fn contract_first(&self, d: usize, g: usize) -> SparseMatrix {
        assert!(d >= 1);
        let n = self.n;
        let lower = n.pow((d - 1) as u32);
        let mut pick = SparseMatrix::zero(self.field, lower, n.pow(d as u32));
        for rest in 0..lower {
            pick.set(rest, g * lower + rest, self.field.one());
        }
        self.coords[d - 1].mul(&pick).mul(&self.basis[d])
    }

    /// Contraction of the last tensor slot against the dual generator `g`.
    pub fn contract_last(&self, d: usize, g: usize) -> SparseMatrix {
        assert!(d >= 1);
        let n = self.n;
        let lower = n.pow((d - 1) as u32);
        let mut pick = SparseMatrix::zero(self.field, lower, n.pow(d as u32));
        for rest in 0..lower {
            pick.set(rest, rest * n + g, self.field.one());
        }
        self.coords[d - 1].mul(&pick).mul(&self.basis[d])
    }

    /// Counit: the identity on the degree-0 component, zero elsewhere.
    pub fn counit(&self, d: usize, v: &[Scalar]) -> Scalar {
        if d == 0 {
            v[0].clone()
        } else {
            self.field.zero()
        }
    }

    pub fn labels(&self, d: usize) -> Vec<String> {
        (0..self.dim(d as i64)).map(|k| format!("c{d}_{k}")).collect()
    }
}

/// Builds the dual coalgebra of a presentation up to the bound. Components:
/// degree 0 is the ground field, degree 1 is `V`, degree `d >= 2` is the
/// annihilator of every window placement of the dual relations.
pub fn koszul_dual_coalgebra(
    pres: &QuadraticPresentation,
    bound: usize,
) -> Result<DualCoalgebra, Error> {
    if bound < 2 {
        return Err(Error::InvalidInput("coalgebra bound must be at least 2".into()));
    }
    let field = pres.field();
    let n = pres.num_generators();
    let dual = pres.quadratic_dual();
    let dual_rel = dual.relation_matrix();

    let mut basis = Vec::with_capacity(bound + 1);
    let mut coords = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let b = if d == 0 {
            SparseMatrix::identity(field, 1)
        } else if d == 1 {
            SparseMatrix::identity(field, n)
        } else {
            // rows: every window placement of every dual relation
            let total = n.pow(d as u32);
            let mut rows: Vec<Vector> = Vec::new();
            for pos in 0..=(d - 2) {
                let post = n.pow((d - 2 - pos) as u32);
                let pre = n.pow(pos as u32);
                for r in 0..dual_rel.rows() {
                    for ipre in 0..pre {
                        for ipost in 0..post {
                            let mut v = vec![field.zero(); total];
                            for (rr, c, s) in dual_rel.iter() {
                                if rr == r {
                                    v[(ipre * n * n + c) * post + ipost] += s.clone();
                                }
                            }
                            rows.push(v);
                        }
                    }
                }
            }
            let m = if rows.is_empty() {
                SparseMatrix::zero(field, 0, total)
            } else {
                SparseMatrix::from_dense(field, rows)
            };
            let kernel = m.kernel_basis();
            SparseMatrix::from_columns(field, total, &kernel)
        };
        let c = if b.cols() == 0 {
            SparseMatrix::zero(field, 0, b.rows())
        } else {
            b.left_inverse_on_columnspace().ok_or_else(|| {
                Error::Internal("dual coalgebra basis lost column rank".into())
            })?
        };
        basis.push(b);
        coords.push(c);
    }
    Ok(DualCoalgebra {
        field,
        n,
        bound,
        basis,
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::graded::expand;
    use crate::algebra::presentation::QuadraticPresentation;

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

    #[test]
    fn commutative_dual_coalgebra_dims() {
        let c = koszul_dual_coalgebra(&poly2(), 4).unwrap();
        assert_eq!(c.dims(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn free_line_dual_coalgebra_dims() {
        let f = Field::Q;
        let p = QuadraticPresentation::new(f, vec!["x".into()], vec![]).unwrap();
        let c = koszul_dual_coalgebra(&p, 4).unwrap();
        assert_eq!(c.dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn quantum_plane_dual_coalgebra_dims() {
        let c = koszul_dual_coalgebra(&qplane(), 4).unwrap();
        assert_eq!(c.dims(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn component_dims_match_dual_algebra() {
        for p in [poly2(), qplane()] {
            let c = koszul_dual_coalgebra(&p, 4).unwrap();
            let dual = expand(&p.quadratic_dual(), 4).unwrap();
            assert_eq!(c.dims(), dual.dims());
        }
    }

    #[test]
    fn kernel_description_matches_window_intersection() {
        // degree-d component as intersection of R-window subspaces
        let p = qplane();
        let f = p.field();
        let n = p.num_generators();
        let c = koszul_dual_coalgebra(&p, 4).unwrap();
        for d in 2..=4usize {
            let total = n.pow(d as u32);
            // intersect col spaces of V^i ⊗ R ⊗ V^j over all placements
            let mut inter: Option<Vec<Vector>> = None;
            for pos in 0..=(d - 2) {
                let pre = SparseMatrix::identity(f, n.pow(pos as u32));
                let post = SparseMatrix::identity(f, n.pow((d - 2 - pos) as u32));
                let r_cols = p.relation_matrix().transpose();
                let window = pre.kron(&r_cols).kron(&post);
                let cols = window.image_basis();
                inter = Some(match inter {
                    None => cols,
                    Some(prev) => intersect(f, total, &prev, &cols),
                });
            }
            let dim = inter.map_or(0, |v| v.len());
            assert_eq!(dim, c.dim(d as i64), "window intersection at degree {d}");
        }
    }

    fn intersect(
        f: Field,
        dim: usize,
        a: &[Vector],
        b: &[Vector],
    ) -> Vec<Vector> {
        // span(a) ∩ span(b) via the kernel of [A | -B]
        let am = SparseMatrix::from_columns(f, dim, a);
        let bm = SparseMatrix::from_columns(f, dim, b);
        let stacked = am.hstack(&bm.neg());
        stacked
            .kernel_basis()
            .into_iter()
            .map(|k| am.apply(&k[..a.len()]))
            .collect()
    }

    #[test]
    fn coproduct_is_coassociative() {
        let c = koszul_dual_coalgebra(&poly2(), 4).unwrap();
        // ((Δ ⊗ id) ∘ Δ)_{i,j,k} = ((id ⊗ Δ) ∘ Δ)_{i,j,k} on C_d
        let d = 2usize;
        for i in 0..=d {
            for j in 0..=(d - i) {
                let k = d - i - j;
                // split d -> (i, j+k), then second factor -> (j, k)
                let first = c.split(d, i);
                let second = SparseMatrix::identity(c.field(), c.dim(i as i64))
                    .kron(&c.split(j + k, j));
                let left = second.mul(&first);
                // split d -> (i+j, k), then first factor -> (i, j)
                let first2 = c.split(d, i + j);
                let second2 = c
                    .split(i + j, i)
                    .kron(&SparseMatrix::identity(c.field(), c.dim(k as i64)));
                let right = second2.mul(&first2);
                assert_eq!(left, right, "coassociativity at split ({i},{j},{k})");
            }
        }
    }

    #[test]
    fn splits_recompose() {
        let c = koszul_dual_coalgebra(&qplane(), 4).unwrap();
        for d in 0..=3usize {
            for i in 0..=d {
                let split = c.split(d, i);
                let recompose = c.basis_matrix(i).kron(c.basis_matrix(d - i));
                let via = recompose.mul(&split);
                assert_eq!(&via, c.basis_matrix(d), "recompose split ({d},{i})");
            }
        }
    }
}
