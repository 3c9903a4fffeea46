//! Degreewise bases and multiplication for a quadratic algebra.
//!
//! Degree-`d` bases are the lexicographically earliest monomial words that
//! stay independent modulo the degree-`d` component of the relation ideal;
//! the choice is order-dependent but deterministic, which keeps reports and
//! golden files stable.

use crate::error::Error;
use crate::kernel::{Field, RowSpace, Scalar, SparseMatrix, Vector};
use crate::par;

use super::presentation::{index_word, word_index, QuadraticPresentation};

#[derive(Clone)]
pub struct GradedAlgebra {
    pres: QuadraticPresentation,
    bound: usize,
    /// chosen monomial words per degree
    basis_words: Vec<Vec<Vec<usize>>>,
    /// reduce[d]: V^{⊗d} coordinates -> A_d coordinates (dims[d] × n^d)
    reduce: Vec<SparseMatrix>,
}

impl GradedAlgebra {
    pub fn pres(&self) -> &QuadraticPresentation {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn num_generators(&self) -> usize {
        self.pres.num_generators()
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < 0 || d as usize > self.bound {
            0
        } else {
            self.basis_words[d as usize].len()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.bound).map(|d| self.dim(d as i64)).collect()
    }

    pub fn basis_words(&self, d: usize) -> &[Vec<usize>] {
        &self.basis_words[d]
    }

    pub fn basis_label(&self, d: usize, k: usize) -> String {
        let names = self.pres.generator_names();
        let w = &self.basis_words[d][k];
        if w.is_empty() {
            "1".into()
        } else {
            w.iter().map(|&i| names[i].clone()).collect::<Vec<_>>().join("")
        }
    }

    pub fn labels(&self, d: usize) -> Vec<String> {
        (0..self.dim(d as i64)).map(|k| self.basis_label(d, k)).collect()
    }

    /// Reduction map `V^{⊗d} -> A_d` in coordinates.
    pub fn reduce_matrix(&self, d: usize) -> &SparseMatrix {
        &self.reduce[d]
    }

    /// Class of a single word.
    pub fn reduce_word(&self, word: &[usize]) -> Vector {
        let d = word.len();
        assert!(d <= self.bound, "degree {d} beyond expansion bound {}", self.bound);
        self.reduce[d].column(word_index(self.num_generators(), word))
    }

    /// Product of basis elements: `A_da[k] * A_db[l]` in `A_{da+db}`.
    pub fn mul_basis(&self, da: usize, k: usize, db: usize, l: usize) -> Vector {
        let mut w = self.basis_words[da][k].clone();
        w.extend_from_slice(&self.basis_words[db][l]);
        self.reduce_word(&w)
    }

    /// Product of coordinate vectors.
    pub fn mul(&self, da: usize, a: &[Scalar], db: usize, b: &[Scalar]) -> Vector {
        let field = self.field();
        let mut out = vec![field.zero(); self.dim((da + db) as i64)];
        for (k, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (l, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let prod = self.mul_basis(da, k, db, l);
                let c = ca * cb;
                crate::kernel::vec_axpy(&mut out, &c, &prod);
            }
        }
        out
    }

    /// Matrix of left multiplication by `a ∈ A_da` as a map `A_db -> A_{da+db}`.
    pub fn left_mul_matrix(&self, da: usize, a: &[Scalar], db: usize) -> SparseMatrix {
        let field = self.field();
        let cols: Vec<Vector> = (0..self.dim(db as i64))
            .map(|l| {
                let unit = crate::kernel::unit_vector(field, self.dim(db as i64), l);
                self.mul(da, a, db, &unit)
            })
            .collect();
        SparseMatrix::from_columns(field, self.dim((da + db) as i64), &cols)
    }

    /// Matrix of right multiplication by `b ∈ A_db` as a map `A_da -> A_{da+db}`.
    pub fn right_mul_matrix(&self, db: usize, b: &[Scalar], da: usize) -> SparseMatrix {
        let field = self.field();
        let cols: Vec<Vector> = (0..self.dim(da as i64))
            .map(|k| {
                let unit = crate::kernel::unit_vector(field, self.dim(da as i64), k);
                self.mul(da, &unit, db, b)
            })
            .collect();
        SparseMatrix::from_columns(field, self.dim((da + db) as i64), &cols)
    }

    pub fn unit(&self) -> Vector {
        vec![self.field().one()]
    }

    /// Augmentation: projection onto the degree-0 component.
    pub fn augment(&self, d: usize, a: &[Scalar]) -> Scalar {
        if d == 0 {
            a[0].clone()
        } else {
            self.field().zero()
        }
    }
}

/// Expands a presentation into degreewise bases and reduction maps up to the
/// requested bound.
pub fn expand(pres: &QuadraticPresentation, bound: usize) -> Result<GradedAlgebra, Error> {
    if bound < 2 {
        return Err(Error::InvalidInput("expansion bound must be at least 2".into()));
    }
    let field = pres.field();
    let n = pres.num_generators();

    // Per-degree spanning sets of the relation ideal: I_d = V⊗I_{d-1} + R⊗V^{⊗(d-2)}
    // handled implicitly: we enumerate all window placements directly, degree
    // by degree, which is simple and cheap at these sizes.
    let degrees: Vec<usize> = (0..=bound).collect();
    let built = par::map_cells(degrees, |&d| build_degree(pres, d));
    let mut basis_words = Vec::with_capacity(bound + 1);
    let mut reduce = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let (words, red) = built[&d].clone();
        basis_words.push(words);
        reduce.push(red);
    }
    let _ = (field, n);
    Ok(GradedAlgebra {
        pres: pres.clone(),
        bound,
        basis_words,
        reduce,
    })
}

fn build_degree(
    pres: &QuadraticPresentation,
    d: usize,
) -> (Vec<Vec<usize>>, SparseMatrix) {
    let field = pres.field();
    let n = pres.num_generators();
    let total = n.pow(d as u32);
    if d == 0 {
        return (vec![vec![]], SparseMatrix::identity(field, 1));
    }
    if d == 1 {
        return (
            (0..n).map(|i| vec![i]).collect(),
            SparseMatrix::identity(field, n),
        );
    }
    // echelonize the ideal component
    let mut ideal = RowSpace::new(field, total, false);
    let rel = pres.relation_matrix();
    for pos in 0..=(d - 2) {
        let pre = n.pow(pos as u32);
        let post = n.pow((d - 2 - pos) as u32);
        for r in 0..rel.rows() {
            for ipre in 0..pre {
                for ipost in 0..post {
                    let mut v = vec![field.zero(); total];
                    for (rr, c, s) in rel.iter() {
                        if rr == r {
                            // word = ipre · c-window · ipost
                            let idx = (ipre * n * n + c) * post + ipost;
                            v[idx] += s.clone();
                        }
                    }
                    ideal.insert(&v);
                }
            }
        }
    }
    // greedy lexicographically earliest monomials, independent modulo the ideal
    let mut picker = RowSpace::new(field, total, false);
    let mut chosen: Vec<usize> = Vec::new();
    let mut residues: Vec<Vector> = Vec::new();
    for w in 0..total {
        let mut probe = vec![field.zero(); total];
        probe[w] = field.one();
        let res = ideal.residue(&probe);
        if picker.insert(&res).is_none() {
            chosen.push(w);
            residues.push(res);
        }
    }
    let words: Vec<Vec<usize>> = chosen.iter().map(|&w| index_word(n, d, w)).collect();

    // residues of chosen words span the complement; express every word there
    let dims = chosen.len();
    let c = SparseMatrix::from_columns(field, total, &residues);
    let l = c
        .left_inverse_on_columnspace()
        .expect("chosen residues are independent");
    let mut reduce = SparseMatrix::zero(field, dims, total);
    for w in 0..total {
        let mut probe = vec![field.zero(); total];
        probe[w] = field.one();
        let coords = l.apply(&ideal.residue(&probe));
        for (k, s) in coords.into_iter().enumerate() {
            if !s.is_zero() {
                reduce.set(k, w, s);
            }
        }
    }
    (words, reduce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::QuadraticPresentation;

    fn pres(field: Field, rel: Vec<Vec<(Scalar, [usize; 2])>>) -> QuadraticPresentation {
        QuadraticPresentation::new(field, vec!["x".into(), "y".into()], rel).unwrap()
    }

    #[test]
    fn polynomial_dims_are_binomial() {
        let f = Field::Q;
        let p = pres(f, vec![vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])]]);
        let a = expand(&p, 3).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 3, 4]);
        // lex-earliest basis of degree 2: xx, xy, yy
        assert_eq!(a.labels(2), vec!["xx", "xy", "yy"]);
    }

    #[test]
    fn quantum_plane_dims() {
        let f = Field::Q;
        let p = pres(f, vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]]);
        let a = expand(&p, 3).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn exterior_type_dims() {
        let f = Field::Q;
        let p = pres(
            f,
            vec![
                vec![(f.one(), [0, 0])],
                vec![(f.one(), [1, 1])],
                vec![(f.one(), [0, 1]), (f.one(), [1, 0])],
            ],
        );
        let a = expand(&p, 3).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn multiplication_is_associative_on_tabled_triples() {
        let f = Field::Q;
        let p = pres(f, vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]]);
        let a = expand(&p, 4).unwrap();
        for da in 0..=1usize {
            for db in 0..=1usize {
                for dc in 0..=2usize {
                    if da + db + dc > 4 {
                        continue;
                    }
                    for i in 0..a.dim(da as i64) {
                        for j in 0..a.dim(db as i64) {
                            for k in 0..a.dim(dc as i64) {
                                let ei = crate::kernel::unit_vector(f, a.dim(da as i64), i);
                                let ej = crate::kernel::unit_vector(f, a.dim(db as i64), j);
                                let ek = crate::kernel::unit_vector(f, a.dim(dc as i64), k);
                                let left =
                                    a.mul(da + db, &a.mul(da, &ei, db, &ej), dc, &ek);
                                let right =
                                    a.mul(da, &ei, db + dc, &a.mul(db, &ej, dc, &ek));
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quantum_plane_reduction() {
        // xy = 2 yx in the quantum plane: the class of xy equals 2 * class(yx)
        let f = Field::Q;
        let p = pres(f, vec![vec![(f.one(), [0, 1]), (f.from_i64(-2), [1, 0])]]);
        let a = expand(&p, 2).unwrap();
        let xy = a.reduce_word(&[0, 1]);
        let yx = a.reduce_word(&[1, 0]);
        assert_eq!(xy, crate::kernel::vec_scale(&f.from_i64(2), &yx));
    }
}
