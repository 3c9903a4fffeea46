//! Bigraded complexes and exact homology.
//!
//! Every complex in the engine is indexed by (homological degree, internal
//! weight). Differentials preserve the weight and shift the homological
//! degree by ±1 depending on the direction. `d∘d = 0` is asserted for every
//! cell at construction time; a complex that fails the assertion is never
//! handed out.

use std::collections::BTreeMap;

use super::matrix::{unit_vector, RowSpace, SparseMatrix, Vector};
use super::scalar::Field;
use crate::error::Error;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// differential lowers the homological degree: d: (h, w) -> (h-1, w)
    Chain,
    /// differential raises it: d: (h, w) -> (h+1, w)
    Cochain,
}

impl Direction {
    pub fn target(&self, h: i64) -> i64 {
        match self {
            Direction::Chain => h - 1,
            Direction::Cochain => h + 1,
        }
    }
    pub fn source(&self, h: i64) -> i64 {
        match self {
            Direction::Chain => h + 1,
            Direction::Cochain => h - 1,
        }
    }
}

pub type Cell = (i64, i64);

#[derive(Clone)]
pub struct BigradedComplex {
    field: Field,
    direction: Direction,
    terms: BTreeMap<Cell, Vec<String>>,
    diffs: BTreeMap<Cell, SparseMatrix>,
}

impl BigradedComplex {
    /// Builds and validates: shapes line up with the declared terms, weights
    /// are preserved by construction, and consecutive differentials compose
    /// to zero in every cell.
    pub fn new(
        field: Field,
        direction: Direction,
        terms: BTreeMap<Cell, Vec<String>>,
        diffs: BTreeMap<Cell, SparseMatrix>,
    ) -> Result<Self, Error> {
        let cx = BigradedComplex {
            field,
            direction,
            terms,
            diffs,
        };
        for (&(h, w), d) in &cx.diffs {
            let src = cx.dim(h, w);
            let tgt = cx.dim(direction.target(h), w);
            if d.cols() != src || d.rows() != tgt {
                return Err(Error::Internal(format!(
                    "differential at ({h},{w}) has shape {}x{}, expected {tgt}x{src}",
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for (&(h, w), d) in &cx.diffs {
            let next = (direction.target(h), w);
            if let Some(d2) = cx.diffs.get(&next) {
                if !d2.mul(d).is_zero_matrix() {
                    return Err(Error::DifferentialSquare { h, w });
                }
            }
        }
        Ok(cx)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dim(&self, h: i64, w: i64) -> usize {
        self.terms.get(&(h, w)).map_or(0, Vec::len)
    }

    pub fn labels(&self, h: i64, w: i64) -> &[String] {
        self.terms.get(&(h, w)).map_or(&[], Vec::as_slice)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.terms.keys().copied()
    }

    /// Differential leaving cell (h, w), materialized with correct shape.
    pub fn diff(&self, h: i64, w: i64) -> SparseMatrix {
        match self.diffs.get(&(h, w)) {
            Some(d) => d.clone(),
            None => SparseMatrix::zero(
                self.field,
                self.dim(self.direction.target(h), w),
                self.dim(h, w),
            ),
        }
    }

    /// Differential arriving into cell (h, w).
    pub fn diff_into(&self, h: i64, w: i64) -> SparseMatrix {
        let src = self.direction.source(h);
        match self.diffs.get(&(src, w)) {
            Some(d) => d.clone(),
            None => SparseMatrix::zero(self.field, self.dim(h, w), self.dim(src, w)),
        }
    }

    pub fn homology_at(&self, h: i64, w: i64) -> HomologyCell {
        homology(self.field, &self.diff_into(h, w), &self.diff(h, w))
            .expect("construction-time d^2 = 0 assertion guarantees composability")
    }

    /// Homology of every cell, computed independently per cell.
    pub fn homology(&self) -> HomologyBasis {
        let cells: Vec<Cell> = self.cells().collect();
        let computed = par::map_cells(cells, |&(h, w)| self.homology_at(h, w));
        HomologyBasis { cells: computed }
    }
}

/// Chosen representatives and the cycle-to-class coordinate map at one cell.
#[derive(Clone, Debug)]
pub struct HomologyCell {
    pub dim_ambient: usize,
    /// number of homology classes
    pub count: usize,
    /// representative cycles, coordinates in the ambient term
    pub reps: Vec<Vector>,
    /// (count x ambient) matrix: sends a cycle to its class coordinates,
    /// kills boundaries, and is the identity on the chosen representatives
    pub class_map: SparseMatrix,
}

impl HomologyCell {
    pub fn class_of(&self, cycle: &[Scalar]) -> Vector {
        self.class_map.apply(cycle)
    }
}

use super::scalar::Scalar;

/// Homology of `ker(d_out) / im(d_in)`. Fails if `d_out ∘ d_in != 0`.
pub fn homology(
    field: Field,
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
) -> Result<HomologyCell, Error> {
    assert_eq!(d_in.rows(), d_out.cols(), "middle dimensions disagree");
    if !d_out.mul(d_in).is_zero_matrix() {
        return Err(Error::DifferentialSquare { h: 0, w: 0 });
    }
    let n = d_in.rows();
    let cycles = d_out.kernel_basis();
    let boundaries = d_in.image_basis();

    // representatives: kernel vectors that extend the boundary space
    let mut rs = RowSpace::new(field, n, false);
    for b in &boundaries {
        rs.insert(b);
    }
    let boundary_rank = rs.rank();
    let mut reps = Vec::new();
    for z in &cycles {
        if rs.insert(z).is_none() {
            reps.push(z.clone());
        }
    }
    let count = reps.len();
    debug_assert_eq!(count, cycles.len() - boundary_rank);

    // complete [boundaries | reps] to a basis of the ambient space, then the
    // class map is the middle block of the inverse change of basis
    let mut completion = Vec::new();
    for i in 0..n {
        let e = unit_vector(field, n, i);
        if rs.insert(&e).is_none() {
            completion.push(e);
        }
    }
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    cols.extend(boundaries.iter().cloned());
    cols.extend(reps.iter().cloned());
    cols.extend(completion);
    let u = SparseMatrix::from_columns(field, n, &cols);
    let u_inv = u.inverse().expect("change of basis is invertible");
    let mut class_map = SparseMatrix::zero(field, count, n);
    for (r, c, s) in u_inv.iter() {
        if r >= boundary_rank && r < boundary_rank + count {
            class_map.set(r - boundary_rank, c, s.clone());
        }
    }
    Ok(HomologyCell {
        dim_ambient: n,
        count,
        reps,
        class_map,
    })
}

/// Homology bases for all cells of a complex.
#[derive(Clone, Debug, Default)]
pub struct HomologyBasis {
    pub cells: BTreeMap<Cell, HomologyCell>,
}

impl HomologyBasis {
    pub fn count(&self, h: i64, w: i64) -> usize {
        self.cells.get(&(h, w)).map_or(0, |c| c.count)
    }

    pub fn cell(&self, h: i64, w: i64) -> Option<&HomologyCell> {
        self.cells.get(&(h, w))
    }

    pub fn table(&self) -> BTreeMap<Cell, usize> {
        self.cells
            .iter()
            .filter(|(_, c)| c.count > 0)
            .map(|(&k, c)| (k, c.count))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    #[test]
    fn point_complex_has_one_class() {
        let d_in = SparseMatrix::zero(q(), 1, 0);
        let d_out = SparseMatrix::zero(q(), 0, 1);
        let h = homology(q(), &d_in, &d_out).unwrap();
        assert_eq!(h.count, 1);
        let c = h.class_of(&[q().from_i64(5)]);
        assert_eq!(c[0].literal(), "5");
    }

    #[test]
    fn exact_pair_has_no_classes() {
        // 0 -> k --id--> k -> 0 at the target spot
        let d_in = SparseMatrix::identity(q(), 1);
        let d_out = SparseMatrix::zero(q(), 0, 1);
        let h = homology(q(), &d_in, &d_out).unwrap();
        assert_eq!(h.count, 0);
    }

    #[test]
    fn rejects_nonzero_composite() {
        let id = SparseMatrix::identity(q(), 1);
        assert!(homology(q(), &id, &id).is_err());
    }

    #[test]
    fn class_map_properties() {
        // d_in: k -> k^2, x -> (x, 0); d_out: k^2 -> k, (a,b) -> 0
        let d_in = SparseMatrix::from_i64(q(), &[&[1], &[0]]);
        let d_out = SparseMatrix::zero(q(), 1, 2);
        let h = homology(q(), &d_in, &d_out).unwrap();
        assert_eq!(h.count, 1);
        // boundaries die
        let boundary = vec![q().from_i64(7), q().zero()];
        assert!(h.class_of(&boundary)[0].is_zero());
        // representative maps to the unit class vector
        let rep = h.reps[0].clone();
        assert!(h.class_of(&rep)[0].is_one());
    }
}
