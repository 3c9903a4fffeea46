//! Slotwise eigen decomposition of tensor cells.
//!
//! When the twisting automorphism is semisimple, every cell splits as a
//! direct sum over products of slot eigenvalues, differentials are block
//! diagonal, and homology away from the unit eigenvalue is expected to
//! vanish. The change of basis is the Kronecker product of the per-slot
//! eigenbases, so the projections are exact and sum to the identity.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::kernel::{
    homology, BigradedComplex, Cell, Eigenspace, Field, Scalar, SparseMatrix,
};

use super::cells::TensorCell;

/// Eigen change-of-basis of one graded component.
#[derive(Clone)]
pub struct SlotEigen {
    pub basis: SparseMatrix,
    pub basis_inv: SparseMatrix,
    pub values: Vec<Scalar>,
}

impl SlotEigen {
    pub fn from_eigenspaces(field: Field, spaces: Vec<Eigenspace>) -> Self {
        let mut cols = Vec::new();
        let mut values = Vec::new();
        for s in &spaces {
            for v in &s.basis {
                cols.push(v.clone());
                values.push(s.value.clone());
            }
        }
        let dim = cols.len();
        let basis = SparseMatrix::from_columns(field, dim, &cols);
        let basis_inv = basis.inverse().expect("eigenbasis is invertible");
        SlotEigen {
            basis,
            basis_inv,
            values,
        }
    }
}

/// Eigen data of a full tensor cell: change of basis, inverse, and the
/// eigenvalue attached to every new basis column.
#[derive(Clone)]
pub struct CellEigen {
    pub basis: SparseMatrix,
    pub basis_inv: SparseMatrix,
    pub col_values: Vec<Scalar>,
}

impl CellEigen {
    pub fn empty(field: Field) -> Self {
        CellEigen {
            basis: SparseMatrix::zero(field, 0, 0),
            basis_inv: SparseMatrix::zero(field, 0, 0),
            col_values: vec![],
        }
    }

    /// Projection onto the `value` block, in the original coordinates.
    pub fn projection(&self, field: Field, value: &Scalar) -> SparseMatrix {
        let n = self.col_values.len();
        let mut sel = SparseMatrix::zero(field, n, n);
        for (i, v) in self.col_values.iter().enumerate() {
            if v == value {
                sel.set(i, i, field.one());
            }
        }
        self.basis.mul(&sel).mul(&self.basis_inv)
    }

    /// Distinct eigenvalues on this cell, deterministically ordered.
    pub fn values(&self) -> Vec<Scalar> {
        let mut vs = self.col_values.clone();
        vs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        vs.dedup();
        vs
    }

    fn columns_for(&self, value: &Scalar) -> Vec<usize> {
        self.col_values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == value)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Kronecker eigen change-of-basis for a cell, from per-slot data.
/// `slot_eig(slot, weight)` supplies the eigen decomposition of that slot.
pub fn cell_eigen<'f>(
    field: Field,
    cell: &TensorCell,
    slot_eig: impl Fn(usize, usize) -> &'f SlotEigen,
) -> CellEigen {
    let mut basis = SparseMatrix::zero(field, cell.dim, cell.dim);
    let mut basis_inv = SparseMatrix::zero(field, cell.dim, cell.dim);
    let mut col_values = vec![field.one(); cell.dim];
    for sector in &cell.sectors {
        let mut e = SparseMatrix::identity(field, 1);
        let mut e_inv = SparseMatrix::identity(field, 1);
        let mut values = vec![field.one()];
        for (slot, &wk) in sector.weights.iter().enumerate() {
            let s = slot_eig(slot, wk);
            e = e.kron(&s.basis);
            e_inv = e_inv.kron(&s.basis_inv);
            let mut next = Vec::with_capacity(values.len() * s.values.len());
            for v in &values {
                for sv in &s.values {
                    next.push(v * sv);
                }
            }
            values = next;
        }
        for (r, c, s) in e.iter() {
            basis.set(sector.offset + r, sector.offset + c, s.clone());
        }
        for (r, c, s) in e_inv.iter() {
            basis_inv.set(sector.offset + r, sector.offset + c, s.clone());
        }
        for (i, v) in values.into_iter().enumerate() {
            col_values[sector.offset + i] = v;
        }
    }
    CellEigen {
        basis,
        basis_inv,
        col_values,
    }
}

/// Per-eigenvalue homology tables of a complex whose differentials are block
/// diagonal in the supplied eigenbases. Checks block-diagonality exactly and
/// fails if a differential mixes eigenvalue blocks.
pub fn concentration_blocks(
    complex: &BigradedComplex,
    eigen: &BTreeMap<Cell, CellEigen>,
) -> Result<BTreeMap<String, BTreeMap<Cell, usize>>, Error> {
    let field = complex.field();
    let mut out: BTreeMap<String, BTreeMap<Cell, usize>> = BTreeMap::new();
    for (&(h, w), ce) in eigen {
        for value in ce.values() {
            let d_out = restrict_block(complex, eigen, h, w, &value)?;
            let d_in = restrict_block(complex, eigen, complex.direction().source(h), w, &value)?;
            let cell_h = homology(field, &d_in, &d_out)?;
            out.entry(value.literal())
                .or_default()
                .insert((h, w), cell_h.count);
        }
    }
    Ok(out)
}

/// The differential leaving (h, w), conjugated to eigen coordinates and
/// restricted to the `value` block.
fn restrict_block(
    complex: &BigradedComplex,
    eigen: &BTreeMap<Cell, CellEigen>,
    h: i64,
    w: i64,
    value: &Scalar,
) -> Result<SparseMatrix, Error> {
    let field = complex.field();
    let tgt_h = complex.direction().target(h);
    let empty = CellEigen::empty(field);
    let src = eigen.get(&(h, w)).unwrap_or(&empty);
    let tgt = eigen.get(&(tgt_h, w)).unwrap_or(&empty);
    let d = complex.diff(h, w);
    if d.rows() != tgt.col_values.len() || d.cols() != src.col_values.len() {
        // cell missing from the eigen table means zero-dimensional
        if complex.dim(h, w) == 0 || complex.dim(tgt_h, w) == 0 {
            let sc = src.columns_for(value).len();
            let tc = tgt.columns_for(value).len();
            return Ok(SparseMatrix::zero(field, tc, sc));
        }
        return Err(Error::Internal("eigen table shape mismatch".into()));
    }
    let conj = tgt.basis_inv.mul(&d).mul(&src.basis);
    let src_cols = src.columns_for(value);
    let tgt_rows = tgt.columns_for(value);
    // block diagonality: entries from the value block must stay in it
    for (r, c, s) in conj.iter() {
        let src_in = src.col_values[c] == *value;
        let tgt_in = tgt.col_values[r] == *value;
        if src_in != tgt_in && !s.is_zero() {
            return Err(Error::Internal(format!(
                "differential mixes eigenvalue blocks at ({h},{w})"
            )));
        }
    }
    let col_pos: BTreeMap<usize, usize> =
        src_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let row_pos: BTreeMap<usize, usize> =
        tgt_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut out = SparseMatrix::zero(field, tgt_rows.len(), src_cols.len());
    for (r, c, s) in conj.iter() {
        if let (Some(&rr), Some(&cc)) = (row_pos.get(&r), col_pos.get(&c)) {
            out.set(rr, cc, s.clone());
        }
    }
    Ok(out)
}
