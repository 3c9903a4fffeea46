//! Cap actions: cochains acting on the graded chain side, their pairing
//! transposes acting on the coalgebra side, and the Lie derivative.
//!
//! The chain-side cap eats the slots adjacent to the coefficient and
//! multiplies the output into it: on `(b_1, ..., b_p, m)` a cochain ofdasharity
//! `q` contracts `b_{p-q+1}, ..., b_p` and left-multiplies its output onto
//! `m`, with the Koszul sign of moving the cochain past the surviving
//! slots. Cells map `(p, W) -> (p - q, W + v)`.

use std::collections::BTreeMap;

use crate::algebra::{DualCoalgebra, GradedAlgebra};
use crate::frobenius::canonical_pairing;
use crate::hochschild::{CoalgebraChains, DualBar, DualCochain};
use crate::kernel::{Cell, SparseMatrix};

use super::ops::Cochain;

/// Cap matrices of one cochain, keyed by source chain cell, with the target
/// cell recorded.
pub type CellMap = BTreeMap<Cell, (Cell, SparseMatrix)>;

pub fn cap_on_bar(
    bar: &DualBar<'_>,
    co: &DualCochain<'_>,
    dual: &GradedAlgebra,
    coalg: &DualCoalgebra,
    f: &Cochain,
) -> CellMap {
    let field = dual.field();
    let q = f.p as usize;
    let pairings: Vec<SparseMatrix> = (0..=bar.top())
        .map(|d| canonical_pairing(dual, coalg, d))
        .collect();
    let fcell = co.cell(f.p, f.v);
    let mut out = CellMap::new();
    for (p, w) in bar.complex().cells() {
        let src = bar.cell(p, w).expect("cell");
        let tgt_cell = (p - f.p, w + f.v);
        let tgt_dim = bar.dim(tgt_cell.0, tgt_cell.1);
        let mut mat = SparseMatrix::zero(field, tgt_dim, src.dim);
        if tgt_cell.0 >= 0 && tgt_dim > 0 && p >= f.p {
            let tgt = bar.cell(tgt_cell.0, tgt_cell.1).expect("cell");
            let pp = p as usize;
            if let Some(fc) = fcell {
                for (sector, multi, flat) in src.iter() {
                    let eaten = &sector.weights[pp - q..pp];
                    let wm = sector.weights[pp];
                    for (fs, fm, fflat) in fc.iter() {
                        if f.coords[fflat].is_zero() || &fs.weights[..q] != eaten {
                            continue;
                        }
                        let zf = fs.weights[q];
                        let mut coeff = f.coords[fflat].clone();
                        for (k, &bw) in eaten.iter().enumerate() {
                            let pr = pairings[bw].get(multi[pp - q + k], fm[k]);
                            if pr.is_zero() {
                                coeff = field.zero();
                                break;
                            }
                            coeff = coeff * pr;
                        }
                        if coeff.is_zero() {
                            continue;
                        }
                        let prod_col = dual.mul_basis(zf, fm[q], wm, multi[pp]);
                        let mut out_weights: Vec<usize> =
                            sector.weights[..pp - q].to_vec();
                        out_weights.push(zf + wm);
                        let Some(ts) = tgt.sector_by_weights(&out_weights) else {
                            continue;
                        };
                        let neg = ((f.m_degree().rem_euclid(2) as usize) * wm) % 2
                            == 1;
                        for (r, s) in prod_col.iter().enumerate() {
                            if s.is_zero() {
                                continue;
                            }
                            let mut m: Vec<usize> = multi[..pp - q].to_vec();
                            m.push(r);
                            let c = &coeff * s;
                            mat.add_entry(
                                ts.offset + ts.flatten(&m),
                                flat,
                                if neg { -c } else { c },
                            );
                        }
                    }
                }
            }
        }
        out.insert((p, w), (tgt_cell, mat));
    }
    out
}

/// Dual action on the coalgebra chain cells: pairing transpose of the cap.
/// Keyed by source chain cell `(p', W')`, mapping to `(p' + q, W' - v)`.
pub fn cap_star(
    chains: &CoalgebraChains<'_>,
    bar: &DualBar<'_>,
    co: &DualCochain<'_>,
    dual: &GradedAlgebra,
    coalg: &DualCoalgebra,
    f: &Cochain,
) -> CellMap {
    let field = dual.field();
    let caps = cap_on_bar(bar, co, dual, coalg, f);
    let pairings: Vec<SparseMatrix> = (0..=bar.top())
        .map(|d| canonical_pairing(dual, coalg, d))
        .collect();
    let cell_pairing = |p: i64, w: i64| -> Option<SparseMatrix> {
        let cc = chains.cell(p, w)?;
        let bc = bar.cell(p, w)?;
        let mut d = SparseMatrix::zero(field, cc.dim, bc.dim);
        for (cs, bs) in cc.sectors.iter().zip(&bc.sectors) {
            let mut block = SparseMatrix::identity(field, 1);
            for &wk in &cs.weights {
                block = block.kron(&pairings[wk].transpose());
            }
            for (r, c, s) in block.iter() {
                d.set(cs.offset + r, bs.offset + c, s.clone());
            }
        }
        Some(d)
    };
    let mut out = CellMap::new();
    for (&(p, w), (tgt_cell, m)) in &caps {
        let (Some(d_src), Some(d_tgt)) = (
            cell_pairing(tgt_cell.0, tgt_cell.1),
            cell_pairing(p, w),
        ) else {
            continue;
        };
        let Some(dtt_inv) = d_tgt.transpose().inverse() else {
            continue;
        };
        let t = dtt_inv.mul(&m.transpose()).mul(&d_src.transpose());
        out.insert(*tgt_cell, ((p, w), t));
    }
    out
}

/// Lie derivative on the coalgebra side:
/// `L_f = B ∘ (f ∩* -) - (-1)^{‖f‖} (f ∩* -) ∘ B`, keyed by source cell.
pub fn lie_star(
    chains: &CoalgebraChains<'_>,
    cap: &CellMap,
    f: &Cochain,
) -> CellMap {
    let field = chains.field();
    let mut out = CellMap::new();
    for (&(p, w), ((tp, tw), capm)) in cap {
        let target = (tp - 1, *tw);
        let b_after = chains.cyclic_b(*tp, *tw);
        let term1 = b_after.mul(capm);
        let term2 = match cap.get(&(p - 1, w)) {
            Some(((tp2, tw2), c2)) => {
                debug_assert_eq!((*tp2, *tw2), target);
                c2.mul(&chains.cyclic_b(p, w))
            }
            None => SparseMatrix::zero(field, term1.rows(), term1.cols()),
        };
        let term2 = if f.m_degree().rem_euclid(2) == 1 {
            term2.neg()
        } else {
            term2
        };
        out.insert((p, w), (target, term1.sub(&term2)));
    }
    out
}
