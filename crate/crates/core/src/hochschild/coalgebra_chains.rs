//! Chain complex of the dual coalgebra with co-bimodule coefficients, its
//! cyclic operator and the slotwise action.
//!
//! Cells are indexed by (slot count p, total internal weight W); slots carry
//! positive-weight coalgebra elements and the coefficient sits last. The
//! differential is the exact transpose, under the canonical slotwise
//! pairing, of the graded bar boundary of the dual algebra ([`DualBar`]),
//! so it squares to zero by construction and needs no independent sign
//! bookkeeping. The twist on this side is the pairing transport of the twist
//! installed on the algebra side.
//!
//! The cyclic operator moves a slot into the coefficient position against
//! the counit of the old coefficient, twisting the slots that wrap:
//!
//! `B(a_1,...,a_p, c) = Σ_{i=1}^p (-1)^{i(p-i)} ε(c) (a_{i+1},..,a_p, σ(a_1),..,σ(a_{i-1}), a_i)`
//!
//! Gates (tested): `δB + Bδ = Id - T` on interior cells, and on the
//! unit-eigenvalue part `B² = 0` with `δB + Bδ = 0`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraAutomorphism, DualCoalgebra, GradedAlgebra};
use crate::error::Error;
use crate::frobenius::canonical_pairing;
use crate::kernel::{
    BigradedComplex, Cell, Direction, Field, Scalar, SparseMatrix,
};

use super::cells::TensorCell;
use super::dual_bar::DualBar;
use super::eigen::{cell_eigen, concentration_blocks, CellEigen, SlotEigen};

pub struct CoalgebraChains<'a> {
    coalg: &'a DualCoalgebra,
    /// per-degree twist matrices on the coalgebra components (pairing
    /// transport of the algebra-side twist); `None` means untwisted
    twist: Option<Vec<SparseMatrix>>,
    p_max: usize,
    w_max: usize,
    cells: BTreeMap<Cell, TensorCell>,
    complex: BigradedComplex,
    /// cyclic operator per cell, transposed from the algebra side
    cyclic: BTreeMap<Cell, SparseMatrix>,
}

impl<'a> CoalgebraChains<'a> {
    /// Builds the complex as the pairing transpose of the graded bar complex
    /// of `dual` twisted by `twist_dual`.
    pub fn build(
        dual: &GradedAlgebra,
        coalg: &'a DualCoalgebra,
        twist_dual: Option<&AlgebraAutomorphism>,
        top: usize,
        p_max: usize,
        w_max: usize,
    ) -> Result<Self, Error> {
        let field = coalg.field();
        let bar = DualBar::build(dual, twist_dual, top, p_max)?;
        // canonical pairings per degree, rows = algebra side, cols = coalgebra side
        let pairings: Vec<SparseMatrix> = (0..=top)
            .map(|d| canonical_pairing(dual, coalg, d))
            .collect();
        let mut cells = BTreeMap::new();
        for w in 0..=w_max {
            for p in 0..=p_max.min(w) {
                let mut mins = vec![1usize; p + 1];
                mins[p] = 0;
                let cell = TensorCell::build(p + 1, w, &mins, |_, d| {
                    if d <= top {
                        coalg.dim(d as i64)
                    } else {
                        0
                    }
                });
                if cell.dim > 0 {
                    cells.insert((p as i64, w as i64), cell);
                }
            }
        }
        // block-diagonal pairing matrix per cell: rows coalgebra-side flat,
        // cols algebra-side flat; sector orders agree by construction
        let cell_pairing = |key: &Cell| -> Option<SparseMatrix> {
            let cc = cells.get(key)?;
            let bc = bar.cell(key.0, key.1)?;
            let mut d = SparseMatrix::zero(field, cc.dim, bc.dim);
            for (cs, bs) in cc.sectors.iter().zip(&bc.sectors) {
                assert_eq!(cs.weights, bs.weights, "sector order mismatch");
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
        let mut diffs: BTreeMap<Cell, SparseMatrix> = BTreeMap::new();
        let mut cyclic: BTreeMap<Cell, SparseMatrix> = BTreeMap::new();
        for (&(p, w), cc) in &cells {
            let Some(d_here) = cell_pairing(&(p, w)) else { continue };
            // <δ*x, y> = <x, b y>  =>  δ* = D_{p+1}^{-T} b^T D_p^T
            if let Some(d_next) = cell_pairing(&(p + 1, w)) {
                let b = bar.complex().diff(p + 1, w);
                if !b.is_zero_matrix() {
                    let dnt_inv = d_next
                        .transpose()
                        .inverse()
                        .expect("canonical pairing is invertible");
                    let delta = dnt_inv.mul(&b.transpose()).mul(&d_here.transpose());
                    if !delta.is_zero_matrix() {
                        diffs.insert((p, w), delta);
                    }
                }
            }
            // <Bx, y> = <x, B! y>  =>  B = D_{p-1}^{-T} B!^T D_p^T
            let prev_dim = cells.get(&(p - 1, w)).map_or(0, |c| c.dim);
            let b_up = bar.cyclic_b(p - 1, w);
            let mut bmat = SparseMatrix::zero(field, prev_dim, cc.dim);
            if !b_up.is_zero_matrix() {
                if let Some(d_prev) = cell_pairing(&(p - 1, w)) {
                    let dpt_inv = d_prev
                        .transpose()
                        .inverse()
                        .expect("canonical pairing is invertible");
                    bmat = dpt_inv.mul(&b_up.transpose()).mul(&d_here.transpose());
                }
            }
            cyclic.insert((p, w), bmat);
        }
        let terms = cells
            .iter()
            .map(|(&k, c)| {
                let labels = (0..c.dim).map(|i| format!("cc{}_{}_{i}", k.0, k.1)).collect();
                (k, labels)
            })
            .collect();
        let complex = BigradedComplex::new(field, Direction::Cochain, terms, diffs)?;
        // twist transport: σ_¡ = Q^{-1} σ_!^T Q per degree
        let twist = twist_dual.map(|t| {
            (0..=top)
                .map(|d| {
                    let q = &pairings[d];
                    let qinv = q.inverse().expect("canonical pairing invertible");
                    qinv.mul(&t.on_degree(d).transpose()).mul(q)
                })
                .collect()
        });
        Ok(CoalgebraChains {
            coalg,
            twist,
            p_max,
            w_max,
            cells,
            complex,
            cyclic,
        })
    }

    pub fn complex(&self) -> &BigradedComplex {
        &self.complex
    }

    pub fn coalg(&self) -> &DualCoalgebra {
        self.coalg
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn w_max(&self) -> usize {
        self.w_max
    }

    pub fn cell(&self, p: i64, w: i64) -> Option<&TensorCell> {
        self.cells.get(&(p, w))
    }

    pub fn dim(&self, p: i64, w: i64) -> usize {
        self.cells.get(&(p, w)).map_or(0, |c| c.dim)
    }

    pub fn field(&self) -> Field {
        self.coalg.field()
    }

    pub fn twist_on(&self, d: usize) -> SparseMatrix {
        match &self.twist {
            // components above the top degree are zero-dimensional
            Some(t) if d < t.len() => t[d].clone(),
            _ => SparseMatrix::identity(self.field(), self.coalg.dim(d as i64)),
        }
    }

    /// Interior cells: the homotopy identity involves cells up to p+1, so the
    /// last tabled slot count is excluded from checks.
    pub fn is_interior(&self, p: i64, w: i64) -> bool {
        (p as usize) < self.p_max.min(w as usize)
            || ((p as usize) < self.p_max && p >= w)
    }

    /// The cyclic operator: (p, W) -> (p-1, W), the exact pairing transpose
    /// of the algebra-side operator.
    pub fn cyclic_b(&self, p: i64, w: i64) -> SparseMatrix {
        match self.cyclic.get(&(p, w)) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.field(), self.dim(p - 1, w), self.dim(p, w)),
        }
    }

    /// Direct slot-shuffle formula for the cyclic operator; retained as an
    /// independent oracle for the transpose route (they agree, tested).
    pub fn cyclic_b_direct(&self, p: i64, w: i64) -> SparseMatrix {
        let field = self.field();
        let src_dim = self.dim(p, w);
        let tgt_dim = self.dim(p - 1, w);
        let mut out = SparseMatrix::zero(field, tgt_dim, src_dim);
        let (Some(src), Some(tgt)) = (self.cells.get(&(p, w)), self.cells.get(&(p - 1, w)))
        else {
            return out;
        };
        let pp = p as usize;
        for (sector, multi, flat) in src.iter() {
            // counit kills positive-weight coefficients
            if sector.weights[pp] != 0 {
                continue;
            }
            for i in 1..=pp {
                // graded rotation sign: the block (a_1..a_i) moves past
                // (a_{i+1}..a_p), slots counted with desuspended degrees;
                // when every slot degree is even this is (-1)^{i(p-i)}
                let head: usize = sector.weights[..i].iter().sum::<usize>() + i;
                let tail: usize =
                    sector.weights[i..pp].iter().sum::<usize>() + (pp - i);
                let neg = (head * tail) % 2 == 1;
                // (a_{i+1},...,a_p, σ(a_1),...,σ(a_{i-1}), a_i)
                let mut order: Vec<(usize, bool)> = Vec::new();
                for j in (i + 1)..=pp {
                    order.push((j - 1, false));
                }
                for j in 1..i {
                    order.push((j - 1, true));
                }
                let coeff_slot = i - 1;
                let mut out_weights: Vec<usize> =
                    order.iter().map(|&(j, _)| sector.weights[j]).collect();
                out_weights.push(sector.weights[coeff_slot]);
                let Some(ts) = tgt.sector_by_weights(&out_weights) else {
                    continue;
                };
                let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(vec![], field.one())];
                for &(j, twisted) in &order {
                    let k = multi[j];
                    let mut next = Vec::new();
                    if twisted {
                        let col = self
                            .twist_on(sector.weights[j])
                            .inverse()
                            .expect("twist invertible")
                            .column(k);
                        for (prev, c) in &terms {
                            for (r, entry) in col.iter().enumerate() {
                                if entry.is_zero() {
                                    continue;
                                }
                                let mut m = prev.clone();
                                m.push(r);
                                next.push((m, c * entry));
                            }
                        }
                    } else {
                        for (prev, c) in &terms {
                            let mut m = prev.clone();
                            m.push(k);
                            next.push((m, c.clone()));
                        }
                    }
                    terms = next;
                }
                for (mut m, c) in terms {
                    m.push(multi[coeff_slot]);
                    let t = ts.offset + ts.flatten(&m);
                    out.add_entry(t, flat, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Slotwise twist action (identity when untwisted).
    pub fn operator_t(&self, p: i64, w: i64) -> SparseMatrix {
        let field = self.field();
        let dim = self.dim(p, w);
        let mut out = SparseMatrix::zero(field, dim, dim);
        let Some(cell) = self.cells.get(&(p, w)) else {
            return out;
        };
        for sector in &cell.sectors {
            let mut block = SparseMatrix::identity(field, 1);
            for &wk in &sector.weights {
                block = block.kron(&self.twist_on(wk));
            }
            for (r, c, s) in block.iter() {
                out.set(sector.offset + r, sector.offset + c, s.clone());
            }
        }
        out
    }

    /// `δB + Bδ = Id - T` on interior cells.
    pub fn check_homotopy(&self) -> Result<(), Error> {
        for (&(p, w), _) in &self.cells {
            if !self.is_interior(p, w) {
                continue;
            }
            let d_out = self.complex.diff(p, w);
            let d_in = self.complex.diff(p - 1, w);
            let b_here = self.cyclic_b(p, w);
            let b_next = self.cyclic_b(p + 1, w);
            let lhs = b_next.mul(&d_out).add(&d_in.mul(&b_here));
            let rhs = SparseMatrix::identity(self.field(), self.dim(p, w))
                .sub(&self.operator_t(p, w));
            if lhs != rhs {
                return Err(Error::IdentityViolated {
                    identity: "δB + Bδ = Id - T (coalgebra side)",
                    h: p,
                    w,
                });
            }
        }
        Ok(())
    }

    /// Eigen data per cell from the twist's eigen decomposition.
    pub fn eigen(&self) -> Result<BTreeMap<Cell, CellEigen>, Error> {
        let field = self.field();
        let mut per_degree: Vec<SlotEigen> = Vec::with_capacity(self.coalg.bound() + 1);
        for d in 0..=self.coalg.bound() {
            let m = self.twist_on(d);
            let eig = crate::kernel::eigenspace_decomposition(&m)?;
            per_degree.push(SlotEigen::from_eigenspaces(field, eig));
        }
        let mut out = BTreeMap::new();
        for (&key, cell) in &self.cells {
            out.insert(key, cell_eigen(field, cell, |_, d| &per_degree[d]));
        }
        Ok(out)
    }

    pub fn eigen_block_homology(
        &self,
    ) -> Result<BTreeMap<String, BTreeMap<Cell, usize>>, Error> {
        let eig = self.eigen()?;
        concentration_blocks(&self.complex, &eig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expand, koszul_dual_coalgebra, QuadraticPresentation};
    use crate::frobenius::detect_frobenius;

    struct Setup {
        dual: GradedAlgebra,
        coalg: DualCoalgebra,
        nak_dual: AlgebraAutomorphism,
    }

    fn setup(q: i64) -> Setup {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-q), [1, 0])]],
        )
        .unwrap();
        let dual = expand(&p.quadratic_dual(), 4).unwrap();
        let coalg = koszul_dual_coalgebra(&p, 5).unwrap();
        let frob = detect_frobenius(&dual, None).unwrap();
        Setup {
            dual,
            coalg,
            nak_dual: frob.nakayama_dual,
        }
    }

    #[test]
    fn untwisted_complex_builds_and_b_is_mixed() {
        let s = setup(1);
        let chains = CoalgebraChains::build(&s.dual, &s.coalg, None, 2, 6, 4).unwrap();
        chains.check_homotopy().unwrap();
        for (p, w) in chains.complex.cells() {
            let b1 = chains.cyclic_b(p, w);
            let b0 = chains.cyclic_b(p - 1, w);
            assert!(b0.mul(&b1).is_zero_matrix(), "B² at ({p},{w})");
        }
    }

    #[test]
    fn twisted_homotopy_identity_on_quantum_plane_dual() {
        let s = setup(2);
        let tw = s.nak_dual.inverse();
        let chains = CoalgebraChains::build(&s.dual, &s.coalg, Some(&tw), 2, 6, 4).unwrap();
        chains.check_homotopy().unwrap();
    }

    #[test]
    fn concentration_on_quantum_plane_dual() {
        let s = setup(2);
        let tw = s.nak_dual.inverse();
        let chains = CoalgebraChains::build(&s.dual, &s.coalg, Some(&tw), 2, 6, 4).unwrap();
        let blocks = chains.eigen_block_homology().unwrap();
        for (value, table) in &blocks {
            if value == "1" {
                continue;
            }
            for (&(p, w), &count) in table {
                if !chains.is_interior(p, w) {
                    continue;
                }
                assert_eq!(count, 0, "block {value} at ({p},{w})");
            }
        }
    }

    #[test]
    fn unit_block_b_squares_to_zero() {
        let s = setup(2);
        let tw = s.nak_dual.inverse();
        let chains = CoalgebraChains::build(&s.dual, &s.coalg, Some(&tw), 2, 6, 4).unwrap();
        let eig = chains.eigen().unwrap();
        let f = Field::Q;
        let one = f.one();
        for (&(p, w), ce) in &eig {
            if !chains.is_interior(p, w) || p < 2 {
                continue;
            }
            let proj = ce.projection(f, &one);
            let b1 = chains.cyclic_b(p, w);
            let b0 = chains.cyclic_b(p - 1, w);
            let restricted = b0.mul(&b1).mul(&proj);
            assert!(restricted.is_zero_matrix(), "B² on unit block at ({p},{w})");
        }
    }
}
