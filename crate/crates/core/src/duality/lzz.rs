//! Duality between dual-side cochains and coalgebra chains: the pairing
//! isomorphism on the coefficient leg, corrected by a cumulative twist power
//! per arity so that the comparison is a strict chain map. The twist power
//! acts trivially on homology (everything concentrates in the unit
//! eigenvalue), but the chain-level assertion needs it.
//!
//! Cell dictionary: cochain (p, v) -> chains (p, n - v).

use std::collections::BTreeMap;

use crate::error::Error;
use crate::hochschild::{CoalgebraChains, DualCochain};
use crate::kernel::{Cell, SparseMatrix};

use super::context::Context;

pub struct LzzMap {
    /// per cochain cell (p, v): invertible matrix into the chain cell (p, n-v)
    pub mats: BTreeMap<Cell, SparseMatrix>,
    pub sign_rule: &'static str,
}

impl LzzMap {
    pub fn build(
        ctx: &Context,
        co: &DualCochain<'_>,
        chains: &CoalgebraChains<'_>,
    ) -> Result<Self, Error> {
        let field = ctx.field;
        let n = ctx.top_degree();
        assert!(
            chains.w_max() >= n + co.p_max() * co.top(),
            "chain window too small to receive every cochain cell"
        );
        let mut mats: BTreeMap<Cell, SparseMatrix> = BTreeMap::new();
        for (p, v) in co.complex().cells() {
            let src = co.cell(p, v).expect("cell exists");
            let tgt_w = n as i64 - v;
            let tgt_dim = chains.dim(p, tgt_w);
            let mut mat = SparseMatrix::zero(field, tgt_dim, src.dim);
            if tgt_dim > 0 {
                if let Some(tgt_cell) = chains.cell(p, tgt_w) {
                    for sector in &src.sectors {
                        let z = sector.weights[p as usize];
                        let mut out_weights = sector.weights.clone();
                        out_weights[p as usize] = n - z;
                        let Some(ts) = tgt_cell.sector_by_weights(&out_weights) else {
                            continue;
                        };
                        let mut block = SparseMatrix::identity(field, 1);
                        for &wk in &sector.weights[..p as usize] {
                            block = block
                                .kron(&SparseMatrix::identity(field, ctx.coalg.dim(wk as i64)));
                        }
                        // coefficient leg: (-1)^z σ ∘ ψ_z with σ the inverse
                        // of the installed chain twist; this combination is
                        // the one that makes the comparison strict (pinned by
                        // the chain-map assertion below)
                        let sigma = chains
                            .twist_on(n - z)
                            .inverse()
                            .expect("twist invertible");
                        let mut leg = sigma.mul(&ctx.psi[z]);
                        if z % 2 == 1 {
                            leg = leg.neg();
                        }
                        block = block.kron(&leg);
                        for (r, c, s) in block.iter() {
                            mat.add_entry(ts.offset + r, sector.offset + c, s.clone());
                        }
                    }
                }
            }
            mats.insert((p, v), mat);
        }
        let me = LzzMap {
            mats,
            sign_rule: "(-1)^z sigma psi on the coefficient leg",
        };
        me.check_chain_map(ctx, co, chains)?;
        me.check_invertible(co, chains, ctx)?;
        Ok(me)
    }

    fn check_chain_map(
        &self,
        ctx: &Context,
        co: &DualCochain<'_>,
        chains: &CoalgebraChains<'_>,
    ) -> Result<(), Error> {
        let n = ctx.top_degree() as i64;
        for (&(p, v), r) in &self.mats {
            let delta_co = co.complex().diff(p, v);
            let Some(r_next) = self.mats.get(&(p + 1, v)) else { continue };
            if (p as usize) >= chains.p_max() {
                continue;
            }
            let lhs = r_next.mul(&delta_co);
            let rhs = chains.complex().diff(p, n - v).mul(r);
            if lhs != rhs {
                return Err(Error::ChainMapViolated {
                    map: "frobenius duality",
                    h: p,
                    w: v,
                });
            }
        }
        Ok(())
    }

    fn check_invertible(
        &self,
        co: &DualCochain<'_>,
        chains: &CoalgebraChains<'_>,
        ctx: &Context,
    ) -> Result<(), Error> {
        let n = ctx.top_degree() as i64;
        for (&(p, v), r) in &self.mats {
            let tgt = chains.dim(p, n - v);
            let src = co.dim(p, v);
            if src != tgt || (src > 0 && r.inverse().is_none()) {
                return Err(Error::NotQuasiIso {
                    map: "frobenius duality",
                    h: p,
                    w: v,
                    left: src,
                    right: tgt,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuadraticPresentation;
    use crate::kernel::Field;

    fn ctx_for(q: i64) -> Context {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-q), [1, 0])]],
        )
        .unwrap();
        Context::new(&p, 6).unwrap()
    }

    #[test]
    fn duality_map_is_strict_chain_iso() {
        for q in [1, 2] {
            let ctx = ctx_for(q);
            let n = ctx.top_degree();
            let co = DualCochain::build(&ctx.dual, &ctx.coalg, n, 5).unwrap();
            let tw = ctx.frob.nakayama_dual.inverse();
            let chains = CoalgebraChains::build(
                &ctx.dual,
                &ctx.coalg,
                Some(&tw),
                n,
                5,
                n + 5 * n,
            )
            .unwrap();
            LzzMap::build(&ctx, &co, &chains).unwrap();
        }
    }
}
