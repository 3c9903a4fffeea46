//! Restriction of dual-side bar cochains to the small Koszul model.
//!
//! A cochain of arity `p` only sees tensors of degree-1 inputs after
//! restriction; inner faces die on the relation windows, so restriction is a
//! chain map onto the cochain model. The sector picture is sharp: only the
//! all-ones input sectors contribute, through the word-reduction map of the
//! regular algebra tensored with the identity on the output leg.
//!
//! Cell dictionary: cochain (p, v) -> model (m, w) = (p + v, -v).

use std::collections::BTreeMap;

use crate::error::Error;
use crate::hochschild::DualCochain;
use crate::kernel::{Cell, SparseMatrix};

use super::context::Context;
use super::kmodel::{induced_on_homology, KCochain};

pub struct Restriction {
    /// per cochain cell (p, v): matrix into the model cell (p+v, -v)
    pub mats: BTreeMap<Cell, SparseMatrix>,
}

/// The documented strictifying sign: `(-1)^{Σ_{k<p} (k+v+1)}`.
pub const RESTRICTION_SIGN_RULE: &str = "(-1)^(p(p-1)/2 + p(v+1) + v(v-1)/2)";

impl Restriction {
    pub fn build(
        ctx: &Context,
        co: &DualCochain<'_>,
        kc: &KCochain<'_>,
    ) -> Result<Self, Error> {
        let field = ctx.field;
        let mut raw: BTreeMap<Cell, SparseMatrix> = BTreeMap::new();
        for (p, v) in co.complex().cells() {
            let m = p + v;
            let w = -v;
            let tgt_dim = kc.dim(m, w);
            let src = co.cell(p, v).expect("cell exists");
            let mut mat = SparseMatrix::zero(field, tgt_dim, src.dim);
            if tgt_dim > 0 && m >= 0 {
                let mut ones = vec![1usize; p as usize];
                ones.push(m as usize); // coefficient weight z = p + v
                if let Some(sector) = src.sector_by_weights(&ones) {
                    let reduce = ctx.alg.reduce_matrix(p as usize);
                    let id_dual = SparseMatrix::identity(field, ctx.dual.dim(m));
                    let block = reduce.kron(&id_dual);
                    for (r, c, s) in block.iter() {
                        mat.add_entry(r, sector.offset + c, s.clone());
                    }
                }
            }
            raw.insert((p, v), mat);
        }
        // the raw restriction anticommutes in even model degrees:
        // res_{p+1} ∘ δ_co = -(-1)^m δ_K ∘ res_p with m = p + v (verified
        // below); accumulate the sign along arity per weight to strictify
        let sign_of = |p: i64, v: i64| -> i8 {
            // product over k < p of -(-1)^{k+v}, then the weight gauge
            // (-1)^{v(v-1)/2} that makes the induced homology maps a ring
            // identification (the ungauged maps are multiplicative only up
            // to (-1)^{v_a v_b})
            let exponent: i64 =
                (0..p).map(|k| k + v + 1).sum::<i64>() + v * (v - 1) / 2;
            if exponent.rem_euclid(2) == 1 {
                -1
            } else {
                1
            }
        };
        let mats: BTreeMap<Cell, SparseMatrix> = raw
            .into_iter()
            .map(|((p, v), r)| {
                let s = sign_of(p, v);
                ((p, v), if s < 0 { r.neg() } else { r })
            })
            .collect();
        let res = Restriction { mats };
        res.check_chain_map(co, kc)?;
        Ok(res)
    }

    fn check_chain_map(&self, co: &DualCochain<'_>, kc: &KCochain<'_>) -> Result<(), Error> {
        for (&(p, v), r) in &self.mats {
            let delta_co = co.complex().diff(p, v);
            let Some(r_next) = self.mats.get(&(p + 1, v)) else {
                continue;
            };
            let lhs = r_next.mul(&delta_co);
            let rhs = kc.complex.diff(p + v, -v).mul(r);
            if lhs != rhs {
                return Err(Error::ChainMapViolated {
                    map: "koszul restriction",
                    h: p,
                    w: v,
                });
            }
        }
        Ok(())
    }

    /// Rank equality and invertibility of the induced map per cell. Columns
    /// within half the arity bound of the window edge can be excluded by the
    /// caller; with the finite columns here everything interior is exact.
    pub fn check_quasi_iso(
        &self,
        co: &DualCochain<'_>,
        kc: &KCochain<'_>,
        p_limit: i64,
    ) -> Result<(), Error> {
        for (&(p, v), r) in &self.mats {
            if p > p_limit {
                continue;
            }
            let m = p + v;
            let w = -v;
            if w < kc.w_min || w > kc.w_max {
                continue;
            }
            let src_h = co.complex().homology_at(p, v);
            let tgt_h = kc.complex.homology_at(m, w);
            if src_h.count != tgt_h.count {
                return Err(Error::NotQuasiIso {
                    map: "koszul restriction",
                    h: p,
                    w: v,
                    left: src_h.count,
                    right: tgt_h.count,
                });
            }
            let induced = induced_on_homology(r, &src_h, &tgt_h);
            if induced.inverse().is_none() {
                return Err(Error::NotQuasiIso {
                    map: "koszul restriction",
                    h: p,
                    w: v,
                    left: src_h.count,
                    right: tgt_h.count,
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
    use crate::hochschild::DualCochain;
    use crate::kernel::Field;

    fn ctx_for(q: i64) -> Context {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-q), [1, 0])]],
        )
        .unwrap();
        Context::new(&p, 7).unwrap()
    }

    #[test]
    fn restriction_is_chain_map_and_quasi_iso() {
        for q in [1, 2] {
            let ctx = ctx_for(q);
            let co = DualCochain::build(&ctx.dual, &ctx.coalg, 2, 6).unwrap();
            let kc = KCochain::build(&ctx, 4).unwrap();
            let res = Restriction::build(&ctx, &co, &kc).unwrap();
            // homology comparison where the model window covers the cells
            res.check_quasi_iso(&co, &kc, 5).unwrap();
        }
    }

    #[test]
    fn unit_cocycle_restricts_to_unit() {
        let ctx = ctx_for(2);
        let co = DualCochain::build(&ctx.dual, &ctx.coalg, 2, 6).unwrap();
        let kc = KCochain::build(&ctx, 4).unwrap();
        let res = Restriction::build(&ctx, &co, &kc).unwrap();
        let m = &res.mats[&(0, 0)];
        let unit = crate::kernel::unit_vector(ctx.field, 1, 0);
        let img = m.apply(&unit);
        assert!(img[0].is_one());
    }
}
