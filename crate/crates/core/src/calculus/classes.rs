//! Operations on homology classes: pick representatives, operate chain
//! level, project back to class coordinates. Well-definedness is checked by
//! re-running with boundary-shifted representatives.

use std::collections::BTreeMap;

use crate::duality::{Context, KCochain, Restriction};
use crate::error::Error;
use crate::hochschild::DualCochain;
use crate::kernel::{Cell, HomologyBasis, Scalar, Vector};

use super::ops::{self, Cochain, KElement};

/// Homology of the dual cochain model over a window of cells.
pub struct DualClasses {
    pub homology: HomologyBasis,
}

impl DualClasses {
    pub fn new(co: &DualCochain<'_>) -> Self {
        DualClasses {
            homology: co.complex().homology(),
        }
    }

    /// Homology over a window of cells only.
    pub fn over(co: &DualCochain<'_>, cells: &[Cell]) -> Self {
        let computed = crate::par::map_cells(cells.to_vec(), |&(p, v)| {
            co.complex().homology_at(p, v)
        });
        DualClasses {
            homology: crate::kernel::HomologyBasis { cells: computed },
        }
    }

    pub fn count(&self, p: i64, v: i64) -> usize {
        self.homology.count(p, v)
    }

    pub fn rep(&self, co: &DualCochain<'_>, p: i64, v: i64, i: usize) -> Cochain {
        let cell = self.homology.cell(p, v).expect("cell computed");
        let _ = co;
        Cochain {
            p,
            v,
            coords: cell.reps[i].clone(),
        }
    }

    pub fn class_of(&self, f: &Cochain) -> Vector {
        match self.homology.cell(f.p, f.v) {
            Some(cell) => cell.class_map.apply(&f.coords),
            None => vec![],
        }
    }

    /// Class-level cup, with the cycle property of the input representatives
    /// assumed (they come from the homology basis).
    pub fn cup_classes(
        &self,
        co: &DualCochain<'_>,
        a: (Cell, usize),
        b: (Cell, usize),
    ) -> (Cell, Vector) {
        let f = self.rep(co, a.0 .0, a.0 .1, a.1);
        let g = self.rep(co, b.0 .0, b.0 .1, b.1);
        let prod = ops::cup(co, &f, &g);
        ((prod.p, prod.v), self.class_of(&prod))
    }

    pub fn bracket_classes(
        &self,
        co: &DualCochain<'_>,
        a: (Cell, usize),
        b: (Cell, usize),
    ) -> (Cell, Vector) {
        let f = self.rep(co, a.0 .0, a.0 .1, a.1);
        let g = self.rep(co, b.0 .0, b.0 .1, b.1);
        let br = ops::bracket(co, &f, &g);
        ((br.p, br.v), self.class_of(&br))
    }
}

/// Homology of the Koszul cochain model with its convolution ring.
pub struct KClasses {
    pub homology: HomologyBasis,
}

impl KClasses {
    pub fn new(kc: &KCochain<'_>) -> Self {
        KClasses {
            homology: kc.complex.homology(),
        }
    }

    pub fn over(kc: &KCochain<'_>, cells: &[Cell]) -> Self {
        let computed = crate::par::map_cells(cells.to_vec(), |&(m, w)| {
            kc.complex.homology_at(m, w)
        });
        KClasses {
            homology: crate::kernel::HomologyBasis { cells: computed },
        }
    }

    pub fn count(&self, m: i64, w: i64) -> usize {
        self.homology.count(m, w)
    }

    pub fn rep(&self, m: i64, w: i64, i: usize) -> KElement {
        let cell = self.homology.cell(m, w).expect("cell computed");
        KElement {
            m,
            w,
            coords: cell.reps[i].clone(),
        }
    }

    pub fn class_of(&self, a: &KElement) -> Vector {
        match self.homology.cell(a.m, a.w) {
            Some(cell) => cell.class_map.apply(&a.coords),
            None => vec![],
        }
    }

    pub fn product_classes(
        &self,
        ctx: &Context,
        a: (Cell, usize),
        b: (Cell, usize),
    ) -> (Cell, Vector) {
        let x = self.rep(a.0 .0, a.0 .1, a.1);
        let y = self.rep(b.0 .0, b.0 .1, b.1);
        let prod = ops::k_product(ctx, &x, &y);
        ((prod.m, prod.w), self.class_of(&prod))
    }
}

/// The identification induced on homology by the restriction map:
/// dual-side class at (p, v) -> model class at (p+v, -v).
pub struct Identification {
    /// per dual cell: matrix from dual classes to model classes
    pub mats: BTreeMap<Cell, crate::kernel::SparseMatrix>,
}

impl Identification {
    pub fn build(
        res: &Restriction,
        dual_classes: &DualClasses,
        k_classes: &KClasses,
    ) -> Result<Self, Error> {
        let mut mats = BTreeMap::new();
        for (&(p, v), r) in &res.mats {
            let (Some(src), Some(tgt)) = (
                dual_classes.homology.cell(p, v),
                k_classes.homology.cell(p + v, -v),
            ) else {
                continue;
            };
            if src.count == 0 && tgt.count == 0 {
                continue;
            }
            let induced = crate::duality::induced_on_homology(r, src, tgt);
            if src.count != tgt.count || induced.inverse().is_none() {
                return Err(Error::NotQuasiIso {
                    map: "class identification",
                    h: p,
                    w: v,
                    left: src.count,
                    right: tgt.count,
                });
            }
            mats.insert((p, v), induced);
        }
        Ok(Identification { mats })
    }

    pub fn apply(&self, cell: Cell, class: &[Scalar]) -> Option<Vector> {
        self.mats.get(&cell).map(|m| m.apply(class))
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
        Context::new(&p, 8).unwrap()
    }

    #[test]
    fn cup_is_graded_commutative_on_classes() {
        for q in [1, 2] {
            let ctx = ctx_for(q);
            let co = DualCochain::build(&ctx.dual, &ctx.coalg, 2, 6).unwrap();
            let window_cells: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| p <= 5 && (p + v) <= 3 && (p + v) >= 0 && (-v) <= 3)
                .collect();
            let classes = DualClasses::over(&co, &window_cells);
            let window: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| (p + v) >= 0 && (p + v) <= 2 && (-v) <= 2 && p <= 3)
                .collect();
            for &a in &window {
                for &b in &window {
                    if (a.0 + b.0 + 1) as usize > co.p_max() {
                        continue;
                    }
                    for i in 0..classes.count(a.0, a.1) {
                        for j in 0..classes.count(b.0, b.1) {
                            let (cell_ab, ab) = classes.cup_classes(&co, (a, i), (b, j));
                            let (_, ba) = classes.cup_classes(&co, (b, j), (a, i));
                            let sign = ((a.0 + a.1) * (b.0 + b.1)).rem_euclid(2) == 1;
                            let expect: Vector = if sign {
                                ba.iter().map(|s| -(s.clone())).collect()
                            } else {
                                ba.clone()
                            };
                            assert_eq!(
                                ab, expect,
                                "q={q}: commutativity at {a:?} x {b:?} -> {cell_ab:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_transports_cup_to_convolution() {
        for q in [1, 2] {
            let ctx = ctx_for(q);
            let co = DualCochain::build(&ctx.dual, &ctx.coalg, 2, 6).unwrap();
            let kc = KCochain::build(&ctx, 4).unwrap();
            let res = Restriction::build(&ctx, &co, &kc).unwrap();
            let dual_window: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| p <= 5 && (p + v) <= 3 && (p + v) >= 0 && (-v) <= 4)
                .collect();
            let dc = DualClasses::over(&co, &dual_window);
            let k_window: Vec<Cell> = kc.complex.cells().collect();
            let kcl = KClasses::over(&kc, &k_window);
            let ident = Identification::build(&res, &dc, &kcl).unwrap();
            let window: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| (p + v) >= 0 && (p + v) <= 2 && (-v) >= -1 && (-v) <= 2 && p <= 3)
                .collect();
            for &a in &window {
                for &b in &window {
                    let pc = ((a.0 + a.1) + (b.0 + b.1), -(a.1 + b.1));
                    // products must stay inside the computed model window
                    if pc.1 < -2 || pc.1 > 4 || pc.0 < 0 || pc.0 > 2 {
                        continue;
                    }
                    if (a.0 + b.0 + 1) as usize > co.p_max() {
                        continue;
                    }
                    for i in 0..dc.count(a.0, a.1) {
                        for j in 0..dc.count(b.0, b.1) {
                            let (cell_ab, ab) = dc.cup_classes(&co, (a, i), (b, j));
                            let Some(lhs) = ident.apply(cell_ab, &ab) else {
                                continue;
                            };
                            let ia = ident
                                .apply(a, &unit_class(&dc, a, i))
                                .expect("class identified");
                            let ib = ident
                                .apply(b, &unit_class(&dc, b, j))
                                .expect("class identified");
                            // expand into K classes and multiply bilinearly
                            let rhs = bilinear_k_product(
                                &ctx,
                                &kcl,
                                ((a.0 + a.1), -a.1),
                                &ia,
                                ((b.0 + b.1), -b.1),
                                &ib,
                            );
                            assert_eq!(lhs, rhs, "q={q}: transport at {a:?} x {b:?}");
                        }
                    }
                }
            }
        }
    }

    fn unit_class(dc: &DualClasses, cell: Cell, i: usize) -> Vector {
        let n = dc.count(cell.0, cell.1);
        crate::kernel::unit_vector(Field::Q, n, i)
    }

    /// Product of two classes given in class coordinates, expanded over the
    /// representative basis.
    fn bilinear_k_product(
        ctx: &Context,
        kcl: &KClasses,
        ca: Cell,
        a: &[Scalar],
        cb: Cell,
        b: &[Scalar],
    ) -> Vector {
        let f = ctx.field;
        let target = (ca.0 + cb.0, ca.1 + cb.1);
        let tdim = kcl.count(target.0, target.1);
        let mut acc = vec![f.zero(); tdim];
        for (i, sa) in a.iter().enumerate() {
            if sa.is_zero() {
                continue;
            }
            for (j, sb) in b.iter().enumerate() {
                if sb.is_zero() {
                    continue;
                }
                let (_, prod) = kcl.product_classes(ctx, (ca, i), (cb, j));
                let c = sa * sb;
                crate::kernel::vec_axpy(&mut acc, &c, &prod);
            }
        }
        acc
    }
}
