//! End-to-end verification: builds both sides, runs every comparison map
//! with its gates, computes both degree-lowering operators, and checks that
//! rings and operators agree under the identification. Produces a
//! machine-readable verdict.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::algebra::{check_koszul, QuadraticPresentation};
use crate::calculus::{
    self, gerstenhaber_reports, DualClasses, Identification, KClasses,
};
use crate::error::Error;
use crate::hochschild::{BarComplex, CoalgebraChains, DualCochain};
use crate::kernel::{Cell, SparseMatrix};
use crate::report::{DimensionTable, MatrixReport, StageReport, VerdictReport};

use super::context::Context;
use super::delta::{compare_deltas, DeltaA, DeltaAInputs, DeltaDual};
use super::kmodel::{InclusionQ, KCochain, KTwisted, PdMap};
use super::lzz::LzzMap;
use super::restriction::Restriction;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// model weight bound (inclusive)
    pub w_max: i64,
    /// model cohomological degree bound (inclusive; clipped to the top degree)
    pub hdeg_max: i64,
    /// cochain arity truncation
    pub truncation: usize,
    /// test-only: corrupt the sign of the twisted cyclic operator to verify
    /// failure detection
    pub fault_twisted_b_sign: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            w_max: 3,
            hdeg_max: 4,
            truncation: 5,
            fault_twisted_b_sign: false,
        }
    }
}

impl VerifyOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if self.w_max < 2 {
            return Err(Error::InvalidInput("weight bound must be at least 2".into()));
        }
        if self.truncation < 3 {
            return Err(Error::InvalidInput("truncation must be at least 3".into()));
        }
        Ok(())
    }
}

pub fn verify_main_theorem(
    pres: &QuadraticPresentation,
    opts: &VerifyOptions,
) -> Result<VerdictReport, Error> {
    opts.validate()?;
    let start = Instant::now();
    let mut stages: Vec<StageReport> = Vec::new();
    let mut dimension_tables: BTreeMap<String, DimensionTable> = BTreeMap::new();
    let mut delta_matrices: BTreeMap<String, BTreeMap<String, MatrixReport>> = BTreeMap::new();
    let mut identification_out: BTreeMap<String, MatrixReport> = BTreeMap::new();
    let mut sign_profile: BTreeMap<String, String> = BTreeMap::new();
    let mut failed = false;

    macro_rules! stage {
        ($name:expr, $body:expr) => {{
            let res: Result<_, Error> = (|| $body)();
            match res {
                Ok(v) => {
                    stages.push(StageReport {
                        name: $name.into(),
                        pass: true,
                        detail: None,
                    });
                    Some(v)
                }
                Err(e) => {
                    failed = true;
                    stages.push(StageReport {
                        name: $name.into(),
                        pass: false,
                        detail: Some(e.to_string()),
                    });
                    None
                }
            }
        }};
    }

    // context: algebra expanded far enough for every product in the window
    let n_guess = 2usize; // refined after Frobenius detection
    let a_bound = (opts.w_max as usize + n_guess).max(4) + n_guess;
    let ctx = match Context::new(pres, a_bound) {
        Ok(c) => c,
        Err(e) => {
            return finish_failed(pres, start, stages, e);
        }
    };
    let n = ctx.top_degree();
    let hdeg = opts.hdeg_max.min(n as i64);
    let field = ctx.field;
    stages.push(StageReport {
        name: "frobenius structure and automorphisms".into(),
        pass: true,
        detail: Some(format!(
            "top degree {n}; generator eigenvalues {:?}",
            ctx.nakayama
                .generator_eigendata()?
                .iter()
                .map(|e| e.value.literal())
                .collect::<Vec<_>>()
        )),
    });

    // Koszulity certificate
    let koszul_bound = (opts.w_max as usize + n).max(4);
    if let Some(report) = stage!("koszulity window", {
        let r = check_koszul(&ctx.alg, &ctx.coalg, koszul_bound)?;
        if !r.is_koszul_up_to_bound() {
            return Err(Error::Internal(format!(
                "augmented complex not exact within weight {koszul_bound}"
            )));
        }
        Ok(r)
    }) {
        dimension_tables.insert(
            "algebra_dims".into(),
            DimensionTable {
                cells: report
                    .algebra_dims
                    .iter()
                    .enumerate()
                    .map(|(d, &k)| (format!("({d})"), k))
                    .collect(),
            },
        );
    }

    // Koszul models
    let kc = KCochain::build(&ctx, opts.w_max)?;
    let kt = KTwisted::build(&ctx, opts.w_max)?;
    let pd = stage!("poincare pairing chain map", PdMap::build(&ctx, &kc, &kt));
    if let Some(pd) = &pd {
        sign_profile.insert(
            "pd_per_degree".into(),
            format!("{:?}", pd.sign_profile),
        );
    }

    // twisted bar complex and its gates
    let bar_w = (opts.w_max + n as i64).max(2) as usize;
    let bar = BarComplex::build(&ctx.alg, Some(&ctx.tau), bar_w)?;
    stage!("twisted cyclic homotopy identity", {
        check_bar_homotopy(&bar, opts.fault_twisted_b_sign)
    });
    stage!("homology concentrates in the unit eigenvalue", {
        let blocks = bar.eigen_block_homology()?;
        for (value, table) in &blocks {
            if value == "1" {
                continue;
            }
            for (&(p, w), &count) in table {
                if count != 0 {
                    return Err(Error::IdentityViolated {
                        identity: "concentration",
                        h: p,
                        w,
                    });
                }
            }
        }
        Ok(())
    });
    let q = stage!(
        "koszul-to-bar inclusion quasi-isomorphism",
        InclusionQ::build(&ctx, &kt, &bar)
    );

    // homology tables
    let model_window: Vec<Cell> = kc
        .complex
        .cells()
        .filter(|&(m, w)| m <= hdeg && w <= opts.w_max)
        .collect();
    let k_classes = KClasses::over(&kc, &model_window);
    dimension_tables.insert(
        "model_cohomology".into(),
        DimensionTable::from_cells(&k_classes.homology.table()),
    );
    let kt_cells: Vec<Cell> = kt.complex.cells().collect();
    let kt_homology = crate::kernel::HomologyBasis {
        cells: crate::par::map_cells(kt_cells, |&(j, w)| kt.complex.homology_at(j, w)),
    };
    dimension_tables.insert(
        "twisted_homology".into(),
        DimensionTable::from_cells(&kt_homology.table()),
    );
    stage!("duality of homology dimensions", {
        for &(m, w) in &model_window {
            let a = k_classes.homology.count(m, w);
            let b = kt_homology.count(n as i64 - m, w);
            if a != b {
                return Err(Error::NotQuasiIso {
                    map: "homology duality",
                    h: m,
                    w,
                    left: a,
                    right: b,
                });
            }
        }
        Ok(())
    });
    let bar_cells: Vec<Cell> = bar.complex().cells().collect();
    let bar_homology = crate::kernel::HomologyBasis {
        cells: crate::par::map_cells(bar_cells, |&(p, w)| bar.complex().homology_at(p, w)),
    };

    // dual side: cochain model, restriction, classes, identification
    let co = DualCochain::build(&ctx.dual, &ctx.coalg, n, opts.truncation)?;
    let res = stage!(
        "restriction to the model is a chain map",
        Restriction::build(&ctx, &co, &kc)
    );
    sign_profile.insert(
        "restriction".into(),
        super::restriction::RESTRICTION_SIGN_RULE.into(),
    );
    let dual_window: Vec<Cell> = co
        .complex()
        .cells()
        .filter(|&(p, v)| {
            let m = p + v;
            let w = -v;
            m >= 0 && m <= hdeg && w <= opts.w_max && (p as usize) <= opts.truncation
        })
        .collect();
    let dual_class_cells: Vec<Cell> = co
        .complex()
        .cells()
        .filter(|&(p, v)| (p as usize) <= opts.truncation && p + v >= -1 && p + v <= hdeg + 1)
        .collect();
    let dual_classes = DualClasses::over(&co, &dual_class_cells);
    dimension_tables.insert(
        "dual_cohomology".into(),
        DimensionTable::from_cells(
            &dual_classes
                .homology
                .table()
                .into_iter()
                .filter(|&((p, v), _)| dual_window.contains(&(p, v)))
                .collect(),
        ),
    );
    let ident = match &res {
        Some(r) => stage!("class identification is invertible", {
            Identification::build(r, &dual_classes, &k_classes)
        }),
        None => None,
    };
    if let Some(id) = &ident {
        for (&(p, v), m) in &id.mats {
            if dual_window.contains(&(p, v)) {
                identification_out.insert(format!("({p},{v})"), MatrixReport::from(m));
            }
        }
    }

    // ring comparison on the window
    if let Some(id) = &ident {
        stage!("cup structure constants agree", {
            check_ring_transport(
                &ctx,
                &co,
                &dual_classes,
                &k_classes,
                id,
                &dual_window,
                hdeg,
                opts.w_max,
            )
        });
    }

    // Gerstenhaber axioms on the dual side
    stage!("gerstenhaber axioms", {
        let small: Vec<Cell> = dual_window
            .iter()
            .copied()
            .filter(|&(p, v)| p <= 2 && (p + v) <= 2)
            .collect();
        let reports =
            gerstenhaber_reports(&ctx, &co, &dual_classes, &small, opts.truncation)?;
        for r in reports {
            if !r.pass {
                return Err(Error::Internal(format!(
                    "{} failed at {:?}",
                    r.name, r.witness
                )));
            }
        }
        Ok(())
    });

    // coalgebra chains, duality, Δ on the dual side
    let tw_dual = ctx.frob.nakayama_dual.inverse();
    let chains = CoalgebraChains::build(
        &ctx.dual,
        &ctx.coalg,
        Some(&tw_dual),
        n,
        opts.truncation,
        n + opts.truncation * n,
    )?;
    stage!("coalgebra cyclic homotopy identity", chains.check_homotopy());
    let lzz = stage!(
        "frobenius duality chain isomorphism",
        LzzMap::build(&ctx, &co, &chains)
    );
    if let Some(l) = &lzz {
        sign_profile.insert("frobenius_duality".into(), l.sign_rule.into());
    }
    let delta_dual = match &lzz {
        Some(l) => stage!("dual-side Δ", {
            let d = DeltaDual::build(&ctx, &co, &chains, l, &dual_classes, &dual_window)?;
            d.check_squares_to_zero()?;
            Ok(d)
        }),
        None => None,
    };
    if let Some(dd) = &delta_dual {
        let table: BTreeMap<String, MatrixReport> = dd
            .mats
            .iter()
            .map(|(&(p, v), m)| (format!("({p},{v})"), MatrixReport::from(m)))
            .collect();
        delta_matrices.insert("dual_model".into(), table);
    }

    // Δ on the regular side
    let delta_a = match (&pd, &q) {
        (Some(pd), Some(q)) => stage!("regular-side Δ", {
            let inputs = DeltaAInputs {
                ctx: &ctx,
                kc: &kc,
                kt: &kt,
                pd,
                bar: &bar,
                q,
                k_classes: &k_classes,
                kt_homology: &kt_homology,
                bar_homology: &bar_homology,
            };
            let d = DeltaA::build(&inputs, &model_window)?;
            d.check_squares_to_zero()?;
            d.check_kills_unit()?;
            Ok(d)
        }),
        _ => None,
    };
    if let Some(da) = &delta_a {
        let table: BTreeMap<String, MatrixReport> = da
            .mats
            .iter()
            .map(|(&(m, w), mat)| (format!("({m},{w})"), MatrixReport::from(mat)))
            .collect();
        delta_matrices.insert("koszul_model".into(), table);
    }

    // seven-term identity on the dual side with the native bracket
    if let Some(dd) = &delta_dual {
        stage!("seven-term identity (dual side)", {
            let small: Vec<Cell> = dual_window
                .iter()
                .copied()
                .filter(|&(p, v)| p <= 2 && (p + v) <= 2)
                .collect();
            let r = calculus::checks::check_bv(
                &co,
                &dual_classes,
                &small,
                opts.truncation,
                &|cell| dd.matrix(cell),
            );
            if !r.pass {
                return Err(Error::Internal(format!(
                    "{} failed at {:?}",
                    r.name, r.witness
                )));
            }
            Ok(())
        });
    }

    // seven-term identity with the transported regular-side Δ
    if let (Some(da), Some(id)) = (&delta_a, &ident) {
        stage!("seven-term identity (transported Δ)", {
            let small: Vec<Cell> = dual_window
                .iter()
                .copied()
                .filter(|&(p, v)| p <= 2 && (p + v) <= 2)
                .collect();
            let r = calculus::checks::check_bv(
                &co,
                &dual_classes,
                &small,
                opts.truncation,
                &|cell| transported_delta(id, da, cell),
            );
            if !r.pass {
                return Err(Error::Internal(format!(
                    "{} failed at {:?}",
                    r.name, r.witness
                )));
            }
            Ok(())
        });
    }

    // the main comparison
    if let (Some(dd), Some(da), Some(id)) = (&delta_dual, &delta_a, &ident) {
        stage!("Δ matrices agree under the identification", {
            compare_deltas(id, dd, da, &dual_window)
        });
    }

    failed |= stages.iter().any(|s| !s.pass);
    let verdict = if failed { "fail" } else { "pass" };
    Ok(VerdictReport {
        field: field.name(),
        bounds: bounds_map(opts, n),
        verdict: verdict.into(),
        stages,
        dimension_tables,
        delta_matrices,
        identification: identification_out,
        sign_profile,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn bounds_map(opts: &VerifyOptions, n: usize) -> BTreeMap<String, i64> {
    let mut b = BTreeMap::new();
    b.insert("weight_max".into(), opts.w_max);
    b.insert("hdeg_max".into(), opts.hdeg_max);
    b.insert("truncation".into(), opts.truncation as i64);
    b.insert("top_degree".into(), n as i64);
    b
}

fn finish_failed(
    pres: &QuadraticPresentation,
    start: Instant,
    mut stages: Vec<StageReport>,
    e: Error,
) -> Result<VerdictReport, Error> {
    if e.is_input_error() {
        return Err(e);
    }
    stages.push(StageReport {
        name: "context construction".into(),
        pass: false,
        detail: Some(e.to_string()),
    });
    Ok(VerdictReport {
        field: pres.field().name(),
        bounds: BTreeMap::new(),
        verdict: "fail".into(),
        stages,
        dimension_tables: BTreeMap::new(),
        delta_matrices: BTreeMap::new(),
        identification: BTreeMap::new(),
        sign_profile: BTreeMap::new(),
        timing_ms: start.elapsed().as_millis(),
    })
}

/// `bB + Bb = Id - T` over the bar window, with optional sign fault for
/// failure-path testing.
fn check_bar_homotopy(bar: &BarComplex<'_>, fault: bool) -> Result<(), Error> {
    let field = bar.field();
    for (p, w) in bar.complex().cells() {
        let b_out = bar.complex().diff(p, w);
        let b_in_next = bar.complex().diff(p + 1, w);
        let mut big_b = bar.connes_b(p, w);
        let mut big_b_lower = bar.connes_b(p - 1, w);
        if fault {
            big_b = big_b.neg();
            big_b_lower = big_b_lower.neg();
        }
        let lhs = b_in_next.mul(&big_b).add(&big_b_lower.mul(&b_out));
        let rhs = SparseMatrix::identity(field, bar.dim(p, w)).sub(&bar.operator_t(p, w));
        if lhs != rhs {
            return Err(Error::IdentityViolated {
                identity: "bB + Bb = Id - T",
                h: p,
                w,
            });
        }
    }
    Ok(())
}

fn transported_delta(
    ident: &Identification,
    da: &DeltaA,
    cell: Cell,
) -> Option<(Cell, SparseMatrix)> {
    let (p, v) = cell;
    let rho = ident.mats.get(&(p, v))?;
    let k_cell = (p + v, -v);
    let mat = da.mats.get(&k_cell)?;
    let rho_tgt = ident.mats.get(&(p - 1, v))?;
    let rho_tgt_inv = rho_tgt.inverse()?;
    Some(((p - 1, v), rho_tgt_inv.mul(&mat.mul(rho))))
}

/// Exhaustive comparison of ring structure constants through the
/// identification on the window.
#[allow(clippy::too_many_arguments)]
fn check_ring_transport(
    ctx: &Context,
    co: &DualCochain<'_>,
    dual_classes: &DualClasses,
    k_classes: &KClasses,
    ident: &Identification,
    window: &[Cell],
    hdeg: i64,
    w_max: i64,
) -> Result<(), Error> {
    let field = ctx.field;
    for &a in window {
        for &b in window {
            let prod_cell = (a.0 + b.0, a.1 + b.1);
            let k_prod = (prod_cell.0 + prod_cell.1, -prod_cell.1);
            if k_prod.0 < 0 || k_prod.0 > hdeg || k_prod.1 > w_max || -k_prod.1 > hdeg {
                continue;
            }
            if (a.0 + b.0) as usize > co.p_max() {
                continue;
            }
            if !ident.mats.contains_key(&prod_cell) {
                continue;
            }
            for i in 0..dual_classes.count(a.0, a.1) {
                for j in 0..dual_classes.count(b.0, b.1) {
                    let (cell_ab, ab) = dual_classes.cup_classes(co, (a, i), (b, j));
                    let Some(lhs) = ident.apply(cell_ab, &ab) else { continue };
                    let na = dual_classes.count(a.0, a.1);
                    let nb = dual_classes.count(b.0, b.1);
                    let ia = ident
                        .apply(a, &crate::kernel::unit_vector(field, na, i))
                        .ok_or(Error::ClassNotInImage {
                            map: "identification",
                            h: a.0,
                            w: a.1,
                        })?;
                    let ib = ident
                        .apply(b, &crate::kernel::unit_vector(field, nb, j))
                        .ok_or(Error::ClassNotInImage {
                            map: "identification",
                            h: b.0,
                            w: b.1,
                        })?;
                    let ka = ((a.0 + a.1), -a.1);
                    let kb = ((b.0 + b.1), -b.1);
                    let mut rhs =
                        vec![field.zero(); k_classes.count(ka.0 + kb.0, ka.1 + kb.1)];
                    for (s, csa) in ia.iter().enumerate() {
                        if csa.is_zero() {
                            continue;
                        }
                        for (t, csb) in ib.iter().enumerate() {
                            if csb.is_zero() {
                                continue;
                            }
                            let (_, prod) = k_classes.product_classes(ctx, (ka, s), (kb, t));
                            let c = csa * csb;
                            crate::kernel::vec_axpy(&mut rhs, &c, &prod);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::IdentityViolated {
                            identity: "cup structure constants agree",
                            h: a.0,
                            w: a.1,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
