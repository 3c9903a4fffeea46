//! Executable checkers for the Gerstenhaber, calculus and
//! Batalin-Vilkovisky axioms on homology classes. Sampling is exhaustive
//! over basis classes within the supplied window, so reports are
//! deterministic.

use std::collections::BTreeMap;

use crate::duality::Context;
use crate::error::Error;
use crate::hochschild::DualCochain;
use crate::kernel::{Cell, Scalar, SparseMatrix, Vector};

use super::classes::DualClasses;
use super::ops::{self, Cochain};

/// Outcome of one axiom over a window.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

fn report(name: &'static str, witness: Option<String>) -> AxiomReport {
    AxiomReport {
        name,
        pass: witness.is_none(),
        witness,
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Graded commutativity of the cup product on classes.
pub fn check_graded_commutativity(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> AxiomReport {
    for &a in window {
        for &b in window {
            if (a.0 + b.0) as usize > p_guard {
                continue;
            }
            for i in 0..classes.count(a.0, a.1) {
                for j in 0..classes.count(b.0, b.1) {
                    let (_, ab) = classes.cup_classes(co, (a, i), (b, j));
                    let (_, ba) = classes.cup_classes(co, (b, j), (a, i));
                    let s = sign((a.0 + a.1) * (b.0 + b.1));
                    let expect: Vector = if s < 0 {
                        ba.iter().map(|x| -(x.clone())).collect()
                    } else {
                        ba
                    };
                    if ab != expect {
                        return report(
                            "cup graded commutativity",
                            Some(format!("classes ({a:?},{i}) x ({b:?},{j})")),
                        );
                    }
                }
            }
        }
    }
    report("cup graded commutativity", None)
}

/// Graded antisymmetry of the bracket on classes.
pub fn check_bracket_antisymmetry(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> AxiomReport {
    for &a in window {
        for &b in window {
            if (a.0 + b.0) as usize > p_guard {
                continue;
            }
            for i in 0..classes.count(a.0, a.1) {
                for j in 0..classes.count(b.0, b.1) {
                    let (_, ab) = classes.bracket_classes(co, (a, i), (b, j));
                    let (_, ba) = classes.bracket_classes(co, (b, j), (a, i));
                    let s = sign((a.0 + a.1 + 1) * (b.0 + b.1 + 1) + 1);
                    let expect: Vector = if s < 0 {
                        ba.iter().map(|x| -(x.clone())).collect()
                    } else {
                        ba
                    };
                    if ab != expect {
                        return report(
                            "bracket graded antisymmetry",
                            Some(format!("classes ({a:?},{i}) x ({b:?},{j})")),
                        );
                    }
                }
            }
        }
    }
    report("bracket graded antisymmetry", None)
}

/// Graded Jacobi identity on classes:
/// {a,{b,c}} = {{a,b},c} + (-1)^{(|a|-1)(|b|-1)} {b,{a,c}}.
pub fn check_jacobi(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> AxiomReport {
    for &a in window {
        for &b in window {
            for &c in window {
                if (a.0 + b.0 + c.0) as usize > p_guard {
                    continue;
                }
                for i in 0..classes.count(a.0, a.1) {
                    for j in 0..classes.count(b.0, b.1) {
                        for k in 0..classes.count(c.0, c.1) {
                            let fa = classes.rep(co, a.0, a.1, i);
                            let fb = classes.rep(co, b.0, b.1, j);
                            let fc = classes.rep(co, c.0, c.1, k);
                            let lhs = ops::bracket(co, &fa, &ops::bracket(co, &fb, &fc));
                            let t1 = ops::bracket(co, &ops::bracket(co, &fa, &fb), &fc);
                            let mut t2 =
                                ops::bracket(co, &fb, &ops::bracket(co, &fa, &fc));
                            let s = sign((a.0 + a.1 + 1) * (b.0 + b.1 + 1));
                            if s < 0 {
                                t2 = ops::scale_cochain(
                                    &co.field().from_i64(-1),
                                    &t2,
                                );
                            }
                            let rhs = ops::add_cochains(&t1, &t2);
                            let lhs_c = classes.class_of(&lhs);
                            let rhs_c = classes.class_of(&rhs);
                            if lhs_c != rhs_c {
                                return report(
                                    "bracket Jacobi",
                                    Some(format!(
                                        "classes ({a:?},{i}), ({b:?},{j}), ({c:?},{k})"
                                    )),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    report("bracket Jacobi", None)
}

/// Leibniz compatibility of the bracket over the cup product on classes:
/// {a, b∪c} = {a,b}∪c + (-1)^{(|a|-1)|b|} b∪{a,c}.
pub fn check_bracket_leibniz(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> AxiomReport {
    for &a in window {
        for &b in window {
            for &c in window {
                if (a.0 + b.0 + c.0) as usize > p_guard {
                    continue;
                }
                for i in 0..classes.count(a.0, a.1) {
                    for j in 0..classes.count(b.0, b.1) {
                        for k in 0..classes.count(c.0, c.1) {
                            let fa = classes.rep(co, a.0, a.1, i);
                            let fb = classes.rep(co, b.0, b.1, j);
                            let fc = classes.rep(co, c.0, c.1, k);
                            let lhs = ops::bracket(co, &fa, &ops::cup(co, &fb, &fc));
                            let t1 = ops::cup(co, &ops::bracket(co, &fa, &fb), &fc);
                            let mut t2 = ops::cup(co, &fb, &ops::bracket(co, &fa, &fc));
                            let s = sign((a.0 + a.1 + 1) * (b.0 + b.1));
                            if s < 0 {
                                t2 = ops::scale_cochain(&co.field().from_i64(-1), &t2);
                            }
                            let rhs = ops::add_cochains(&t1, &t2);
                            if classes.class_of(&lhs) != classes.class_of(&rhs) {
                                return report(
                                    "bracket Leibniz over cup",
                                    Some(format!(
                                        "classes ({a:?},{i}), ({b:?},{j}), ({c:?},{k})"
                                    )),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    report("bracket Leibniz over cup", None)
}

/// Seven-term Batalin-Vilkovisky identity on classes, for a Δ given as
/// matrices on the class bases:
/// {a,b} = (-1)^{|a|+1} (Δ(a∪b) - Δ(a)∪b - (-1)^{|a|} a∪Δ(b)).
///
/// `delta(cell)` returns the matrix of Δ from the classes at `cell` to the
/// classes at the cell one model degree lower (same arity convention as the
/// caller's pipeline).
pub fn check_bv(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
    delta: &dyn Fn(Cell) -> Option<(Cell, SparseMatrix)>,
) -> AxiomReport {
    let field = co.field();
    for &a in window {
        for &b in window {
            if (a.0 + b.0) as usize > p_guard {
                continue;
            }
            for i in 0..classes.count(a.0, a.1) {
                for j in 0..classes.count(b.0, b.1) {
                    let (cell_ab, ab) = classes.cup_classes(co, (a, i), (b, j));
                    let Some((cell_dab, d_ab_mat)) = delta(cell_ab) else {
                        continue;
                    };
                    let d_ab = d_ab_mat.apply(&ab);

                    let na = classes.count(a.0, a.1);
                    let nb = classes.count(b.0, b.1);
                    let ea = crate::kernel::unit_vector(field, na, i);
                    let eb = crate::kernel::unit_vector(field, nb, j);
                    let Some((cell_da, d_a_mat)) = delta(a) else { continue };
                    let Some((cell_db, d_b_mat)) = delta(b) else { continue };
                    let da = d_a_mat.apply(&ea);
                    let db = d_b_mat.apply(&eb);

                    // Δ(a)∪b and a∪Δ(b) in class coordinates
                    let da_cup_b =
                        bilinear_cup(co, classes, cell_da, &da, b, &eb, cell_dab);
                    let a_cup_db =
                        bilinear_cup(co, classes, a, &ea, cell_db, &db, cell_dab);

                    let (bcell, br) = classes.bracket_classes(co, (a, i), (b, j));
                    debug_assert_eq!(bcell, cell_dab);

                    // rhs = (-1)^{|a|+1}(Δ(a∪b) - Δa∪b - (-1)^{|a|} a∪Δb)
                    let ma = a.0 + a.1;
                    let mut rhs = d_ab.clone();
                    rhs = crate::kernel::vec_sub(&rhs, &da_cup_b);
                    let t: Vector = if sign(ma) < 0 {
                        a_cup_db.iter().map(|x| -(x.clone())).collect()
                    } else {
                        a_cup_db.clone()
                    };
                    rhs = crate::kernel::vec_sub(&rhs, &t);
                    if sign(ma + 1) < 0 {
                        rhs = rhs.iter().map(|x| -(x.clone())).collect();
                    }
                    if br != rhs {
                        return report(
                            "seven-term identity",
                            Some(format!("classes ({a:?},{i}) x ({b:?},{j})")),
                        );
                    }
                }
            }
        }
    }
    report("seven-term identity", None)
}

/// Bilinear extension of the class cup product.
fn bilinear_cup(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    ca: Cell,
    a: &[Scalar],
    cb: Cell,
    b: &[Scalar],
    target: Cell,
) -> Vector {
    let field = co.field();
    let tdim = classes.count(target.0, target.1);
    let mut acc = vec![field.zero(); tdim];
    for (i, sa) in a.iter().enumerate() {
        if sa.is_zero() {
            continue;
        }
        for (j, sb) in b.iter().enumerate() {
            if sb.is_zero() {
                continue;
            }
            let (tc, prod) = classes.cup_classes(co, (ca, i), (cb, j));
            debug_assert_eq!(tc, target);
            let c = sa * sb;
            crate::kernel::vec_axpy(&mut acc, &c, &prod);
        }
    }
    acc
}

/// Well-definedness probe: products recomputed with representatives shifted
/// by boundaries give the same classes.
pub fn check_boundary_invariance(
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> AxiomReport {
    let field = co.field();
    for &a in window {
        for &b in window {
            if (a.0 + b.0) as usize > p_guard || a.0 == 0 {
                continue;
            }
            // shift the first representative by the image of a basis chain
            let below = co.dim(a.0 - 1, a.1);
            if below == 0 {
                continue;
            }
            for i in 0..classes.count(a.0, a.1).min(1) {
                for j in 0..classes.count(b.0, b.1).min(1) {
                    let fa = classes.rep(co, a.0, a.1, i);
                    let fb = classes.rep(co, b.0, b.1, j);
                    for probe in [0usize, below / 2] {
                        let lower = Cochain {
                            p: a.0 - 1,
                            v: a.1,
                            coords: crate::kernel::unit_vector(field, below, probe),
                        };
                        let shifted = ops::add_cochains(
                            &fa,
                            &ops::differential(co, &lower),
                        );
                        let p1 = ops::cup(co, &fa, &fb);
                        let p2 = ops::cup(co, &shifted, &fb);
                        if classes.class_of(&p1) != classes.class_of(&p2) {
                            return report(
                                "boundary invariance of products",
                                Some(format!("cell {a:?} x {b:?}")),
                            );
                        }
                    }
                }
            }
        }
    }
    report("boundary invariance of products", None)
}

/// Bundle used by the reporting layer.
pub fn gerstenhaber_reports(
    _ctx: &Context,
    co: &DualCochain<'_>,
    classes: &DualClasses,
    window: &[Cell],
    p_guard: usize,
) -> Result<Vec<AxiomReport>, Error> {
    Ok(vec![
        check_graded_commutativity(co, classes, window, p_guard),
        check_bracket_antisymmetry(co, classes, window, p_guard),
        check_jacobi(co, classes, window, p_guard),
        check_bracket_leibniz(co, classes, window, p_guard),
        check_boundary_invariance(co, classes, window, p_guard),
    ])
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
    fn gerstenhaber_axioms_hold_on_both_examples() {
        for q in [1, 2] {
            let ctx = ctx_for(q);
            let co = DualCochain::build(&ctx.dual, &ctx.coalg, 2, 6).unwrap();
            let window: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| (p + v) >= 0 && (p + v) <= 2 && (-v) <= 2 && (-v) >= -1 && p <= 2)
                .collect();
            let all_cells: Vec<Cell> = co
                .complex()
                .cells()
                .filter(|&(p, v)| p <= 6 && (p + v) <= 4 && (p + v) >= -1)
                .collect();
            let classes = DualClasses::over(&co, &all_cells);
            let reports =
                gerstenhaber_reports(&ctx, &co, &classes, &window, 5).unwrap();
            for r in &reports {
                assert!(r.pass, "q={q}: {} failed at {:?}", r.name, r.witness);
            }
        }
    }
}

/// The dual-calculus identities: module axiom for the dual cap, bracket
/// compatibility of the Lie derivative, and the mixed Leibniz rule, all on
/// homology classes of the untwisted coalgebra chain complex.
pub fn dual_calculus_reports(
    ctx: &Context,
    co: &DualCochain<'_>,
    bar: &crate::hochschild::DualBar<'_>,
    chains: &crate::hochschild::CoalgebraChains<'_>,
    chain_homology: &crate::kernel::HomologyBasis,
    classes: &DualClasses,
    window: &[Cell],
    deg_max: i64,
) -> Vec<AxiomReport> {
    use super::cap::{cap_star, lie_star, CellMap};
    let field = ctx.field;
    let cap_of = |f: &Cochain| -> CellMap {
        cap_star(chains, bar, co, &ctx.dual, &ctx.coalg, f)
    };
    // apply a cell map to a class representative at a given chain cell
    let act = |map: &CellMap, cell: Cell, vecs: &[(Cell, Vector)]| -> Vec<(Cell, Vector)> {
        let _ = cell;
        vecs.iter()
            .filter_map(|(c, v)| {
                let (tgt, m) = map.get(c)?;
                if m.cols() != v.len() {
                    return None;
                }
                Some((*tgt, m.apply(v)))
            })
            .collect()
    };
    let class_of = |items: &[(Cell, Vector)]| -> BTreeMap<Cell, Vector> {
        let mut out: BTreeMap<Cell, Vector> = BTreeMap::new();
        for (c, v) in items {
            if let Some(h) = chain_homology.cell(c.0, c.1) {
                let cls = h.class_map.apply(v);
                let entry = out.entry(*c).or_insert_with(|| {
                    vec![field.zero(); cls.len()]
                });
                *entry = crate::kernel::vec_add(entry, &cls);
            }
        }
        out.retain(|_, v| !crate::kernel::vec_is_zero(v));
        out
    };
    let mut reports = Vec::new();

    // sample chains classes with enough margin that every composite in the
    // identities stays inside the built window
    let p_cap = chains.p_max() as i64;
    let w_cap = chains.w_max() as i64;
    let chain_cells: Vec<Cell> = chains
        .complex()
        .cells()
        .filter(|&(p, w)| p <= deg_max && w <= 2 * deg_max && chains.is_interior(p, w))
        .collect();
    let mut module_witness = None;
    let mut lie_witness = None;
    let mut mixed_witness = None;
    'outer: for &a in window {
        for &b in window {
            if (a.0 + b.0) as usize + 1 > co.p_max() || a.0 + a.1 > deg_max || b.0 + b.1 > deg_max
            {
                continue;
            }
            for i in 0..classes.count(a.0, a.1) {
                for j in 0..classes.count(b.0, b.1) {
                    let f = classes.rep(co, a.0, a.1, i);
                    let g = classes.rep(co, b.0, b.1, j);
                    let fg = super::ops::cup(co, &f, &g);
                    let br = super::ops::bracket(co, &f, &g);
                    let cap_f = cap_of(&f);
                    let cap_g = cap_of(&g);
                    let cap_fg = cap_of(&fg);
                    let cap_br = cap_of(&br);
                    let lie_f = lie_star(chains, &cap_f, &f);
                    let lie_g = lie_star(chains, &cap_g, &g);
                    let lie_br = lie_star(chains, &cap_br, &br);
                    let mf = f.m_degree().rem_euclid(2);
                    let mg = g.m_degree().rem_euclid(2);
                    for &cc in &chain_cells {
                        // margins: every composite must stay inside the window
                        let arity_budget = f.p + g.p + 1;
                        let w_budget = -(f.v + g.v) + 1;
                        if cc.0 + arity_budget > p_cap || cc.1 + w_budget.max(0) > w_cap {
                            continue;
                        }
                        let Some(h) = chain_homology.cell(cc.0, cc.1) else { continue };
                        for r in 0..h.count {
                            let alpha = vec![(cc, h.reps[r].clone())];
                            // (1) module axiom: (f∪g) ∩* α = g ∩* (f ∩* α),
                            // the transpose of the strict composition of caps
                            if module_witness.is_none() {
                                let lhs = class_of(&act(&cap_fg, cc, &alpha));
                                let inner = act(&cap_f, cc, &alpha);
                                let rhs_items = act(&cap_g, cc, &inner);
                                let rhs = class_of(&rhs_items);
                                if lhs != rhs {
                                    module_witness =
                                        Some(format!("({a:?},{i}) x ({b:?},{j}) on {cc:?}#{r}"));
                                }
                            }
                            // (2) L_{{f,g}} = [L_f, L_g] on classes
                            if lie_witness.is_none() {
                                let lhs = class_of(&act(&lie_br, cc, &alpha));
                                let t1 = act(&lie_f, cc, &act(&lie_g, cc, &alpha));
                                let mut t2 = act(&lie_g, cc, &act(&lie_f, cc, &alpha));
                                let sgn = ((mf + 1) * (mg + 1)) % 2 == 1;
                                for (_, v) in t2.iter_mut() {
                                    *v = v
                                        .iter()
                                        .map(|s| if sgn { s.clone() } else { -(s.clone()) })
                                        .collect();
                                }
                                let mut items = t1;
                                items.extend(t2);
                                let rhs = class_of(&items);
                                if lhs != rhs {
                                    lie_witness =
                                        Some(format!("({a:?},{i}) x ({b:?},{j}) on {cc:?}#{r}"));
                                }
                            }
                            // (3) mixed Leibniz:
                            // (-1)^{‖f‖+1} {f,g} ∩* α = L_f(g∩*α) - (-1)^{‖g‖(‖f‖+1)} g∩*(L_f α)
                            if mixed_witness.is_none() {
                                let mut lhs_items = act(&cap_br, cc, &alpha);
                                if (mf + 1) % 2 == 1 {
                                    for (_, v) in lhs_items.iter_mut() {
                                        *v = v.iter().map(|s| -(s.clone())).collect();
                                    }
                                }
                                let lhs = class_of(&lhs_items);
                                let t1 = act(&lie_f, cc, &act(&cap_g, cc, &alpha));
                                let mut t2 = act(&cap_g, cc, &act(&lie_f, cc, &alpha));
                                let sgn = (mg * (mf + 1)) % 2 == 1;
                                for (_, v) in t2.iter_mut() {
                                    *v = v
                                        .iter()
                                        .map(|s| if sgn { s.clone() } else { -(s.clone()) })
                                        .collect();
                                }
                                let mut items = t1;
                                items.extend(t2);
                                let rhs = class_of(&items);
                                if lhs != rhs {
                                    mixed_witness =
                                        Some(format!("({a:?},{i}) x ({b:?},{j}) on {cc:?}#{r}"));
                                }
                            }
                        }
                    }
                    if module_witness.is_some()
                        && lie_witness.is_some()
                        && mixed_witness.is_some()
                    {
                        break 'outer;
                    }
                }
            }
        }
    }
    let _ = field;
    reports.push(report("dual cap module axiom", module_witness));
    reports.push(report("dual Lie derivative bracket compatibility", lie_witness));
    reports.push(report("dual mixed Leibniz rule", mixed_witness));
    reports
}
