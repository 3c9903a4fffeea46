use kodual::algebra::QuadraticPresentation;
use kodual::calculus::{checks, DualClasses};
use kodual::duality::Context;
use kodual::hochschild::{CoalgebraChains, DualBar, DualCochain};
use kodual::kernel::{Cell, Field};

#[test]
fn dual_calculus_identities() {
    let f = Field::Q;
    let pres = QuadraticPresentation::new(
        f,
        vec!["x".into(), "y".into()],
        vec![vec![(f.one(), [0, 1]), (f.from_i64(-1), [1, 0])]],
    )
    .unwrap();
    let ctx = Context::new(&pres, 6).unwrap();
    let n = ctx.top_degree();
    let co = DualCochain::build(&ctx.dual, &ctx.coalg, n, 5).unwrap();
    let bar = DualBar::build(&ctx.dual, None, n, 5).unwrap();
    let chains = CoalgebraChains::build(&ctx.dual, &ctx.coalg, None, n, 5, n + 5 * n).unwrap();
    let chain_cells: Vec<Cell> = chains.complex().cells().collect();
    let chain_homology = kodual::kernel::HomologyBasis {
        cells: kodual::par::map_cells(chain_cells, |&(p, w)| chains.complex().homology_at(p, w)),
    };
    let dual_cells: Vec<Cell> = co
        .complex().cells()
        .filter(|&(p, v)| p <= 5 && p + v >= -1 && p + v <= 4)
        .collect();
    let classes = DualClasses::over(&co, &dual_cells);
    let window: Vec<Cell> = co
        .complex().cells()
        .filter(|&(p, v)| p <= 2 && (p + v) >= 0 && (p + v) <= 2 && (-v) <= 2)
        .collect();
    let reports = checks::dual_calculus_reports(
        &ctx, &co, &bar, &chains, &chain_homology, &classes, &window, 3,
    );
    for r in &reports {
        println!("[{}] {} {:?}", if r.pass { "pass" } else { "FAIL" }, r.name, r.witness);
    }
    assert!(reports.iter().all(|r| r.pass));
}
