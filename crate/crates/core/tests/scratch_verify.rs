use kodual::algebra::QuadraticPresentation;
use kodual::duality::{verify_main_theorem, VerifyOptions};
use kodual::kernel::Field;

#[test]
fn main_theorem_both_examples() {
    let f = Field::Q;
    for q in [1i64, 2] {
        let pres = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-q), [1, 0])]],
        )
        .unwrap();
        let report = verify_main_theorem(&pres, &VerifyOptions::default()).unwrap();
        for s in &report.stages {
            println!("q={q} [{}] {}{}", if s.pass { "pass" } else { "FAIL" }, s.name,
                s.detail.as_deref().map(|d| format!(" — {d}")).unwrap_or_default());
        }
        assert!(report.passed(), "q={q} verdict: {}", report.verdict);
    }
}
