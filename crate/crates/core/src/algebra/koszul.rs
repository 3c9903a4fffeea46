//! The Koszul complex of a quadratic algebra and the Koszulity certificate.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::kernel::{BigradedComplex, Direction, SparseMatrix};
use crate::par;

use super::coalgebra::DualCoalgebra;
use super::graded::GradedAlgebra;

/// Builds the weightwise Koszul complex `... -> A ⊗ C_m -> A ⊗ C_{m-1} -> ...`
/// up to total weight `w_max`, optionally augmented by `A -> k` in degree -1.
///
/// The differential multiplies the algebra leg by a generator on the right
/// while contracting the leading coalgebra slot with the dual generator; this
/// is the pairing under which the square vanishes because leading windows of
/// the coalgebra lie in the relation space.
pub fn koszul_complex(
    alg: &GradedAlgebra,
    coalg: &DualCoalgebra,
    w_max: usize,
    augmented: bool,
) -> Result<BigradedComplex, Error> {
    let field = alg.field();
    let n = alg.num_generators();
    assert!(alg.bound() >= w_max && coalg.bound() >= w_max, "expand further");

    let mut terms: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    let mut diffs: BTreeMap<(i64, i64), SparseMatrix> = BTreeMap::new();

    for w in 0..=w_max {
        for m in 0..=w {
            let u = w - m; // algebra-leg degree
            let dim = alg.dim(u as i64) * coalg.dim(m as i64);
            if dim == 0 {
                continue;
            }
            let labels: Vec<String> = (0..dim).map(|i| format!("k{m}_{w}_{i}")).collect();
            terms.insert((m as i64, w as i64), labels);
        }
        if augmented && w == 0 {
            terms.insert((-1, 0), vec!["1".into()]);
        }
    }

    for (&(m, w), _) in terms.clone().iter() {
        if m == -1 {
            continue;
        }
        let m = m as usize;
        let w = w as usize;
        let u = w - m;
        if m == 0 {
            if augmented && w == 0 {
                diffs.insert((0, 0), SparseMatrix::identity(field, 1));
            }
            continue;
        }
        let tgt_dim = alg.dim((u + 1) as i64) * coalg.dim((m - 1) as i64);
        if tgt_dim == 0 {
            continue;
        }
        let mut d = SparseMatrix::zero(
            field,
            tgt_dim,
            alg.dim(u as i64) * coalg.dim(m as i64),
        );
        for g in 0..n {
            let gen = crate::kernel::unit_vector(field, n, g);
            let rm = alg.right_mul_matrix(1, &gen, u);
            let cf = coalg.contract_first(m, g);
            d = d.add(&rm.kron(&cf));
        }
        diffs.insert((m as i64, w as i64), d);
    }
    BigradedComplex::new(field, Direction::Chain, terms, diffs)
}

/// Per-weight exactness verdicts together with the Hilbert-series witness.
#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub bound: usize,
    /// weight -> exact?
    pub exact_at: BTreeMap<usize, bool>,
    pub hilbert_witness: bool,
    pub algebra_dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
}

impl KoszulReport {
    pub fn is_koszul_up_to_bound(&self) -> bool {
        self.hilbert_witness && self.exact_at.values().all(|&b| b)
    }
}

/// Checks exactness of the augmented Koszul complex at every weight up to the
/// bound, and the necessary Hilbert-series condition
/// `H_A(t) * H_{A!}(-t) = 1 + O(t^{bound+1})`.
pub fn check_koszul(
    alg: &GradedAlgebra,
    coalg: &DualCoalgebra,
    bound: usize,
) -> Result<KoszulReport, Error> {
    let cx = koszul_complex(alg, coalg, bound, true)?;
    let weights: Vec<usize> = (0..=bound).collect();
    let exact_at = par::map_cells(weights, |&w| {
        (-1..=(w as i64)).all(|m| cx.homology_at(m, w as i64).count == 0)
    });

    let a_dims = alg.dims();
    let d_dims = coalg.dims();
    let mut hilbert_witness = true;
    for k in 0..=bound {
        let mut c = alg.field().zero();
        for j in 0..=k {
            let i = k - j;
            let term = alg.field().from_i64(a_dims[i] as i64)
                * alg.field().from_i64(d_dims[j] as i64);
            if j % 2 == 0 {
                c += term;
            } else {
                c -= term;
            }
        }
        let expected = if k == 0 {
            alg.field().one()
        } else {
            alg.field().zero()
        };
        if c != expected {
            hilbert_witness = false;
        }
    }

    Ok(KoszulReport {
        bound,
        exact_at,
        hilbert_witness,
        algebra_dims: a_dims,
        dual_dims: d_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coalgebra::koszul_dual_coalgebra;
    use crate::algebra::graded::expand;
    use crate::algebra::presentation::QuadraticPresentation;
    use crate::kernel::Field;

    fn setup(rel_coeff: i64) -> (GradedAlgebra, DualCoalgebra) {
        let f = Field::Q;
        let p = QuadraticPresentation::new(
            f,
            vec!["x".into(), "y".into()],
            vec![vec![(f.one(), [0, 1]), (f.from_i64(-rel_coeff), [1, 0])]],
        )
        .unwrap();
        (expand(&p, 6).unwrap(), koszul_dual_coalgebra(&p, 6).unwrap())
    }

    #[test]
    fn polynomial_weight_two_euler_ranks() {
        let (a, c) = setup(1);
        let cx = koszul_complex(&a, &c, 2, false).unwrap();
        assert_eq!(cx.dim(0, 2), 3); // A_2
        assert_eq!(cx.dim(1, 2), 4); // A_1 ⊗ C_1
        assert_eq!(cx.dim(2, 2), 1); // A_0 ⊗ C_2
        // exact in the middle
        assert_eq!(cx.homology_at(1, 2).count, 0);
    }

    #[test]
    fn weight_zero_unaugmented_homology_is_ground_field() {
        let (a, c) = setup(1);
        let cx = koszul_complex(&a, &c, 2, false).unwrap();
        assert_eq!(cx.homology_at(0, 0).count, 1);
    }

    #[test]
    fn free_line_weight_one_is_isomorphism() {
        let f = Field::Q;
        let p = QuadraticPresentation::new(f, vec!["x".into()], vec![]).unwrap();
        let a = expand(&p, 3).unwrap();
        let c = koszul_dual_coalgebra(&p, 3).unwrap();
        let cx = koszul_complex(&a, &c, 2, true).unwrap();
        // weight 1: A_1 <- A_0 ⊗ C_1 is 1x1 invertible
        assert_eq!(cx.dim(0, 1), 1);
        assert_eq!(cx.dim(1, 1), 1);
        assert_eq!(cx.homology_at(0, 1).count, 0);
        assert_eq!(cx.homology_at(1, 1).count, 0);
    }

    #[test]
    fn polynomial_and_quantum_plane_are_koszul_to_six() {
        for q in [1, 2] {
            let (a, c) = setup(q);
            let report = check_koszul(&a, &c, 6).unwrap();
            assert!(report.is_koszul_up_to_bound(), "q = {q}: {report:?}");
        }
    }

    #[test]
    fn hilbert_witness_for_polynomial_algebra() {
        let (a, c) = setup(1);
        let report = check_koszul(&a, &c, 6).unwrap();
        assert!(report.hilbert_witness);
        assert_eq!(report.algebra_dims, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(report.dual_dims[..3], [1, 2, 1]);
    }
}
