//! Eigenvalue decomposition of exact matrices via the minimal polynomial.
//!
//! A square matrix is decomposed only when its minimal polynomial splits into
//! distinct linear factors over the ground field; otherwise
//! [`Error::NotSemisimpleOverField`] is raised so callers can report that the
//! eigenvalue machinery does not apply over this field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{unit_vector, RowSpace, SparseMatrix, Vector};
use super::poly::Poly;
use super::scalar::{Field, Scalar};
use crate::error::Error;

#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: Scalar,
    pub basis: Vec<Vector>,
}

/// Full eigenspace decomposition. Eigenvalues are sorted deterministically;
/// dimensions always sum to the matrix size on success.
pub fn eigenspace_decomposition(m: &SparseMatrix) -> Result<Vec<Eigenspace>, Error> {
    assert_eq!(m.rows(), m.cols(), "eigen decomposition needs a square matrix");
    let field = m.field();
    let n = m.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let minpoly = minimal_polynomial(m);
    // repeated roots <=> gcd(m, m') nonconstant
    let g = minpoly.gcd(&minpoly.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSemisimpleOverField(
            "minimal polynomial has a repeated root".into(),
        ));
    }
    let roots = distinct_roots(&minpoly)?;
    if roots.len() != minpoly.degree().unwrap_or(0) {
        return Err(Error::NotSemisimpleOverField(format!(
            "minimal polynomial has an irreducible factor of degree > 1 over {field}"
        )));
    }
    let mut spaces = Vec::new();
    let mut total = 0usize;
    for value in roots {
        let shifted = m.sub(&SparseMatrix::identity(field, n).scale(&value));
        let basis = shifted.kernel_basis();
        total += basis.len();
        spaces.push(Eigenspace { value, basis });
    }
    assert_eq!(
        total, n,
        "eigenspace dimensions must sum to the matrix size"
    );
    spaces.sort_by(|a, b| a.value.sort_key().cmp(&b.value.sort_key()));
    Ok(spaces)
}

/// Minimal polynomial by accumulating Krylov dependencies of the standard
/// basis vectors (lcm of the per-vector annihilators).
pub fn minimal_polynomial(m: &SparseMatrix) -> Poly {
    let field = m.field();
    let n = m.rows();
    let mut acc = Poly::one(field);
    for i in 0..n {
        let local = krylov_annihilator(m, &unit_vector(field, n, i));
        let g = acc.gcd(&local);
        let (q, r) = local.div_rem(&g);
        debug_assert!(r.is_zero());
        acc = acc.mul(&q);
        if acc.degree() == Some(n) {
            break;
        }
    }
    acc.monic()
}

fn krylov_annihilator(m: &SparseMatrix, v: &[Scalar]) -> Poly {
    let field = m.field();
    let mut rs = RowSpace::new(field, v.len(), true);
    let mut w = v.to_vec();
    loop {
        match rs.insert(&w) {
            None => w = m.apply(&w),
            Some(mut dep) => {
                // w = sum dep[k] * M^k v, so annihilator is x^len - sum dep[k] x^k
                let deg = dep.len();
                dep.iter_mut().for_each(|c| *c = -c.clone());
                dep.push(field.one());
                let _ = deg;
                return Poly::new(field, dep);
            }
        }
    }
}

/// Roots of a squarefree polynomial that lie in the ground field.
fn distinct_roots(p: &Poly) -> Result<Vec<Scalar>, Error> {
    match p.field {
        Field::Q => Ok(rational_roots(p)),
        Field::Fp(q) => fp_roots(p, q),
    }
}

/// Rational roots via the integer root test on the primitive integer model.
/// Divisor enumeration factors the edge coefficients by trial division; the
/// search is complete whenever those coefficients factor below 10^6, which
/// covers the scales this engine targets.
fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let mut roots = Vec::new();
    let mut cur = p.clone();
    loop {
        let Some(d) = cur.degree() else { break };
        if d == 0 {
            break;
        }
        if cur.coeffs[0].is_zero() {
            roots.push(Field::Q.zero());
            let x = Poly::x(Field::Q);
            cur = cur.div_rem(&x).0;
            continue;
        }
        if d == 1 {
            // a + b x = 0
            let root = -(cur.coeffs[0].clone()
                * cur.coeffs[1].inv().expect("nonzero leading"));
            roots.push(root);
            break;
        }
        let (a0, an) = integer_edge_coefficients(&cur);
        let nums = bounded_divisors(&a0);
        let dens = bounded_divisors(&an);
        let mut found = None;
        'search: for num in &nums {
            for den in &dens {
                for sign in [1i64, -1] {
                    let cand = Scalar::Q(BigRational::new(
                        num * BigInt::from(sign),
                        den.clone(),
                    ));
                    if cur.eval(&cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            None => break,
            Some(r) => {
                let lin = Poly::new(Field::Q, vec![-r.clone(), Field::Q.one()]);
                cur = cur.div_rem(&lin).0;
                roots.push(r);
            }
        }
    }
    roots
}

/// Primitive-integer numerator of trailing and leading coefficients.
fn integer_edge_coefficients(p: &Poly) -> (BigInt, BigInt) {
    let mut lcm = BigInt::one();
    for c in &p.coeffs {
        if let Scalar::Q(r) = c {
            lcm = lcm.lcm(r.denom());
        }
    }
    let scaled: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Q(r) => (r * BigRational::from_integer(lcm.clone()))
                .to_integer(),
            _ => unreachable!(),
        })
        .collect();
    (scaled[0].abs(), scaled.last().unwrap().abs())
}

fn bounded_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.abs();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= rest && d <= bound {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    let mut divisors = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for v in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(v * &pk);
                pk *= &p;
                if next.len() > 20_000 {
                    return next;
                }
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors.dedup();
    divisors
}

fn fp_roots(p: &Poly, q: u64) -> Result<Vec<Scalar>, Error> {
    let field = p.field;
    // product of the linear factors of p: gcd(x^q - x, p)
    let xq = p.x_pow_mod(q);
    let xq_minus_x = xq.add(&Poly::new(
        field,
        vec![field.zero(), field.from_i64(-1)],
    ));
    let linear_part = p.gcd(&xq_minus_x);
    if linear_part.degree() != p.degree() {
        return Err(Error::NotSemisimpleOverField(format!(
            "minimal polynomial does not split into linear factors over F{q}"
        )));
    }
    if q <= 1 << 20 {
        let mut roots = Vec::new();
        for v in 0..q {
            let cand = Scalar::Fp { v, p: q };
            if p.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        return Ok(roots);
    }
    // Equal-degree splitting into linear factors, derandomized with a fixed
    // iteration sequence so results are reproducible.
    let mut stack = vec![linear_part];
    let mut roots = Vec::new();
    let mut seed = 0x9E3779B97F4A7C15u64;
    while let Some(f) = stack.pop() {
        match f.degree() {
            None | Some(0) => {}
            Some(1) => {
                let r = -(f.coeffs[0].clone() * f.coeffs[1].inv().unwrap());
                roots.push(r);
            }
            Some(_) => {
                // try gcd(f, (x+c)^((q-1)/2) - 1) for successive c
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                let c = seed % q;
                let shift = Poly::new(field, vec![Scalar::Fp { v: c, p: q }, field.one()]);
                let pow = poly_pow_mod(&shift, (q - 1) / 2, &f);
                let split = f.gcd(&pow.add(&Poly::new(field, vec![field.from_i64(-1)])));
                let deg = split.degree().unwrap_or(0);
                if deg == 0 || Some(deg) == f.degree() {
                    stack.push(f); // retry with next c
                } else {
                    let (quo, _) = f.div_rem(&split);
                    stack.push(split);
                    stack.push(quo);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(roots)
}

fn poly_pow_mod(base: &Poly, mut e: u64, modulus: &Poly) -> Poly {
    let field = base.field;
    let mut result = Poly::one(field);
    let mut b = base.div_rem(modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b).div_rem(modulus).1;
        }
        b = b.mul(&b).div_rem(modulus).1;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_single_eigenvalue() {
        let m = SparseMatrix::identity(Field::Q, 3);
        let es = eigenspace_decomposition(&m).unwrap();
        assert_eq!(es.len(), 1);
        assert!(es[0].value.is_one());
        assert_eq!(es[0].basis.len(), 3);
    }

    #[test]
    fn diagonal_two_and_half() {
        let f = Field::Q;
        let m = SparseMatrix::from_dense(
            f,
            vec![
                vec![f.from_i64(2), f.zero()],
                vec![f.zero(), f.from_ratio(1, 2).unwrap()],
            ],
        );
        let es = eigenspace_decomposition(&m).unwrap();
        let values: Vec<String> = es.iter().map(|e| e.value.literal()).collect();
        assert_eq!(values, vec!["1/2", "2"]);
        assert!(es.iter().all(|e| e.basis.len() == 1));
    }

    #[test]
    fn jordan_block_rejected() {
        let f = Field::Q;
        let m = SparseMatrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert!(matches!(
            eigenspace_decomposition(&m),
            Err(Error::NotSemisimpleOverField(_))
        ));
    }

    #[test]
    fn rotation_has_no_rational_eigenvalues() {
        let f = Field::Q;
        let m = SparseMatrix::from_i64(f, &[&[0, -1], &[1, 0]]);
        assert!(matches!(
            eigenspace_decomposition(&m),
            Err(Error::NotSemisimpleOverField(_))
        ));
    }

    #[test]
    fn fp_diagonalizable() {
        let f = Field::Fp(1009);
        let m = SparseMatrix::from_dense(
            f,
            vec![
                vec![f.from_i64(2), f.zero()],
                vec![f.zero(), f.from_i64(2).inv().unwrap()],
            ],
        );
        let es = eigenspace_decomposition(&m).unwrap();
        assert_eq!(es.len(), 2);
    }

    #[test]
    fn minimal_polynomial_of_projection() {
        let f = Field::Q;
        let m = SparseMatrix::from_i64(f, &[&[1, 0], &[0, 0]]);
        let mp = minimal_polynomial(&m);
        // x(x-1)
        assert_eq!(mp.degree(), Some(2));
        assert!(mp.eval(&f.zero()).is_zero());
        assert!(mp.eval(&f.one()).is_zero());
    }
}
