//! Dense univariate polynomials over a [`Field`], just enough for minimal
//! polynomials and root finding: division, gcd, derivative, modular powers.

use super::scalar::{Field, Scalar};

/// Coefficients low-to-high with no trailing zeros (zero poly = empty vec).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: Field) -> Self {
        Poly {
            field,
            coeffs: vec![field.one()],
        }
    }

    pub fn x(field: Field) -> Self {
        Poly {
            field,
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Poly::new(
                    self.field,
                    self.coeffs.iter().map(|c| c * &inv).collect(),
                )
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.from_i64(i as i64) * c.clone())
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        Poly::new(self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs =
            vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(self.field, coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero");
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quo = vec![self.field.zero(); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() * &lead_inv;
            if !f.is_zero() {
                quo[k] = f.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = rem[k + i].clone() - f.clone() * c.clone();
                    rem[k + i] = v;
                }
            }
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(self.field, quo), Poly::new(self.field, rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `x^e mod self` by binary exponentiation; `self` must be nonconstant.
    pub fn x_pow_mod(&self, e: u64) -> Self {
        let field = self.field;
        let mut result = Poly::one(field);
        let mut base = Poly::x(field).div_rem(self).1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).div_rem(self).1;
            }
            base = base.mul(&base).div_rem(self).1;
            e >>= 1;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_and_gcd() {
        let f = Field::Q;
        // (x-1)(x-2) = x^2 - 3x + 2
        let p = Poly::new(
            f,
            vec![f.from_i64(2), f.from_i64(-3), f.from_i64(1)],
        );
        let d = Poly::new(f, vec![f.from_i64(-1), f.from_i64(1)]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q.coeffs, vec![f.from_i64(-2), f.from_i64(1)]);

        let g = p.gcd(&d);
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn x_pow_mod_fermat() {
        // x^p = x mod (x^2 - x) trivially; sanity-check over F_7 with x^2+1
        let f = Field::Fp(7);
        let m = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        let r = m.x_pow_mod(7);
        // x^7 mod x^2+1: x^2 = -1, x^7 = (x^2)^3 x = -x
        assert_eq!(r.coeffs, vec![f.zero(), f.from_i64(-1)]);
    }
}
