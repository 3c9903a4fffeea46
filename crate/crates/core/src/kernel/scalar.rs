//! Exact field elements: arbitrary-precision rationals and prime fields.
//!
//! Every computation in the engine bottoms out in [`Scalar`] arithmetic.
//! Rationals are kept in lowest terms with positive denominator (the
//! `num-rational` invariant); prime-field elements are reduced residues
//! for a prime `p < 2^31`, so products fit in `u64` without overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::Error;

/// Ground field descriptor: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Field::Q => Ok(()),
            Field::Fp(p) => {
                if *p < 2 || *p >= (1 << 31) {
                    return Err(Error::InvalidInput(format!(
                        "prime field modulus {p} out of range (need 2 <= p < 2^31)"
                    )));
                }
                if !is_prime(*p) {
                    return Err(Error::InvalidInput(format!("{p} is not prime")));
                }
                Ok(())
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { v: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: r, p: *p }
            }
        }
    }

    /// Builds `num/den` in the field. Over `F_p` the denominator must be
    /// invertible mod `p`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::InvalidInput("denominator is zero".into()));
        }
        match self {
            Field::Q => Ok(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Fp(_) => {
                let d = self.from_i64(den);
                let d = d.inv().ok_or_else(|| {
                    Error::InvalidInput(format!("denominator {den} not invertible in {self}"))
                })?;
                Ok(self.from_i64(num) * d)
            }
        }
    }

    /// Parses a rational literal `"a"` or `"a/b"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        let bad = |_| Error::InvalidInput(format!("bad rational literal {s:?}"));
        match s.split_once('/') {
            None => {
                let n: i64 = s.parse().map_err(bad)?;
                Ok(self.from_i64(n))
            }
            Some((a, b)) => {
                let n: i64 = a.trim().parse().map_err(bad)?;
                let d: i64 = b.trim().parse().map_err(bad)?;
                self.from_ratio(n, d)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Q => "Q".into(),
            Field::Fp(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact field element. Arithmetic between elements of different fields is a
/// programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(r.recip()))
                }
            }
            Scalar::Fp { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp {
                        v: fp_pow(*v, p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let field = self.field();
        if e == 0 {
            return field.one();
        }
        let base = if e < 0 {
            self.inv().expect("zero has no negative powers")
        } else {
            self.clone()
        };
        let mut acc = field.one();
        for _ in 0..e.unsigned_abs() {
            acc *= base.clone();
        }
        acc
    }

    /// Renders as a rational literal: `a` or `a/b`; prime-field elements as
    /// their residue.
    pub fn literal(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => format!("{v}"),
        }
    }

    /// Sort key used to order eigenvalues deterministically in reports.
    pub fn sort_key(&self) -> (i8, BigInt, BigInt) {
        match self {
            Scalar::Q(r) => (
                if r.is_negative() { -1 } else { 1 },
                r.numer().clone(),
                r.denom().clone(),
            ),
            Scalar::Fp { v, .. } => (1, BigInt::from(*v), BigInt::one()),
        }
    }
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $qop:tt, $fpop:expr) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $qop b),
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        Scalar::Fp { v: $fpop(a, b, p), p }
                    }
                    _ => panic!("mixed scalar fields"),
                }
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

binop!(Add, add, +, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, -, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, *, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if v == 0 { 0 } else { p - v },
                p,
            },
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = self.clone() + rhs;
    }
}
impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = self.clone() - rhs;
    }
}
impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = self.clone() * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_parse_and_normalize() {
        let f = Field::Q;
        let x = f.parse("4/6").unwrap();
        assert_eq!(x.literal(), "2/3");
        let y = f.parse("-3").unwrap();
        assert_eq!(y.literal(), "-3");
        assert_eq!((x.clone() * y).literal(), "-2");
        assert!(f.parse("1/0").is_err());
    }

    #[test]
    fn fp_arithmetic_and_inverse() {
        let f = Field::Fp(1009);
        f.validate().unwrap();
        let two = f.from_i64(2);
        let half = two.inv().unwrap();
        assert!((two * half).is_one());
        let m = f.from_i64(-1);
        assert_eq!(m.literal(), "1008");
    }

    #[test]
    fn prime_check_rejects_composites() {
        assert!(Field::Fp(1000).validate().is_err());
        assert!(Field::Fp(1009).validate().is_ok());
    }
}
