use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// The coefficient field of a computation: `F_p` or `Q`.
///
/// Serializes as `{"kind":"prime","p":5}` or `{"kind":"rational"}`, which is
/// exactly the `field` object of the input document format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u32 },
    Rational,
}

impl FieldSpec {
    /// A prime field, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<FieldSpec, LinAlgError> {
        if !(2..1 << 31).contains(&p) {
            return Err(LinAlgError::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime { p: p as u32 })
    }

    pub fn rational() -> FieldSpec {
        FieldSpec::Rational
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => Scalar::Prime { value: 0, p },
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => Scalar::Prime { value: 1 % p as u64, p },
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
        }
    }

    /// The image of a signed integer in this field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => {
                let m = p as i64;
                Scalar::Prime { value: n.rem_euclid(m) as u64, p }
            }
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime { p } => Some(p as u64),
            FieldSpec::Rational => None,
        }
    }
}

/// Deterministic primality by trial division; fine for moduli below `2^31`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element: a residue mod `p`, or a rational in lowest terms.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; the public entry points validate homogeneity before any arithmetic
/// happens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Prime { value: u64, p: u32 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Prime { p, .. } => FieldSpec::Prime { p: *p },
            Scalar::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Prime { value, p } => *value == 1 % *p as u64,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: (a + b) % *p as u64, p: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                let m = *p as u64;
                Scalar::Prime { value: (a + m - b) % m, p: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: (a * b) % *p as u64, p: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Prime { value, p } => {
                let m = *p as u64;
                Scalar::Prime { value: (m - value) % m, p: *p }
            }
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Prime { value, p } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Prime { value: mod_inv(*value, *p as u64), p: *p }
            }
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rational(r.recip())
            }
        }
    }

    /// `self - f * g`, the inner step of row elimination.
    pub fn sub_mul(&self, f: &Scalar, g: &Scalar) -> Scalar {
        match (self, f, g) {
            (
                Scalar::Prime { value: a, p },
                Scalar::Prime { value: b, p: q },
                Scalar::Prime { value: c, p: r },
            ) if p == q && p == r => {
                let m = *p as u64;
                Scalar::Prime { value: (a + m - (b * c) % m) % m, p: *p }
            }
            (Scalar::Rational(a), Scalar::Rational(b), Scalar::Rational(c)) => {
                Scalar::Rational(a - b * c)
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

/// Modular inverse by the extended Euclidean algorithm.
fn mod_inv(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "element not invertible");
    old_s.rem_euclid(m as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().magnitude(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok()); // 2^31 - 1 is prime
        assert_eq!(FieldSpec::prime(1), Err(LinAlgError::PrimeOutOfRange(1)));
        assert_eq!(FieldSpec::prime(9), Err(LinAlgError::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1 << 31), Err(LinAlgError::PrimeOutOfRange(1 << 31)));
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let two = f.from_i64(2);
        let four = f.from_i64(4);
        assert_eq!(two.add(&four), f.from_i64(1));
        assert_eq!(two.mul(&four), f.from_i64(3));
        assert_eq!(two.sub(&four), f.from_i64(3));
        assert_eq!(four.inv(), four); // 4*4 = 16 = 1 mod 5
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn rational_exactness() {
        // (a/b) * (b/a) = 1 with no rounding anywhere.
        let f = FieldSpec::rational();
        let third = parse_ratio("1/3");
        let three = f.from_i64(3);
        assert!(third.mul(&three).is_one());
        assert_eq!(third.inv(), three);
        let x = parse_ratio("-7/12");
        assert!(x.mul(&x.inv()).is_one());
    }

    fn parse_ratio(s: &str) -> Scalar {
        let (n, d) = s.split_once('/').unwrap();
        let n: i64 = n.parse().unwrap();
        let d: i64 = d.parse().unwrap();
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn display_lowest_terms() {
        let x = parse_ratio("3/2");
        assert_eq!(x.to_string(), "3/2");
        let y = parse_ratio("-4/8");
        assert_eq!(y.to_string(), "-1/2");
        let z = parse_ratio("4/2");
        assert_eq!(z.to_string(), "2");
    }
}
