//! Exact field coefficients: prime fields with machine-word arithmetic and
//! arbitrary-precision rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;

/// The coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// GF(p) for a prime p < 2^31.
    Prime(u32),
    /// The rational numbers.
    Rationals,
}

impl FieldKind {
    /// Builds GF(p), rejecting non-primes and primes >= 2^31.
    pub fn prime(p: u64) -> Result<FieldKind, Error> {
        if p >= (1 << 31) {
            return Err(Error::BadPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(FieldKind::Prime(p as u32))
    }

    /// The characteristic: p for GF(p), 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldKind::Prime(p) => *p,
            FieldKind::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coef {
        match self {
            FieldKind::Prime(p) => Coef::Fp { p: *p, v: 0 },
            FieldKind::Rationals => Coef::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coef {
        match self {
            FieldKind::Prime(p) => Coef::Fp { p: *p, v: 1 % *p },
            FieldKind::Rationals => Coef::Rat(BigRational::one()),
        }
    }

    /// Reduces an integer into the field.
    pub fn from_i64(&self, n: i64) -> Coef {
        match self {
            FieldKind::Prime(p) => {
                let m = (n % i64::from(*p) + i64::from(*p)) as u64 % u64::from(*p);
                Coef::Fp { p: *p, v: m as u32 }
            }
            FieldKind::Rationals => Coef::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// a/b as a field element; `b` must be nonzero and invertible.
    pub fn from_fraction(&self, a: i64, b: i64) -> Result<Coef, Error> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = self.from_i64(a);
        let den = self.from_i64(b);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(num.mul(&den.inv()?))
    }

    /// The binomial coefficient C(n, k) reduced into the field.
    ///
    /// Computed as an exact integer first, so e.g. C(p, s) vanishes in GF(p)
    /// for 0 < s < p.
    pub fn binomial(&self, n: u64, k: u64) -> Result<Coef, Error> {
        if k > n {
            return Err(Error::BinomialRange { n, k });
        }
        let mut acc = num::BigUint::one();
        let k = k.min(n - k);
        for i in 0..k {
            acc *= num::BigUint::from(n - i);
            acc /= num::BigUint::from(i + 1);
        }
        match self {
            FieldKind::Prime(p) => {
                let r = acc % num::BigUint::from(*p);
                let digits = r.to_u64_digits();
                let v = if digits.is_empty() { 0 } else { digits[0] as u32 };
                Ok(Coef::Fp { p: *p, v })
            }
            FieldKind::Rationals => Ok(Coef::Rat(BigRational::from_integer(BigInt::from(
                num::BigInt::from(acc),
            )))),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rationals => write!(f, "QQ"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element. GF(p) values are stored reduced to [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    Fp { p: u32, v: u32 },
    Rat(BigRational),
}

impl Coef {
    pub fn field(&self) -> FieldKind {
        match self {
            Coef::Fp { p, .. } => FieldKind::Prime(*p),
            Coef::Rat(_) => FieldKind::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Fp { v, .. } => *v == 0,
            Coef::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Fp { p, v } => *v == 1 % *p,
            Coef::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Fp { p, v: a }, Coef::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "coefficient fields differ");
                let s = u64::from(*a) + u64::from(*b);
                Coef::Fp { p: *p, v: (s % u64::from(*p)) as u32 }
            }
            (Coef::Rat(a), Coef::Rat(b)) => Coef::Rat(a + b),
            _ => panic!("coefficient fields differ"),
        }
    }

    pub fn sub(&self, other: &Coef) -> Coef {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Fp { p, v } => Coef::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
            Coef::Rat(r) => Coef::Rat(-r),
        }
    }

    pub fn mul(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Fp { p, v: a }, Coef::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "coefficient fields differ");
                let m = u64::from(*a) * u64::from(*b);
                Coef::Fp { p: *p, v: (m % u64::from(*p)) as u32 }
            }
            (Coef::Rat(a), Coef::Rat(b)) => Coef::Rat(a * b),
            _ => panic!("coefficient fields differ"),
        }
    }

    /// The multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Coef, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Coef::Fp { p, v } => {
                // Fermat: v^(p-2) mod p.
                let mut base = u64::from(*v);
                let mut exp = u64::from(*p) - 2;
                let m = u64::from(*p);
                let mut acc: u64 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Ok(Coef::Fp { p: *p, v: acc as u32 })
            }
            Coef::Rat(r) => Ok(Coef::Rat(r.recip())),
        }
    }

    pub fn div(&self, other: &Coef) -> Result<Coef, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Coef {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Fp { v, .. } => write!(f, "{v}"),
            Coef::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
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
    fn prime_validation() {
        assert!(FieldKind::prime(2).is_ok());
        assert!(FieldKind::prime(31).is_ok());
        assert!(FieldKind::prime(1).is_err());
        assert!(FieldKind::prime(4).is_err());
        assert!(FieldKind::prime(1 << 31).is_err());
    }

    #[test]
    fn fp_inverse_roundtrip() {
        let f = FieldKind::prime(10007).unwrap();
        for v in [1i64, 2, 655, 10006] {
            let c = f.from_i64(v);
            assert!(c.mul(&c.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn binomial_vanishes_at_prime() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldKind::prime(p).unwrap();
            for s in 1..p {
                assert!(f.binomial(p, s).unwrap().is_zero(), "C({p},{s}) mod {p}");
            }
            assert!(f.binomial(p, 0).unwrap().is_one());
            assert!(f.binomial(p, p).unwrap().is_one());
        }
    }

    #[test]
    fn binomial_range_checked() {
        let f = FieldKind::Rationals;
        assert!(f.binomial(3, 4).is_err());
        assert_eq!(f.binomial(4, 2).unwrap(), f.from_i64(6));
    }

    #[test]
    fn rational_display_lowest_terms() {
        let f = FieldKind::Rationals;
        let half = f.from_fraction(2, 4).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let neg = f.from_fraction(-3, 6).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
    }
}
