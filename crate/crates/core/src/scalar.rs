//! Exact coefficient arithmetic: arbitrary-precision rationals or a prime field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    PrimeField(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("p = {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p must be prime (got {p})")));
        }
        Ok(Field::PrimeField(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::PrimeField(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::PrimeField(p) => Scalar::Mod { value: n.rem_euclid(p as i64) as u32, p },
        }
    }

    /// Maps a rational number into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(q.clone())),
            Field::PrimeField(p) => {
                let pm = BigInt::from(p);
                let num = reduce_bigint(q.numer(), &pm);
                let den = reduce_bigint(q.denom(), &pm);
                if den == 0 {
                    return Err(Error::Parse(format!("denominator {} vanishes modulo {p}", q.denom())));
                }
                let v = mul_mod(num, inv_mod(den, p), p);
                Ok(Scalar::Mod { value: v, p })
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField(p) => p,
        }
    }

    /// Whether `s` is an element of this field.
    pub fn owns(self, s: &Scalar) -> bool {
        matches!((self, s), (Field::Rationals, Scalar::Rat(_)))
            || matches!((self, s), (Field::PrimeField(p), Scalar::Mod { p: q, .. }) if p == *q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::PrimeField(p) => write!(f, "Fp({p})"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: &BigInt) -> u32 {
    let r = ((n % p) + p) % p;
    r.try_into().expect("residue fits in u32")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    // Fermat
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A field element. The modulus travels with prime-field values so arithmetic needs no context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod { value: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod { value: mul_mod(*a, *b, *p), p: *p }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod { value: if *value == 0 { 0 } else { p - value }, p: *p },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Mod { value, p } => Scalar::Mod { value: inv_mod(*value, *p), p: *p },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// True for negative rationals; prime-field values are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
