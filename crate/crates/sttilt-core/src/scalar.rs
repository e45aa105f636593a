//! Exact field scalars: arbitrary-precision rationals or a prime field.
//!
//! Every computation in the crate is exact. The ground field is chosen per
//! run: `ℚ` (the default, always safe) or `GF(p)` for a configurable prime
//! `p` (faster; certain trace-form checks require `p` to exceed the
//! dimensions involved and report [`crate::Error::FieldTooSmall`]
//! otherwise).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    /// Arbitrary-precision rational numbers.
    Rational,
    /// The prime field of order `p`.
    Prime { p: u64 },
}

impl FieldSpec {
    /// Default prime used by the `prime` CLI field when no order is given.
    pub const DEFAULT_PRIME: u64 = 10007;

    /// Additive identity in this field.
    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime { p } => Scalar::Fp { p: *p, v: 0 },
        }
    }

    /// Multiplicative identity in this field.
    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime { p } => Scalar::Fp { p: *p, v: 1 % *p },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime { p } => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, v: m }
            }
        }
    }

    /// Parses a scalar from a decimal string, optionally of the form
    /// `"n/d"`. In a prime field the value is reduced modulo `p` (the
    /// denominator must be invertible).
    pub fn parse(&self, s: &str) -> crate::Result<Scalar> {
        let bad = |msg: String| crate::Error::InvalidSpec(msg);
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| bad(format!("cannot parse numerator {num_str:?}")))?;
        let den: BigInt = den_str
            .parse()
            .map_err(|_| bad(format!("cannot parse denominator {den_str:?}")))?;
        if den.is_zero() {
            return Err(bad(format!("zero denominator in {s:?}")));
        }
        match self {
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldSpec::Prime { p } => {
                let pb = BigInt::from(*p);
                let to_res = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    // r < p ≤ u64::MAX, so the conversion cannot fail.
                    u64::try_from(r).expect("residue fits in u64")
                };
                let n = Scalar::Fp { p: *p, v: to_res(&num) };
                let d = Scalar::Fp { p: *p, v: to_res(&den) };
                let dinv = d
                    .inv()
                    .ok_or_else(|| bad(format!("denominator of {s:?} vanishes modulo {p}")))?;
                Ok(n.mul(&dinv))
            }
        }
    }
}

/// An exact field element. All binary operations require both operands to
/// come from the same [`FieldSpec`]; mixing fields is a programming error
/// and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Rational value.
    Rat(BigRational),
    /// Value `v` (with `0 ≤ v < p`) in the prime field of order `p`.
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { p, v } => *v == 1 % *p,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Fp { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, v: ((*a as u128 + *b as u128) % *p as u128) as u64 }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, v: ((*a as u128 * *b as u128) % *p as u128) as u64 }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    // Fermat: v^(p-2) mod p for prime p.
                    let mut base = *v as u128;
                    let mut exp = *p - 2;
                    let m = *p as u128;
                    let mut acc: u128 = 1;
                    while exp > 0 {
                        if exp & 1 == 1 {
                            acc = acc * base % m;
                        }
                        base = base * base % m;
                        exp >>= 1;
                    }
                    Some(Scalar::Fp { p: *p, v: acc as u64 })
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.numer().is_negative() {
                    write!(f, "{}/{}", r.numer(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
