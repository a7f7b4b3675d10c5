//! Exact scalar arithmetic over the rationals and prime fields GF(p).
//!
//! A [`Field`] is a small copyable descriptor; a [`Scalar`] carries enough
//! information to know which field it came from, so mixing elements of two
//! different fields is detected by [`Field::arith`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// An element of a [`Field`], always stored in canonical form.
///
/// Rationals are kept in lowest terms with a positive denominator and
/// residues are reduced modulo `p`, so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

impl Field {
    /// GF(p). Rejects composite moduli, including prime powers.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// The element `num / den`. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: BigInt, den: BigInt) -> Result<Scalar> {
        match *self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let n = self.reduce_bigint(&num);
                let d = self.reduce_bigint(&den);
                self.div(
                    &Scalar::Residue {
                        value: n,
                        modulus: p,
                    },
                    &Scalar::Residue {
                        value: d,
                        modulus: p,
                    },
                )
            }
        }
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        match *self {
            Field::Rationals => unreachable!("reduce_bigint on Q"),
            Field::Prime(p) => {
                let r = n % BigInt::from(p);
                let r = if r.is_negative() {
                    r + BigInt::from(p)
                } else {
                    r
                };
                u64::try_from(r).expect("residue fits in u64")
            }
        }
    }

    /// Whether `a` is a valid element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { value, modulus }) => modulus == p && value < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (
                Scalar::Residue {
                    value: x,
                    modulus: p,
                },
                Scalar::Residue {
                    value: y,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: ((*x as u128 + *y as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => panic!("scalars from different fields: {a:?}, {b:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (
                Scalar::Residue {
                    value: x,
                    modulus: p,
                },
                Scalar::Residue {
                    value: y,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: ((*x as u128 * *y as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => panic!("scalars from different fields: {a:?}, {b:?}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            // Fermat: a^(p-2) = a^-1 for a != 0.
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked arithmetic: validates both operands before computing.
    pub fn arith(&self, op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedFields);
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// Returns a square root of `a` if one exists in the field.
    ///
    /// Over Q, `m/n` in lowest terms is a square iff `m >= 0` and both `m`
    /// and `n` are perfect squares. Over GF(p) the residues are searched
    /// exhaustively and the smallest root is returned.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Rational(x) => {
                let (m, n) = (x.numer(), x.denom());
                if m.is_negative() {
                    return None;
                }
                let (rm, rn) = (m.sqrt(), n.sqrt());
                (&rm * &rm == *m && &rn * &rn == *n)
                    .then(|| Scalar::Rational(BigRational::new(rm, rn)))
            }
            Scalar::Residue { value, modulus } => (0..*modulus)
                .find(|r| (*r as u128 * *r as u128) % *modulus as u128 == *value as u128)
                .map(|r| Scalar::Residue {
                    value: r,
                    modulus: *modulus,
                }),
        }
    }

    pub fn is_square(&self, a: &Scalar) -> (bool, Option<Scalar>) {
        let root = self.sqrt(a);
        (root.is_some(), root)
    }

    /// Every element of the field is a square. Always false for Q (2 has no
    /// rational root).
    pub fn is_2_closed(&self) -> bool {
        match self {
            Field::Rationals => false,
            Field::Prime(_) => self.elements().all(|a| self.sqrt(&a).is_some()),
        }
    }

    /// All elements of a prime field in increasing residue order; empty for Q.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        let p = match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        };
        (0..p).map(move |value| Scalar::Residue { value, modulus: p })
    }

    /// Parses `[-+]digits[/digits]`. Fractions are allowed in GF(p) when the
    /// denominator is invertible.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::ScalarParse(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let valid_int = |x: &str, signed: bool| {
            let digits = if signed {
                x.strip_prefix(['-', '+']).unwrap_or(x)
            } else {
                x
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num, true) {
            return Err(bad());
        }
        let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
        let den = match den {
            Some(d) => {
                if !valid_int(d, false) {
                    return Err(bad());
                }
                BigInt::from_str(d).map_err(|_| bad())?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_ratio(num, den)
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Scalar::Rational(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `GF:p`, `GF(p)` and `GF p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let rest = t
            .strip_prefix("GF")
            .ok_or_else(|| Error::Invalid(format!("unknown field {s:?}")))?
            .trim();
        let digits = rest
            .strip_prefix(':')
            .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
            .unwrap_or(rest)
            .trim();
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Invalid(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}
