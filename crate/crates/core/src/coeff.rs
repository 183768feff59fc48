//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero in coefficient field")]
    DivisionByZero,
    #[error("mixed-field operands: {0} and {1}")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("characteristic {0} is not a prime below 2^31")]
    BadCharacteristic(u64),
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// The coefficient field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, CoeffError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(CoeffError::BadCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        match *self {
            FieldSpec::Rationals => Coefficient::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Coefficient::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        match *self {
            FieldSpec::Rationals => Ok(Coefficient::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            FieldSpec::Prime(p) => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(CoeffError::DivisionByZero);
                }
                Ok(Coefficient::Residue {
                    value: mul_mod(n, inv_mod(d, p), p),
                    modulus: p,
                })
            }
        }
    }

    /// Parses `5`, `-3/4`, `+2`. Residues are reduced into `[0, p)`.
    pub fn parse(&self, text: &str) -> Result<Coefficient, CoeffError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || CoeffError::Parse(text.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s.as_str(), "1"),
        };
        let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| err())?;
        let den = BigInt::from_str(den).map_err(|_| err())?;
        if den.is_negative() {
            return Err(err());
        }
        self.from_ratio(&num, &den)
    }

    pub fn contains(&self, c: &Coefficient) -> bool {
        c.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = CoeffError;

    /// Accepts `QQ`, `Q`, `0`, `F_p`, `GF(p)` or a bare prime.
    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        match s {
            "QQ" | "Q" | "0" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| CoeffError::Parse(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// A field element in canonical form.
///
/// Rationals are kept in lowest terms with positive denominator (an invariant
/// of `BigRational`); residues live in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Coefficient {
    pub fn field(&self) -> FieldSpec {
        match self {
            Coefficient::Rational(_) => FieldSpec::Rationals,
            Coefficient::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Residue { value, .. } => *value == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Residue { .. } => false,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), CoeffError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(CoeffError::MixedFields(a, b))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_field(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_field(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_field(other)?;
        Ok(self.mul(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_field(other)?;
        Ok(self.mul(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.recip()),
            Coefficient::Residue { value, modulus } => Coefficient::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Residue { value, modulus } => Coefficient::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    // The infallible operations below assume both operands come from the
    // same field; polynomial code checks contexts before calling them.

    pub(crate) fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Residue { value: a, modulus }, Coefficient::Residue { value: b, .. }) => {
                let s = *a as u64 + *b as u64;
                let m = *modulus as u64;
                Coefficient::Residue {
                    value: (if s >= m { s - m } else { s }) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed-field coefficient arithmetic"),
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Residue { value: a, modulus }, Coefficient::Residue { value: b, .. }) => {
                Coefficient::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed-field coefficient arithmetic"),
        }
    }

    pub(crate) fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero in coefficient field"))
    }

    /// The rational value, when the field is `QQ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coefficient::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// `field_add` etc. as free functions, mirroring the operation names used in
/// the documentation.
pub fn field_add(a: &Coefficient, b: &Coefficient) -> Result<Coefficient, CoeffError> {
    a.try_add(b)
}

pub fn field_mul(a: &Coefficient, b: &Coefficient) -> Result<Coefficient, CoeffError> {
    a.try_mul(b)
}

pub fn field_neg(a: &Coefficient) -> Coefficient {
    a.neg()
}

pub fn field_inv(a: &Coefficient) -> Result<Coefficient, CoeffError> {
    a.inv()
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on i64
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u32
}

fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    v.mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue fits in u32")
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
