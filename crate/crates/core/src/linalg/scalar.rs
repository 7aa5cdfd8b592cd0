//! Field contexts and exact field elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest modulus accepted for prime fields. Products of two residues are formed in `u128`.
pub const MAX_MODULUS: u64 = (1 << 62) - 1;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// The rational numbers, arbitrary precision.
    Rational,
    /// The prime field `F_p`.
    Prime(u64),
}

impl Field {
    /// Validates `p` and returns `F_p`.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(p: u64) -> Result<Field, LinalgError> {
        if p == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_i64(v, *p),
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_bigint(v, *p),
                modulus: *p,
            },
        }
    }

    /// A rational number `num/den` in this field; fails mod p when `p | den`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))),
            Field::Prime(p) => {
                let d = reduce_i64(den, *p);
                if d == 0 {
                    return Err(LinalgError::NotIntegral { modulus: *p });
                }
                Ok(Scalar::Mod {
                    value: mul_mod(reduce_i64(num, *p), inv_mod(d, *p), *p),
                    modulus: *p,
                })
            }
        }
    }

    /// True when `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        matches!((self, s), (Field::Rational, Scalar::Rational(_)))
            || matches!((self, s), (Field::Prime(p), Scalar::Mod { modulus, .. }) if p == modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact element of `Q` or of some `F_p`.
///
/// Rationals are kept in lowest terms with a positive denominator (guaranteed by
/// [`BigRational`]); residues lie in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), LinalgError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(LinalgError::MixedFields(self.field(), other.field()))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Reduces a rational scalar modulo `p`. Fails if the denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, LinalgError> {
        match self {
            Scalar::Rational(q) => {
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(LinalgError::NotIntegral { modulus: p });
                }
                Ok(Scalar::Mod {
                    value: mul_mod(reduce_bigint(q.numer(), p), inv_mod(den, p), p),
                    modulus: p,
                })
            }
            Scalar::Mod { modulus, .. } if *modulus == p => Ok(self.clone()),
            Scalar::Mod { modulus, .. } => Err(LinalgError::MixedFields(Field::Prime(*modulus), Field::Prime(p))),
        }
    }

    /// `(numerator, denominator)`; residues are reported as `(value, 1)`.
    pub fn as_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Mod { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// The value as an `i64`, when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_integer(),
            Scalar::Mod { .. } => true,
        }
    }

    /// Absolute value of an integral rational equal to one (used for unimodularity checks).
    pub fn is_unit_integer(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_integer() && q.numer().abs().is_one(),
            Scalar::Mod { value, .. } => *value != 0,
        }
    }
}

// Same-field arithmetic for the matrix kernels, which guarantee a single field per matrix.
impl Scalar {
    pub(crate) fn add_same(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => panic!("scalar fields differ"),
        }
    }

    pub(crate) fn mul_same(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => panic!("scalar fields differ"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn reduce_i64(v: i64, p: u64) -> u64 {
    let r = (v as i128).rem_euclid(p as i128);
    r as u64
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin; exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_recognized() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_003));
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(1_000_001));
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        assert_eq!(Field::prime(9), Err(LinalgError::InvalidModulus(9)));
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::from_characteristic(0), Ok(Field::Rational));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational.from_ratio(6, -4).unwrap();
        let (n, d) = q.as_fraction();
        assert_eq!((n, d), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = Field::Prime(5).from_i64(3);
        let b = Field::Prime(7).from_i64(3);
        assert!(matches!(a.add(&b), Err(LinalgError::MixedFields(..))));
        let q = Field::Rational.one();
        assert!(a.mul(&q).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(-1);
        assert_eq!(a.to_i64(), Some(6));
        assert!(a.mul(&a).unwrap().is_one());
        assert!(f.from_i64(3).mul(&f.from_i64(3).inv().unwrap()).unwrap().is_one());
        let half = Field::Rational.from_ratio(1, 2).unwrap();
        assert_eq!(half.reduce_mod(7).unwrap().to_i64(), Some(4));
        assert!(half.reduce_mod(2).is_err());
    }
}
