//! Exact scalars over the rationals or a prime field.
//!
//! Every value carries its field tag so that mixed-field arithmetic is caught
//! immediately instead of producing garbage. Rational arithmetic uses
//! arbitrary-precision integers; prime fields are limited to machine-word
//! moduli with all values kept reduced.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::Error;

/// The coefficient field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field constructor; rejects composite or zero/one moduli.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p: *p, value: 1 % *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp {
                p: *p,
                value: reduce_i64(n, *p),
            },
        }
    }

    /// Builds `num/den` in this field. A denominator of zero, or one that
    /// reduces to zero mod p, is an input error.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator { num, den });
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Prime(p) => {
                let d = reduce_i64(den, *p);
                if d == 0 {
                    return Err(Error::ZeroDenominator { num, den });
                }
                let n = reduce_i64(num, *p);
                let inv = mod_inv(d, *p).expect("nonzero element of a prime field is invertible");
                Ok(Scalar::Fp {
                    p: *p,
                    value: mod_mul(n, inv, *p),
                })
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Fp { p, value } => mod_inv(*value, *p).map(|v| Scalar::Fp { p: *p, value: v }),
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => {
                let s = a + b;
                Scalar::Fp {
                    p: *p,
                    value: if s >= *p { s - p } else { s },
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: if a >= b { a - b } else { a + p - b },
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: mod_mul(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Canonical rendering used in witnesses and certificates: `n` or `n/d`.
pub fn render(s: &Scalar) -> String {
    s.to_string()
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    let m = (n as i128).rem_euclid(p as i128);
    m as u64
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin; the listed witness set decides primality for
/// all `u64` inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mod_mul(x, x, n);
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
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let third = f.from_ratio(1, 3).unwrap();
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
    }

    #[test]
    fn prime_field_reduces_and_inverts() {
        let f = Field::prime(7).unwrap();
        let x = f.from_i64(-3);
        assert_eq!(x, f.from_i64(4));
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn ratio_with_denominator_divisible_by_p_is_rejected() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            f.from_ratio(1, 5),
            Err(Error::ZeroDenominator { .. })
        ));
        assert!(f.from_ratio(3, 4).is_ok());
    }

    #[test]
    fn primality_check() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(97).is_ok());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
    }
}
