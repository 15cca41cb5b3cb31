//! Exact coefficient arithmetic over a chosen base field: the rationals
//! (characteristic 0) or a prime field Z/p.
//!
//! Scalars carry their field at runtime; mixing fields is an error rather
//! than a type error, so a single series type can serve both cases.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Base field selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Selects Z/p. Fails unless `p` is prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals, p for Z/p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Prime {
                modulus: *p,
                value: reduce_i64(n, *p),
            },
        }
    }

    /// Builds num/den in the field. Over Z/p the denominator must be a unit.
    pub fn from_ratio(&self, num: i64, den: u64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::PrimeField(p) => {
                if den.is_multiple_of(*p) {
                    return Err(Error::DenominatorDivisibleByCharacteristic {
                        denominator: den,
                        characteristic: *p,
                    });
                }
                let d = Scalar::Prime {
                    modulus: *p,
                    value: den % *p,
                };
                self.from_integer(num).div(&d)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { modulus: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Prime { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { modulus, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    modulus: *modulus,
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { modulus, value } => Scalar::Prime {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { modulus, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    modulus: *modulus,
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::ZeroDenominator)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime { modulus, value } => {
                if *value == 0 {
                    Err(Error::ZeroDenominator)
                } else {
                    Ok(Scalar::Prime {
                        modulus: *modulus,
                        value: mod_inverse(*value, *modulus),
                    })
                }
            }
        }
    }

    /// Deterministic square root: the positive root over the rationals, the
    /// smaller residue over a prime field. Fails when no root exists.
    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() || a.is_negative() {
                    return Err(Error::NotASquare(self.to_string()));
                }
                let num = exact_sqrt(a.numer());
                let den = exact_sqrt(a.denom());
                match (num, den) {
                    (Some(n), Some(d)) => Ok(Scalar::Rational(BigRational::new(n, d))),
                    _ => Err(Error::NotASquare(self.to_string())),
                }
            }
            Scalar::Prime { modulus: p, value } => {
                if *value == 0 {
                    return Err(Error::NotASquare(self.to_string()));
                }
                if *p == 2 {
                    // x^2 = x over F2
                    return Ok(self.clone());
                }
                match tonelli_shanks(*value, *p) {
                    Some(r) => Ok(Scalar::Prime {
                        modulus: *p,
                        value: r.min(p - r),
                    }),
                    None => Err(Error::NotASquare(self.to_string())),
                }
            }
        }
    }

    /// "p/q" form for rationals (just "p" when integral), the canonical
    /// residue for prime fields.
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    let m = p as i128;
    let r = (n as i128).rem_euclid(m);
    r as u64
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime and a nonzero mod p
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if mod_pow(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(n, (p + 1) / 4, p));
    }
    // write p-1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // smallest quadratic non-residue as the auxiliary generator
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(n, q, p);
    let mut r = mod_pow(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = ((b as u128 * b as u128) % p as u128) as u64;
        t = ((t as u128 * c as u128) % p as u128) as u64;
        r = ((r as u128 * b as u128) % p as u128) as u64;
    }
    Some(r)
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
