use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The exact coefficient ring a polynomial or linear system lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientDomain {
    Rationals,
    PrimeField(u64),
    Integers,
}

/// A coefficient. Rationals and integers share the `Q` representation
/// (integers are rationals with denominator one); prime-field elements are
/// stored reduced modulo the field characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl CoefficientDomain {
    /// Prime fields are limited to 32-bit characteristics.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientDomain::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientDomain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(*self))
        }
    }

    pub fn check_same(&self, other: &CoefficientDomain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(*self, *other))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientDomain::PrimeField(_) => Scalar::Fp(0),
            _ => Scalar::Q(Rational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            CoefficientDomain::PrimeField(_) => Scalar::Fp(1),
            _ => Scalar::Q(Rational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            CoefficientDomain::PrimeField(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
            _ => Scalar::Q(Rational::from_int(n)),
        }
    }

    /// Maps a rational into the domain. Fails when the value has no image
    /// (non-integral for `Integers`, denominator divisible by `p` for `F_p`).
    pub fn from_rational(&self, r: &Rational) -> Result<Scalar> {
        match self {
            CoefficientDomain::Rationals => Ok(Scalar::Q(r.clone())),
            CoefficientDomain::Integers => {
                if r.is_integer() {
                    Ok(Scalar::Q(r.clone()))
                } else {
                    Err(Error::NonIntegral(r.to_string()))
                }
            }
            CoefficientDomain::PrimeField(p) => {
                let big_p = num_bigint::BigInt::from(*p);
                let reduce = |x: num_bigint::BigInt| -> u64 {
                    let m = ((x % &big_p) + &big_p) % &big_p;
                    num_traits::ToPrimitive::to_u64(&m).expect("reduced residue fits")
                };
                let n = reduce(r.numer());
                let d = reduce(r.denom());
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Fp(((n as u128 * pow_mod(d, p - 2, *p) as u128) % *p as u128) as u64))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x.add(y)),
            (Scalar::Fp(x), Scalar::Fp(y), CoefficientDomain::PrimeField(p)) => {
                let s = x + y;
                Scalar::Fp(if s >= *p { s - p } else { s })
            }
            _ => panic!("scalar/domain mismatch in add: {a:?} {b:?} over {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (a, self) {
            (Scalar::Q(x), _) => Scalar::Q(x.neg()),
            (Scalar::Fp(x), CoefficientDomain::PrimeField(p)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/domain mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x.mul(y)),
            (Scalar::Fp(x), Scalar::Fp(y), CoefficientDomain::PrimeField(p)) => Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64),
            _ => panic!("scalar/domain mismatch in mul: {a:?} {b:?} over {self}"),
        }
    }

    /// Multiplicative inverse. Over the integers only units are invertible.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (a, self) {
            (Scalar::Q(x), CoefficientDomain::Integers) => {
                let i = x.inv().expect("nonzero");
                if i.is_integer() {
                    Ok(Scalar::Q(i))
                } else {
                    Err(Error::NonIntegral(i.to_string()))
                }
            }
            (Scalar::Q(x), _) => Ok(Scalar::Q(x.inv().expect("nonzero"))),
            (Scalar::Fp(x), CoefficientDomain::PrimeField(p)) => Ok(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            _ => panic!("scalar/domain mismatch in inv"),
        }
    }

    /// Exact division; over the integers it fails unless the quotient is integral.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), CoefficientDomain::Integers) => {
                let q = x.div(y).ok_or(Error::DivisionByZero)?;
                if q.is_integer() {
                    Ok(Scalar::Q(q))
                } else {
                    Err(Error::NonIntegral(q.to_string()))
                }
            }
            _ => Ok(self.mul(a, &self.inv(b)?)),
        }
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Parses a coefficient string ("3", "-1/2", or a residue for prime fields).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let r: Rational = s.parse().map_err(|_| Error::ScalarParse(s.to_string()))?;
        self.from_rational(&r)
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(r) => r.to_string(),
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// Whether the scalar is a legal element of this domain.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (a, self) {
            (Scalar::Q(_), CoefficientDomain::Rationals) => true,
            (Scalar::Q(r), CoefficientDomain::Integers) => r.is_integer(),
            (Scalar::Fp(v), CoefficientDomain::PrimeField(p)) => v < p,
            _ => false,
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoefficientDomain {
    type Err = Error;

    /// Accepts `Q`, `Z`, `F<p>`, `Fp:<p>` and `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "q" | "QQ" => return Ok(CoefficientDomain::Rationals),
            "Z" | "z" | "ZZ" => return Ok(CoefficientDomain::Integers),
            _ => {}
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::invalid(format!("unknown domain {s:?}")))?;
        let p: u64 = digits.parse().map_err(|_| Error::invalid(format!("unknown domain {s:?}")))?;
        CoefficientDomain::prime_field(p)
    }
}

impl Serialize for CoefficientDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(CoefficientDomain::prime_field(2).is_ok());
        assert!(CoefficientDomain::prime_field(7).is_ok());
        assert!(matches!(CoefficientDomain::prime_field(9), Err(Error::NotPrime(9))));
        assert!(CoefficientDomain::prime_field(1).is_err());
    }

    #[test]
    fn parse_domains() {
        assert_eq!("F2".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::PrimeField(2));
        assert_eq!("Fp:5".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::PrimeField(5));
        assert_eq!("Q".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::Rationals);
        assert_eq!("Z".parse::<CoefficientDomain>().unwrap(), CoefficientDomain::Integers);
        assert!("F4".parse::<CoefficientDomain>().is_err());
    }

    #[test]
    fn field_arithmetic() {
        let f7 = CoefficientDomain::PrimeField(7);
        let three = f7.from_i64(3);
        let inv = f7.inv(&three).unwrap();
        assert_eq!(f7.mul(&three, &inv), f7.one());
        assert_eq!(f7.from_i64(-1), Scalar::Fp(6));
        let half = f7.from_rational(&Rational::new(1, 2)).unwrap();
        assert_eq!(f7.mul(&half, &f7.from_i64(2)), f7.one());
        assert!(CoefficientDomain::PrimeField(2).from_rational(&Rational::new(1, 2)).is_err());
    }

    #[test]
    fn integer_division_is_exact_only() {
        let z = CoefficientDomain::Integers;
        assert_eq!(z.div(&z.from_i64(6), &z.from_i64(3)).unwrap(), z.from_i64(2));
        assert!(z.div(&z.from_i64(1), &z.from_i64(2)).is_err());
        assert!(z.inv(&z.from_i64(-1)).is_ok());
    }
}
