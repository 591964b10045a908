use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest accepted modulus; keeps residue products inside `u64`.
const MAX_MODULUS: u64 = 1 << 32;

/// The ground field shared by every scalar of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`; `p` must be a prime below 2^32.
    pub fn prime(p: u64) -> Result<Field> {
        if p < MAX_MODULUS && is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Rational(BigRational::from_integer(v.into()))),
            Field::Prime(p) => Scalar(Repr::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::InvalidScalar(format!("{num}/{den}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses a scalar written in the interchange syntax, interpreting it in
    /// this field. Integers and fractions are accepted in every field;
    /// `"v mod p"` only in `F_p`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(s.to_string());
        let t = s.trim();
        if let Some((v, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            if self != Field::Prime(p) {
                return Err(bad());
            }
            let v = parse_rational(v.trim()).ok_or_else(bad)?;
            return self.from_rational(&v).ok_or_else(bad);
        }
        let v = parse_rational(t).ok_or_else(bad)?;
        self.from_rational(&v).ok_or_else(bad)
    }

    fn from_rational(self, v: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar(Repr::Rational(v.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| {
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue below modulus")
                };
                let num = Scalar(Repr::Residue {
                    value: reduce(v.numer()),
                    modulus: p,
                });
                let den = Scalar(Repr::Residue {
                    value: reduce(v.denom()),
                    modulus: p,
                });
                Some(&num * &den.inv()?)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "Q" | "rational" => Ok(Field::Rational),
            t => {
                let p = t
                    .strip_prefix("F_")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidScalar(format!("field {t:?}")))?;
                Field::prime(p)
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.replace('\u{2212}', "-");
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// An exact scalar: a reduced fraction or a residue modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rational(_) => Field::Rational,
            Repr::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar(match &self.0 {
            Repr::Rational(r) => Repr::Rational(r.recip()),
            Repr::Residue { value, modulus } => Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }))
    }

    /// Integer power; negative exponents invert. Panics on `0^n` with `n < 0`.
    pub fn pow(&self, n: i64) -> Scalar {
        let base = if n < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = self.field().one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// The rational value, when this scalar lives in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    fn combine(&self, rhs: &Scalar, op: &str) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(match op {
                "+" => a + b,
                "-" => a - b,
                _ => a * b,
            })),
            (
                Repr::Residue { value: a, modulus: p },
                Repr::Residue { value: b, modulus: q },
            ) if p == q => Scalar(Repr::Residue {
                value: match op {
                    "+" => (a + b) % p,
                    "-" => (a + p - b) % p,
                    _ => (a * b) % p,
                },
                modulus: *p,
            }),
            _ => panic!(
                "scalar field mismatch: {} vs {}",
                self.field(),
                rhs.field()
            ),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, "+")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, "-")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, "*")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &self.field().zero() - self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Context-free parse: `"v mod p"` lands in `F_p`, anything else in `Q`.
    fn from_str(s: &str) -> Result<Scalar> {
        match s.split_once("mod") {
            Some((_, p)) => {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidScalar(s.to_string()))?;
                Field::prime(p)?.parse_scalar(s)
            }
            None => Field::Rational.parse_scalar(s),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_interchange_syntax() {
        let q = Field::Rational;
        assert_eq!(q.ratio(-3, 4).unwrap().to_string(), "-3/4");
        assert_eq!(q.from_i64(5).to_string(), "5");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(10).to_string(), "3 mod 7");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-3/4", "5", "0", "12/7"] {
            assert_eq!(s.parse::<Scalar>().unwrap().to_string(), s);
        }
        assert_eq!("3 mod 7".parse::<Scalar>().unwrap().to_string(), "3 mod 7");
        assert_eq!("\u{2212}3/4".parse::<Scalar>().unwrap().to_string(), "-3/4");
        assert_eq!("6/8".parse::<Scalar>().unwrap().to_string(), "3/4");
    }

    #[test]
    fn parse_in_prime_field() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse_scalar("-1").unwrap(), f5.from_i64(4));
        assert!(f5.parse_scalar("1/5").is_err());
        assert!(f5.parse_scalar("3 mod 7").is_err());
        assert!(Field::Rational.parse_scalar("3 mod 7").is_err());
        assert!(Field::Rational.parse_scalar("1/0").is_err());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn inverses() {
        let f7 = Field::prime(7).unwrap();
        for v in 1..7 {
            let a = f7.from_i64(v);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert!(f7.zero().inv().is_none());
        let q = Field::Rational;
        assert_eq!(q.ratio(2, 3).unwrap().inv().unwrap(), q.ratio(3, 2).unwrap());
        assert_eq!(q.from_i64(2).pow(-2), q.ratio(1, 4).unwrap());
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F_5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("F_4".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "F_5");
    }
}
