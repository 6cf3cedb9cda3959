//! Exact complex scalars: Gaussian rationals `re + im·i`.
//!
//! Every coefficient in this crate is one of these; there is no rounding
//! anywhere in the algebraic layer. Floating point only appears in the
//! numerical search routines, and anything they produce is rationalized and
//! re-checked exactly before it enters a certificate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Gaussian rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    /// Exact rational `num/den` as a real scalar.
    pub fn rat(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar::new(&self.re / &n, -(&self.im / &n))
    }

    /// `i^k` for `k ≥ 0`.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -Scalar::one(),
            _ => -Scalar::i(),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parse from `"a/b"` (real) or `"a/b+c/d i"`-free form: this accepts the
    /// plain rational syntax used by the JSON schemas, one part at a time.
    pub fn parse_rational(s: &str) -> Result<BigRational, String> {
        BigRational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Scalar::new(&a.re + &b.re, &a.im + &b.im));
binop!(Sub, sub, |a, b| Scalar::new(&a.re - &b.re, &a.im - &b.im));
binop!(Mul, mul, |a, b| Scalar::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
binop!(Div, div, |a, b| a * &b.inv());

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

/// Serialize as `{"re": "num/den", "im": "num/den"}` so certificates stay exact.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Scalar", 2)?;
        s.serialize_field("re", &self.re.to_string())?;
        s.serialize_field("im", &self.im.to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            re: String,
            #[serde(default)]
            im: Option<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let re = Scalar::parse_rational(&raw.re).map_err(D::Error::custom)?;
        let im = match raw.im {
            Some(s) => Scalar::parse_rational(&s).map_err(D::Error::custom)?,
            None => BigRational::zero(),
        };
        Ok(Scalar::new(re, im))
    }
}

/// Serde helpers for plain `BigRational` fields rendered as `"num/den"`.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse_rational(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        let b = &a * &a.inv();
        assert_eq!(b, Scalar::one());
        assert_eq!(&a + &(-&a), Scalar::zero());
        assert_eq!(Scalar::i() * Scalar::i(), -Scalar::one());
    }

    #[test]
    fn conjugation() {
        let a = Scalar::new(BigRational::one(), BigRational::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &a.conj()).re, a.norm_sqr());
    }

    #[test]
    fn parse_round_trip() {
        let json = r#"{"re":"3/4","im":"-1/2"}"#;
        let s: Scalar = serde_json::from_str(json).unwrap();
        assert_eq!(s, Scalar::new(
            BigRational::new(BigInt::from(3), BigInt::from(4)),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
        ));
        let back = serde_json::to_string(&s).unwrap();
        let s2: Scalar = serde_json::from_str(&back).unwrap();
        assert_eq!(s, s2);
    }
}
