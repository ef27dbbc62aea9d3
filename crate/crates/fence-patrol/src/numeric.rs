//! Arbitrary-precision rational numbers in canonical form.
//!
//! Every value is kept reduced to lowest terms with a strictly positive
//! denominator, so equality is structural and rendering is unique: `"p/q"`,
//! or just `"p"` when the denominator is one. All schedule data (times,
//! positions, speeds, idle values) flows through this type; floating point
//! only appears at the plotting boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Errors produced when constructing rationals from untrusted input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
    #[error("expected a positive value, got {0}")]
    NonPositive(String),
}

/// An exact rational number `p/q`, always in lowest terms with `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` and reduces it. Panics if `den == 0`; use the
    /// [`FromStr`] impl for fallible parsing of external data.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::from_integer(BigInt::from(1)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "cannot invert zero");
        Rational(self.0.recip())
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Value reduced into `[0, modulus)` by subtracting an integer multiple
    /// of `modulus`. Requires `modulus > 0`.
    pub fn rem_euclid(&self, modulus: &Rational) -> Rational {
        assert!(modulus.is_positive(), "modulus must be positive");
        let q = (self / modulus).floor();
        self - &(Rational::from_bigint(q) * modulus.clone())
    }

    /// Least common multiple for positive rationals: the smallest positive
    /// `r` such that `r/self` and `r/other` are both integers. For canonical
    /// `p1/q1` and `p2/q2` this is `lcm(p1,p2)/gcd(q1,q2)`.
    pub fn lcm(&self, other: &Rational) -> Result<Rational, NumericError> {
        for v in [self, other] {
            if !v.is_positive() {
                return Err(NumericError::NonPositive(v.to_string()));
            }
        }
        let num = self.numer().lcm(other.numer());
        let den = self.denom().gcd(other.denom());
        Ok(Rational(BigRational::new(num, den)))
    }

    /// Nearest `f64` approximation; only intended for rendering.
    pub fn approx_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn digits_only(part: &str) -> bool {
            !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit())
        }
        let malformed = || NumericError::Malformed(s.to_string());
        let (num_part, den_part) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num_digits = num_part.strip_prefix('-').unwrap_or(num_part);
        if !digits_only(num_digits) {
            return Err(malformed());
        }
        let num: BigInt = num_part.parse().map_err(|_| malformed())?;
        let den: BigInt = match den_part {
            Some(d) => {
                if !digits_only(d) {
                    return Err(malformed());
                }
                d.parse().map_err(|_| malformed())?
            }
            None => BigInt::from(1),
        };
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Shorthand used heavily in tests and generators: `rat(10, 3)` is `10/3`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_renders_canonical_form() {
        assert_eq!(r("10/3").to_string(), "10/3");
        assert_eq!(r("4/6").to_string(), "2/3");
        assert_eq!(r("-4/6").to_string(), "-2/3");
        assert_eq!(r("7").to_string(), "7");
        assert_eq!(r("-0/5").to_string(), "0");
        assert_eq!(r("14/7").to_string(), "2");
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "", "/", "1/", "/2", "1.5", "1e3", "one", "1 /2", "+3", "3/-2", "--4",
        ] {
            assert!(
                matches!(bad.parse::<Rational>(), Err(NumericError::Malformed(_))),
                "expected malformed: {bad:?}"
            );
        }
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(NumericError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(r("1/3") + r("1/6"), r("1/2"));
        assert_eq!(r("10/3") * r("3/5"), r("2"));
        assert_eq!(r("1") - r("2/3"), r("1/3"));
        assert_eq!(r("5/2") / r("1/4"), r("10"));
        assert_eq!(-r("3/4"), r("-3/4"));
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(r("1/3") < r("1/2"));
        assert!(r("-1/2") < r("1/3"));
        assert!(r("7/3") > r("2"));
    }

    #[test]
    fn lcm_matches_known_cases() {
        let cases = [
            ("1/2", "1/3", "1"),
            ("8", "2", "8"),
            ("10/3", "5/2", "10"),
            ("25/27", "5", "25"),
            ("1/4", "1/6", "1/2"),
        ];
        for (a, b, want) in cases {
            assert_eq!(r(a).lcm(&r(b)).unwrap(), r(want), "lcm({a},{b})");
        }
    }

    #[test]
    fn lcm_rejects_nonpositive() {
        assert!(r("0").lcm(&r("1")).is_err());
        assert!(r("1").lcm(&r("-2/3")).is_err());
    }

    // Independent oracle: the lcm of a and b must be a common multiple, and no
    // smaller multiple k*a for k = 1..n may already be a multiple of b.
    #[test]
    fn lcm_is_least_common_multiple_by_search() {
        let pairs = [
            (rat(1, 2), rat(1, 3)),
            (rat(10, 3), rat(5, 2)),
            (rat(25, 27), rat(5, 1)),
            (rat(3, 4), rat(7, 6)),
            (rat(8, 1), rat(12, 5)),
        ];
        for (a, b) in pairs {
            let l = a.lcm(&b).unwrap();
            assert!((&l / &a).is_integer() && (&l / &b).is_integer());
            let mut k = Rational::one();
            loop {
                let candidate = &k * &a;
                if (&candidate / &b).is_integer() {
                    assert_eq!(candidate, l, "first common multiple of {a} and {b}");
                    break;
                }
                k = k + Rational::one();
            }
        }
    }

    #[test]
    fn rem_euclid_reduces_into_range() {
        assert_eq!(r("17/2").rem_euclid(&r("8")), r("1/2"));
        assert_eq!(r("-1/3").rem_euclid(&r("1")), r("2/3"));
        assert_eq!(r("8").rem_euclid(&r("8")), r("0"));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(r("7/2").floor(), BigInt::from(3));
        assert_eq!(r("7/2").ceil(), BigInt::from(4));
        assert_eq!(r("-7/2").floor(), BigInt::from(-4));
        assert_eq!(r("3").floor(), BigInt::from(3));
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let v = r("4/6");
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"2/3\"");
        let back: Rational = serde_json::from_str("\"2/3\"").unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<Rational>("\"1/0\"").is_err());
        assert!(serde_json::from_str::<Rational>("\"1.5\"").is_err());
    }
}
