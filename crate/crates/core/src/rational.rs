//! Exact arbitrary-precision rational numbers.
//!
//! `Rational` is the only scalar used by the algebraic layer. It is a thin
//! wrapper around `num`'s `BigRational`, which keeps the value reduced with a
//! positive denominator (zero is stored as 0/1). The wrapper adds the exact
//! operations the engine needs: decimal literal conversion, integer powers,
//! and perfect-root extraction for rational exponents.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`. Panics if `denom` is zero; callers that accept
    /// untrusted input must check first.
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "rational denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Rational> {
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer, denom)))
    }

    /// Parses an unsigned decimal literal such as `"12"` or `"0.25"` into an
    /// exact value. Returns `None` when the text is not plain digits with at
    /// most one interior point.
    pub fn from_decimal_str(s: &str) -> Option<Rational> {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: String = [int_part, frac_part].concat();
        let numer = BigInt::parse_bytes(digits.as_bytes(), 10)?;
        let denom = BigInt::from(10u8).pow(frac_part.len() as u32);
        Some(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Reciprocal; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Exact integer power. `None` when the base is zero and the exponent is
    /// negative.
    pub fn pow_i32(&self, exp: i32) -> Option<Rational> {
        if self.is_zero() && exp < 0 {
            return None;
        }
        Some(Rational(self.0.pow(exp)))
    }

    /// Exact rational power, `self^(p/q)`, when it stays rational.
    ///
    /// Integer exponents always succeed (except 0^negative). For a fractional
    /// exponent the base must be nonnegative and both numerator and
    /// denominator must be perfect q-th powers; otherwise `None`, and the
    /// caller falls back to floating point. Negative bases with fractional
    /// exponents are deliberately never folded here: they stay symbolic and
    /// surface as domain errors at evaluation time.
    pub fn checked_pow_rational(&self, exp: &Rational) -> Option<Rational> {
        if exp.is_integer() {
            let e = exp.numer().to_i32()?;
            return self.pow_i32(e);
        }
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return if exp.is_positive() { Some(Rational::zero()) } else { None };
        }
        let q = exp.denom().to_u32()?;
        let p = exp.numer().to_i32()?;
        let root_n = perfect_nth_root(self.0.numer(), q)?;
        let root_d = perfect_nth_root(self.0.denom(), q)?;
        Rational(BigRational::new(root_n, root_d)).pow_i32(p)
    }

    /// Nearest double. Conversion goes through the backing BigRational, which
    /// rounds numerator and denominator separately; the result is within a
    /// couple of ulps of the true value at the magnitudes this crate handles.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// q-th root of a nonnegative integer if it is exact.
fn perfect_nth_root(n: &BigInt, q: u32) -> Option<BigInt> {
    debug_assert!(!n.is_negative());
    let root = n.nth_root(q);
    if root.clone().pow(q) == *n {
        Some(root)
    } else {
        None
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

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / &rhs.0)
    }
}

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

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(1, -2), r(-1, 2));
        assert_eq!(r(0, 7), Rational::zero());
        assert_eq!(r(-3, -9), r(1, 3));
    }

    #[test]
    fn displays_reduced_fraction() {
        assert_eq!(r(9, 100).to_string(), "9/100");
        assert_eq!(r(6, 3).to_string(), "2");
        assert_eq!(r(-1, 2).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(Rational::from_decimal_str("0.5").unwrap(), r(1, 2));
        assert_eq!(Rational::from_decimal_str("12.34").unwrap(), r(617, 50));
        assert_eq!(Rational::from_decimal_str("60").unwrap(), r(60, 1));
        assert!(Rational::from_decimal_str(".5").is_none());
        assert!(Rational::from_decimal_str("1.2.3").is_none());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(r(2, 3).pow_i32(3).unwrap(), r(8, 27));
        assert_eq!(r(2, 1).pow_i32(-2).unwrap(), r(1, 4));
        assert!(Rational::zero().pow_i32(-1).is_none());
        assert_eq!(Rational::zero().pow_i32(3).unwrap(), Rational::zero());
    }

    #[test]
    fn rational_powers_detect_perfect_roots() {
        assert_eq!(r(4, 1).checked_pow_rational(&r(1, 2)).unwrap(), r(2, 1));
        assert_eq!(r(64, 1).checked_pow_rational(&r(1, 2)).unwrap(), r(8, 1));
        assert_eq!(r(8, 27).checked_pow_rational(&r(2, 3)).unwrap(), r(4, 9));
        assert_eq!(r(9, 4).checked_pow_rational(&r(-1, 2)).unwrap(), r(2, 3));
        assert!(r(2, 1).checked_pow_rational(&r(1, 2)).is_none());
        assert!(r(-8, 1).checked_pow_rational(&r(1, 3)).is_none());
        assert_eq!(r(-8, 1).checked_pow_rational(&r(2, 1)).unwrap(), r(64, 1));
        assert_eq!(Rational::zero().checked_pow_rational(&r(1, 2)).unwrap(), Rational::zero());
        assert!(Rational::zero().checked_pow_rational(&r(-1, 2)).is_none());
    }

    #[test]
    fn converts_to_f64() {
        assert_eq!(r(1, 2).to_f64(), 0.5);
        assert_eq!(r(-3, 4).to_f64(), -0.75);
    }
}
