//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order of degree with no trailing
//! zeros, so the zero polynomial is an empty vector. The interesting entry
//! point is [`slope_by_double_root`]: the tangent slope of a polynomial
//! graph at x0 is found by requiring the line through (x0, p(x0)) to meet
//! the curve in a double root there. Writing p(x) - p(x0) = q(x)(x - x0),
//! the line y = p(x0) + m(x - x0) leaves the residual (q(x) - m)(x - x0),
//! which acquires the second factor of (x - x0) exactly when m = q(x0).
//! Everything is exact; no limits are taken anywhere.

use std::ops::{Add, Mul, Sub};

use num::ToPrimitive;
use thiserror::Error;

use crate::expr::Expr;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no polynomial form for {offending}")]
pub struct NotPolynomialError {
    pub offending: Expr,
}

impl NotPolynomialError {
    pub fn name(&self) -> &'static str {
        "NotPolynomialError"
    }
}

impl Polynomial {
    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rational>) -> Polynomial {
        while coeffs.last().map_or(false, Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Reads a normalized expression as a polynomial. Fails on fractional
    /// or negative powers and on function atoms, reporting the subterm that
    /// has no polynomial form.
    pub fn from_expr(expr: &Expr) -> Result<Polynomial, NotPolynomialError> {
        fn monomial(coeff: Rational, degree: usize) -> Polynomial {
            let mut coeffs = vec![Rational::zero(); degree + 1];
            coeffs[degree] = coeff;
            Polynomial::new(coeffs)
        }
        fn atom_degree(atom: &Expr) -> Result<usize, NotPolynomialError> {
            match atom {
                Expr::Var => Ok(1),
                Expr::Power(base, exp)
                    if **base == Expr::Var && exp.is_integer() && !exp.is_negative() =>
                {
                    exp.numer().to_usize().ok_or_else(|| NotPolynomialError {
                        offending: atom.clone(),
                    })
                }
                other => Err(NotPolynomialError {
                    offending: other.clone(),
                }),
            }
        }
        let normalized = expr.clone().normalize();
        let mut acc = Polynomial::zero();
        let terms: Vec<Expr> = match normalized {
            Expr::Sum(children) => children,
            single => vec![single],
        };
        for term in terms {
            let piece = match term {
                Expr::Const(c) => Polynomial::constant(c),
                Expr::ScaledTerm(c, atom) => monomial(c, atom_degree(&atom)?),
                atom => monomial(Rational::one(), atom_degree(&atom)?),
            };
            acc = &acc + &piece;
        }
        Ok(acc)
    }

    pub fn to_expr(&self) -> Expr {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                Expr::scaled(
                    c.clone(),
                    Expr::power_of_var(Rational::from_int(k as i64)),
                )
            })
            .collect();
        Expr::sum(terms).normalize()
    }

    /// Synthetic division by (x - r). Returns (quotient, remainder) with
    /// self = quotient * (x - r) + remainder.
    pub fn divide_by_linear(&self, r: &Rational) -> (Polynomial, Rational) {
        if self.coeffs.is_empty() {
            return (Polynomial::zero(), Rational::zero());
        }
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for k in (0..=n).rev() {
            let value = &self.coeffs[k] + &(r * &carry);
            if k == 0 {
                return (Polynomial::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

/// Tangent slope of a polynomial graph at x0 by the double-root condition.
/// Divides p(x) - p(x0) by (x - x0) and evaluates the quotient at x0; see
/// the module docs for why that quotient value is the slope.
pub fn slope_by_double_root(p: &Polynomial, x0: &Rational) -> Rational {
    let height = p.eval(x0);
    let shifted = p - &Polynomial::constant(height);
    let (quotient, remainder) = shifted.divide_by_linear(x0);
    debug_assert!(remainder.is_zero(), "x0 must be a root of p(x) - p(x0)");
    quotient.eval(x0)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    fn from_text(s: &str) -> Polynomial {
        Polynomial::from_expr(&parse_expr(s).unwrap().expr).unwrap()
    }

    #[test]
    fn construction_trims_and_reports_degree() {
        let p = Polynomial::new(vec![r(1, 1), r(2, 1), r(0, 1), r(0, 1)]);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::zero().degree(), None);
        assert!(poly(&[0]).is_zero());
    }

    #[test]
    fn horner_evaluation_is_exact() {
        let p = from_text("x^4 + 2x");
        assert_eq!(p.coeffs().len(), 5);
        assert_eq!(p.eval(&r(1, 2)), r(17, 16));
        assert_eq!(p.eval(&r(-1, 1)), r(-1, 1));
    }

    #[test]
    fn from_expr_rejects_non_polynomials() {
        for bad in ["x^(1/2)", "1/x", "sin(x)", "x + sqrt(x)"] {
            let e = parse_expr(bad).unwrap().expr;
            let err = Polynomial::from_expr(&e).unwrap_err();
            assert_eq!(err.name(), "NotPolynomialError");
        }
    }

    #[test]
    fn expr_roundtrip() {
        let p = from_text("x^4 + 2x");
        assert_eq!(p.to_expr().canonical_string("x"), "x^4 + 2 x");
        assert_eq!(Polynomial::from_expr(&p.to_expr()).unwrap(), p);
    }

    #[test]
    fn synthetic_division_reconstructs_the_dividend() {
        let p = from_text("x^2 + x - 2");
        let (q, rem) = p.divide_by_linear(&r(1, 1));
        assert_eq!(q, poly(&[2, 1]));
        assert!(rem.is_zero());

        let p = from_text("x^3 - 2x + 5");
        let at = r(-3, 2);
        let (q, rem) = p.divide_by_linear(&at);
        let linear = Polynomial::new(vec![-&at, r(1, 1)]);
        let rebuilt = &(&q * &linear) + &Polynomial::constant(rem.clone());
        assert_eq!(rebuilt, p);
        assert_eq!(rem, p.eval(&at));
    }

    #[test]
    fn double_root_slope_matches_hand_results() {
        assert_eq!(slope_by_double_root(&from_text("x^2"), &r(1, 1)), r(2, 1));
        assert_eq!(slope_by_double_root(&from_text("x^2"), &r(3, 7)), r(6, 7));
        assert_eq!(
            slope_by_double_root(&from_text("x^4 + 2x"), &r(1, 1)),
            r(6, 1)
        );
        assert_eq!(
            slope_by_double_root(&from_text("7"), &r(5, 1)),
            Rational::zero()
        );
    }

    #[test]
    fn double_root_certificate_holds() {
        // Subtracting the tangent line leaves a polynomial divisible by
        // (x - x0) twice over.
        let p = from_text("x^5 - 3x^2 + x - 4");
        let x0 = r(4, 3);
        let m = slope_by_double_root(&p, &x0);
        // The line in coefficient form: p(x0) + m(x - x0).
        let line_through = Polynomial::new(vec![&p.eval(&x0) - &(&m * &x0), m]);
        let residual = &p - &line_through;
        let (once, rem1) = residual.divide_by_linear(&x0);
        let (_, rem2) = once.divide_by_linear(&x0);
        assert!(rem1.is_zero());
        assert!(rem2.is_zero());
    }
}
