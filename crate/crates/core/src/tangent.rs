//! Tangent lines without limits, two ways.
//!
//! The point-slope method substitutes the candidate line y = y0 + m(x - x0)
//! into the curve and picks the unique m that makes x0 a double root of the
//! residual. Descartes' method instead finds the circle centered on the
//! x axis that touches the curve at (x0, y0); the tangent is perpendicular
//! to that radius. Both reduce to synthetic division of polynomials and
//! agree exactly.
//!
//! Curves are either polynomial graphs y = p(x) or square-root graphs
//! y = sqrt(p(x)) (the positive branch). For square-root curves the squared
//! form s(x) = p(x) drives both methods: substituting the line into
//! y^2 = s(x) gives 2 y0 m = slope of s at x0, so m = s'(x0) / (2 y0), still
//! with no limit taken.

use thiserror::Error;

use crate::eval::DomainError;
use crate::expr::Expr;
use crate::poly::{slope_by_double_root, Polynomial};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// A graph we can run the tangent constructions on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    /// y = p(x)
    Poly(Polynomial),
    /// y = sqrt(p(x)), positive branch, only queried where p > 0
    Sqrt(Polynomial),
}

/// y - y0 = m (x - x0). The height and slope stay exact whenever the curve
/// value at x0 is rational.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentLine {
    pub x0: Rational,
    pub y0: Scalar,
    pub m: Scalar,
}

/// Output of the tangent-circle construction: the circle center (a, 0), the
/// slope of the radius from the center to the touch point, and the tangent
/// slope. The radial slope is `None` when the radius is vertical, which
/// happens exactly at horizontal tangents.
#[derive(Debug, Clone, PartialEq)]
pub struct DescartesResult {
    pub center_a: Rational,
    pub radial_slope: Option<Scalar>,
    pub tangent_slope: Scalar,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TangentError {
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("curve height is 0 at x0 = {x0}: the radial slope divides by zero; use the point-slope method")]
    VerticalRadialDegenerate { x0: Rational },
    #[error("no tangent construction for {offending}: expected a polynomial or a positive multiple of the square root of one")]
    UnsupportedCurve { offending: Expr },
}

impl TangentError {
    pub fn name(&self) -> &'static str {
        match self {
            TangentError::Domain(_) => "DomainError",
            TangentError::VerticalRadialDegenerate { .. } => "VerticalRadialDegenerate",
            TangentError::UnsupportedCurve { .. } => "UnsupportedCurve",
        }
    }
}

impl Curve {
    /// Recognizes a parsed expression as a supported curve: any polynomial,
    /// or c * q(x)^(k/2) with c > 0, q polynomial and k odd, which is the
    /// square-root curve with radicand c^2 * q^k.
    pub fn from_expr(expr: &Expr) -> Result<Curve, TangentError> {
        let normalized = expr.clone().normalize();
        if let Ok(p) = Polynomial::from_expr(&normalized) {
            return Ok(Curve::Poly(p));
        }
        let unsupported = || TangentError::UnsupportedCurve {
            offending: normalized.clone(),
        };
        let (scale, atom) = match &normalized {
            Expr::ScaledTerm(c, atom) => (c.clone(), atom.as_ref()),
            other => (Rational::one(), other),
        };
        if !scale.is_positive() {
            return Err(unsupported());
        }
        match atom {
            Expr::Power(base, exp) if exp.denom() == &num::BigInt::from(2) && exp.is_positive() => {
                let p = Polynomial::from_expr(base).map_err(|_| unsupported())?;
                let k = num::ToPrimitive::to_usize(exp.numer()).ok_or_else(unsupported)?;
                let radicand = &Polynomial::constant(&scale * &scale) * &poly_pow(&p, k);
                Ok(Curve::Sqrt(radicand))
            }
            _ => Err(unsupported()),
        }
    }

    /// The squared height s(x) = y(x)^2 as a polynomial.
    fn squared_form(&self) -> Polynomial {
        match self {
            Curve::Poly(p) => p * p,
            Curve::Sqrt(p) => p.clone(),
        }
    }

    /// Exact curve height where possible; errors where a square-root curve
    /// is undefined (negative radicand). A zero radicand is fine here: the
    /// height is exactly 0.
    pub fn height(&self, x0: &Rational) -> Result<Scalar, DomainError> {
        match self {
            Curve::Poly(p) => Ok(Scalar::Exact(p.eval(x0))),
            Curve::Sqrt(p) => {
                let radicand = p.eval(x0);
                if radicand.is_negative() {
                    return Err(DomainError::new(format!(
                        "square root of negative radicand {} at x0 = {}",
                        radicand, x0
                    )));
                }
                match radicand.checked_pow_rational(&Rational::new(1, 2)) {
                    Some(root) => Ok(Scalar::Exact(root)),
                    None => Ok(Scalar::Approx(radicand.to_f64().sqrt())),
                }
            }
        }
    }
}

fn poly_pow(p: &Polynomial, k: usize) -> Polynomial {
    let mut acc = Polynomial::constant(Rational::one());
    for _ in 0..k {
        acc = &acc * p;
    }
    acc
}

/// Point-slope tangent: make x0 a double root of curve minus line.
pub fn tangent_point_slope(curve: &Curve, x0: &Rational) -> Result<TangentLine, TangentError> {
    match curve {
        Curve::Poly(p) => Ok(TangentLine {
            x0: x0.clone(),
            y0: Scalar::Exact(p.eval(x0)),
            m: Scalar::Exact(slope_by_double_root(p, x0)),
        }),
        Curve::Sqrt(p) => {
            if !p.eval(x0).is_positive() {
                return Err(TangentError::Domain(DomainError::new(format!(
                    "square-root curve needs a positive radicand at x0 = {}, got {}",
                    x0,
                    p.eval(x0)
                ))));
            }
            let y0 = curve.height(x0)?;
            let inner = slope_by_double_root(p, x0);
            let m = Scalar::Exact(inner)
                .checked_div(&Scalar::from_int(2).mul(&y0))
                .expect("y0 > 0 here");
            Ok(TangentLine {
                x0: x0.clone(),
                y0,
                m,
            })
        }
    }
}

/// Descartes' tangent circle. Eliminating y between the curve's squared form
/// y^2 = s(x) and the circle (x - a)^2 + y^2 = r^2 through (x0, y0) leaves
///
///   D(x; a) = x^2 + s(x) - x0^2 - s(x0) - 2a(x - x0) = B(x) - 2a(x - x0).
///
/// B vanishes at x0, so D has a double root there exactly when a equals half
/// the value at x0 of B's linear quotient. The radius to (x0, y0) then fixes
/// both slopes.
pub fn tangent_descartes(curve: &Curve, x0: &Rational) -> Result<DescartesResult, TangentError> {
    if let Curve::Sqrt(p) = curve {
        if p.eval(x0).is_negative() {
            return Err(TangentError::Domain(DomainError::new(format!(
                "square-root curve needs a positive radicand at x0 = {}, got {}",
                x0,
                p.eval(x0)
            ))));
        }
    }
    let y0 = curve.height(x0)?;
    if y0.is_zero() {
        return Err(TangentError::VerticalRadialDegenerate { x0: x0.clone() });
    }
    let s = curve.squared_form();
    let x_squared = Polynomial::new(vec![Rational::zero(), Rational::zero(), Rational::one()]);
    let b_poly = &(&s + &x_squared)
        - &Polynomial::constant(&s.eval(x0) + &(x0 * x0));
    let (quotient, remainder) = b_poly.divide_by_linear(x0);
    debug_assert!(remainder.is_zero(), "B(x0) = 0 by construction");
    let center_a = quotient.eval(x0) * Rational::new(1, 2);
    let run = x0 - &center_a;
    let radial_slope = if run.is_zero() {
        None
    } else {
        Some(
            y0.checked_div(&Scalar::Exact(run))
                .expect("nonzero denominator"),
        )
    };
    let tangent_slope = Scalar::Exact(&center_a - x0)
        .checked_div(&y0)
        .expect("y0 != 0 was checked");
    Ok(DescartesResult {
        center_a,
        radial_slope,
        tangent_slope,
    })
}

/// Rise over run. The 9/100 of a 90-meter climb over a 1000-meter stretch.
pub fn grade(height: &Rational, length: &Rational) -> Result<Rational, DomainError> {
    if length.is_zero() {
        return Err(DomainError::new(
            "grade needs a nonzero horizontal length".to_string(),
        ));
    }
    Ok(height / length)
}
