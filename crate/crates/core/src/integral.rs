//! Definite integrals as height increments.
//!
//! The integral of g over [a, b] is G(b) - G(a) for any antiderivative G of
//! g: a subtraction, not a limit of sums. When the table provides G the
//! value is exact wherever the endpoint evaluations are; when it does not
//! (or G is undefined at an endpoint even though g is integrable, as with
//! 1/x over a negative interval), [`integrate`] falls back to Simpson
//! quadrature and says so in its result.
//!
//! Before any of that, the closed interval is scanned for points where the
//! integrand itself is undefined; a hit is a hard error, never a number.
//! The scan uses exact rational sample points, so 1/x over [-1/3, 1] is
//! caught at exactly 0, where floating-point sampling could step over it.
//!
//! The mean value W of g over [a, b] is the integral divided by the width,
//! and a witness c with g(c) = W is located by sign-change scan plus
//! bisection, with the achieved residual reported rather than assumed.

use thiserror::Error;

use crate::da::{antiderivative, DaError};
use crate::eval::DomainError;
use crate::expr::Expr;
use crate::oracle::{quadrature, OracleError, QuadratureConfig};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// How many uniform subintervals the singularity scan uses; the sample set
/// is these subinterval endpoints, so both integration bounds are included.
const SCAN_SUBINTERVALS: i64 = 4096;

/// Subintervals for the mean-value witness scan.
const WITNESS_GRID: i64 = 1024;

/// Bisection stops when the bracket is this narrow.
const WITNESS_BRACKET: f64 = 1e-13;

/// A reported witness must satisfy |g(c) - W| at most this.
const WITNESS_RESIDUAL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralMethod {
    SymbolicHeightIncrement,
    NumericQuadrature,
}

impl IntegralMethod {
    pub fn name(self) -> &'static str {
        match self {
            IntegralMethod::SymbolicHeightIncrement => "height-increment",
            IntegralMethod::NumericQuadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResult {
    pub value: Scalar,
    pub method: IntegralMethod,
    /// Present exactly when the method is the symbolic height increment.
    pub antiderivative_used: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("{0}")]
    Da(#[from] DaError),
    #[error("{0}")]
    Oracle(OracleError),
    #[error("integrand undefined at {at} inside the integration interval")]
    NonIntegrableSingularity { at: Rational },
    #[error("antiderivative has no exact value at the lower bound {at}")]
    LowerEndpointNotExact { at: Rational },
}

impl IntegralError {
    pub fn name(&self) -> &'static str {
        match self {
            IntegralError::Domain(_) => "DomainError",
            IntegralError::Da(e) => e.name(),
            IntegralError::Oracle(e) => e.name(),
            IntegralError::NonIntegrableSingularity { .. } => "NonIntegrableSingularity",
            IntegralError::LowerEndpointNotExact { .. } => "LowerEndpointNotExact",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanValueResult {
    /// W = integral / width.
    pub mean: Scalar,
    /// A point c in [a, b] with g(c) = W up to the reported residual.
    pub witness_c: Scalar,
    /// |g(c) - W|, at most 1e-9.
    pub residual: Scalar,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanValueError {
    #[error("mean value needs a < b, got a = {a}, b = {b}")]
    DegenerateInterval { a: Rational, b: Rational },
    #[error("no witness bracketed: {detail}")]
    WitnessNotBracketed { detail: String },
    #[error("{0}")]
    Integral(#[from] IntegralError),
}

impl MeanValueError {
    pub fn name(&self) -> &'static str {
        match self {
            MeanValueError::DegenerateInterval { .. } => "DegenerateInterval",
            MeanValueError::WitnessNotBracketed { .. } => "WitnessNotBracketed",
            MeanValueError::Integral(e) => e.name(),
        }
    }
}

/// Integral of g from a to b, preferring the exact height increment and
/// falling back to quadrature when the table has no antiderivative or the
/// antiderivative cannot be evaluated at an endpoint. Bounds may come in
/// either order; swapping them negates the value.
pub fn integrate(g: &Expr, a: &Rational, b: &Rational) -> Result<IntegralResult, IntegralError> {
    let g = g.clone().normalize();
    scan_for_singularities(&g, a, b)?;
    match height_increment(&g, a, b) {
        Ok(result) => Ok(result),
        Err(IntegralError::Da(_)) | Err(IntegralError::Domain(_)) => by_quadrature(&g, a, b),
        Err(other) => Err(other),
    }
}

/// Height increment only; errors instead of falling back.
pub fn integrate_symbolic(
    g: &Expr,
    a: &Rational,
    b: &Rational,
) -> Result<IntegralResult, IntegralError> {
    let g = g.clone().normalize();
    scan_for_singularities(&g, a, b)?;
    height_increment(&g, a, b)
}

/// Quadrature only, regardless of what the table knows.
pub fn integrate_numeric(
    g: &Expr,
    a: &Rational,
    b: &Rational,
) -> Result<IntegralResult, IntegralError> {
    let g = g.clone().normalize();
    scan_for_singularities(&g, a, b)?;
    by_quadrature(&g, a, b)
}

/// Integral from a to a free upper bound: the expression G(x) - G(a). Its
/// derivative is g again. Requires G(a) to have an exact rational value so
/// the result stays a closed-form expression.
pub fn integrate_symbolic_upper(g: &Expr, a: &Rational) -> Result<Expr, IntegralError> {
    let g = g.clone().normalize();
    let big_g = antiderivative(&g)?;
    let at_a = big_g.evaluate_at(a)?;
    let anchor = match at_a.exact() {
        Some(v) => v.clone(),
        None => {
            return Err(IntegralError::LowerEndpointNotExact { at: a.clone() });
        }
    };
    Ok(Expr::sum(vec![big_g, Expr::constant(-anchor)]).normalize())
}

fn height_increment(
    g: &Expr,
    a: &Rational,
    b: &Rational,
) -> Result<IntegralResult, IntegralError> {
    let big_g = antiderivative(g)?;
    let upper = big_g.evaluate_at(b)?;
    let lower = big_g.evaluate_at(a)?;
    Ok(IntegralResult {
        value: upper.sub(&lower),
        method: IntegralMethod::SymbolicHeightIncrement,
        antiderivative_used: Some(big_g),
    })
}

fn by_quadrature(g: &Expr, a: &Rational, b: &Rational) -> Result<IntegralResult, IntegralError> {
    let value = quadrature(g, a.to_f64(), b.to_f64(), &QuadratureConfig::default())
        .map_err(IntegralError::Oracle)?;
    Ok(IntegralResult {
        value: Scalar::Approx(value),
        method: IntegralMethod::NumericQuadrature,
        antiderivative_used: None,
    })
}

/// Exact-rational sweep of the closed interval for undefined points.
/// Skipped for integrands that are total on the reals.
fn scan_for_singularities(g: &Expr, a: &Rational, b: &Rational) -> Result<(), IntegralError> {
    if g.is_total() {
        return Ok(());
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let width = hi - lo;
    if width.is_zero() {
        return match g.evaluate_at(lo) {
            Ok(_) => Ok(()),
            Err(_) => Err(IntegralError::NonIntegrableSingularity { at: lo.clone() }),
        };
    }
    for k in 0..=SCAN_SUBINTERVALS {
        let x = lo + &(&width * &Rational::new(k, SCAN_SUBINTERVALS));
        if g.evaluate_at(&x).is_err() {
            return Err(IntegralError::NonIntegrableSingularity { at: x });
        }
    }
    Ok(())
}

/// Mean value W of g over [a, b] plus a witness point where g attains it.
pub fn mean_value(g: &Expr, a: &Rational, b: &Rational) -> Result<MeanValueResult, MeanValueError> {
    if a >= b {
        return Err(MeanValueError::DegenerateInterval {
            a: a.clone(),
            b: b.clone(),
        });
    }
    let g = g.clone().normalize();
    let integral = integrate(&g, a, b)?;
    let width = b - a;
    let mean = integral
        .value
        .checked_div(&Scalar::Exact(width.clone()))
        .expect("a < b makes the width nonzero");

    // A constant integrand equals its own mean everywhere; the midpoint is
    // the canonical witness and the residual is exactly zero.
    if let Expr::Const(c) = &g {
        debug_assert_eq!(mean, Scalar::Exact(c.clone()));
        let midpoint = &(a + b) * &Rational::new(1, 2);
        return Ok(MeanValueResult {
            mean,
            witness_c: Scalar::Exact(midpoint),
            residual: Scalar::Exact(Rational::zero()),
        });
    }

    witness_search(&g, a, b, mean)
}

fn witness_search(
    g: &Expr,
    a: &Rational,
    b: &Rational,
    mean: Scalar,
) -> Result<MeanValueResult, MeanValueError> {
    let w = mean.to_f64();
    let fa = a.to_f64();
    let fb = b.to_f64();
    let width = b - a;
    let eval = |x: f64| -> Result<f64, MeanValueError> {
        g.eval_f64(x)
            .map(|v| v - w)
            .map_err(|e| MeanValueError::Integral(IntegralError::Domain(e)))
    };

    // Grid pass: an exact zero at a grid node gives a rational witness; a
    // sign change between nodes gives a bisection bracket.
    let mut bracket: Option<(f64, f64, f64)> = None;
    let mut previous = eval(fa)?;
    if previous == 0.0 {
        return finish(g, mean, Scalar::Exact(a.clone()));
    }
    let mut prev_x = fa;
    for k in 1..=WITNESS_GRID {
        let x = if k == WITNESS_GRID {
            fb
        } else {
            fa + (fb - fa) * (k as f64 / WITNESS_GRID as f64)
        };
        let r = eval(x)?;
        if r == 0.0 {
            let node = a + &(&width * &Rational::new(k, WITNESS_GRID));
            return finish(g, mean, Scalar::Exact(node));
        }
        if previous.signum() != r.signum() {
            bracket = Some((prev_x, x, previous));
            break;
        }
        previous = r;
        prev_x = x;
    }

    let (mut lo, mut hi, mut r_lo) = bracket.ok_or_else(|| MeanValueError::WitnessNotBracketed {
        detail: format!(
            "no sign change of g(x) - W across {} subintervals of [{}, {}]",
            WITNESS_GRID, a, b
        ),
    })?;

    while hi - lo > WITNESS_BRACKET {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r_mid = eval(mid)?;
        if r_mid == 0.0 {
            return finish(g, mean, Scalar::Approx(mid));
        }
        if r_mid.signum() == r_lo.signum() {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
    finish(g, mean, Scalar::Approx(0.5 * (lo + hi)))
}

fn finish(g: &Expr, mean: Scalar, witness: Scalar) -> Result<MeanValueResult, MeanValueError> {
    let at_witness = g
        .eval_f64(witness.to_f64())
        .map_err(|e| MeanValueError::Integral(IntegralError::Domain(e)))?;
    let residual = (at_witness - mean.to_f64()).abs();
    if residual > WITNESS_RESIDUAL {
        return Err(MeanValueError::WitnessNotBracketed {
            detail: format!(
                "best candidate c = {} leaves residual {:e}",
                witness.to_f64(),
                residual
            ),
        });
    }
    // An exact witness with an exact mean deserves an exact residual check.
    let residual = match (&witness, &mean) {
        (Scalar::Exact(c), Scalar::Exact(m)) => match g.evaluate_at(c) {
            Ok(Scalar::Exact(v)) => Scalar::Exact((&v - m).abs()),
            _ => Scalar::Approx(residual),
        },
        _ => Scalar::Approx(residual),
    };
    Ok(MeanValueResult {
        mean,
        witness_c: witness,
        residual,
    })
}
