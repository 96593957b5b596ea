//! Numerical cross-checks in double precision.
//!
//! The symbolic machinery never needs a limit; these routines approximate
//! the same quantities numerically so tests can compare the two, and so the
//! integrator has a fallback when no antiderivative exists in the table.
//!
//! Quadrature is composite Simpson with the panel count doubled until two
//! successive estimates agree within an absolute tolerance. Per-panel
//! contributions are summed by a fixed pairwise tree so a given input yields
//! bit-identical output on every run and platform.

use thiserror::Error;

use crate::eval::DomainError;
use crate::expr::Expr;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Upper bound on Simpson panels; must be a power of two.
    pub max_panels: usize,
    /// Successive-estimate agreement required to stop; must be positive.
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> QuadratureConfig {
        QuadratureConfig {
            max_panels: 1 << 20,
            abs_tol: 1e-8,
        }
    }
}

impl QuadratureConfig {
    pub fn new(max_panels: usize, abs_tol: f64) -> Result<QuadratureConfig, OracleError> {
        if !max_panels.is_power_of_two() {
            return Err(OracleError::InvalidConfig {
                detail: format!("max_panels must be a power of two, got {}", max_panels),
            });
        }
        if !(abs_tol > 0.0) {
            return Err(OracleError::InvalidConfig {
                detail: format!("abs_tol must be positive, got {}", abs_tol),
            });
        }
        Ok(QuadratureConfig {
            max_panels,
            abs_tol,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("panel limit hit before tolerance: estimate {estimate}, last delta {achieved_delta}")]
    ToleranceNotReached { estimate: f64, achieved_delta: f64 },
    #[error("invalid configuration: {detail}")]
    InvalidConfig { detail: String },
}

impl OracleError {
    pub fn name(&self) -> &'static str {
        match self {
            OracleError::Domain(_) => "DomainError",
            OracleError::ToleranceNotReached { .. } => "ToleranceNotReached",
            OracleError::InvalidConfig { .. } => "InvalidConfig",
        }
    }
}

/// Symmetric secant slope (f(x+h) - f(x-h)) / 2h. Truncation error is
/// O(h^2) on smooth integrands.
pub fn central_difference(expr: &Expr, x: f64, h: f64) -> Result<f64, OracleError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(OracleError::InvalidConfig {
            detail: format!("step must be positive and finite, got {}", h),
        });
    }
    let upper = expr.eval_f64(x + h)?;
    let lower = expr.eval_f64(x - h)?;
    Ok((upper - lower) / (2.0 * h))
}

/// Step used for derivative cross-checks: 1e-6 scaled by the magnitude of
/// the sample point, balancing truncation against rounding.
pub fn default_step(x: f64) -> f64 {
    1e-6 * x.abs().max(1.0)
}

/// Composite Simpson with successive panel doubling. Returns once two
/// estimates agree within `abs_tol`; errs with the best estimate if
/// `max_panels` is reached first.
pub fn quadrature(
    expr: &Expr,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, OracleError> {
    QuadratureConfig::new(cfg.max_panels, cfg.abs_tol)?;
    if a == b {
        return Ok(0.0);
    }
    let mut panels = 1;
    let mut previous: Option<f64> = None;
    loop {
        let estimate = simpson_estimate(expr, a, b, panels)?;
        let delta = previous.map(|prev| (estimate - prev).abs());
        if let Some(delta) = delta {
            if delta <= cfg.abs_tol {
                return Ok(estimate);
            }
        }
        if panels >= cfg.max_panels {
            return Err(OracleError::ToleranceNotReached {
                estimate,
                achieved_delta: delta.unwrap_or(f64::INFINITY),
            });
        }
        previous = Some(estimate);
        panels *= 2;
    }
}

fn simpson_estimate(expr: &Expr, a: f64, b: f64, panels: usize) -> Result<f64, DomainError> {
    let steps = 2 * panels;
    let h = (b - a) / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    for j in 0..=steps {
        // Pin the endpoints so rounding in a + j*h cannot step outside
        // [a, b] and trip a spurious domain error there.
        let x = if j == 0 {
            a
        } else if j == steps {
            b
        } else {
            a + j as f64 * h
        };
        samples.push(expr.eval_f64(x)?);
    }
    let contributions: Vec<f64> = (0..panels)
        .map(|i| (samples[2 * i] + 4.0 * samples[2 * i + 1] + samples[2 * i + 2]) * (h / 3.0))
        .collect();
    Ok(pairwise_sum(&contributions))
}

/// Left-endpoint Riemann sum with n equal strips, the textbook rectangle
/// picture. Provided for illustration and tests; the fallback integrator
/// uses Simpson.
pub fn riemann_left_sum(expr: &Expr, a: f64, b: f64, n: usize) -> Result<f64, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidConfig {
            detail: "rectangle count must be positive".to_string(),
        });
    }
    let w = (b - a) / n as f64;
    let mut contributions = Vec::with_capacity(n);
    for i in 0..n {
        let x = if i == 0 { a } else { a + i as f64 * w };
        contributions.push(expr.eval_f64(x)? * w);
    }
    Ok(pairwise_sum(&contributions))
}

/// Fixed-shape tree reduction; the grouping depends only on the length, so
/// the rounded result is reproducible.
fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap().expr
    }

    #[test]
    fn pairwise_sum_is_a_plain_sum_in_exact_cases() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[7.5]), 7.5);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0, 4.0, 5.0]), 15.0);
    }

    #[test]
    fn quadrature_matches_known_areas() {
        let cfg = QuadratureConfig::default();
        let third = quadrature(&e("x^2"), 0.0, 1.0, &cfg).unwrap();
        assert!((third - 1.0 / 3.0).abs() < 1e-10);
        let quarter_circle = quadrature(&e("sqrt(1 - x^2)"), 0.0, 1.0, &cfg).unwrap();
        assert!((quarter_circle - std::f64::consts::FRAC_PI_4).abs() < 1e-6);
        let two = quadrature(&e("1"), 0.0, 2.0, &cfg).unwrap();
        assert_eq!(two, 2.0);
    }

    #[test]
    fn simpson_is_exact_on_cubics_with_one_panel() {
        let quarter = simpson_estimate(&e("x^3"), 0.0, 1.0, 1).unwrap();
        assert!((quarter - 0.25).abs() < 1e-15);
        let mixed = simpson_estimate(&e("2x^3 - x^2 + 4x - 7"), -1.0, 2.0, 1).unwrap();
        // Antiderivative x^4/2 - x^3/3 + 2x^2 - 7x between -1 and 2.
        let expected = (8.0 - 8.0 / 3.0 + 8.0 - 14.0) - (0.5 + 1.0 / 3.0 + 2.0 + 7.0);
        assert!((mixed - expected).abs() < 1e-13);
    }

    #[test]
    fn reversed_bounds_flip_the_sign() {
        let cfg = QuadratureConfig::default();
        let forward = quadrature(&e("x^2"), 0.0, 1.0, &cfg).unwrap();
        let backward = quadrature(&e("x^2"), 1.0, 0.0, &cfg).unwrap();
        assert_eq!(forward, -backward);
        assert_eq!(quadrature(&e("x^2"), 1.0, 1.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn tolerance_failure_reports_the_best_estimate() {
        let cfg = QuadratureConfig::new(2, 1e-12).unwrap();
        let err = quadrature(&e("sqrt(x)"), 0.0, 1.0, &cfg).unwrap_err();
        match err {
            OracleError::ToleranceNotReached {
                estimate,
                achieved_delta,
            } => {
                assert!((estimate - 2.0 / 3.0).abs() < 0.05);
                assert!(achieved_delta > 1e-12);
            }
            other => panic!("expected tolerance failure, got {:?}", other),
        }
    }

    #[test]
    fn domain_errors_surface_from_sampling() {
        let cfg = QuadratureConfig::default();
        let err = quadrature(&e("ln(x)"), -1.0, 1.0, &cfg).unwrap_err();
        assert_eq!(err.name(), "DomainError");
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(3, 1e-8).is_err());
        assert!(QuadratureConfig::new(0, 1e-8).is_err());
        assert!(QuadratureConfig::new(4, 0.0).is_err());
        assert!(QuadratureConfig::new(4, -1.0).is_err());
        assert!(QuadratureConfig::new(1, 1e-3).is_ok());
    }

    #[test]
    fn central_difference_near_known_slopes() {
        let slope = central_difference(&e("x^2"), 3.0, 1e-6).unwrap();
        assert!((slope - 6.0).abs() < 1e-9);
        let flat = central_difference(&e("5"), 0.3, 1e-6).unwrap();
        assert!(flat.abs() < 1e-10);
        let mixed = central_difference(&e("x^(3/2) + 4x^3"), 1.0, default_step(1.0)).unwrap();
        assert!((mixed - 13.5).abs() < 1e-8);
        assert!(central_difference(&e("x"), 0.0, 0.0).is_err());
        assert!(central_difference(&e("ln(x)"), 0.0, 1e-6).is_err());
    }

    #[test]
    fn left_rectangles_at_fixed_count() {
        let s = riemann_left_sum(&e("x"), 0.0, 1.0, 4).unwrap();
        assert_eq!(s, 0.375);
        assert!(riemann_left_sum(&e("x"), 0.0, 1.0, 0).is_err());
    }
}
