//! Evaluation of expressions at a point.
//!
//! Evaluation at an exact rational stays exact as long as every operation is
//! closed over the rationals: sums, rational multiples, integer powers, and
//! fractional powers that land on perfect roots. A handful of special
//! function values that are exactly rational are folded too (sin 0, cos 0,
//! tan 0, sec 0, exp 0, ln 1), which keeps antiderivative height anchors at
//! 0 exact. Everything else drops to f64, where each node is computed with
//! the platform's correctly rounded operation, so the result is within a
//! couple of ulps per node.

use thiserror::Error;

use crate::expr::{Expr, FnKind};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// The expression was asked for a value outside its domain. `context`
/// identifies the offending operation and the argument that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{context}")]
pub struct DomainError {
    pub context: String,
}

impl DomainError {
    pub fn new(context: impl Into<String>) -> DomainError {
        DomainError {
            context: context.into(),
        }
    }

    pub fn name(&self) -> &'static str {
        "DomainError"
    }
}

impl Expr {
    /// Evaluates at `x`. Exact inputs produce exact outputs whenever the
    /// value is rational by construction; otherwise the result is `Approx`.
    pub fn evaluate(&self, x: &Scalar) -> Result<Scalar, DomainError> {
        match x {
            Scalar::Approx(v) => self.eval_f64(*v).map(Scalar::Approx),
            Scalar::Exact(_) => self.eval_scalar(x),
        }
    }

    /// Convenience wrapper for exact arguments.
    pub fn evaluate_at(&self, x: &Rational) -> Result<Scalar, DomainError> {
        self.eval_scalar(&Scalar::Exact(x.clone()))
    }

    fn eval_scalar(&self, x: &Scalar) -> Result<Scalar, DomainError> {
        match self {
            Expr::Const(c) => Ok(Scalar::Exact(c.clone())),
            Expr::Var => Ok(x.clone()),
            Expr::Sum(children) => {
                let mut total = Scalar::Exact(Rational::zero());
                for child in children {
                    total = total.add(&child.eval_scalar(x)?);
                }
                Ok(total)
            }
            Expr::ScaledTerm(c, inner) => {
                Ok(Scalar::Exact(c.clone()).mul(&inner.eval_scalar(x)?))
            }
            Expr::Power(base, exp) => {
                let v = base.eval_scalar(x)?;
                power_scalar(&v, exp)
            }
            Expr::Apply(f, arg) => {
                let v = arg.eval_scalar(x)?;
                apply_scalar(*f, &v)
            }
        }
    }

    /// Pure floating evaluation; the engine behind the numeric oracle and
    /// plotting. Domain checks match the exact path.
    pub fn eval_f64(&self, x: f64) -> Result<f64, DomainError> {
        match self {
            Expr::Const(c) => Ok(c.to_f64()),
            Expr::Var => Ok(x),
            Expr::Sum(children) => {
                let mut total = 0.0;
                for child in children {
                    total += child.eval_f64(x)?;
                }
                Ok(total)
            }
            Expr::ScaledTerm(c, inner) => Ok(c.to_f64() * inner.eval_f64(x)?),
            Expr::Power(base, exp) => {
                let v = base.eval_f64(x)?;
                power_f64(v, exp)
            }
            Expr::Apply(f, arg) => {
                let v = arg.eval_f64(x)?;
                apply_f64(*f, v)
            }
        }
    }
}

fn power_scalar(base: &Scalar, exp: &Rational) -> Result<Scalar, DomainError> {
    match base {
        Scalar::Exact(r) => {
            if r.is_zero() {
                return if exp.is_negative() {
                    Err(DomainError::new(format!(
                        "0^({}) divides by zero",
                        exp
                    )))
                } else {
                    Ok(Scalar::Exact(Rational::zero()))
                };
            }
            if r.is_negative() && !exp.is_integer() {
                return Err(DomainError::new(format!(
                    "({})^({}) takes a fractional power of a negative value",
                    r, exp
                )));
            }
            match r.checked_pow_rational(exp) {
                Some(v) => Ok(Scalar::Exact(v)),
                None => power_f64(r.to_f64(), exp).map(Scalar::Approx),
            }
        }
        Scalar::Approx(v) => power_f64(*v, exp).map(Scalar::Approx),
    }
}

fn power_f64(base: f64, exp: &Rational) -> Result<f64, DomainError> {
    if base == 0.0 && exp.is_negative() {
        return Err(DomainError::new(format!("0^({}) divides by zero", exp)));
    }
    if base < 0.0 && !exp.is_integer() {
        return Err(DomainError::new(format!(
            "({:e})^({}) takes a fractional power of a negative value",
            base, exp
        )));
    }
    let e = exp.to_f64();
    // Prefer the deterministic special cases over libm powf.
    if exp.is_integer() && e.abs() <= i32::MAX as f64 {
        Ok(base.powi(e as i32))
    } else if *exp == Rational::new(1, 2) {
        Ok(base.sqrt())
    } else {
        Ok(base.powf(e))
    }
}

fn apply_scalar(f: FnKind, arg: &Scalar) -> Result<Scalar, DomainError> {
    if let Scalar::Exact(r) = arg {
        // Domain checks that can be decided exactly are decided exactly.
        if f == FnKind::Ln && (r.is_zero() || r.is_negative()) {
            return Err(DomainError::new(format!("ln({}) requires a positive argument", r)));
        }
        // The only rational points where these functions take rational
        // values (0 for the trigonometric functions and exp, 1 for ln).
        if r.is_zero() {
            match f {
                FnKind::Sin | FnKind::Tan => return Ok(Scalar::from_int(0)),
                FnKind::Cos | FnKind::Sec | FnKind::Exp => return Ok(Scalar::from_int(1)),
                _ => {}
            }
        }
        if f == FnKind::Ln && r.is_one() {
            return Ok(Scalar::from_int(0));
        }
        if f == FnKind::Sqrt {
            return power_scalar(arg, &Rational::new(1, 2));
        }
    }
    apply_f64(f, arg.to_f64()).map(Scalar::Approx)
}

fn apply_f64(f: FnKind, v: f64) -> Result<f64, DomainError> {
    match f {
        FnKind::Sin => Ok(v.sin()),
        FnKind::Cos => Ok(v.cos()),
        FnKind::Tan => {
            if v.cos() == 0.0 {
                Err(DomainError::new(format!("tan({:e}) is undefined", v)))
            } else {
                Ok(v.tan())
            }
        }
        FnKind::Sec => {
            let c = v.cos();
            if c == 0.0 {
                Err(DomainError::new(format!("sec({:e}) is undefined", v)))
            } else {
                Ok(1.0 / c)
            }
        }
        FnKind::Exp => Ok(v.exp()),
        FnKind::Ln => {
            if v <= 0.0 {
                Err(DomainError::new(format!(
                    "ln({:e}) requires a positive argument",
                    v
                )))
            } else {
                Ok(v.ln())
            }
        }
        FnKind::Sqrt => {
            if v < 0.0 {
                Err(DomainError::new(format!(
                    "sqrt({:e}) requires a nonnegative argument",
                    v
                )))
            } else {
                Ok(v.sqrt())
            }
        }
    }
}
