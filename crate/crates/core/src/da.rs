//! Derivative-antiderivative pairs by table lookup.
//!
//! Each table atom has a known slope function, established elsewhere without
//! limits (double roots for powers, geometry for the rest), and the table is
//! read in both directions: left-to-right differentiates, right-to-left
//! antidifferentiates. Linearity extends both to sums and constant
//! multiples. There is no chain, product or quotient rule here; expressions
//! needing one are rejected by the table-form classifier, and atoms whose
//! image falls outside the table (the antiderivatives of tan and ln, the
//! derivative of sec^2) report which atom was the obstacle.

use thiserror::Error;

use crate::daclass::{DaAtom, DaClassError, DaClassForm};
use crate::expr::Expr;
use crate::rational::Rational;

/// An expression paired with its derivative. `antiderivative` is the given
/// expression; `derivative` is its table image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaPair {
    pub derivative: Expr,
    pub antiderivative: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DaError {
    #[error("{0}")]
    Class(#[from] DaClassError),
    #[error("the table has no antiderivative for {}", .atom.describe())]
    UnsupportedAntiderivative { atom: DaAtom },
    #[error("the table has no derivative for {}", .atom.describe())]
    UnsupportedDerivative { atom: DaAtom },
}

impl DaError {
    pub fn name(&self) -> &'static str {
        match self {
            DaError::Class(e) => e.name(),
            DaError::UnsupportedAntiderivative { .. } => "UnsupportedAntiderivative",
            DaError::UnsupportedDerivative { .. } => "UnsupportedDerivative",
        }
    }
}

/// Table lookup, left to right. Constants drop to zero; x^n maps to
/// n x^(n-1) for any rational n except 0, which normalization has already
/// folded away.
pub fn derivative(expr: &Expr) -> Result<Expr, DaError> {
    let form = expr.to_da_class()?;
    let mut out = DaClassForm::constant_only(Rational::zero());
    for (coeff, atom) in form.terms {
        match atom {
            DaAtom::PowerOfVar(n) => {
                let scaled = &coeff * &n;
                let lowered = &n - &Rational::one();
                if lowered.is_zero() {
                    out.constant = &out.constant + &scaled;
                } else {
                    out.push_term(scaled, DaAtom::PowerOfVar(lowered));
                }
            }
            DaAtom::SinVar => out.push_term(coeff, DaAtom::CosVar),
            DaAtom::CosVar => out.push_term(-coeff, DaAtom::SinVar),
            DaAtom::TanVar => out.push_term(coeff, DaAtom::SecVarSquared),
            DaAtom::SecVarSquared => {
                return Err(DaError::UnsupportedDerivative { atom })
            }
            DaAtom::ExpVar => out.push_term(coeff, DaAtom::ExpVar),
            DaAtom::LnVar => {
                out.push_term(coeff, DaAtom::PowerOfVar(Rational::from_int(-1)))
            }
        }
    }
    Ok(out.to_expr())
}

/// Table lookup, right to left, with the integration constant fixed at 0.
pub fn antiderivative(expr: &Expr) -> Result<Expr, DaError> {
    let form = expr.to_da_class()?;
    let mut out = DaClassForm::constant_only(Rational::zero());
    if !form.constant.is_zero() {
        out.push_term(form.constant, DaAtom::PowerOfVar(Rational::one()));
    }
    for (coeff, atom) in form.terms {
        match atom {
            DaAtom::PowerOfVar(n) => {
                if n == Rational::from_int(-1) {
                    out.push_term(coeff, DaAtom::LnVar);
                } else {
                    let raised = &n + &Rational::one();
                    let scaled = &coeff / &raised;
                    out.push_term(scaled, DaAtom::PowerOfVar(raised));
                }
            }
            DaAtom::SinVar => out.push_term(-coeff, DaAtom::CosVar),
            DaAtom::CosVar => out.push_term(coeff, DaAtom::SinVar),
            DaAtom::TanVar => {
                return Err(DaError::UnsupportedAntiderivative { atom })
            }
            DaAtom::SecVarSquared => out.push_term(coeff, DaAtom::TanVar),
            DaAtom::ExpVar => out.push_term(coeff, DaAtom::ExpVar),
            DaAtom::LnVar => {
                return Err(DaError::UnsupportedAntiderivative { atom })
            }
        }
    }
    Ok(out.to_expr())
}

/// The DA pair anchored at `expr`: its derivative next to itself.
pub fn da_pair(expr: &Expr) -> Result<DaPair, DaError> {
    Ok(DaPair {
        derivative: derivative(expr)?,
        antiderivative: expr.clone().normalize(),
    })
}
