//! Classification of expressions into the derivative-antiderivative class.
//!
//! The differentiation and antidifferentiation table works on finite linear
//! combinations of a fixed set of atoms in the bare variable. `to_da_class`
//! decides membership and produces the coefficient view the table operates
//! on. There is no chain or product rule here, so anything with a composed
//! argument, such as `sin(x^2)` or `(1 - x^2)^(1/2)`, is outside the class
//! and is reported with the offending subterm.

use thiserror::Error;

use crate::expr::{Expr, FnKind};
use crate::rational::Rational;

/// Atoms the table knows how to differentiate or antidifferentiate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DaAtom {
    /// `x^e` with a nonzero rational exponent (`x` itself is exponent 1).
    PowerOfVar(Rational),
    SinVar,
    CosVar,
    TanVar,
    SecVarSquared,
    ExpVar,
    LnVar,
}

impl DaAtom {
    pub fn to_expr(&self) -> Expr {
        match self {
            DaAtom::PowerOfVar(e) => {
                if e.is_one() {
                    Expr::Var
                } else {
                    Expr::power_of_var(e.clone())
                }
            }
            DaAtom::SinVar => Expr::apply(FnKind::Sin, Expr::Var),
            DaAtom::CosVar => Expr::apply(FnKind::Cos, Expr::Var),
            DaAtom::TanVar => Expr::apply(FnKind::Tan, Expr::Var),
            DaAtom::SecVarSquared => {
                Expr::power(Expr::apply(FnKind::Sec, Expr::Var), Rational::from_int(2))
            }
            DaAtom::ExpVar => Expr::apply(FnKind::Exp, Expr::Var),
            DaAtom::LnVar => Expr::apply(FnKind::Ln, Expr::Var),
        }
    }

    pub fn describe(&self) -> String {
        self.to_expr().canonical_string("x")
    }
}

/// A linear combination `constant + sum of coeff * atom` with pairwise
/// distinct atoms and no zero coefficients. Term order follows the canonical
/// order of the normal form it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaClassForm {
    pub constant: Rational,
    pub terms: Vec<(Rational, DaAtom)>,
}

impl DaClassForm {
    pub fn constant_only(c: Rational) -> DaClassForm {
        DaClassForm {
            constant: c,
            terms: Vec::new(),
        }
    }

    /// Accumulates a term, merging with an existing atom and dropping the
    /// pair if the merged coefficient cancels to zero.
    pub fn push_term(&mut self, coeff: Rational, atom: DaAtom) {
        if coeff.is_zero() {
            return;
        }
        if let Some(i) = self.terms.iter().position(|(_, a)| *a == atom) {
            let merged = &self.terms[i].0 + &coeff;
            if merged.is_zero() {
                self.terms.remove(i);
            } else {
                self.terms[i].0 = merged;
            }
        } else {
            self.terms.push((coeff, atom));
        }
    }

    /// Rebuilds the expression tree in normal form.
    pub fn to_expr(&self) -> Expr {
        let mut children: Vec<Expr> = self
            .terms
            .iter()
            .map(|(c, a)| Expr::scaled(c.clone(), a.to_expr()))
            .collect();
        children.push(Expr::constant(self.constant.clone()));
        Expr::sum(children).normalize()
    }
}

/// The expression is not a linear combination the table can express.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no table entry for {}", .offending.canonical_string("x"))]
pub struct DaClassError {
    pub offending: Expr,
}

impl DaClassError {
    pub fn name(&self) -> &'static str {
        "DAClassError"
    }
}

impl Expr {
    /// Reads a normalized expression as a table-class linear combination.
    pub fn to_da_class(&self) -> Result<DaClassForm, DaClassError> {
        let normalized = self.normalize();
        let mut form = DaClassForm::constant_only(Rational::zero());
        match &normalized {
            Expr::Const(c) => form.constant = c.clone(),
            Expr::Sum(children) => {
                for child in children {
                    match child {
                        Expr::Const(c) => form.constant = &form.constant + c,
                        Expr::ScaledTerm(c, atom) => {
                            form.push_term(c.clone(), classify_atom(atom)?)
                        }
                        other => form.push_term(Rational::one(), classify_atom(other)?),
                    }
                }
            }
            Expr::ScaledTerm(c, atom) => form.push_term(c.clone(), classify_atom(atom)?),
            other => form.push_term(Rational::one(), classify_atom(other)?),
        }
        Ok(form)
    }
}

fn classify_atom(atom: &Expr) -> Result<DaAtom, DaClassError> {
    match atom {
        Expr::Var => Ok(DaAtom::PowerOfVar(Rational::one())),
        Expr::Power(base, exp) => match base.as_ref() {
            Expr::Var => Ok(DaAtom::PowerOfVar(exp.clone())),
            Expr::Apply(FnKind::Sec, arg)
                if **arg == Expr::Var && *exp == Rational::from_int(2) =>
            {
                Ok(DaAtom::SecVarSquared)
            }
            _ => Err(DaClassError {
                offending: atom.clone(),
            }),
        },
        Expr::Apply(f, arg) if **arg == Expr::Var => match f {
            FnKind::Sin => Ok(DaAtom::SinVar),
            FnKind::Cos => Ok(DaAtom::CosVar),
            FnKind::Tan => Ok(DaAtom::TanVar),
            FnKind::Exp => Ok(DaAtom::ExpVar),
            FnKind::Ln => Ok(DaAtom::LnVar),
            _ => Err(DaClassError {
                offending: atom.clone(),
            }),
        },
        _ => Err(DaClassError {
            offending: atom.clone(),
        }),
    }
}
