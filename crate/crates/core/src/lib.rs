//! Exact, limit-free single-variable calculus.
//!
//! Tangent slopes come from double-root conditions and Descartes' tangent
//! circle, derivatives and antiderivatives from a bidirectional table over a
//! small expression language, and definite integrals from antiderivative
//! height increments. Arithmetic is arbitrary-precision rational throughout;
//! floating point appears only in the numeric cross-check oracle, the
//! quadrature fallback and the mean-value witness search.
//!
//! Entry points: [`parse_expr`] for text, [`derivative`] and
//! [`antiderivative`] for the table, [`integrate`] and friends for definite
//! integrals, [`tangent_point_slope`] and [`tangent_descartes`] for tangent
//! lines, and [`mean_value`] for the mean of a function over an interval
//! together with a point that attains it.

pub mod rational;
pub mod scalar;
pub mod expr;
pub mod eval;
pub mod daclass;
pub mod parser;
pub mod poly;
pub mod tangent;
pub mod da;
pub mod oracle;
pub mod integral;

pub use crate::da::{antiderivative, da_pair, derivative, DaError, DaPair};
pub use crate::daclass::{DaAtom, DaClassError, DaClassForm};
pub use crate::eval::DomainError;
pub use crate::expr::{Expr, FnKind};
pub use crate::integral::{
    integrate, integrate_numeric, integrate_symbolic, integrate_symbolic_upper, mean_value,
    IntegralError, IntegralMethod, IntegralResult, MeanValueError, MeanValueResult,
};
pub use crate::oracle::{
    central_difference, default_step, quadrature, riemann_left_sum, OracleError, QuadratureConfig,
};
pub use crate::parser::{parse_expr, ParseError, ParsedExpr};
pub use crate::poly::{slope_by_double_root, NotPolynomialError, Polynomial};
pub use crate::rational::Rational;
pub use crate::scalar::Scalar;
pub use crate::tangent::{
    grade, tangent_descartes, tangent_point_slope, Curve, DescartesResult, TangentError,
    TangentLine,
};
