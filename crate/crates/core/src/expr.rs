//! The expression tree and its canonical form.
//!
//! An expression is a finite sum of rational multiples of atoms, where an
//! atom is the variable raised to a rational power, one of a fixed set of
//! functions applied to a subexpression, or a rational power of such a
//! subexpression. There is no general product node: products are folded into
//! coefficients and power exponents when they are built (see the parser), so
//! the tree always stays in reach of the derivative-antiderivative table.
//!
//! `normalize` rewrites any tree into a unique normal form:
//!
//! * children of `Sum` are `ScaledTerm` or at most one trailing `Const`,
//!   never nested sums;
//! * exponents 0 and 1 are eliminated and `sqrt(e)` becomes `e^(1/2)`;
//! * constant subtrees fold to `Const`, including perfect rational roots;
//! * like atoms merge and zero coefficients drop;
//! * terms are ordered: powers of the variable by descending exponent, then
//!   function atoms in a fixed order, then anything else structurally, with
//!   the constant last.
//!
//! The rewrite preserves the value at every point where the original
//! expression is defined, and it is idempotent, so structural equality of
//! normal forms is a sound equality test.

use std::cmp::Ordering;
use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FnKind {
    Sin,
    Cos,
    Tan,
    Sec,
    Exp,
    Ln,
    Sqrt,
}

impl FnKind {
    pub fn name(self) -> &'static str {
        match self {
            FnKind::Sin => "sin",
            FnKind::Cos => "cos",
            FnKind::Tan => "tan",
            FnKind::Sec => "sec",
            FnKind::Exp => "exp",
            FnKind::Ln => "ln",
            FnKind::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<FnKind> {
        Some(match name {
            "sin" => FnKind::Sin,
            "cos" => FnKind::Cos,
            "tan" => FnKind::Tan,
            "sec" => FnKind::Sec,
            "exp" => FnKind::Exp,
            "ln" => FnKind::Ln,
            "sqrt" => FnKind::Sqrt,
            _ => return None,
        })
    }
}

/// Expression over a single anonymous variable. The variable's display name
/// is not part of the tree; the parser reports it separately and printing
/// takes it as an argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Const(Rational),
    Var,
    Sum(Vec<Expr>),
    ScaledTerm(Rational, Box<Expr>),
    Power(Box<Expr>, Rational),
    Apply(FnKind, Box<Expr>),
}

impl Expr {
    pub fn constant(r: Rational) -> Expr {
        Expr::Const(r)
    }

    pub fn const_int(n: i64) -> Expr {
        Expr::Const(Rational::from_int(n))
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum(terms)
    }

    pub fn scaled(coeff: Rational, atom: Expr) -> Expr {
        Expr::ScaledTerm(coeff, Box::new(atom))
    }

    pub fn power(base: Expr, exponent: Rational) -> Expr {
        Expr::Power(Box::new(base), exponent)
    }

    pub fn power_of_var(exponent: Rational) -> Expr {
        Expr::power(Expr::Var, exponent)
    }

    pub fn apply(f: FnKind, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    /// Rewrites into the unique normal form described in the module docs.
    pub fn normalize(&self) -> Expr {
        let mut acc = TermAccumulator::new();
        collect(self, &Rational::one(), &mut acc);
        acc.build()
    }

    /// True when every atom is defined for every real input: nonnegative
    /// integer powers of the variable, sin, cos and exp. Used to skip the
    /// singularity scan for integrands that cannot have one.
    pub fn is_total(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => true,
            Expr::Sum(terms) => terms.iter().all(Expr::is_total),
            Expr::ScaledTerm(_, inner) => inner.is_total(),
            Expr::Power(base, exp) => {
                base.is_total() && exp.is_integer() && !exp.is_negative()
            }
            Expr::Apply(FnKind::Sin | FnKind::Cos | FnKind::Exp, arg) => arg.is_total(),
            Expr::Apply(_, _) => false,
        }
    }

    /// Canonical text form, printing the variable as `var`. Assumes the
    /// expression is normalized; printing then parsing the result yields a
    /// structurally identical tree.
    pub fn canonical_string(&self, var: &str) -> String {
        match self {
            Expr::Const(c) => c.to_string(),
            Expr::Sum(children) => {
                let mut pieces: Vec<(Rational, Option<&Expr>)> = Vec::new();
                for child in children {
                    match child {
                        Expr::ScaledTerm(c, atom) => pieces.push((c.clone(), Some(atom))),
                        Expr::Const(c) => pieces.push((c.clone(), None)),
                        other => pieces.push((Rational::one(), Some(other))),
                    }
                }
                render_pieces(&pieces, var)
            }
            Expr::ScaledTerm(c, atom) => render_pieces(&[(c.clone(), Some(atom))], var),
            atom => render_pieces(&[(Rational::one(), Some(atom))], var),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string("x"))
    }
}

fn render_pieces(pieces: &[(Rational, Option<&Expr>)], var: &str) -> String {
    let mut out = String::new();
    for (i, (coeff, atom)) in pieces.iter().enumerate() {
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        let body = match atom {
            Some(a) => {
                if magnitude.is_one() {
                    atom_string(a, var)
                } else {
                    format!("{} {}", magnitude, atom_string(a, var))
                }
            }
            None => magnitude.to_string(),
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn atom_string(atom: &Expr, var: &str) -> String {
    match atom {
        Expr::Var => var.to_string(),
        Expr::Apply(f, arg) => format!("{}({})", f.name(), arg.canonical_string(var)),
        Expr::Power(base, exp) => {
            let base_str = match base.as_ref() {
                Expr::Var => var.to_string(),
                Expr::Apply(f, arg) => format!("{}({})", f.name(), arg.canonical_string(var)),
                // Constant bases are parenthesized so that a coefficient in
                // front, as in "3 (2)^(1/2)", stays unambiguous to reparse.
                other => format!("({})", other.canonical_string(var)),
            };
            if exp.is_integer() && !exp.is_negative() {
                format!("{}^{}", base_str, exp)
            } else {
                format!("{}^({})", base_str, exp)
            }
        }
        // Normal forms never put a constant, sum or scaled term in atom
        // position; parenthesize defensively if one shows up.
        other => format!("({})", other.canonical_string(var)),
    }
}

struct TermAccumulator {
    constant: Rational,
    terms: Vec<(Expr, Rational)>,
}

impl TermAccumulator {
    fn new() -> TermAccumulator {
        TermAccumulator {
            constant: Rational::zero(),
            terms: Vec::new(),
        }
    }

    fn add_const(&mut self, c: Rational) {
        self.constant = &self.constant + &c;
    }

    fn add_term(&mut self, atom: Expr, coeff: Rational) {
        if let Some((_, existing)) = self.terms.iter_mut().find(|(a, _)| *a == atom) {
            *existing = &*existing + &coeff;
        } else {
            self.terms.push((atom, coeff));
        }
    }

    fn build(mut self) -> Expr {
        self.terms.retain(|(_, c)| !c.is_zero());
        self.terms.sort_by(|(a, _), (b, _)| cmp_atoms(a, b));
        match (self.terms.len(), self.constant.is_zero()) {
            (0, _) => Expr::Const(self.constant),
            (1, true) => {
                let (atom, coeff) = self.terms.pop().unwrap();
                if coeff.is_one() {
                    atom
                } else {
                    Expr::scaled(coeff, atom)
                }
            }
            _ => {
                let mut children: Vec<Expr> = self
                    .terms
                    .into_iter()
                    .map(|(atom, coeff)| Expr::scaled(coeff, atom))
                    .collect();
                if !self.constant.is_zero() {
                    children.push(Expr::Const(self.constant));
                }
                Expr::Sum(children)
            }
        }
    }
}

fn collect(e: &Expr, mult: &Rational, acc: &mut TermAccumulator) {
    if mult.is_zero() {
        return;
    }
    match e {
        Expr::Const(c) => acc.add_const(mult * c),
        Expr::Var => acc.add_term(Expr::Var, mult.clone()),
        Expr::Sum(children) => {
            for child in children {
                collect(child, mult, acc);
            }
        }
        Expr::ScaledTerm(c, inner) => collect(inner, &(mult * c), acc),
        Expr::Power(base, exp) => collect_power(base, exp, mult, acc),
        Expr::Apply(FnKind::Sqrt, arg) => {
            collect_power(arg, &Rational::new(1, 2), mult, acc)
        }
        Expr::Apply(f, arg) => {
            acc.add_term(Expr::apply(*f, arg.normalize()), mult.clone());
        }
    }
}

fn collect_power(base: &Expr, exp: &Rational, mult: &Rational, acc: &mut TermAccumulator) {
    if exp.is_zero() {
        acc.add_const(mult.clone());
        return;
    }
    let base = base.normalize();
    if exp.is_one() {
        collect(&base, mult, acc);
        return;
    }
    match base {
        Expr::Const(c) => match c.checked_pow_rational(exp) {
            Some(v) => acc.add_const(mult * &v),
            None => acc.add_term(Expr::power(Expr::Const(c), exp.clone()), mult.clone()),
        },
        Expr::ScaledTerm(c, atom) => {
            // (c*a)^e = c^e * a^e when c^e is exactly rational and the split
            // does not change sign behaviour (c > 0, or an integer exponent).
            let folded = if exp.is_integer() || c.is_positive() {
                c.checked_pow_rational(exp)
            } else {
                None
            };
            match folded {
                Some(ce) => collect_power(&atom, exp, &(mult * &ce), acc),
                None => acc.add_term(
                    Expr::power(Expr::ScaledTerm(c, atom), exp.clone()),
                    mult.clone(),
                ),
            }
        }
        Expr::Power(inner_base, inner_exp) => {
            if power_collapse_safe(&inner_exp, exp) {
                collect_power(&inner_base, &(&inner_exp * exp), mult, acc);
            } else {
                acc.add_term(
                    Expr::power(Expr::Power(inner_base, inner_exp), exp.clone()),
                    mult.clone(),
                );
            }
        }
        other => acc.add_term(Expr::power(other, exp.clone()), mult.clone()),
    }
}

/// Whether `(b^inner)^outer` may fold to `b^(inner*outer)` without changing
/// the value anywhere both sides are defined. The unsafe case is an even
/// integer inner exponent under a fractional outer one, for example
/// `(x^2)^(1/2)`, which is `|x|`, not `x`.
fn power_collapse_safe(inner: &Rational, outer: &Rational) -> bool {
    if outer.is_integer() || !inner.is_integer() {
        return true;
    }
    use num::integer::Integer;
    inner.numer().is_odd()
}

/// Term order used by normal forms and printing: powers of the variable by
/// strictly descending exponent, then function atoms as sin, cos, tan,
/// sec^2, exp, ln, then remaining atoms in structural order.
fn cmp_atoms(a: &Expr, b: &Expr) -> Ordering {
    let (ca, ka) = atom_class(a);
    let (cb, kb) = atom_class(b);
    ca.cmp(&cb)
        .then_with(|| match (ka, kb) {
            (AtomKey::Exponent(ea), AtomKey::Exponent(eb)) => eb.cmp(&ea),
            (AtomKey::FnIndex(ia), AtomKey::FnIndex(ib)) => ia.cmp(&ib),
            _ => Ordering::Equal,
        })
        .then_with(|| a.cmp(b))
}

enum AtomKey {
    Exponent(Rational),
    FnIndex(u8),
    Structural,
}

fn atom_class(atom: &Expr) -> (u8, AtomKey) {
    match atom {
        // A bare variable sorts among the power atoms as exponent 1.
        Expr::Var => (0, AtomKey::Exponent(Rational::one())),
        Expr::Power(base, exp) if **base == Expr::Var => (0, AtomKey::Exponent(exp.clone())),
        Expr::Apply(FnKind::Sin, arg) if **arg == Expr::Var => (1, AtomKey::FnIndex(0)),
        Expr::Apply(FnKind::Cos, arg) if **arg == Expr::Var => (1, AtomKey::FnIndex(1)),
        Expr::Apply(FnKind::Tan, arg) if **arg == Expr::Var => (1, AtomKey::FnIndex(2)),
        Expr::Power(base, exp) => match (base.as_ref(), exp) {
            (Expr::Apply(FnKind::Sec, arg), e)
                if **arg == Expr::Var && *e == Rational::from_int(2) =>
            {
                (1, AtomKey::FnIndex(3))
            }
            _ => (2, AtomKey::Structural),
        },
        Expr::Apply(FnKind::Exp, arg) if **arg == Expr::Var => (1, AtomKey::FnIndex(4)),
        Expr::Apply(FnKind::Ln, arg) if **arg == Expr::Var => (1, AtomKey::FnIndex(5)),
        _ => (2, AtomKey::Structural),
    }
}
