//! Text to expression trees.
//!
//! Grammar: infix `+ - * / ^` with `^` binding tightest and associating to
//! the right, unary minus, parentheses, function calls `name(arg)` for sin,
//! cos, tan, sec, exp, ln and sqrt, unsigned integers and decimals (both
//! exact), and fraction literals `p/q`. Implicit multiplication is allowed
//! only between a numeric literal and a following identifier or `(`, so
//! `4x^3` is `4*(x^3)` but `(x+1)(x+2)` is rejected. Whitespace is
//! insignificant.
//!
//! Exactly one free variable may appear, under any identifier name; the name
//! is reported alongside the tree, which stores the variable anonymously.
//! Exponents must fold to rational constants.
//!
//! Products are folded as they are parsed: a constant factor becomes a term
//! coefficient, and factors sharing a base merge into one power, as in
//! `x*x^2` or `sec(x)*sec(x)`. A product of unlike non-constant factors has
//! no representation here and is a parse error.

use thiserror::Error;

use crate::expr::{Expr, FnKind};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected {expected}, found {found} at byte {position}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("expression mixes variables '{first}' and '{second}' (second at byte {position})")]
    MultipleVariables {
        position: usize,
        first: String,
        second: String,
    },
}

impl ParseError {
    pub fn name(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "ParseError",
            ParseError::MultipleVariables { .. } => "MultipleVariablesError",
        }
    }

    /// Byte offset into the source text, at most its length.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } => *position,
            ParseError::MultipleVariables { position, .. } => *position,
        }
    }
}

/// A parsed expression in normal form plus the variable name seen in the
/// source, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    pub expr: Expr,
    pub var: Option<String>,
}

pub fn parse_expr(input: &str) -> Result<ParsedExpr, ParseError> {
    let tokens = lex(input)?;
    let mut parser = Parser {
        input,
        tokens,
        pos: 0,
        var: None,
    };
    let (expr, _) = parser.parse_bp(0)?;
    parser.expect_eof()?;
    Ok(ParsedExpr {
        expr: expr.normalize(),
        var: parser.var,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    start: usize,
    end: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let kind = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => {
                i += 1;
                TokenKind::Plus
            }
            b'-' => {
                i += 1;
                TokenKind::Minus
            }
            b'*' => {
                i += 1;
                TokenKind::Star
            }
            b'/' => {
                i += 1;
                TokenKind::Slash
            }
            b'^' => {
                i += 1;
                TokenKind::Caret
            }
            b'(' => {
                i += 1;
                TokenKind::LParen
            }
            b')' => {
                i += 1;
                TokenKind::RParen
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::Syntax {
                            position: i.min(input.len()),
                            expected: "a digit after the decimal point".to_string(),
                            found: found_at(input, i),
                        });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &input[start..i];
                let value = Rational::from_decimal_str(text).ok_or(ParseError::Syntax {
                    position: start,
                    expected: "a numeric literal".to_string(),
                    found: format!("'{}'", text),
                })?;
                TokenKind::Number(value)
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                TokenKind::Ident(input[start..i].to_string())
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: start,
                    expected: "a number, variable, operator or parenthesis".to_string(),
                    found: format!("'{}'", ch),
                });
            }
        };
        tokens.push(Token {
            kind,
            start,
            end: i,
        });
    }
    Ok(tokens)
}

fn found_at(input: &str, pos: usize) -> String {
    match input[pos.min(input.len())..].chars().next() {
        Some(ch) => format!("'{}'", ch),
        None => "end of input".to_string(),
    }
}

// Binding powers. Multiplication and division share one level, addition and
// subtraction a lower one; exponentiation binds tightest and right
// associates; unary minus sits between the multiplicative and power levels
// so -x^2 reads as -(x^2) while -2 x keeps the literal together.
const ADD_BP: (u8, u8) = (10, 11);
const MUL_BP: (u8, u8) = (20, 21);
const NEG_BP: u8 = 26;
const POW_BP: (u8, u8) = (31, 30);

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    var: Option<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn token_text(&self, t: &Token) -> String {
        format!("'{}'", &self.input[t.start..t.end])
    }

    fn eof_position(&self) -> usize {
        self.input.len()
    }

    fn syntax_error(&self, position: usize, expected: &str, found: String) -> ParseError {
        ParseError::Syntax {
            position,
            expected: expected.to_string(),
            found,
        }
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => {
                self.syntax_error(t.start, expected, self.token_text(t))
            }
            None => self.syntax_error(self.eof_position(), expected, "end of input".to_string()),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error_here("end of input"))
        }
    }

    fn note_variable(&mut self, name: &str, position: usize) -> Result<Expr, ParseError> {
        match &self.var {
            None => {
                self.var = Some(name.to_string());
                Ok(Expr::Var)
            }
            Some(existing) if existing == name => Ok(Expr::Var),
            Some(existing) => Err(ParseError::MultipleVariables {
                position,
                first: existing.clone(),
                second: name.to_string(),
            }),
        }
    }

    /// Pratt loop. The boolean tracks whether the parsed value is a numeric
    /// literal (a number, a negated number, or a fraction of numbers), the
    /// only shapes that permit implicit multiplication.
    fn parse_bp(&mut self, min_bp: u8) -> Result<(Expr, bool), ParseError> {
        let (mut lhs, mut lhs_literal) = self.parse_prefix(min_bp)?;
        loop {
            let (kind, implicit, op_pos) = match self.peek() {
                Some(t) => match &t.kind {
                    TokenKind::Plus => (TokenKind::Plus, false, t.start),
                    TokenKind::Minus => (TokenKind::Minus, false, t.start),
                    TokenKind::Star => (TokenKind::Star, false, t.start),
                    TokenKind::Slash => (TokenKind::Slash, false, t.start),
                    TokenKind::Caret => (TokenKind::Caret, false, t.start),
                    TokenKind::Ident(_) | TokenKind::LParen if lhs_literal => {
                        (TokenKind::Star, true, t.start)
                    }
                    _ => break,
                },
                None => break,
            };
            let (lbp, rbp) = match kind {
                TokenKind::Plus | TokenKind::Minus => ADD_BP,
                TokenKind::Star | TokenKind::Slash => MUL_BP,
                TokenKind::Caret => POW_BP,
                _ => unreachable!(),
            };
            if lbp < min_bp {
                break;
            }
            if !implicit {
                self.bump();
            }
            let rhs_start = self.peek().map(|t| t.start).unwrap_or(self.eof_position());
            let (rhs, rhs_literal) = self.parse_bp(rbp)?;
            lhs = match kind {
                TokenKind::Plus => Expr::sum(vec![lhs, rhs]),
                TokenKind::Minus => Expr::sum(vec![
                    lhs,
                    Expr::scaled(Rational::from_int(-1), rhs),
                ]),
                TokenKind::Star => self.multiply(lhs, rhs, op_pos)?,
                TokenKind::Slash => self.divide(lhs, rhs, op_pos)?,
                TokenKind::Caret => self.exponentiate(lhs, rhs, rhs_start)?,
                _ => unreachable!(),
            };
            lhs_literal = matches!(kind, TokenKind::Slash) && lhs_literal && rhs_literal;
        }
        Ok((lhs, lhs_literal))
    }

    fn parse_prefix(&mut self, _min_bp: u8) -> Result<(Expr, bool), ParseError> {
        let token = match self.bump() {
            Some(t) => t,
            None => {
                return Err(self.syntax_error(
                    self.eof_position(),
                    "an expression",
                    "end of input".to_string(),
                ))
            }
        };
        match token.kind {
            TokenKind::Number(value) => Ok((Expr::constant(value), true)),
            TokenKind::Minus => {
                let (inner, literal) = self.parse_bp(NEG_BP)?;
                Ok((Expr::scaled(Rational::from_int(-1), inner), literal))
            }
            TokenKind::LParen => {
                let (inner, _) = self.parse_bp(0)?;
                match self.peek() {
                    Some(t) if t.kind == TokenKind::RParen => {
                        self.bump();
                        Ok((inner, false))
                    }
                    _ => Err(self.error_here("')'")),
                }
            }
            TokenKind::Ident(name) => {
                let calls = matches!(self.peek(), Some(t) if t.kind == TokenKind::LParen);
                match (FnKind::from_name(&name), calls) {
                    (Some(f), true) => {
                        self.bump();
                        let (arg, _) = self.parse_bp(0)?;
                        match self.peek() {
                            Some(t) if t.kind == TokenKind::RParen => {
                                self.bump();
                                Ok((Expr::apply(f, arg), false))
                            }
                            _ => Err(self.error_here("')'")),
                        }
                    }
                    (Some(_), false) => Err(self.syntax_error(
                        token.start,
                        "'(' after a function name",
                        format!("'{}'", name),
                    )),
                    (None, true) => Err(self.syntax_error(
                        token.start,
                        "a known function (sin, cos, tan, sec, exp, ln, sqrt)",
                        format!("'{}'", name),
                    )),
                    (None, false) => {
                        Ok((self.note_variable(&name, token.start)?, false))
                    }
                }
            }
            _ => Err(self.syntax_error(
                token.start,
                "a number, variable, function call or '('",
                self.token_text(&token),
            )),
        }
    }

    /// Folds a product into coefficient-times-power form, or reports that
    /// the two factors cannot be multiplied in this representation.
    fn multiply(&self, lhs: Expr, rhs: Expr, op_pos: usize) -> Result<Expr, ParseError> {
        let nl = lhs.normalize();
        let nr = rhs.normalize();
        if let Expr::Const(c) = &nl {
            return Ok(Expr::scaled(c.clone(), nr));
        }
        if let Expr::Const(c) = &nr {
            return Ok(Expr::scaled(c.clone(), nl));
        }
        let (cl, bl, el) = coeff_base_exp(nl);
        let (cr, br, er) = coeff_base_exp(nr);
        if bl == br {
            Ok(Expr::scaled(&cl * &cr, Expr::power(bl, &el + &er)))
        } else {
            Err(self.syntax_error(
                op_pos,
                "a product with a constant factor or matching bases",
                "a product of unlike non-constant factors".to_string(),
            ))
        }
    }

    fn divide(&self, lhs: Expr, rhs: Expr, op_pos: usize) -> Result<Expr, ParseError> {
        let nr = rhs.normalize();
        match &nr {
            Expr::Const(c) => {
                if c.is_zero() {
                    Err(self.syntax_error(
                        op_pos,
                        "a nonzero divisor",
                        "a division by zero".to_string(),
                    ))
                } else {
                    Ok(Expr::scaled(c.recip().unwrap(), lhs))
                }
            }
            _ => self.multiply(lhs, reciprocal(nr), op_pos),
        }
    }

    fn exponentiate(&self, base: Expr, exp: Expr, exp_pos: usize) -> Result<Expr, ParseError> {
        match exp.normalize() {
            Expr::Const(c) => Ok(Expr::power(base, c)),
            _ => Err(self.syntax_error(
                exp_pos,
                "a rational constant exponent",
                "an exponent containing the variable".to_string(),
            )),
        }
    }
}

/// Splits a normalized non-constant expression as coeff * base^exp.
fn coeff_base_exp(e: Expr) -> (Rational, Expr, Rational) {
    match e {
        Expr::ScaledTerm(c, atom) => {
            let (c2, base, exp) = coeff_base_exp(*atom);
            (&c * &c2, base, exp)
        }
        Expr::Power(base, exp) => (Rational::one(), *base, exp),
        other => (Rational::one(), other, Rational::one()),
    }
}

/// Reciprocal of a normalized non-constant expression, by negating power
/// exponents. This is value preserving wherever the original is defined and
/// nonzero.
fn reciprocal(e: Expr) -> Expr {
    match e {
        Expr::Power(base, exp) => Expr::Power(base, -exp),
        Expr::ScaledTerm(c, atom) => {
            Expr::scaled(c.recip().expect("normalized coefficients are nonzero"), reciprocal(*atom))
        }
        other => Expr::power(other, Rational::from_int(-1)),
    }
}
