//! ddcalc: exact calculus from the command line.
//!
//! Commands take an expression in one free variable and report results as
//! reduced fractions whenever the arithmetic permits, falling back to
//! 17-significant-digit floats when it does not. See `ddcalc --help`.

use std::process::ExitCode;

use ddcalc_core::{
    antiderivative, derivative, grade, integrate_numeric, integrate_symbolic,
    integrate_symbolic_upper, mean_value, parse_expr, quadrature, tangent_descartes,
    tangent_point_slope, Curve, Expr, ParseError, QuadratureConfig, Rational, Scalar,
};

const USAGE: &str = "usage: ddcalc <command> [arguments] [--numeric] [--plot <path>]
commands:
  derivative <expr>                                  slope function of <expr>
  antiderivative <expr>                              height function with slope <expr>
  integrate <expr> from <a> to <b>                   definite integral, exact when possible
  integrate <expr> from <a> to <var>                 integral as a function of the upper bound
  tangent <expr> at <x0> [--method point-slope|descartes]
  meanvalue <expr> from <a> to <b>                   mean of <expr> plus a witness point
  grade <rise> <run>                                 rise over run
flags:
  --numeric       force quadrature instead of the symbolic height increment
  --plot <path>   write a 257-row CSV (x,input,result) sampling the curves
";

/// Samples per plot file, endpoints included.
const PLOT_POINTS: usize = 257;

/// Quadrature settings for the running-integral column of --plot files;
/// looser than the main tolerance so 257 samples stay quick.
fn plot_quadrature_config() -> QuadratureConfig {
    QuadratureConfig {
        max_panels: 1 << 14,
        abs_tol: 1e-6,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = run(&args);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Math { name: &'static str, detail: String },
}

impl Failure {
    fn usage(detail: impl Into<String>) -> Failure {
        Failure::Usage(detail.into())
    }

    fn math(name: &'static str, detail: impl ToString) -> Failure {
        Failure::Math {
            name,
            detail: detail.to_string(),
        }
    }
}

#[derive(Default)]
struct Flags {
    numeric: bool,
    plot: Option<String>,
    method: Option<String>,
}

fn run(args: &[String]) -> Outcome {
    if args.is_empty() {
        return Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: UsageError: missing command\n{}", USAGE),
        };
    }
    if args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        return Outcome {
            code: 0,
            stdout: USAGE.to_string(),
            stderr: String::new(),
        };
    }
    match dispatch(args) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(detail)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: UsageError: {}\n{}", detail, USAGE),
        },
        Err(Failure::Parse(e)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", e.name(), e),
        },
        Err(Failure::Math { name, detail }) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", name, detail),
        },
    }
}

fn dispatch(args: &[String]) -> Result<String, Failure> {
    let (words, flags) = extract_flags(args)?;
    let (command, rest) = words
        .split_first()
        .ok_or_else(|| Failure::usage("missing command"))?;
    if flags.method.is_some() && command != "tangent" {
        return Err(Failure::usage("--method only applies to the tangent command"));
    }
    match command.as_str() {
        "derivative" => cmd_derivative(rest, &flags),
        "antiderivative" => cmd_antiderivative(rest, &flags),
        "integrate" => cmd_integrate(rest, &flags),
        "tangent" => cmd_tangent(rest, &flags),
        "meanvalue" => cmd_meanvalue(rest, &flags),
        "grade" => cmd_grade(rest, &flags),
        other => Err(Failure::usage(format!("unknown command '{}'", other))),
    }
}

fn extract_flags(args: &[String]) -> Result<(Vec<String>, Flags), Failure> {
    let mut words = Vec::new();
    let mut flags = Flags::default();
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--numeric" => flags.numeric = true,
            "--plot" => {
                i += 1;
                let path = args
                    .get(i)
                    .ok_or_else(|| Failure::usage("--plot needs a file path"))?;
                flags.plot = Some(path.clone());
            }
            "--method" => {
                i += 1;
                let name = args
                    .get(i)
                    .ok_or_else(|| Failure::usage("--method needs a name"))?;
                flags.method = Some(name.clone());
            }
            w if w.starts_with("--") => {
                return Err(Failure::usage(format!("unknown flag '{}'", w)));
            }
            w => words.push(w.to_string()),
        }
        i += 1;
    }
    Ok((words, flags))
}

fn split_keyword<'a>(words: &'a [String], keyword: &str) -> Option<(&'a [String], &'a [String])> {
    words
        .iter()
        .position(|w| w == keyword)
        .map(|i| (&words[..i], &words[i + 1..]))
}

fn parse_words(words: &[String], what: &str) -> Result<ddcalc_core::ParsedExpr, Failure> {
    if words.is_empty() {
        return Err(Failure::usage(format!("missing {}", what)));
    }
    parse_expr(&words.join(" ")).map_err(Failure::Parse)
}

fn parse_constant(words: &[String], what: &str) -> Result<Rational, Failure> {
    let parsed = parse_words(words, what)?;
    match parsed.expr {
        Expr::Const(c) => Ok(c),
        _ => Err(Failure::usage(format!(
            "{} must be a constant, got '{}'",
            what,
            words.join(" ")
        ))),
    }
}

fn cmd_derivative(words: &[String], flags: &Flags) -> Result<String, Failure> {
    let parsed = parse_words(words, "expression")?;
    let result = derivative(&parsed.expr).map_err(|e| Failure::math(e.name(), &e))?;
    let var = parsed.var.as_deref().unwrap_or("x");
    let stdout = format!("result = {}\n", result.canonical_string(var));
    if let Some(path) = &flags.plot {
        write_plot(path, -2.0, 2.0, &parsed.expr, |x| result.eval_f64(x).ok())?;
    }
    Ok(stdout)
}

fn cmd_antiderivative(words: &[String], flags: &Flags) -> Result<String, Failure> {
    let parsed = parse_words(words, "expression")?;
    let result = antiderivative(&parsed.expr).map_err(|e| Failure::math(e.name(), &e))?;
    let var = parsed.var.as_deref().unwrap_or("x");
    let stdout = format!("result = {}\n", result.canonical_string(var));
    if let Some(path) = &flags.plot {
        write_plot(path, -2.0, 2.0, &parsed.expr, |x| result.eval_f64(x).ok())?;
    }
    Ok(stdout)
}

fn cmd_integrate(words: &[String], flags: &Flags) -> Result<String, Failure> {
    let (expr_words, bounds) = split_keyword(words, "from")
        .ok_or_else(|| Failure::usage("expected 'from' after the integrand"))?;
    let (a_words, b_words) = split_keyword(bounds, "to")
        .ok_or_else(|| Failure::usage("expected 'to' after the lower bound"))?;
    let parsed = parse_words(expr_words, "integrand")?;
    let a = parse_constant(a_words, "lower bound")?;

    let upper = parse_words(b_words, "upper bound")?;
    if upper.expr == Expr::Var {
        // Free upper bound: the integral is a function, not a number.
        if flags.numeric {
            return Err(Failure::usage(
                "--numeric cannot be combined with a symbolic upper bound",
            ));
        }
        let bound_name = upper.var.as_deref().unwrap_or("x").to_string();
        let result = integrate_symbolic_upper(&parsed.expr, &a)
            .map_err(|e| Failure::math(e.name(), &e))?;
        let stdout = format!(
            "result = {}\nmethod = height-increment\n",
            result.canonical_string(&bound_name)
        );
        if let Some(path) = &flags.plot {
            let lo = a.to_f64();
            write_plot(path, lo, lo + 4.0, &parsed.expr, |x| result.eval_f64(x).ok())?;
        }
        return Ok(stdout);
    }

    let b = match upper.expr {
        Expr::Const(c) => c,
        _ => {
            return Err(Failure::usage(format!(
                "upper bound must be a constant or a bare variable, got '{}'",
                b_words.join(" ")
            )))
        }
    };
    let outcome = if flags.numeric {
        integrate_numeric(&parsed.expr, &a, &b)
    } else {
        integrate_symbolic(&parsed.expr, &a, &b)
    }
    .map_err(|e| Failure::math(e.name(), &e))?;
    let stdout = format!(
        "result = {}\nmethod = {}\n",
        outcome.value,
        outcome.method.name()
    );
    if let Some(path) = &flags.plot {
        let fa = a.to_f64();
        let fb = b.to_f64();
        let integrand = parsed.expr.clone();
        match &outcome.antiderivative_used {
            Some(big_g) => {
                let big_g = big_g.clone();
                let anchor = big_g.eval_f64(fa).ok();
                write_plot(path, fa, fb, &parsed.expr, move |x| {
                    match (big_g.eval_f64(x).ok(), anchor) {
                        (Some(v), Some(base)) => Some(v - base),
                        _ => None,
                    }
                })?;
            }
            None => {
                let cfg = plot_quadrature_config();
                write_plot(path, fa, fb, &parsed.expr, move |x| {
                    quadrature(&integrand, fa, x, &cfg).ok()
                })?;
            }
        }
    }
    Ok(stdout)
}

fn cmd_tangent(words: &[String], flags: &Flags) -> Result<String, Failure> {
    let (expr_words, at_words) = split_keyword(words, "at")
        .ok_or_else(|| Failure::usage("expected 'at' after the curve expression"))?;
    let parsed = parse_words(expr_words, "curve expression")?;
    let x0 = parse_constant(at_words, "tangent point")?;
    let curve = Curve::from_expr(&parsed.expr).map_err(|e| Failure::math(e.name(), &e))?;

    let method = flags.method.as_deref().unwrap_or("point-slope");
    let (line_text, extra, y0, m) = match method {
        "point-slope" => {
            let line = tangent_point_slope(&curve, &x0).map_err(|e| Failure::math(e.name(), &e))?;
            (
                format_tangent_line(&line.y0, &line.m, &x0),
                String::new(),
                line.y0,
                line.m,
            )
        }
        "descartes" => {
            let result = tangent_descartes(&curve, &x0).map_err(|e| Failure::math(e.name(), &e))?;
            let y0 = curve.height(&x0).map_err(|e| Failure::math(e.name(), &e))?;
            (
                format_tangent_line(&y0, &result.tangent_slope, &x0),
                format!("center a = {}\n", result.center_a),
                y0,
                result.tangent_slope,
            )
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown tangent method '{}': expected point-slope or descartes",
                other
            )))
        }
    };
    let stdout = format!("{}\n{}", line_text, extra);
    if let Some(path) = &flags.plot {
        let fx0 = x0.to_f64();
        let fy0 = y0.to_f64();
        let fm = m.to_f64();
        write_plot(path, fx0 - 2.0, fx0 + 2.0, &parsed.expr, move |x| {
            Some(fy0 + fm * (x - fx0))
        })?;
    }
    Ok(stdout)
}

fn cmd_meanvalue(words: &[String], flags: &Flags) -> Result<String, Failure> {
    let (expr_words, bounds) = split_keyword(words, "from")
        .ok_or_else(|| Failure::usage("expected 'from' after the expression"))?;
    let (a_words, b_words) = split_keyword(bounds, "to")
        .ok_or_else(|| Failure::usage("expected 'to' after the lower bound"))?;
    let parsed = parse_words(expr_words, "expression")?;
    let a = parse_constant(a_words, "lower bound")?;
    let b = parse_constant(b_words, "upper bound")?;
    let mv = mean_value(&parsed.expr, &a, &b).map_err(|e| Failure::math(e.name(), &e))?;
    let stdout = format!("result = {}\nwitness c = {}\n", mv.mean, mv.witness_c);
    if let Some(path) = &flags.plot {
        let w = mv.mean.to_f64();
        write_plot(path, a.to_f64(), b.to_f64(), &parsed.expr, move |_| Some(w))?;
    }
    Ok(stdout)
}

fn cmd_grade(words: &[String], _flags: &Flags) -> Result<String, Failure> {
    if words.len() != 2 {
        return Err(Failure::usage(format!(
            "grade takes exactly two numbers, got {}",
            words.len()
        )));
    }
    let rise = parse_constant(&words[..1], "rise")?;
    let run = parse_constant(&words[1..], "run")?;
    let slope = grade(&rise, &run).map_err(|e| Failure::math("DomainError", &e))?;
    Ok(format!("result = {}\n", slope))
}

fn format_tangent_line(y0: &Scalar, m: &Scalar, x0: &Rational) -> String {
    let left = if y0.is_zero() {
        "y".to_string()
    } else if y0.is_negative() {
        format!("y + {}", y0.abs())
    } else {
        format!("y - {}", y0)
    };
    let right = if x0.is_zero() {
        "x".to_string()
    } else if x0.is_negative() {
        format!("(x + {})", -x0)
    } else {
        format!("(x - {})", x0)
    };
    format!("result = {} = {} {}", left, m, right)
}

/// 257 uniform samples of the input expression and a result curve, written
/// as CSV. Points where a curve is undefined become NaN cells; the file is
/// still written.
fn write_plot(
    path: &str,
    lo: f64,
    hi: f64,
    input: &Expr,
    result_at: impl Fn(f64) -> Option<f64>,
) -> Result<(), Failure> {
    let mut csv = String::with_capacity(PLOT_POINTS * 64);
    csv.push_str("x,input,result\n");
    let steps = PLOT_POINTS - 1;
    for i in 0..PLOT_POINTS {
        let x = if i == 0 {
            lo
        } else if i == steps {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / steps as f64)
        };
        let input_cell = cell(input.eval_f64(x).ok());
        let result_cell = cell(result_at(x));
        csv.push_str(&format!("{:.16e},{},{}\n", x, input_cell, result_cell));
    }
    std::fs::write(path, csv)
        .map_err(|e| Failure::math("IoError", format!("cannot write {}: {}", path, e)))
}

fn cell(value: Option<f64>) -> String {
    match value {
        Some(v) if v.is_finite() => format!("{:.16e}", v),
        _ => "NaN".to_string(),
    }
}
