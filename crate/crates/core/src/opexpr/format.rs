use std::fmt;

use super::ast::Expr;
use crate::scalar::{Cplx, Real};

/// Canonical text of a complex number: `2`, `-1i`, `2-1i`, `0`.
pub fn format_complex<T: Real>(c: Cplx<T>) -> String {
    let zero = T::zero();
    match (c.re == zero, c.im == zero) {
        (true, true) => "0".into(),
        (false, true) => format!("{}", c.re),
        (true, false) => format!("{}i", c.im),
        (false, false) => {
            let sign = if c.im < zero { '-' } else { '+' };
            format!("{}{}{}i", c.re, sign, c.im.abs())
        }
    }
}

/// Scalar as it appears inside an expression: negative or two-part values
/// are parenthesized so they lex as a single literal.
fn scalar_token<T: Real>(c: Cplx<T>) -> String {
    let s = format_complex(c);
    if s.starts_with('-') || (c.re != T::zero() && c.im != T::zero()) {
        format!("({s})")
    } else {
        s
    }
}

/// Round-trippable concrete syntax.
pub fn format<T: Real>(e: &Expr<T>) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

fn write_expr<T: Real>(out: &mut String, e: &Expr<T>) {
    match e {
        Expr::Sum(terms) => {
            for (k, t) in terms.iter().enumerate() {
                if k > 0 {
                    out.push_str(" + ");
                }
                match t {
                    Expr::Sum(_) => write_parens(out, t),
                    _ => write_expr(out, t),
                }
            }
        }
        Expr::Product(factors) => {
            for (k, f) in factors.iter().enumerate() {
                if k > 0 {
                    // a leading scalar followed by juxtaposition would read as a scalar multiple
                    out.push_str(if k == 1 && matches!(factors[0], Expr::Scalar(_)) { " * " } else { " " });
                }
                write_factor(out, f);
            }
        }
        Expr::ScalarMul(c, x) => {
            out.push_str(&scalar_token(*c));
            out.push(' ');
            match **x {
                Expr::Product(_) => write_expr(out, x),
                _ => write_factor(out, x),
            }
        }
        _ => write_factor(out, e),
    }
}

fn write_factor<T: Real>(out: &mut String, e: &Expr<T>) {
    match e {
        Expr::Scalar(c) => out.push_str(&scalar_token(*c)),
        Expr::Atom(name) => out.push_str(name),
        Expr::Tilde(x) => {
            out.push_str("~(");
            write_expr(out, x);
            out.push(')');
        }
        Expr::Dagger(x) => {
            write_factor(out, x);
            out.push('†');
        }
        Expr::Sum(_) | Expr::Product(_) | Expr::ScalarMul(..) => write_parens(out, e),
    }
}

fn write_parens<T: Real>(out: &mut String, e: &Expr<T>) {
    out.push('(');
    write_expr(out, e);
    out.push(')');
}

/// Fully parenthesized prefix form, for debugging and logs.
pub fn sexpr<T: Real>(e: &Expr<T>) -> String {
    match e {
        Expr::Scalar(c) => format_complex(*c),
        Expr::Atom(name) => name.clone(),
        Expr::Dagger(x) => format!("(dag {})", sexpr(x)),
        Expr::Tilde(x) => format!("(tilde {})", sexpr(x)),
        Expr::Sum(xs) => format!("(+ {})", xs.iter().map(sexpr).collect::<Vec<_>>().join(" ")),
        Expr::Product(xs) => format!("(* {})", xs.iter().map(sexpr).collect::<Vec<_>>().join(" ")),
        Expr::ScalarMul(c, x) => format!("(scale {} {})", format_complex(*c), sexpr(x)),
    }
}

impl<T: Real> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}
