use num_complex::Complex;

use super::ast::Expr;
use super::lexer::{tokenize, Token, TokenKind};
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Parses an expression string.
pub fn parse_str<T: Real>(text: &str) -> Result<Expr<T>> {
    parse(&tokenize(text)?, text.len())
}

/// Parses a token stream; `end` is the byte length of the source, used to
/// position errors at end of input.
///
/// ```text
/// expr   := ['-'] term (('+' | '-') term)*
/// term   := factor (factor | '*' factor)*
/// factor := primary '†'*
/// primary:= number | ident | '~' '(' expr ')' | '(' expr ')'
/// ```
pub fn parse<T: Real>(tokens: &[Token], end: usize) -> Result<Expr<T>> {
    let mut p = Parser { tokens, at: 0, end };
    if tokens.is_empty() {
        return Err(p.error_here("empty expression"));
    }
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) if t.kind == TokenKind::RParen => Err(Error::Syntax {
            offset: t.pos,
            message: "unbalanced `)`".into(),
        }),
        Some(t) => Err(Error::Syntax {
            offset: t.pos,
            message: format!("unexpected `{}`", t.text),
        }),
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.at)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.at);
        self.at += 1;
        t
    }

    fn error_here(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.peek().map_or(self.end, |t| t.pos),
            message: message.into(),
        }
    }

    fn expr<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut terms = Vec::new();
        if let Some(t) = self.peek().filter(|t| t.kind == TokenKind::Minus) {
            self.bump();
            terms.push(negate(self.term_after(t)?));
        } else {
            terms.push(self.term()?);
        }
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Plus => {
                    self.bump();
                    terms.push(self.term_after(t)?);
                }
                TokenKind::Minus => {
                    self.bump();
                    terms.push(negate(self.term_after(t)?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Sum(terms)
        })
    }

    /// A term that must follow operator `op`.
    fn term_after<T: Real>(&mut self, op: &Token) -> Result<Expr<T>> {
        if !self.starts_factor() {
            return Err(Error::Syntax {
                offset: op.pos,
                message: format!("dangling `{}`", op.text),
            });
        }
        self.term()
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek().map(|t| t.kind),
            Some(TokenKind::Number | TokenKind::Ident | TokenKind::Tilde | TokenKind::LParen)
        )
    }

    fn term<T: Real>(&mut self) -> Result<Expr<T>> {
        let lead_number = self.peek().map(|t| t.kind) == Some(TokenKind::Number);
        let mut factors = vec![self.factor()?];
        let lead_number = lead_number && matches!(factors[0], Expr::Scalar(_));
        let mut star_after_lead = false;
        loop {
            match self.peek() {
                Some(t) if t.kind == TokenKind::Star => {
                    self.bump();
                    if factors.len() == 1 {
                        star_after_lead = true;
                    }
                    if !self.starts_factor() {
                        return Err(Error::Syntax {
                            offset: t.pos,
                            message: "dangling `*`".into(),
                        });
                    }
                    factors.push(self.factor()?);
                }
                _ if self.starts_factor() => factors.push(self.factor()?),
                _ => break,
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        if lead_number && !star_after_lead {
            let Expr::Scalar(c) = factors.remove(0) else {
                unreachable!("lead factor is a scalar")
            };
            let rest = if factors.len() == 1 {
                factors.pop().expect("one factor")
            } else {
                Expr::Product(factors)
            };
            return Ok(Expr::scaled(c, rest));
        }
        Ok(Expr::Product(factors))
    }

    fn factor<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut e = self.primary()?;
        while self.peek().map(|t| t.kind) == Some(TokenKind::Dagger) {
            self.bump();
            e = Expr::dagger(e);
        }
        Ok(e)
    }

    fn primary<T: Real>(&mut self) -> Result<Expr<T>> {
        let Some(t) = self.bump() else {
            return Err(Error::Syntax {
                offset: self.end,
                message: "unexpected end of input".into(),
            });
        };
        match t.kind {
            TokenKind::Number => Ok(Expr::Scalar(parse_complex(&t.text).ok_or_else(|| Error::Syntax {
                offset: t.pos,
                message: format!("malformed number `{}`", t.text),
            })?)),
            TokenKind::Ident => Ok(Expr::Atom(t.text.clone())),
            TokenKind::Tilde => {
                match self.bump() {
                    Some(open) if open.kind == TokenKind::LParen => {
                        let inner = self.expr()?;
                        self.close(open)?;
                        Ok(Expr::tilde(inner))
                    }
                    // `~(2)` lexes as tilde followed by a literal
                    Some(lit) if lit.kind == TokenKind::Number && lit.text.starts_with('(') => {
                        self.at -= 1;
                        Ok(Expr::tilde(self.primary()?))
                    }
                    Some(other) => Err(Error::Syntax {
                        offset: other.pos,
                        message: "expected `(` after `~`".into(),
                    }),
                    None => Err(Error::Syntax {
                        offset: self.end,
                        message: "expected `(` after `~`".into(),
                    }),
                }
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.close(t)?;
                Ok(inner)
            }
            _ => Err(Error::Syntax {
                offset: t.pos,
                message: format!("unexpected `{}`", t.text),
            }),
        }
    }

    fn close(&mut self, open: &Token) -> Result<()> {
        match self.bump() {
            Some(t) if t.kind == TokenKind::RParen => Ok(()),
            Some(t) => Err(Error::Syntax {
                offset: t.pos,
                message: format!("expected `)` to close `(` at byte {}", open.pos),
            }),
            None => Err(Error::Syntax {
                offset: open.pos,
                message: "unbalanced `(`".into(),
            }),
        }
    }
}

fn negate<T: Real>(e: Expr<T>) -> Expr<T> {
    Expr::scaled(Complex::new(-T::one(), T::zero()), e)
}

/// Reads `a`, `bi`, `a+bi` with optional surrounding parentheses and spaces.
pub fn parse_complex<T: Real>(text: &str) -> Option<Cplx<T>> {
    let s: String = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    // split before a sign that is not the leading one and not an exponent sign
    let b = s.as_bytes();
    let split = (1..b.len()).find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let real = |x: &str| T::from_str_radix(x, 10).ok();
    let imag = |x: &str| x.strip_suffix('i').and_then(real);
    match split {
        None if s.ends_with('i') => Some(Complex::new(T::zero(), imag(&s)?)),
        None => Some(Complex::new(real(&s)?, T::zero())),
        Some(k) => {
            let (re, im) = s.split_at(k);
            let im = im.strip_prefix('+').unwrap_or(im);
            Some(Complex::new(real(re)?, imag(im)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn p(s: &str) -> Expr<f64> {
        parse_str(s).unwrap()
    }

    fn a() -> Expr<f64> {
        Expr::atom("a")
    }

    fn b() -> Expr<f64> {
        Expr::atom("b")
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            p("a† ~(b)†"),
            Expr::Product(vec![Expr::dagger(a()), Expr::dagger(Expr::tilde(b()))])
        );
        assert_eq!(
            p("2 a + 3i b"),
            Expr::Sum(vec![Expr::scaled(cplx(2., 0.), a()), Expr::scaled(cplx(0., 3.), b())])
        );
        assert_eq!(p("(0+1i) a"), Expr::scaled(cplx(0., 1.), a()));
        assert_eq!(p("a - b"), Expr::Sum(vec![a(), Expr::scaled(cplx(-1., 0.), b())]));
        assert_eq!(p("-a"), Expr::scaled(cplx(-1., 0.), a()));
        assert_eq!(p("2 * a"), Expr::Product(vec![Expr::Scalar(cplx(2., 0.)), a()]));
        assert_eq!(p("a a'"), Expr::Product(vec![a(), Expr::dagger(a())]));
        assert_eq!(p("(a b)†"), Expr::dagger(Expr::Product(vec![a(), b()])));
        assert_eq!(p("~(~(a))"), Expr::tilde(Expr::tilde(a())));
        assert_eq!(p("~(2+1i)"), Expr::tilde(Expr::Scalar(cplx(2., 1.))));
    }

    #[test]
    fn errors_carry_offsets() {
        let off = |s: &str| match parse_str::<f64>(s) {
            Err(Error::Syntax { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(off("(a"), 0);
        assert_eq!(off("a)"), 1);
        assert_eq!(off("a +"), 2);
        assert_eq!(off("a * + b"), 2);
        assert_eq!(off("~a"), 1);
        assert_eq!(off(""), 0);
        assert_eq!(off("a $ b"), 2);
        assert_eq!(off("(a b"), 0);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex::<f64>("(0-1i)"), Some(cplx(0., -1.)));
        assert_eq!(parse_complex::<f64>("3i"), Some(cplx(0., 3.)));
        assert_eq!(parse_complex::<f64>("(-2)"), Some(cplx(-2., 0.)));
        assert_eq!(parse_complex::<f64>("(1e-3+2.5e2i)"), Some(cplx(1e-3, 250.)));
        assert_eq!(parse_complex::<f64>("(-1e-3-1i)"), Some(cplx(-1e-3, -1.)));
        assert_eq!(parse_complex::<f64>("1x"), None);
    }
}
