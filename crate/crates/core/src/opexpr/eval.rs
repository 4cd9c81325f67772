use super::ast::Expr;
use crate::doubled::{DoubledSpace, KleinConvention};
use crate::error::{Error, Result};
use crate::fock::{annihilator, LinOp, Space};
use crate::scalar::Real;

/// Doubled space and tilde convention an expression is evaluated against.
///
/// The atoms `a` and `b` both name the mode annihilator; `~(b)` is the
/// conventional spelling of the tilde partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalContext {
    ds: DoubledSpace,
    klein: KleinConvention,
}

impl EvalContext {
    pub fn new(ds: DoubledSpace) -> Self {
        Self {
            ds,
            klein: ds.klein(),
        }
    }

    /// Rejects a Klein convention that does not match the statistics.
    pub fn with_klein(ds: DoubledSpace, klein: KleinConvention) -> Result<Self> {
        if klein != ds.klein() {
            return Err(Error::StatisticsMismatch(format!(
                "Klein factor {} for {} space",
                if klein.enabled() { "enabled" } else { "disabled" },
                ds.kind()
            )));
        }
        Ok(Self { ds, klein })
    }

    pub fn ds(&self) -> DoubledSpace {
        self.ds
    }

    pub fn klein(&self) -> KleinConvention {
        self.klein
    }

    fn atom<T: Real>(&self, name: &str) -> Result<LinOp<T>> {
        match name {
            "a" | "b" => Ok(annihilator(&self.ds.mode())),
            other => Err(Error::UnboundIdentifier(other.to_string())),
        }
    }
}

/// Matrix of `e` on the doubled space.
///
/// A tilde over a tilde-free subexpression goes through the tilde lift of
/// its single-mode matrix; deeper nesting uses tilde conjugation on the
/// doubled space.
pub fn evaluate<T: Real>(e: &Expr<T>, ctx: &EvalContext) -> Result<LinOp<T>> {
    let depth = e.tilde_depth();
    if depth > 2 {
        return Err(Error::TildeDepth(depth));
    }
    eval_doubled(e, ctx)
}

fn eval_doubled<T: Real>(e: &Expr<T>, ctx: &EvalContext) -> Result<LinOp<T>> {
    let ds = ctx.ds;
    match e {
        Expr::Scalar(c) => Ok(LinOp::identity(ds.space()).scale(*c)),
        Expr::Atom(name) => ds.lift_physical(&ctx.atom(name)?),
        Expr::Dagger(x) => Ok(eval_doubled(x, ctx)?.dagger()),
        Expr::Tilde(x) if x.is_tilde_free() => ds.lift_tilde(&eval_mode(x, ctx)?, ctx.klein),
        Expr::Tilde(x) => ds.tilde_conjugate(&eval_doubled(x, ctx)?),
        Expr::Sum(xs) => fold(xs, ctx, LinOp::add, eval_doubled),
        Expr::Product(xs) => fold(xs, ctx, LinOp::compose, eval_doubled),
        Expr::ScalarMul(c, x) => Ok(eval_doubled(x, ctx)?.scale(*c)),
    }
}

/// Matrix of a tilde-free expression on the single mode.
fn eval_mode<T: Real>(e: &Expr<T>, ctx: &EvalContext) -> Result<LinOp<T>> {
    match e {
        Expr::Scalar(c) => Ok(LinOp::identity(Space::Mode(ctx.ds.mode())).scale(*c)),
        Expr::Atom(name) => ctx.atom(name),
        Expr::Dagger(x) => Ok(eval_mode(x, ctx)?.dagger()),
        Expr::Tilde(_) => unreachable!("caller checked the subexpression is tilde-free"),
        Expr::Sum(xs) => fold(xs, ctx, LinOp::add, eval_mode),
        Expr::Product(xs) => fold(xs, ctx, LinOp::compose, eval_mode),
        Expr::ScalarMul(c, x) => Ok(eval_mode(x, ctx)?.scale(*c)),
    }
}

fn fold<T: Real>(
    xs: &[Expr<T>],
    ctx: &EvalContext,
    op: fn(&LinOp<T>, &LinOp<T>) -> Result<LinOp<T>>,
    eval: fn(&Expr<T>, &EvalContext) -> Result<LinOp<T>>,
) -> Result<LinOp<T>> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty sum or product".into()))?;
    rest.iter().try_fold(eval(first, ctx)?, |acc, x| op(&acc, &eval(x, ctx)?))
}
