use super::ast::Expr;
use crate::scalar::Real;

/// Result of pushing tildes to the leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct Rewritten<T: Real> {
    pub expr: Expr<T>,
    /// Number of `~(~(x)) → x` collapses performed. The sign is `+` for both
    /// statistics under the graded tilde lift; the count is kept so a caller
    /// using the `−` fermionic convention can recover it as `(−1)^collapsed`.
    pub collapsed: usize,
}

/// Normal form with `Tilde` only directly above atoms.
///
/// `~(A B) = ~(A) ~(B)`, `~(z A + w B) = z* ~(A) + w* ~(B)`,
/// `~(A†) = ~(A)†`, `~(~(A)) = A`.
pub fn tilde_rewrite<T: Real>(e: &Expr<T>) -> Expr<T> {
    tilde_rewrite_annotated(e).expr
}

pub fn tilde_rewrite_annotated<T: Real>(e: &Expr<T>) -> Rewritten<T> {
    let mut collapsed = 0;
    let expr = push(e, false, &mut collapsed);
    Rewritten { expr, collapsed }
}

fn push<T: Real>(e: &Expr<T>, tilde: bool, collapsed: &mut usize) -> Expr<T> {
    let conj = |c: &num_complex::Complex<T>| if tilde { c.conj() } else { *c };
    match e {
        Expr::Scalar(c) => Expr::Scalar(conj(c)),
        Expr::Atom(_) if tilde => Expr::tilde(e.clone()),
        Expr::Atom(_) => e.clone(),
        Expr::Dagger(x) => Expr::dagger(push(x, tilde, collapsed)),
        Expr::Tilde(x) => {
            if tilde {
                *collapsed += 1;
            }
            push(x, !tilde, collapsed)
        }
        Expr::Sum(xs) => Expr::Sum(xs.iter().map(|x| push(x, tilde, collapsed)).collect()),
        Expr::Product(xs) => Expr::Product(xs.iter().map(|x| push(x, tilde, collapsed)).collect()),
        Expr::ScalarMul(c, x) => Expr::scaled(conj(c), push(x, tilde, collapsed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opexpr::parser::parse_str;

    fn rw(s: &str) -> String {
        tilde_rewrite(&parse_str::<f64>(s).unwrap()).to_string()
    }

    #[test]
    fn rules() {
        assert_eq!(rw("~(a b)"), "~(a) ~(b)");
        assert_eq!(rw("~((2+1i) a)"), "(2-1i) ~(a)");
        assert_eq!(rw("~(a†)"), "~(a)†");
        assert_eq!(rw("~(2 a + 3i b)"), "2 ~(a) + (-3i) ~(b)");
        assert_eq!(rw("~(~(a))"), "a");
        assert_eq!(rw("~(a ~(b))"), "~(a) b");
    }

    #[test]
    fn collapse_count_and_idempotence() {
        let e = parse_str::<f64>("~(~(a) ~(~(b)))").unwrap();
        let r = tilde_rewrite_annotated(&e);
        assert_eq!(r.expr.to_string(), "a ~(b)");
        assert_eq!(r.collapsed, 2);
        assert_eq!(tilde_rewrite(&r.expr), r.expr);
        assert!(r.expr.tilde_depth() <= 1);
    }
}
