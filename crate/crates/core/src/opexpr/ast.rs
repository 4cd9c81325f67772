use crate::scalar::{Cplx, Real};

/// Operator expression over the ladder atoms of one doubled mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T: Real> {
    Scalar(Cplx<T>),
    Atom(String),
    Dagger(Box<Expr<T>>),
    Tilde(Box<Expr<T>>),
    Sum(Vec<Expr<T>>),
    Product(Vec<Expr<T>>),
    ScalarMul(Cplx<T>, Box<Expr<T>>),
}

impl<T: Real> Expr<T> {
    pub fn atom(name: &str) -> Self {
        Expr::Atom(name.to_string())
    }

    pub fn dagger(e: Self) -> Self {
        Expr::Dagger(Box::new(e))
    }

    pub fn tilde(e: Self) -> Self {
        Expr::Tilde(Box::new(e))
    }

    pub fn scaled(c: Cplx<T>, e: Self) -> Self {
        Expr::ScalarMul(c, Box::new(e))
    }

    /// Deepest nesting of `Tilde` nodes along any path.
    pub fn tilde_depth(&self) -> usize {
        match self {
            Expr::Scalar(_) | Expr::Atom(_) => 0,
            Expr::Dagger(x) | Expr::ScalarMul(_, x) => x.tilde_depth(),
            Expr::Tilde(x) => 1 + x.tilde_depth(),
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().map(Expr::tilde_depth).max().unwrap_or(0),
        }
    }

    pub fn is_tilde_free(&self) -> bool {
        self.tilde_depth() == 0
    }

    /// Whether every monomial carries an even number of ladder atoms.
    pub fn is_even(&self) -> bool {
        self.parity() == Some(0)
    }

    /// Ladder-atom count mod 2, or `None` if the terms of a sum disagree.
    pub fn parity(&self) -> Option<usize> {
        match self {
            Expr::Scalar(_) => Some(0),
            Expr::Atom(_) => Some(1),
            Expr::Dagger(x) | Expr::Tilde(x) | Expr::ScalarMul(_, x) => x.parity(),
            Expr::Product(xs) => xs.iter().try_fold(0, |acc, x| Some((acc + x.parity()?) % 2)),
            Expr::Sum(xs) => {
                let first = xs.first()?.parity()?;
                xs.iter().all(|x| x.parity() == Some(first)).then_some(first)
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Scalar(_) | Expr::Atom(_) => 1,
            Expr::Dagger(x) | Expr::Tilde(x) | Expr::ScalarMul(_, x) => 1 + x.size(),
            Expr::Sum(xs) | Expr::Product(xs) => 1 + xs.iter().map(Expr::size).sum::<usize>(),
        }
    }
}
