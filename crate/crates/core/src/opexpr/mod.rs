//! Operator expressions over one doubled mode: lexer, parser, tilde
//! rewriting and numeric evaluation.
//!
//! ```
//! use tfd_core::doubled::doubled;
//! use tfd_core::fock::FockSpace;
//! use tfd_core::opexpr::{evaluate, parse_str, tilde_rewrite, EvalContext};
//!
//! let e = parse_str::<f64>("~((2+1i) a† b)").unwrap();
//! assert_eq!(tilde_rewrite(&e).to_string(), "(2-1i) ~(a)† ~(b)");
//! let op = evaluate(&e, &EvalContext::new(doubled(FockSpace::fermion()))).unwrap();
//! assert_eq!(op.dim(), 4);
//! ```

mod ast;
mod eval;
mod format;
mod lexer;
mod parser;
mod rewrite;

pub use ast::Expr;
pub use eval::{evaluate, EvalContext};
pub use format::{format, format_complex, sexpr};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_complex, parse_str};
pub use rewrite::{tilde_rewrite, tilde_rewrite_annotated, Rewritten};
