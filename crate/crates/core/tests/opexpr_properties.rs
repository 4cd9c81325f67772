use num_complex::Complex;
use proptest::prelude::*;

use tfd_core::doubled::doubled;
use tfd_core::opexpr::{evaluate, format, parse_str, tilde_rewrite, EvalContext, Expr};
use tfd_core::{Error, FockSpace};

fn part() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        (-20i32..20).prop_map(f64::from),
        -1e3..1e3f64,
        -1.0..1.0f64,
    ]
}

fn scalar() -> impl Strategy<Value = Complex<f64>> {
    (part(), part()).prop_map(|(re, im)| Complex::new(re, im))
}

fn atom() -> impl Strategy<Value = Expr<f64>> {
    prop_oneof![Just("a"), Just("b")].prop_map(Expr::atom)
}

/// Arbitrary ASTs of depth at most `levels + 1`.
fn any_expr(levels: u32) -> impl Strategy<Value = Expr<f64>> {
    let leaf = prop_oneof![scalar().prop_map(Expr::Scalar), atom()];
    leaf.prop_recursive(levels, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::dagger),
            inner.clone().prop_map(Expr::tilde),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Product),
            (scalar(), inner).prop_map(|(c, e)| Expr::scaled(c, e)),
        ]
    })
}

fn small_scalar() -> impl Strategy<Value = Complex<f64>> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

/// Tilde-free expressions over `a`, `a†`, scalars, sums and products.
fn ladder_expr() -> impl Strategy<Value = Expr<f64>> {
    let leaf = prop_oneof![
        Just(Expr::atom("a")),
        Just(Expr::dagger(Expr::atom("a"))),
        small_scalar().prop_map(Expr::Scalar),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Product),
            (small_scalar(), inner).prop_map(|(c, e)| Expr::scaled(c, e)),
        ]
    })
}

fn depth(e: &Expr<f64>) -> usize {
    match e {
        Expr::Scalar(_) | Expr::Atom(_) => 1,
        Expr::Dagger(x) | Expr::Tilde(x) | Expr::ScalarMul(_, x) => 1 + depth(x),
        Expr::Sum(xs) | Expr::Product(xs) => 1 + xs.iter().map(depth).max().unwrap_or(0),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_format(e in any_expr(5)) {
        prop_assert!(depth(&e) <= 6);
        let text = format(&e);
        let back = parse_str::<f64>(&text);
        prop_assert_eq!(back.as_ref(), Ok(&e), "text: {}", text);
        prop_assert_eq!(format(&back.unwrap()), text);
    }

    #[test]
    fn rewrite_is_a_normal_form(e in any_expr(5)) {
        let once = tilde_rewrite(&e);
        prop_assert_eq!(tilde_rewrite(&once), once.clone());
        prop_assert!(once.tilde_depth() <= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boson_rewrite_is_sound(e in ladder_expr()) {
        let ds = doubled(FockSpace::boson(5).unwrap());
        let ctx = EvalContext::new(ds);
        let tilde = Expr::tilde(e.clone());
        let lifted = evaluate(&tilde, &ctx).unwrap();
        let rewritten = evaluate(&tilde_rewrite(&tilde), &ctx).unwrap();
        let conjugated = ds.tilde_conjugate(&evaluate(&e, &ctx).unwrap()).unwrap();
        prop_assert!(lifted.distance(&rewritten).unwrap() < 1e-10);
        prop_assert!(lifted.distance(&conjugated).unwrap() < 1e-10);
    }

    #[test]
    fn fermion_rewrite_is_sound_on_even_expressions(e in ladder_expr()) {
        let ds = doubled(FockSpace::fermion());
        let ctx = EvalContext::new(ds);
        let tilde = Expr::tilde(e.clone());
        let lifted = evaluate(&tilde, &ctx).unwrap();
        let rewritten = evaluate(&tilde_rewrite(&tilde), &ctx).unwrap();
        if e.is_even() {
            prop_assert!(lifted.distance(&rewritten).unwrap() < 1e-10);
        }
        // the graded lift makes the rewrite sound for odd terms too
        prop_assert!(lifted.distance(&rewritten).unwrap() < 1e-10);
    }

    #[test]
    fn mixed_expressions_evaluate_consistently(e in any_expr(3)) {
        let ds = doubled(FockSpace::boson(3).unwrap());
        let ctx = EvalContext::new(ds);
        match (evaluate(&e, &ctx), evaluate(&tilde_rewrite(&e), &ctx)) {
            (Ok(x), Ok(y)) => {
                let scale = 1.0 + x.matrix().max_abs();
                prop_assert!(x.distance(&y).unwrap() < 1e-10 * scale);
            }
            (Err(Error::TildeDepth(_)), Ok(_)) => {}
            (x, y) => prop_assert!(false, "{:?} / {:?}", x, y),
        }
    }
}

#[test]
fn error_positions() {
    let cases = [("(a", 0), ("a + (b", 4), ("a b)", 3), ("a + * b", 2), ("~ b", 2), ("a # b", 2), ("2 a -", 4)];
    for (text, offset) in cases {
        match parse_str::<f64>(text) {
            Err(Error::Syntax { offset: got, .. }) => assert_eq!(got, offset, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}
