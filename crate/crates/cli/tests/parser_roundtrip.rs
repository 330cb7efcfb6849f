use proptest::prelude::*;
use proptest::test_runner::Config;

use trigfun_cli::expr::{BinOp, Func};
use trigfun_cli::{parse_expr, Expr};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0.0f64..1e6).prop_map(Expr::Num),
        (1e-12f64..1e-3).prop_map(Expr::Num),
        (0.0f64..100.0).prop_map(Expr::Imag),
        Just(Expr::Pi),
        Just(Expr::I),
        Just(Expr::T),
        Just(Expr::U),
        (0u32..5).prop_map(Expr::Diff),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 64, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow)
        ];
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (prop::sample::select(Func::ALL.to_vec()), inner.clone()).prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
            (op, inner.clone(), inner).prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(Config::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        let back = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(back, e);
    }
}
