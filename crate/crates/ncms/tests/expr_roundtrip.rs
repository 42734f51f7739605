//! Expression corpus: the printer is a fixed point of parse-print, and
//! evaluation matches hand-computed values.

use ncms::expr::{parse_expr, parse_predicate, Expr, Func};
use proptest::prelude::*;

/// Fifty expressions covering literals, variables, precedence,
/// associativity, unary minus, exponents, and every function.
pub const CORPUS: [&str; 50] = [
    "0",
    "1",
    "2.5",
    "1e3",
    "2.5e-2",
    "x1",
    "x2",
    "x10",
    "t",
    "-x1",
    "--x1",
    "-(x1)",
    "x1 + x2",
    "x1 - x2",
    "x1*x2",
    "x1/x2",
    "x1^2",
    "x1^-1",
    "2^10",
    "x1 + x2 + x3",
    "x1 - x2 - x3",
    "x1 - (x2 - x3)",
    "x1*x2*x3",
    "x1/(x2*x3)",
    "(x1 + x2)*x3",
    "x1 + x2*x3",
    "x1*x2 + x3",
    "-x1^2",
    "(-x1)^2",
    "2*x1^3 - 3*x1 + 1",
    "x1^2 + sin(x2)",
    "sin(x1)",
    "cos(x1)",
    "exp(x1)",
    "sqrt(x1)",
    "abs(x1)",
    "min(x1, x2)",
    "max(x1, x2)",
    "min(x1, max(x2, x3))",
    "sin(cos(exp(x1)))",
    "sqrt(x1^2 + x2^2)",
    "abs(x1 - x2)/2",
    "1/(1 + exp(-x1))",
    "sin(t)*x1",
    "t^2 - t",
    "max(0, x1 - 1)",
    "min(sqrt(x1^2 + x2^2) - 0.9, 1.1 - sqrt(x1^2 + x2^2))",
    "x1/2 + x2/4 - x3/8",
    "2 + 3*4^2",
    "-(x1 + x2)*(x1 - x2)",
];

#[test]
fn corpus_round_trips_through_the_printer() {
    for text in CORPUS {
        let parsed = parse_expr(text).unwrap_or_else(|e| panic!("parse {text:?}: {e}"));
        let printed = parsed.to_string();
        let reparsed =
            parse_expr(&printed).unwrap_or_else(|e| panic!("reparse {printed:?}: {e}"));
        assert_eq!(parsed, reparsed, "round trip changed {text:?} -> {printed:?}");
        // printing is itself stable
        assert_eq!(printed, reparsed.to_string());
    }
}

#[test]
fn eval_spot_checks() {
    let env = [2.0, 0.0, -1.0];
    let cases = [
        ("x1^2 + sin(x2)", 4.0),
        ("x1 + 2*x2", 2.0),
        ("2 + 3*4^2", 50.0),
        ("x1 - x2 - x3", 3.0),
        ("min(x1, max(x2, x3))", 0.0),
        ("abs(x3)", 1.0),
        ("sqrt(x1^2 + x2^2)", 2.0),
        ("-x1^2", -4.0),
        ("(-x1)^2", 4.0),
        ("x1^-1", 0.5),
    ];
    for (text, want) in cases {
        let got = parse_expr(text).unwrap().eval(&env, 0.0).unwrap();
        assert_eq!(got, want, "{text}");
    }
    assert_eq!(
        parse_expr("sin(t)").unwrap().eval(&[], 2.0).unwrap(),
        2.0f64.sin()
    );
}

#[test]
fn predicate_round_trip() {
    for text in ["x1 > 0", "x1 + x2 <= 1", "sqrt(x1^2) >= 0.5", "t < 1"] {
        let p = parse_predicate(text).unwrap();
        let again = parse_predicate(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0f64..100.0).prop_map(Expr::Const),
        (1usize..4).prop_map(Expr::Var),
        Just(Expr::Time),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), 0i32..5).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            inner.clone().prop_map(|e| Expr::Call(Func::Sin, vec![e])),
            inner.clone().prop_map(|e| Expr::Call(Func::Sqrt, vec![e])),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Call(Func::Min, vec![a, b])),
        ]
    })
}

proptest! {
    #[test]
    fn printer_is_a_parse_fixed_point(e in arb_expr()) {
        let printed = e.to_string();
        let reparsed = parse_expr(&printed).unwrap();
        prop_assert_eq!(&e, &reparsed, "printed as {}", printed);
    }
}
