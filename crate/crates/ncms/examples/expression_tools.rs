//! The expression language: parsing, canonical printing, evaluation, and
//! predicates, including error positions.

use ncms::expr::{parse_expr, parse_predicate};

fn main() {
    let env = [2.0, 0.0];
    for text in [
        "x1 + 2*x2",
        "x1^2 + sin(x2)",
        "2 + 3*4^2",
        "-x1^2",
        "min(sqrt(x1^2 + x2^2) - 0.9, 1.1 - sqrt(x1^2 + x2^2))",
    ] {
        let e = parse_expr(text).unwrap();
        println!("{text:?}");
        println!("  prints as {}", e);
        println!("  value at (2, 0): {:?}", e.eval(&env, 0.0));
    }

    println!("\nerrors carry positions:");
    for text in ["x1 + * 2", "foo(1)", "1/0 +", "x1^x2"] {
        match parse_expr(text) {
            Err(e) => println!("  {text:?} -> {e}"),
            Ok(e) => println!("  {text:?} -> parsed {e}"),
        }
    }

    println!("\npredicates:");
    let p = parse_predicate("x1 > 0").unwrap();
    for x in [-0.5, 0.0, 0.5] {
        println!("  {} at x1={x}: {:?}", p, p.holds(&[x]));
    }
}
