//! Certifies a target state for the constant flow x' = 1 against the state
//! restriction S = (0, inf), exercising escape-based discharges.
//!
//! The flow starts at the boundary of S, so the restriction contains
//! minimum-free trajectories (0, d]: they are not initial and have no
//! backward extension inside S, and must instead escape backward with
//! length at least f(t - inf dom). The run prints the full discharge table,
//! then repeats the check with a steeper class-K function for which every
//! escape is too short.

use ncms::cli::{cmd_certify, ModelOptions};

const MODEL: &str = "\
[grid]
h = 1/8
horizon = 8

[ode]
dim = 1
field = \"1\"
seeds = (0)
starts = 0
left-open = true

[constraint]
expr = \"x1 > 0\"

[certificate]
A = (1.0)
S = \"x1 > 0\"
f = linear 0.5
t0 = 1
";

fn main() {
    let opts = ModelOptions::default();

    println!("== f(x) = 0.5 x ==");
    let out = cmd_certify(MODEL, &opts);
    print!("{}", out.text);
    println!("exit code: {}\n", out.code);

    println!("== f(x) = 2 x (mutation: escapes become infeasible) ==");
    let steeper = MODEL.replace("linear 0.5", "linear 2");
    let out = cmd_certify(&steeper, &opts);
    print!("{}", out.text);
    println!("exit code: {}", out.code);
}
