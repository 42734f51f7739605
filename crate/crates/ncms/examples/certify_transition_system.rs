//! Certification on a finite transition system: a chain a -> b -> c with a
//! disconnected self-loop d -> d. The target {c} certifies with the
//! restriction {a,b,c}; the target {d} fails for every one of the 16 state
//! subsets, since d is unreachable from the initial state.

use ncms::cli::{cmd_certify, ModelOptions};

fn model(target: &str, restriction: &str) -> String {
    format!(
        "\
[grid]
h = 1
horizon = 2

[transition-system]
states = a b c d
initial = a
arcs = a->b b->c d->d

[certificate]
A = {target}
S = {restriction}
f = linear 1
t0 = 2
"
    )
}

fn main() {
    let opts = ModelOptions::default();

    println!("== certify A = {{c}} with S = {{a,b,c}} ==");
    let out = cmd_certify(&model("c", "a b c"), &opts);
    print!("{}", out.text);
    println!("exit code: {}\n", out.code);

    println!("== certify A = {{d}} against every subset S ==");
    let states = ["a", "b", "c", "d"];
    for mask in 0u32..16 {
        let subset: Vec<&str> = states
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, s)| *s)
            .collect();
        let s = if subset.is_empty() {
            "".to_string()
        } else {
            subset.join(" ")
        };
        let out = cmd_certify(&model("d", &s), &opts);
        let verdict = out.text.lines().next().unwrap_or("").to_string();
        println!("S = {{{}}} -> {}", subset.join(","), verdict);
    }
}
