//! Exhaustive verification of the certification theorem on pseudo-random
//! finite transition systems: every subset of the positive-time reach set
//! must be certified by the witness restriction, and every backward
//! extensible state restriction must keep its right range inside BFS
//! reachability.

use ncms::cli::{cmd_oracle, OracleOptions};
use std::time::Instant;

fn main() {
    let opts = OracleOptions {
        states: 5,
        density: 0.3,
        runs: 200,
        seed: 7,
        ..Default::default()
    };
    let started = Instant::now();
    let out = cmd_oracle(&opts);
    print!("{}", out.text);
    println!("elapsed: {:.2?}", started.elapsed());
    println!("exit code: {}", out.code);
}
