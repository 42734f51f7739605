//! Reach sets versus right range sets on a lifted transition system.
//!
//! The chain a -> b -> c shows the asymmetry at time 0: the initial state a
//! is reached (at t = 0) but is never the right end of a trajectory, so it
//! belongs to no right range set and cannot be certified.

use ncms::cli::{cmd_reach, ModelOptions};
use ncms::oracle::{bfs_reach, ts_to_ncms, FiniteTs};
use ncms::reach::{reach_set, right_range_set};
use ncms::time::{parse_time, TimeGrid};
use ncms::trajset::DEFAULT_CAP;

const MODEL: &str = "\
[grid]
h = 1
horizon = 2

[transition-system]
states = a b c
initial = a
arcs = a->b b->c
";

fn main() {
    let ts = FiniteTs::new(
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect(),
        [("a", "b"), ("b", "c")]
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        ["a"].iter().map(|s| s.to_string()).collect(),
    )
    .unwrap();
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&ts, &grid, DEFAULT_CAP).unwrap();

    println!("lifted trajectories:");
    for t in sys.trajectories().iter() {
        println!("  {}", t.render(&grid));
    }

    for t0_text in ["0.5", "1", "2"] {
        let t0 = parse_time(t0_text).unwrap();
        let reach = reach_set(&sys, t0).unwrap();
        let range = right_range_set(&sys, t0).unwrap();
        println!(
            "\nt0 = {t0_text}: reach = {{{}}}, right range = {{{}}}",
            reach.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
            range.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
        );
    }

    println!(
        "\nBFS baseline at 2 steps: {{{}}}",
        bfs_reach(&ts, 2).into_iter().collect::<Vec<_>>().join(",")
    );

    println!("\nCSV from the reach command at t0 = 2:");
    print!("{}", cmd_reach(MODEL, "2", &ModelOptions::default()).text);
}
