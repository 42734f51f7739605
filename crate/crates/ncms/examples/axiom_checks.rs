//! Runs the three axiom checkers on hand-built trajectory sets and prints
//! the first counterexample when a check fails.

use ncms::axioms::{check_ncms, AxiomVerdict};
use ncms::interval::GridInterval;
use ncms::state::{State, StateSpace};
use ncms::time::TimeGrid;
use ncms::trajectory::Trajectory;
use ncms::trajset::{TrajectorySet, DEFAULT_EPS};

fn labels(dom: GridInterval, names: &[&str]) -> Trajectory {
    Trajectory::new(dom, names.iter().map(|n| State::label(*n)).collect()).unwrap()
}

fn show(name: &str, verdict: &AxiomVerdict, grid: &TimeGrid) {
    match verdict {
        AxiomVerdict::Pass => println!("  {name}: pass"),
        AxiomVerdict::MissingRestriction { restriction, .. } => {
            println!("  {name}: fail, missing restriction {}", restriction.render(grid))
        }
        AxiomVerdict::MissingConcat { glued, .. } => {
            println!("  {name}: fail, missing concatenation {}", glued.render(grid))
        }
        AxiomVerdict::ChainDefect { member } => {
            println!("  {name}: fail, chain defect at {}", member.render(grid))
        }
    }
}

fn run(title: &str, members: Vec<Trajectory>) {
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let space = StateSpace::Labels(["a", "b", "c"].iter().map(|s| s.to_string()).collect());
    let set = TrajectorySet::new(grid.clone(), space, DEFAULT_EPS, members).unwrap();
    let report = check_ncms(&set);
    println!("{title} ({} trajectories):", set.len());
    show("closed under restrictions", &report.cpr, &grid);
    show("markovian", &report.markovian, &grid);
    show("complete", &report.complete, &grid);
    println!("  overall: {}\n", if report.overall() { "pass" } else { "fail" });
}

fn main() {
    let full = labels(GridInterval::closed(0, 2).unwrap(), &["a", "b", "c"]);
    let head = labels(GridInterval::closed(0, 1).unwrap(), &["a", "b"]);
    let tail = labels(GridInterval::closed(1, 2).unwrap(), &["b", "c"]);

    run("closure of one run", vec![full.clone(), head.clone(), tail.clone()]);
    run("run without its restrictions", vec![full]);
    run("gluable pieces without their glue", vec![head, tail]);
    run(
        "pieces with mismatched junctions are vacuously markovian",
        vec![
            labels(GridInterval::closed(0, 1).unwrap(), &["a", "b"]),
            labels(GridInterval::closed(1, 2).unwrap(), &["c", "a"]),
        ],
    );
}
