//! Harmonic oscillator front-end: integrate x' = (x2, -x1) from (1, 0),
//! check the sampled orbit against (cos t, -sin t), validate the axioms,
//! and certify the endpoint sample with an annulus restriction.

use ncms::classk::ClassKFunction;
use ncms::expr::{parse_expr, parse_predicate};
use ncms::interval::GridInterval;
use ncms::reach::{certify_underapprox, CertRestriction, Certificate, CertifyOutcome, Ncms};
use ncms::state::{State, StateFilter};
use ncms::systems::{generate_trajset, GeneratorConfig, StartIndices, SystemSpec, VectorFieldSpec};
use ncms::time::{parse_time, TimeGrid};
use ncms::trajset::{DEFAULT_CAP, DEFAULT_EPS};
use std::collections::BTreeSet;

fn main() {
    let field = VectorFieldSpec::new(
        2,
        vec![parse_expr("x2").unwrap(), parse_expr("-x1").unwrap()],
    )
    .unwrap();
    let grid = TimeGrid::new(1, 20, 20).unwrap();
    let cfg = GeneratorConfig {
        seeds: vec![vec![1.0, 0.0]],
        resolution: vec![1e-9, 1e-9],
        eps: DEFAULT_EPS,
        constraint: None,
        emit_left_open: false,
        start_indices: StartIndices::ZeroOnly,
        cap: DEFAULT_CAP,
    };
    let ts = generate_trajset(&SystemSpec::Ode(field), &cfg, &grid).unwrap();
    println!("generated {} trajectories on h = 0.05, horizon 20", ts.len());

    let maximal = ts
        .iter()
        .find(|t| t.dom() == GridInterval::closed(0, 20).unwrap())
        .unwrap()
        .clone();
    let mut max_err: f64 = 0.0;
    for k in 0..=20i64 {
        let t = 0.05 * k as f64;
        let State::Vector(v) = maximal.value_at(k).unwrap() else {
            unreachable!()
        };
        max_err = max_err.max((v[0] - t.cos()).abs()).max((v[1] + t.sin()).abs());
    }
    println!("max deviation from (cos t, -sin t): {max_err:.3e}");

    let sys = Ncms::new(ts).expect("closure satisfies the axioms");
    let endpoint = maximal.end_value().clone();
    println!("endpoint sample at t = 1: {endpoint}");

    let target: BTreeSet<State> = [endpoint].into();
    let cert = Certificate {
        restriction: CertRestriction::States(StateFilter::Predicate(
            parse_predicate("min(sqrt(x1^2 + x2^2) - 0.9, 1.1 - sqrt(x1^2 + x2^2)) >= 0").unwrap(),
        )),
        f: ClassKFunction::linear(1.0).unwrap(),
        t0: parse_time("1").unwrap(),
    };
    match certify_underapprox(&sys, &target, &cert).unwrap() {
        CertifyOutcome::Certified { extensibility, .. } => println!(
            "certified: the annulus restriction is backward extensible ({} trajectories) and contains the endpoint in its right range",
            extensibility.discharges.len()
        ),
        other => println!("not certified: {other:?}"),
    }
}
