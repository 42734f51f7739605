//! Command implementations shared by the binary and by tests: each command
//! returns its exit code together with the full report text.
//!
//! Exit codes: 0 pass, 1 verified fail, 2 input error, 3 resource cap.

use crate::axioms::{check_ncms, AxiomVerdict};
use crate::classk::ClassKFunction;
use crate::error::Error;
use crate::model::{parse_model, Model, ModelSource};
use crate::oracle::{random_ts, verify_theorem, FiniteTs, SUBSET_CAP};
use crate::reach::{
    certify_underapprox, reach_set, right_range_set, CertRestriction, Certificate, CertifyOutcome,
    Discharge, Ncms,
};
use crate::report::{fmt_sig, fmt_time, reach_csv};
use crate::state::StateSpace;
use crate::systems::generate_trajset;
use crate::time::{parse_time, Time, TimeGrid};
use crate::trajset::{TrajectorySet, DEFAULT_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Exit code plus report text.
#[derive(Debug)]
pub struct CmdOutput {
    pub code: i32,
    pub text: String,
}

impl CmdOutput {
    fn pass(text: String) -> Self {
        CmdOutput {
            code: EXIT_PASS,
            text,
        }
    }

    fn fail(text: String) -> Self {
        CmdOutput {
            code: EXIT_FAIL,
            text,
        }
    }
}

fn error_output(err: Error) -> CmdOutput {
    let code = match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    };
    CmdOutput {
        code,
        text: format!("error: {err}\n"),
    }
}

/// Common options for model-driven commands.
#[derive(Debug, Clone)]
pub struct ModelOptions {
    pub eps: Option<f64>,
    pub cap: usize,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            eps: None,
            cap: DEFAULT_CAP,
        }
    }
}

/// Builds the raw trajectory set of a model (no axiom validation).
fn build_trajectory_set(model: &Model, opts: &ModelOptions) -> crate::error::Result<TrajectorySet> {
    let eps = opts.eps.unwrap_or(model.eps);
    match &model.source {
        ModelSource::TransitionSystem(ts) => {
            let sys = crate::oracle::ts_to_ncms(ts, &model.grid, opts.cap)?;
            Ok(sys.trajectories().clone())
        }
        ModelSource::Continuous { spec, config } => {
            let mut config = config.clone();
            config.eps = eps;
            config.cap = opts.cap;
            generate_trajset(spec, &config, &model.grid)
        }
        ModelSource::Trajectories {
            labels,
            dim,
            members,
        } => {
            let space = match (labels, dim) {
                (Some(alphabet), _) => StateSpace::Labels(alphabet.clone()),
                (None, Some(d)) => StateSpace::Vector { dim: *d },
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "[trajectories] needs either states or dim".into(),
                    ))
                }
            };
            TrajectorySet::new(model.grid.clone(), space, eps, members.clone())
        }
    }
}

fn render_axiom(name: &str, verdict: &AxiomVerdict, grid: &TimeGrid, out: &mut String) {
    match verdict {
        AxiomVerdict::Pass => {
            let _ = writeln!(out, "{name}: pass");
        }
        AxiomVerdict::MissingRestriction {
            member,
            restriction,
        } => {
            let _ = writeln!(
                out,
                "{name}: fail - member {} is missing its restriction {}",
                member.render(grid),
                restriction.render(grid)
            );
        }
        AxiomVerdict::MissingConcat { left, right, glued } => {
            let _ = writeln!(
                out,
                "{name}: fail - gluing {} with {} is missing: {}",
                left.render(grid),
                right.render(grid),
                glued.render(grid)
            );
        }
        AxiomVerdict::ChainDefect { member } => {
            let _ = writeln!(
                out,
                "{name}: fail - chain union disagrees with {}",
                member.render(grid)
            );
        }
    }
}

/// `axioms`: run the three checks and report the first counterexamples.
pub fn cmd_axioms(model_text: &str, opts: &ModelOptions) -> CmdOutput {
    let model = match parse_model(model_text) {
        Ok(m) => m,
        Err(e) => return error_output(e),
    };
    let ts = match build_trajectory_set(&model, opts) {
        Ok(ts) => ts,
        Err(e) => return error_output(e),
    };
    let report = check_ncms(&ts);
    let mut out = String::new();
    let _ = writeln!(out, "trajectories: {}", ts.len());
    render_axiom("cpr", &report.cpr, ts.grid(), &mut out);
    render_axiom("markovian", &report.markovian, ts.grid(), &mut out);
    render_axiom("complete", &report.complete, ts.grid(), &mut out);
    let _ = writeln!(out, "overall: {}", if report.overall() { "pass" } else { "fail" });
    if report.overall() {
        CmdOutput::pass(out)
    } else {
        CmdOutput::fail(out)
    }
}

/// `reach`: compute the reach and right-range sets at `t0` as CSV.
pub fn cmd_reach(model_text: &str, t0_text: &str, opts: &ModelOptions) -> CmdOutput {
    let t0 = match parse_time(t0_text) {
        Ok(t) if crate::time::time_is_positive(t) => t,
        Ok(_) => {
            return error_output(Error::InvalidArgument("t0 must be positive".into()));
        }
        Err(e) => return error_output(e),
    };
    let model = match parse_model(model_text) {
        Ok(m) => m,
        Err(e) => return error_output(e),
    };
    let sys = match build_trajectory_set(&model, opts).and_then(Ncms::new) {
        Ok(s) => s,
        Err(e) => return error_output(e),
    };
    let reach = match reach_set(&sys, t0) {
        Ok(r) => r,
        Err(e) => return error_output(e),
    };
    let range = match right_range_set(&sys, t0) {
        Ok(r) => r,
        Err(e) => return error_output(e),
    };
    CmdOutput::pass(reach_csv(t0, &reach, &range))
}

/// `certify`: verify the model's certificate.
pub fn cmd_certify(model_text: &str, opts: &ModelOptions) -> CmdOutput {
    let model = match parse_model(model_text) {
        Ok(m) => m,
        Err(e) => return error_output(e),
    };
    let Some(cert_spec) = model.certificate.clone() else {
        return error_output(Error::MalformedCertificate(
            "model has no [certificate] section".into(),
        ));
    };
    let sys = match build_trajectory_set(&model, opts).and_then(Ncms::new) {
        Ok(s) => s,
        Err(e) => return error_output(e),
    };
    let cert = Certificate {
        restriction: CertRestriction::States(cert_spec.restriction),
        f: cert_spec.f,
        t0: cert_spec.t0,
    };
    let outcome = match certify_underapprox(&sys, &cert_spec.target, &cert) {
        Ok(o) => o,
        Err(e) => return error_output(e),
    };
    let grid = sys.grid();
    let mut out = String::new();
    match outcome {
        CertifyOutcome::Certified {
            extensibility,
            right_range,
        } => {
            let _ = writeln!(out, "CERTIFIED");
            let _ = writeln!(
                out,
                "checked: restriction is backward extensible ({} trajectories: {} initial, {} extended, {} escaped)",
                extensibility.discharges.len(),
                extensibility
                    .discharges
                    .iter()
                    .filter(|(_, d)| matches!(d, Discharge::Initial))
                    .count(),
                extensibility
                    .discharges
                    .iter()
                    .filter(|(_, d)| matches!(d, Discharge::BackwardExtension { .. }))
                    .count(),
                extensibility.escape_count(),
            );
            for (s, d) in &extensibility.discharges {
                if let Discharge::Escape {
                    at_index,
                    tau,
                    threshold,
                    ..
                } = d
                {
                    let _ = writeln!(
                        out,
                        "  escape: {} at t={} with tau={} >= f={}",
                        s.render(grid),
                        fmt_time(grid.time_of(*at_index)),
                        fmt_time(*tau),
                        fmt_sig(*threshold)
                    );
                }
            }
            let _ = writeln!(
                out,
                "checked: target lies in the right range set ({} states)",
                right_range.len()
            );
            CmdOutput::pass(out)
        }
        CertifyOutcome::NotExtensible { report } => {
            let _ = writeln!(out, "FAILED: restriction is not backward extensible");
            for v in &report.violations {
                let _ = writeln!(out, "  violating trajectory: {}", v.render(grid));
            }
            CmdOutput::fail(out)
        }
        CertifyOutcome::OutsideRightRange { missing, .. } => {
            let _ = writeln!(out, "FAILED: target leaves the right range set");
            for q in &missing {
                let _ = writeln!(out, "  missing state: {q}");
            }
            CmdOutput::fail(out)
        }
    }
}

/// Options for the exhaustive theorem verification run.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub states: usize,
    pub density: f64,
    pub runs: usize,
    pub seed: u64,
    pub t0: Option<Time>,
    pub f: Option<ClassKFunction>,
    pub step: Time,
    pub max_horizon: i64,
    pub cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            states: 4,
            density: 0.3,
            runs: 200,
            seed: 7,
            t0: None,
            f: None,
            step: Time::from_integer(1),
            max_horizon: 4,
            cap: DEFAULT_CAP,
        }
    }
}

/// `oracle`: verify both directions of the theorem over pseudo-random
/// instances; exit 0 iff no violation is found.
pub fn cmd_oracle(opts: &OracleOptions) -> CmdOutput {
    if opts.states == 0 || opts.states > SUBSET_CAP {
        return error_output(Error::CapExceeded { limit: SUBSET_CAP });
    }
    let alphas = [0.5, 1.0, 2.0];
    let mut out = String::new();
    let _ = writeln!(
        out,
        "oracle run: states<={} density={} runs={} seed={}",
        opts.states,
        fmt_sig(opts.density),
        opts.runs,
        opts.seed
    );
    let mut violations = 0usize;
    let mut zero_only_instances = 0usize;
    let mut restriction_gap = 0usize;
    for run in 0..opts.runs {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(run as u64));
        let n = rng.gen_range(1..=opts.states);
        let ts = random_ts(&mut rng, n, opts.density);
        let horizon = rng.gen_range(2..=opts.max_horizon.max(2));
        let grid = match TimeGrid::from_step(opts.step, horizon) {
            Ok(g) => g,
            Err(e) => return error_output(e),
        };
        let t0 = opts.t0.unwrap_or_else(|| grid.horizon_time());
        let f = match &opts.f {
            Some(f) => f.clone(),
            None => ClassKFunction::linear(alphas[run % alphas.len()]).unwrap(),
        };
        let report = match verify_theorem(&ts, &grid, t0, &f, opts.cap) {
            Ok(r) => r,
            Err(e) => return error_output(e),
        };
        if !report.zero_only.is_empty() {
            zero_only_instances += 1;
        }
        restriction_gap += report.target_subsets_checked - report.state_restriction_certified;
        for v in &report.violations {
            violations += 1;
            let _ = writeln!(
                out,
                "violation run={run} seed={} [{}]: {}",
                opts.seed.wrapping_add(run as u64),
                v.direction,
                v.detail
            );
        }
    }
    let _ = writeln!(
        out,
        "{} violations over {} instances ({} with states attained only at time 0; {} witness-only targets)",
        violations, opts.runs, zero_only_instances, restriction_gap
    );
    if violations == 0 {
        CmdOutput::pass(out)
    } else {
        CmdOutput::fail(out)
    }
}

/// Convenience wrapper used by the oracle command and tests to lift a model
/// file's transition system.
pub fn model_transition_system(model_text: &str) -> crate::error::Result<FiniteTs> {
    match parse_model(model_text)?.source {
        ModelSource::TransitionSystem(ts) => Ok(ts),
        _ => Err(Error::InvalidArgument(
            "model does not declare a transition system".into(),
        )),
    }
}
