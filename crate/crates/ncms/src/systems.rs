//! Continuous front-ends: ODE vector fields and switched systems compiled
//! into grid trajectory sets by fixed-step integration, quantization, and
//! explicit closure.

use crate::error::{Error, Result};
use crate::expr::{Expr, Predicate};
use crate::interval::GridInterval;
use crate::state::{State, StateSpace};
use crate::time::{time_to_f64, TimeGrid};
use crate::trajectory::Trajectory;
use crate::trajset::{ClosureBuilder, TrajectorySet};

/// Right-hand side of an autonomous-or-timed ODE, one expression per
/// coordinate.
#[derive(Debug, Clone)]
pub struct VectorFieldSpec {
    pub dim: usize,
    pub components: Vec<Expr>,
}

impl VectorFieldSpec {
    pub fn new(dim: usize, components: Vec<Expr>) -> Result<Self> {
        if dim == 0 || components.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "field needs one component per coordinate, dim={dim} components={}",
                components.len()
            )));
        }
        for c in &components {
            if c.max_var() > dim {
                return Err(Error::InvalidArgument(format!(
                    "component {c} references x{} beyond dimension {dim}",
                    c.max_var()
                )));
            }
        }
        Ok(VectorFieldSpec { dim, components })
    }

    pub fn eval(&self, x: &[f64], t: f64) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.eval(x, t)).collect()
    }
}

/// A finite family of vector fields; the active mode may switch at any grid
/// point.
#[derive(Debug, Clone)]
pub struct SwitchedSpec {
    pub modes: Vec<(String, VectorFieldSpec)>,
}

impl SwitchedSpec {
    pub fn new(modes: Vec<(String, VectorFieldSpec)>) -> Result<Self> {
        let Some(dim) = modes.first().map(|(_, f)| f.dim) else {
            return Err(Error::InvalidArgument("switched spec needs at least one mode".into()));
        };
        if modes.iter().any(|(_, f)| f.dim != dim) {
            return Err(Error::InvalidArgument("all modes must share one dimension".into()));
        }
        Ok(SwitchedSpec { modes })
    }

    pub fn dim(&self) -> usize {
        self.modes[0].1.dim
    }
}

/// Either front-end.
#[derive(Debug, Clone)]
pub enum SystemSpec {
    Ode(VectorFieldSpec),
    Switched(SwitchedSpec),
}

impl SystemSpec {
    pub fn dim(&self) -> usize {
        match self {
            SystemSpec::Ode(f) => f.dim,
            SystemSpec::Switched(s) => s.dim(),
        }
    }
}

/// Which grid indices runs may start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartIndices {
    #[default]
    All,
    ZeroOnly,
}

/// Generator parameters shared by both front-ends.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub seeds: Vec<Vec<f64>>,
    /// Per-coordinate quantization resolution, strictly positive.
    pub resolution: Vec<f64>,
    pub eps: f64,
    pub constraint: Option<Predicate>,
    /// Emit a left-open variant `(a, b]` wherever a kept run's one-step-left
    /// extension would violate the constraint. This is the only source of
    /// minimum-free domains.
    pub emit_left_open: bool,
    pub start_indices: StartIndices,
    pub cap: usize,
}

impl GeneratorConfig {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::InvalidArgument("at least one seed state is required".into()));
        }
        for s in &self.seeds {
            if s.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "seed {s:?} does not match dimension {dim}"
                )));
            }
        }
        let positive = |r: &f64| *r > 0.0 && r.is_finite();
        if self.resolution.len() != dim || !self.resolution.iter().all(positive) {
            return Err(Error::InvalidArgument(
                "quantization resolution must be positive per coordinate".into(),
            ));
        }
        if let Some(p) = &self.constraint {
            if p.max_var() > dim {
                return Err(Error::InvalidArgument(format!(
                    "constraint references x{} beyond dimension {dim}",
                    p.max_var()
                )));
            }
        }
        Ok(())
    }
}

/// One classical Runge-Kutta step of size `h` starting at `(x, t)`.
pub fn rk4_step(field: &VectorFieldSpec, x: &[f64], t: f64, h: f64) -> Result<Vec<f64>> {
    let k1 = field.eval(x, t)?;
    let mid1: Vec<f64> = x.iter().zip(&k1).map(|(xi, ki)| xi + 0.5 * h * ki).collect();
    let k2 = field.eval(&mid1, t + 0.5 * h)?;
    let mid2: Vec<f64> = x.iter().zip(&k2).map(|(xi, ki)| xi + 0.5 * h * ki).collect();
    let k3 = field.eval(&mid2, t + 0.5 * h)?;
    let end: Vec<f64> = x.iter().zip(&k3).map(|(xi, ki)| xi + h * ki).collect();
    let k4 = field.eval(&end, t + h)?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Rounds each coordinate to the nearest multiple of its resolution; ties
/// round away from zero. Idempotent.
pub fn quantize(x: &[f64], resolution: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(resolution)
        .map(|(xi, r)| {
            let q = (xi / r).abs() + 0.5;
            let units = q.floor();
            let v = units * r * xi.signum();
            if v == 0.0 {
                0.0
            } else {
                v
            }
        })
        .collect()
}

/// A raw sampled run before constraint handling: samples for indices
/// `start..=end`.
struct RawRun {
    start: i64,
    samples: Vec<Vec<f64>>,
}

fn integrate_mode_sequence(
    fields: &[&VectorFieldSpec],
    seed: &[f64],
    start: i64,
    grid: &TimeGrid,
) -> Result<Vec<Vec<f64>>> {
    let h = time_to_f64(grid.step());
    let mut samples = vec![seed.to_vec()];
    let mut x = seed.to_vec();
    for (k, field) in fields.iter().enumerate() {
        let t = time_to_f64(grid.time_of(start + k as i64));
        x = rk4_step(field, &x, t, h)?;
        samples.push(x.clone());
    }
    Ok(samples)
}

fn enumerate_raw_runs(
    spec: &SystemSpec,
    cfg: &GeneratorConfig,
    grid: &TimeGrid,
) -> Result<Vec<RawRun>> {
    let starts: Vec<i64> = match cfg.start_indices {
        StartIndices::ZeroOnly => vec![0],
        StartIndices::All => (0..grid.horizon()).collect(),
    };
    let mut runs = Vec::new();
    for seed in &cfg.seeds {
        for &start in &starts {
            let steps = (grid.horizon() - start) as usize;
            if steps == 0 {
                continue;
            }
            match spec {
                SystemSpec::Ode(field) => {
                    let fields = vec![field; steps];
                    runs.push(RawRun {
                        start,
                        samples: integrate_mode_sequence(&fields, seed, start, grid)?,
                    });
                }
                SystemSpec::Switched(sw) => {
                    // every mode sequence over the remaining steps
                    let m = sw.modes.len();
                    let total = m.checked_pow(steps as u32).ok_or(Error::CapExceeded {
                        limit: cfg.cap,
                    })?;
                    if runs.len().saturating_add(total) > cfg.cap {
                        return Err(Error::CapExceeded { limit: cfg.cap });
                    }
                    for mut code in 0..total {
                        let mut fields = Vec::with_capacity(steps);
                        for _ in 0..steps {
                            fields.push(&sw.modes[code % m].1);
                            code /= m;
                        }
                        runs.push(RawRun {
                            start,
                            samples: integrate_mode_sequence(&fields, seed, start, grid)?,
                        });
                    }
                }
            }
        }
    }
    Ok(runs)
}

/// Compiles a continuous model into a validated trajectory set.
///
/// Pipeline: integrate every (seed, start, mode-sequence) run, quantize the
/// samples, split each run into maximal constraint-satisfying segments,
/// optionally emit left-open variants at constraint boundaries, then close
/// the collection under grid restrictions and junction concatenations.
pub fn generate_trajset(
    spec: &SystemSpec,
    cfg: &GeneratorConfig,
    grid: &TimeGrid,
) -> Result<TrajectorySet> {
    let dim = spec.dim();
    cfg.validate(dim)?;
    let raw = enumerate_raw_runs(spec, cfg, grid)?;
    let mut builder = ClosureBuilder::new(grid.clone(), cfg.eps, cfg.cap);

    for run in &raw {
        let quantized: Vec<Vec<f64>> = run
            .samples
            .iter()
            .map(|x| quantize(x, &cfg.resolution))
            .collect();
        let ok: Vec<bool> = match &cfg.constraint {
            None => vec![true; quantized.len()],
            Some(p) => quantized
                .iter()
                .map(|x| p.holds(x))
                .collect::<Result<_>>()?,
        };
        // maximal satisfying segments
        let mut seg_start = None;
        for (i, valid) in ok.iter().copied().chain([false]).enumerate() {
            match (seg_start, valid) {
                (None, true) => seg_start = Some(i),
                (Some(s), false) => {
                    emit_segment(&mut builder, run, &quantized, s, i, cfg)?;
                    seg_start = None;
                }
                _ => {}
            }
        }
    }

    builder.close()?;
    builder.build(StateSpace::Vector { dim })
}

fn emit_segment(
    builder: &mut ClosureBuilder,
    run: &RawRun,
    quantized: &[Vec<f64>],
    seg_start: usize,
    seg_end: usize, // exclusive
    cfg: &GeneratorConfig,
) -> Result<()> {
    let len = seg_end - seg_start;
    let lo = run.start + seg_start as i64;
    let hi = run.start + seg_end as i64 - 1;
    let states: Vec<State> = quantized[seg_start..seg_end]
        .iter()
        .map(|x| State::vector(x.clone()))
        .collect();
    if len >= 2 {
        builder.insert(Trajectory::new(GridInterval::closed(lo, hi)?, states.clone())?)?;
    }
    // a violating sample immediately to the left turns the segment into a
    // minimum-free domain (a, hi]
    let preceded_by_violation = seg_start > 0;
    if cfg.emit_left_open && preceded_by_violation && len >= 1 {
        let dom = GridInterval::new(lo - 1, hi, true, false)?;
        builder.insert(Trajectory::new(dom, states)?)?;
    }
    Ok(())
}
