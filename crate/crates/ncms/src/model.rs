//! Sectioned key-value model files.
//!
//! A model file declares a `[grid]`, exactly one system section
//! (`[transition-system]`, `[ode]`, `[switched]`, or a hand-authored
//! `[trajectories]` debug section), an optional `[constraint]`, and an
//! optional `[certificate]`.

use crate::classk::ClassKFunction;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, parse_predicate, Expr, Predicate};
use crate::interval::GridInterval;
use crate::oracle::FiniteTs;
use crate::state::{State, StateFilter};
use crate::systems::{GeneratorConfig, StartIndices, SwitchedSpec, SystemSpec, VectorFieldSpec};
use crate::time::{parse_time, Time, TimeGrid};
use crate::trajectory::Trajectory;
use crate::trajset::{DEFAULT_CAP, DEFAULT_EPS};
use std::collections::BTreeSet;

/// A parsed model: the grid, the system source, and an optional certificate.
#[derive(Debug, Clone)]
pub struct Model {
    pub grid: TimeGrid,
    pub eps: f64,
    pub source: ModelSource,
    pub certificate: Option<CertificateSpec>,
}

#[derive(Debug, Clone)]
pub enum ModelSource {
    TransitionSystem(FiniteTs),
    Continuous {
        spec: SystemSpec,
        config: GeneratorConfig,
    },
    /// Hand-authored trajectory list for axiom-checker tests.
    Trajectories {
        labels: Option<BTreeSet<String>>,
        dim: Option<usize>,
        members: Vec<Trajectory>,
    },
}

#[derive(Debug, Clone)]
pub struct CertificateSpec {
    pub target: BTreeSet<State>,
    pub restriction: StateFilter,
    pub f: ClassKFunction,
    pub t0: Time,
}

struct Line {
    number: usize,
    key: String,
    value: String,
    key_col: usize,
    value_col: usize,
}

struct Section {
    name: String,
    number: usize,
    lines: Vec<Line>,
}

fn split_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let without_comment = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = without_comment.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - trimmed.len() + 1;
        if let Some(name) = trimmed.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return Err(Error::parse(number, col, "unterminated section header"));
            };
            sections.push(Section {
                name: name.trim().to_string(),
                number,
                lines: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(Error::parse(number, col, "content before any [section]"));
        };
        let Some(eq) = trimmed.find('=') else {
            return Err(Error::parse(number, col, "expected key = value"));
        };
        let key = trimmed[..eq].trim().to_string();
        let value = trimmed[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(Error::parse(number, col, "empty key"));
        }
        section.lines.push(Line {
            number,
            key,
            value_col: col + eq + 1,
            key_col: col,
            value,
        });
    }
    Ok(sections)
}

impl Section {
    fn get(&self, key: &str) -> Option<&Line> {
        self.lines.iter().find(|l| l.key == key)
    }

    fn require(&self, key: &str) -> Result<&Line> {
        self.get(key).ok_or_else(|| {
            Error::parse(
                self.number,
                1,
                format!("section [{}] is missing key {key:?}", self.name),
            )
        })
    }
}

fn unquote(s: &str) -> &str {
    s.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(s)
}

/// Splits `"a", "b", "c"` into the quoted pieces.
fn split_quoted_list(line: &Line) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for piece in line.value.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::parse(line.number, line.value_col, "empty list entry"));
        }
        out.push(unquote(piece).to_string());
    }
    Ok(out)
}

/// Parses `(v1, v2, ...)` vector literals separated by whitespace.
fn parse_vector_literals(line: &Line) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    let text = line.value.as_str();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::parse(
                line.number,
                line.value_col,
                format!("expected a '(' in vector list, found {rest:?}"),
            ));
        }
        let Some(close) = rest.find(')') else {
            return Err(Error::parse(line.number, line.value_col, "unterminated vector literal"));
        };
        let inner = &rest[1..close];
        let mut vec = Vec::new();
        for part in inner.split(',') {
            let v: f64 = part.trim().parse().map_err(|_| {
                Error::parse(
                    line.number,
                    line.value_col,
                    format!("bad vector component {part:?}"),
                )
            })?;
            vec.push(v);
        }
        out.push(vec);
        rest = rest[close + 1..].trim_start();
    }
    if out.is_empty() {
        return Err(Error::parse(line.number, line.value_col, "empty vector list"));
    }
    Ok(out)
}

fn parse_f_spec_text(text: &str, line: usize, col: usize) -> Result<ClassKFunction> {
    let text = text.trim();
    if let Some(alpha) = text.strip_prefix("linear") {
        let alpha: f64 = alpha
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, col, "bad linear coefficient"))?;
        return ClassKFunction::linear(alpha);
    }
    if let Some(rest) = text.strip_prefix("pwl") {
        let mut knots = Vec::new();
        let mut rest = rest.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::parse(line, col, "expected '(' in knot list"));
            }
            let Some(close) = rest.find(')') else {
                return Err(Error::parse(line, col, "unterminated knot"));
            };
            let inner = &rest[1..close];
            let Some((x, y)) = inner.split_once(',') else {
                return Err(Error::parse(line, col, "knot needs two coordinates"));
            };
            let parse = |s: &str| -> Result<f64> {
                s.trim().parse().map_err(|_| Error::parse(line, col, "bad knot coordinate"))
            };
            knots.push((parse(x)?, parse(y)?));
            rest = rest[close + 1..].trim_start();
        }
        return ClassKFunction::piecewise_linear(knots);
    }
    Err(Error::parse(line, col, "expected 'linear <alpha>' or 'pwl (x,y) ...'"))
}

/// Public entry for `--f` command-line values.
pub fn parse_f_spec(text: &str) -> Result<ClassKFunction> {
    parse_f_spec_text(text, 1, 1)
}

fn parse_grid(section: &Section) -> Result<(TimeGrid, f64)> {
    let h_line = section.require("h")?;
    let h = parse_time(&h_line.value)
        .map_err(|e| Error::parse(h_line.number, h_line.value_col, e.to_string()))?;
    let horizon_line = section.require("horizon")?;
    let horizon: i64 = horizon_line.value.parse().map_err(|_| {
        Error::parse(horizon_line.number, horizon_line.value_col, "bad horizon")
    })?;
    let grid = TimeGrid::from_step(h, horizon)
        .map_err(|e| Error::parse(h_line.number, h_line.value_col, e.to_string()))?;
    let eps = match section.get("eps") {
        Some(l) => l
            .value
            .parse()
            .map_err(|_| Error::parse(l.number, l.value_col, "bad eps"))?,
        None => DEFAULT_EPS,
    };
    Ok((grid, eps))
}

fn parse_transition_system(section: &Section) -> Result<FiniteTs> {
    let states_line = section.require("states")?;
    let states: BTreeSet<String> = states_line
        .value
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();
    let initial_line = section.require("initial")?;
    let initials: BTreeSet<String> = initial_line
        .value
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();
    let arcs_line = section.require("arcs")?;
    let mut arcs = BTreeSet::new();
    let mut col = arcs_line.value_col;
    for entry in arcs_line.value.split_whitespace() {
        let Some((from, to)) = entry.split_once("->") else {
            return Err(Error::parse(
                arcs_line.number,
                col,
                format!("arc entry {entry:?} must look like a->b"),
            ));
        };
        arcs.insert((from.to_string(), to.to_string()));
        col += entry.len() + 1;
    }
    FiniteTs::new(states, arcs, initials)
        .map_err(|e| Error::parse(section.number, 1, e.to_string()))
}

fn parse_fields(section: &Section, line: &Line, dim: usize) -> Result<VectorFieldSpec> {
    let pieces = split_quoted_list(line)?;
    let mut components = Vec::new();
    for p in pieces {
        components.push(parse_expr(&p).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::parse(line.number, line.value_col + col - 1, msg),
            other => other,
        })?);
    }
    VectorFieldSpec::new(dim, components)
        .map_err(|e| Error::parse(section.number, 1, e.to_string()))
}

/// Expands `lattice (lo..) (hi..) (step..)` into the axis-aligned grid of
/// seed vectors.
fn expand_lattice(line: &Line) -> Result<Vec<Vec<f64>>> {
    let spec = parse_vector_literals(&Line {
        number: line.number,
        key: line.key.clone(),
        value: line.value.trim().strip_prefix("lattice").unwrap().to_string(),
        key_col: line.key_col,
        value_col: line.value_col,
    })?;
    let [lo, hi, step] = spec.as_slice() else {
        return Err(Error::parse(
            line.number,
            line.value_col,
            "lattice needs (lo) (hi) (step)",
        ));
    };
    if lo.len() != hi.len() || lo.len() != step.len() || step.iter().any(|&s| s <= 0.0) {
        return Err(Error::parse(
            line.number,
            line.value_col,
            "lattice corners and step must share a dimension, step positive",
        ));
    }
    let counts: Vec<usize> = lo
        .iter()
        .zip(hi)
        .zip(step)
        .map(|((l, h), s)| ((h - l) / s).floor().max(0.0) as usize + 1)
        .collect();
    let total: usize = counts.iter().product();
    if total > 10_000 {
        return Err(Error::parse(line.number, line.value_col, "lattice too large"));
    }
    let mut seeds = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(lo.len());
        for (i, c) in counts.iter().enumerate() {
            v.push(lo[i] + step[i] * (code % c) as f64);
            code /= c;
        }
        seeds.push(v);
    }
    Ok(seeds)
}

fn parse_generator_config(
    section: &Section,
    dim: usize,
    eps: f64,
    constraint: Option<Predicate>,
) -> Result<GeneratorConfig> {
    let seeds_line = section.require("seeds")?;
    let seeds = if seeds_line.value.trim().starts_with("lattice") {
        expand_lattice(seeds_line)?
    } else {
        parse_vector_literals(seeds_line)?
    };
    let resolution = match section.get("quantize") {
        Some(l) => {
            if l.value.trim().starts_with('(') {
                parse_vector_literals(l)?
                    .into_iter()
                    .next()
                    .unwrap_or_default()
            } else {
                let r: f64 = l
                    .value
                    .parse()
                    .map_err(|_| Error::parse(l.number, l.value_col, "bad quantize value"))?;
                vec![r; dim]
            }
        }
        None => vec![1e-9; dim],
    };
    let start_indices = match section.get("starts") {
        Some(l) if l.value.trim() == "0" => StartIndices::ZeroOnly,
        Some(l) if l.value.trim() == "all" => StartIndices::All,
        Some(l) => {
            return Err(Error::parse(l.number, l.value_col, "starts must be 0 or all"));
        }
        None => StartIndices::All,
    };
    let emit_left_open = match section.get("left-open") {
        Some(l) => l
            .value
            .trim()
            .parse()
            .map_err(|_| Error::parse(l.number, l.value_col, "left-open must be true or false"))?,
        None => false,
    };
    Ok(GeneratorConfig {
        seeds,
        resolution,
        eps,
        constraint,
        emit_left_open,
        start_indices,
        cap: DEFAULT_CAP,
    })
}

fn parse_dim(section: &Section) -> Result<usize> {
    let line = section.require("dim")?;
    line.value
        .parse()
        .map_err(|_| Error::parse(line.number, line.value_col, "bad dim"))
}

fn parse_trajectory_line(line: &Line, grid: &TimeGrid) -> Result<Trajectory> {
    // form: [0,2] a b c   or   (0,1] (0.25) (0.5)
    let bad = |msg: &str| Error::parse(line.number, line.value_col, msg.to_string());
    let text = line.value.trim();
    let lo_open = match text.chars().next() {
        Some('[') => false,
        Some('(') => true,
        _ => return Err(bad("trajectory must start with an interval")),
    };
    let close = text
        .find([']', ')'])
        .ok_or_else(|| bad("unterminated interval"))?;
    let hi_open = text.as_bytes()[close] == b')';
    let inner = &text[1..close];
    let Some((lo_s, hi_s)) = inner.split_once(',') else {
        return Err(bad("interval needs two indices"));
    };
    let lo: i64 = lo_s.trim().parse().map_err(|_| bad("bad interval index"))?;
    let hi: i64 = hi_s.trim().parse().map_err(|_| bad("bad interval index"))?;
    let dom = GridInterval::new(lo, hi, lo_open, hi_open)
        .map_err(|e| bad(&e.to_string()))?;
    if hi > grid.horizon() || lo < 0 {
        return Err(bad("interval leaves the grid window"));
    }
    let rest = text[close + 1..].trim();
    let values: Vec<State> = if rest.starts_with('(') {
        parse_vector_literals(&Line {
            number: line.number,
            key: line.key.clone(),
            value: rest.to_string(),
            key_col: line.key_col,
            value_col: line.value_col,
        })?
        .into_iter()
        .map(State::vector)
        .collect()
    } else {
        rest.split_whitespace().map(State::label).collect()
    };
    Trajectory::new(dom, values).map_err(|e| bad(&e.to_string()))
}

fn parse_certificate(section: &Section, grid: &TimeGrid) -> Result<CertificateSpec> {
    let a_line = section.require("A")?;
    let target: BTreeSet<State> = if a_line.value.trim().starts_with('(') {
        parse_vector_literals(a_line)?
            .into_iter()
            .map(State::vector)
            .collect()
    } else {
        a_line
            .value
            .split_whitespace()
            .map(State::label)
            .collect()
    };
    let s_line = section.require("S")?;
    let s_text = s_line.value.trim();
    let restriction = if s_text.starts_with('"') {
        let pred = parse_predicate(unquote(s_text)).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::parse(s_line.number, s_line.value_col + col, msg),
            other => other,
        })?;
        StateFilter::Predicate(pred)
    } else if s_text == "*" {
        StateFilter::All
    } else if s_text.starts_with('(') {
        StateFilter::Vectors(parse_vector_literals(s_line)?)
    } else {
        StateFilter::Labels(s_text.split_whitespace().map(|s| s.to_string()).collect())
    };
    let f_line = section.require("f")?;
    let f = parse_f_spec_text(&f_line.value, f_line.number, f_line.value_col)?;
    let t0_line = section.require("t0")?;
    let t0 = parse_time(&t0_line.value)
        .map_err(|e| Error::parse(t0_line.number, t0_line.value_col, e.to_string()))?;
    let _ = grid;
    Ok(CertificateSpec {
        target,
        restriction,
        f,
        t0,
    })
}

/// Parses a model file.
pub fn parse_model(text: &str) -> Result<Model> {
    let sections = split_sections(text)?;
    let grid_section = sections
        .iter()
        .find(|s| s.name == "grid")
        .ok_or_else(|| Error::parse(1, 1, "missing [grid] section"))?;
    let (grid, eps) = parse_grid(grid_section)?;

    let constraint = match sections.iter().find(|s| s.name == "constraint") {
        Some(s) => {
            let line = s.require("expr")?;
            Some(parse_predicate(unquote(&line.value)).map_err(|e| match e {
                Error::Parse { col, msg, .. } => Error::parse(line.number, line.value_col + col, msg),
                other => other,
            })?)
        }
        None => None,
    };

    let system_sections: Vec<&Section> = sections
        .iter()
        .filter(|s| matches!(s.name.as_str(), "transition-system" | "ode" | "switched" | "trajectories"))
        .collect();
    let [system] = system_sections.as_slice() else {
        return Err(Error::parse(
            1,
            1,
            format!(
                "expected exactly one system section, found {}",
                system_sections.len()
            ),
        ));
    };

    let source = match system.name.as_str() {
        "transition-system" => ModelSource::TransitionSystem(parse_transition_system(system)?),
        "ode" => {
            let dim = parse_dim(system)?;
            let field = parse_fields(system, system.require("field")?, dim)?;
            let config = parse_generator_config(system, dim, eps, constraint.clone())?;
            ModelSource::Continuous {
                spec: SystemSpec::Ode(field),
                config,
            }
        }
        "switched" => {
            let dim = parse_dim(system)?;
            let modes_line = system.require("modes")?;
            let mut modes = Vec::new();
            for name in modes_line.value.split_whitespace() {
                let field_line = system.require(&format!("field.{name}"))?;
                modes.push((name.to_string(), parse_fields(system, field_line, dim)?));
            }
            let spec = SwitchedSpec::new(modes)
                .map_err(|e| Error::parse(system.number, 1, e.to_string()))?;
            let config = parse_generator_config(system, dim, eps, constraint.clone())?;
            ModelSource::Continuous {
                spec: SystemSpec::Switched(spec),
                config,
            }
        }
        "trajectories" => {
            let labels = system.get("states").map(|l| {
                l.value
                    .split_whitespace()
                    .map(|s| s.to_string())
                    .collect::<BTreeSet<String>>()
            });
            let dim = match system.get("dim") {
                Some(l) => Some(
                    l.value
                        .parse::<usize>()
                        .map_err(|_| Error::parse(l.number, l.value_col, "bad dim"))?,
                ),
                None => None,
            };
            let mut members = Vec::new();
            for line in system.lines.iter().filter(|l| l.key == "traj") {
                members.push(parse_trajectory_line(line, &grid)?);
            }
            ModelSource::Trajectories {
                labels,
                dim,
                members,
            }
        }
        _ => unreachable!(),
    };

    let certificate = match sections.iter().find(|s| s.name == "certificate") {
        Some(s) => Some(parse_certificate(s, &grid)?),
        None => None,
    };

    Ok(Model {
        grid,
        eps,
        source,
        certificate,
    })
}

/// A parsed field expression, exposed for tooling.
pub fn parse_field_component(text: &str) -> Result<Expr> {
    parse_expr(text)
}
