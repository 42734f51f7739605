//! Exact rational time arithmetic and the shared sampling grid.
//!
//! All time comparisons in the crate reduce to integer index comparisons or
//! exact rational comparisons; floating point only enters when a class-K
//! function is evaluated.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// An exact point in time, in seconds.
pub type Time = Ratio<i64>;

/// Uniform sampling grid over the window `[0, horizon * step]`.
///
/// Grid times are `k * step` for `k = 0..=horizon`. The step is kept as an
/// exact rational so that index arithmetic never drifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeGrid {
    step: Time,
    horizon: i64,
}

impl TimeGrid {
    pub fn new(step_numerator: i64, step_denominator: i64, horizon: i64) -> Result<Self> {
        if step_numerator <= 0 || step_denominator <= 0 {
            return Err(Error::InvalidArgument(format!(
                "grid step must be positive, got {step_numerator}/{step_denominator}"
            )));
        }
        if horizon < 1 {
            return Err(Error::InvalidArgument(format!(
                "grid horizon must be at least 1, got {horizon}"
            )));
        }
        Ok(TimeGrid {
            step: Ratio::new(step_numerator, step_denominator),
            horizon,
        })
    }

    pub fn from_step(step: Time, horizon: i64) -> Result<Self> {
        Self::new(*step.numer(), *step.denom(), horizon)
    }

    pub fn step(&self) -> Time {
        self.step
    }

    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    /// Time of grid index `k`.
    pub fn time_of(&self, k: i64) -> Time {
        self.step * Ratio::from_integer(k)
    }

    /// Right edge of the grid window.
    pub fn horizon_time(&self) -> Time {
        self.time_of(self.horizon)
    }

    /// Largest grid index whose time is `<= t` (clamped to the window).
    pub fn index_at_or_before(&self, t: Time) -> i64 {
        let k = (t / self.step).floor().to_integer();
        k.min(self.horizon)
    }

    pub fn contains_index(&self, k: i64) -> bool {
        (0..=self.horizon).contains(&k)
    }
}

/// Parses a time literal: either a decimal (`0.25`, `2`) or a fraction (`1/4`).
pub fn parse_time(text: &str) -> Result<Time> {
    let text = text.trim();
    let bad = |msg: &str| Error::InvalidArgument(format!("bad time literal {text:?}: {msg}"));
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad("numerator"))?;
        let d: i64 = den.trim().parse().map_err(|_| bad("denominator"))?;
        if d == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Ratio::new(n, d));
    }
    let negative = text.starts_with('-');
    let digits = text.trim_start_matches('-');
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("empty"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("not a number"));
    }
    if frac_part.len() > 12 {
        return Err(bad("too many decimal places"));
    }
    let mut value = Ratio::from_integer(if int_part.is_empty() {
        0
    } else {
        int_part.parse::<i64>().map_err(|_| bad("integer part"))?
    });
    if !frac_part.is_empty() {
        let scale = 10i64.pow(frac_part.len() as u32);
        let frac: i64 = frac_part.parse().map_err(|_| bad("fraction part"))?;
        value += Ratio::new(frac, scale);
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Converts an exact time to `f64` (used only at class-K evaluation sites).
pub fn time_to_f64(t: Time) -> f64 {
    *t.numer() as f64 / *t.denom() as f64
}

pub fn time_is_positive(t: Time) -> bool {
    t.is_positive() && !t.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_time("1/4").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_time("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_time("2").unwrap(), Ratio::from_integer(2));
        assert_eq!(parse_time("1.5").unwrap(), Ratio::new(3, 2));
        assert!(parse_time("1/0").is_err());
        assert!(parse_time("a").is_err());
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(TimeGrid::new(0, 1, 4).is_err());
        assert!(TimeGrid::new(1, 1, 0).is_err());
        assert!(TimeGrid::new(1, 4, 4).is_ok());
    }

    #[test]
    fn index_lookup_is_exact() {
        let g = TimeGrid::new(1, 4, 8).unwrap();
        assert_eq!(g.index_at_or_before(parse_time("0.5").unwrap()), 2);
        assert_eq!(g.index_at_or_before(parse_time("0.6").unwrap()), 2);
        assert_eq!(g.index_at_or_before(parse_time("10").unwrap()), 8);
    }
}
