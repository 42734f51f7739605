//! Deterministic text formatting for reports and CSV output.

use crate::state::State;
use crate::time::{time_to_f64, Time};
use std::collections::BTreeSet;

/// Formats a float with 12 significant digits and trailing zeros trimmed;
/// identical inputs always produce identical bytes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 17) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

pub fn fmt_time(t: Time) -> String {
    fmt_sig(time_to_f64(t))
}

/// CSV cell for a state: the label, or semicolon-separated coordinates.
pub fn state_cell(state: &State) -> String {
    match state {
        State::Label(l) => l.clone(),
        State::Vector(v) => v.iter().map(|x| fmt_sig(*x)).collect::<Vec<_>>().join(";"),
    }
}

/// Renders the reach/right-range CSV: `kind,time_bound,state`, sorted.
pub fn reach_csv(t0: Time, reach: &BTreeSet<State>, right_range: &BTreeSet<State>) -> String {
    let mut out = String::from("kind,time_bound,state\n");
    for q in reach {
        out.push_str(&format!("reach,{},{}\n", fmt_time(t0), state_cell(q)));
    }
    for q in right_range {
        out.push_str(&format!("right-range,{},{}\n", fmt_time(t0), state_cell(q)));
    }
    out
}
