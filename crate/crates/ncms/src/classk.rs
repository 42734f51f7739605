//! Class-K functions: continuous, strictly increasing, zero at zero.

use crate::error::{Error, Result};

/// A class-K function, represented either as a linear map `x -> alpha * x`
/// or as a strictly increasing piecewise-linear interpolant through `(0,0)`.
/// Beyond the last knot the final segment's slope is extended, so the
/// function is strictly increasing on all of `[0, inf)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassKFunction {
    Linear { alpha: f64 },
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

impl ClassKFunction {
    pub fn linear(alpha: f64) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidClassK(format!(
                "linear coefficient must be positive and finite, got {alpha}"
            )));
        }
        Ok(ClassKFunction::Linear { alpha })
    }

    /// Builds a piecewise-linear class-K function. The knot table must be
    /// strictly increasing in both coordinates; `(0,0)` is prepended
    /// implicitly when absent.
    pub fn piecewise_linear(mut knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.first() != Some(&(0.0, 0.0)) {
            knots.insert(0, (0.0, 0.0));
        }
        if knots.len() < 2 {
            return Err(Error::InvalidClassK("need at least one knot beyond (0,0)".into()));
        }
        for w in knots.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if !(x1 > x0 && y1 > y0) || !x1.is_finite() || !y1.is_finite() {
                return Err(Error::InvalidClassK(format!(
                    "knots must increase strictly, got ({x0},{y0}) then ({x1},{y1})"
                )));
            }
        }
        Ok(ClassKFunction::PiecewiseLinear { knots })
    }

    /// Evaluates `f(x)` for `x >= 0`. Guarantees `f(0) = 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || !x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "class-K argument must be nonnegative, got {x}"
            )));
        }
        match self {
            ClassKFunction::Linear { alpha } => Ok(alpha * x),
            ClassKFunction::PiecewiseLinear { knots } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let seg = knots
                    .windows(2)
                    .find(|w| x <= w[1].0)
                    .unwrap_or_else(|| &knots[knots.len() - 2..]);
                let ((x0, y0), (x1, y1)) = (seg[0], seg[1]);
                Ok(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
            }
        }
    }

    /// `f^-(a, b) = a - f(a - b)` for `a >= b >= 0`: the escape threshold
    /// dual of the function.
    pub fn f_minus(&self, a: f64, b: f64) -> Result<f64> {
        if b < 0.0 || a < b {
            return Err(Error::InvalidArgument(format!(
                "f_minus needs a >= b >= 0, got a={a} b={b}"
            )));
        }
        Ok(a - self.eval(a - b)?)
    }
}

impl std::fmt::Display for ClassKFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKFunction::Linear { alpha } => write!(f, "linear {alpha}"),
            ClassKFunction::PiecewiseLinear { knots } => {
                write!(f, "pwl")?;
                for (x, y) in knots.iter().skip(1) {
                    write!(f, " ({x},{y})")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_eval() {
        let f = ClassKFunction::linear(0.5).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert_eq!(f.eval(2.0).unwrap(), 1.0);
        let g = ClassKFunction::linear(2.0).unwrap();
        assert_eq!(g.eval(0.5).unwrap(), 1.0);
        assert!(f.eval(-1.0).is_err());
    }

    #[test]
    fn f_minus_examples() {
        let f = ClassKFunction::linear(0.5).unwrap();
        assert_eq!(f.f_minus(1.0, 0.0).unwrap(), 0.5);
        assert_eq!(f.f_minus(3.0, 3.0).unwrap(), 3.0);
        let g = ClassKFunction::linear(1.0).unwrap();
        assert_eq!(g.f_minus(2.0, 1.0).unwrap(), 1.0);
        assert!(f.f_minus(1.0, 2.0).is_err());
    }

    #[test]
    fn piecewise_eval_interpolates_and_extends() {
        let f = ClassKFunction::piecewise_linear(vec![(1.0, 2.0), (2.0, 3.0)]).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        assert_eq!(f.eval(0.5).unwrap(), 1.0);
        assert_eq!(f.eval(1.0).unwrap(), 2.0);
        assert_eq!(f.eval(1.5).unwrap(), 2.5);
        // extrapolation keeps the last slope
        assert_eq!(f.eval(3.0).unwrap(), 4.0);
    }

    #[test]
    fn rejects_non_increasing_knots() {
        assert!(ClassKFunction::piecewise_linear(vec![(1.0, 1.0), (2.0, 1.0)]).is_err());
        assert!(ClassKFunction::piecewise_linear(vec![(1.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(ClassKFunction::linear(0.0).is_err());
        assert!(ClassKFunction::linear(-1.0).is_err());
    }
}
