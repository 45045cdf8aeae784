//! Shift schedules and shift-to-zero extrapolation.
//!
//! The matrix elements under study behave as `g(s) = L + a s + O(s^2)` as the
//! shift goes to zero, so a first-order Richardson step over the two smallest
//! schedule points recovers `L` to near machine precision, and the ratio of
//! successive differences exposes the convergence order.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("shift schedule must contain at least one value")]
    Empty,
    #[error("shift values must lie in (0, 1], got {0}")]
    OutOfRange(f64),
    #[error("shift schedule must be strictly decreasing ({prev} followed by {next})")]
    NonDecreasing { prev: f64, next: f64 },
    #[error("schedule start must lie in (0, 1], got {0}")]
    BadStart(f64),
    #[error("schedule factor must lie in (0, 1), got {0}")]
    BadFactor(f64),
}

/// Strictly decreasing sequence of positive shift magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSchedule {
    values: Vec<f64>,
}

impl ShiftSchedule {
    pub fn new(values: Vec<f64>) -> Result<ShiftSchedule, ScheduleError> {
        if values.is_empty() {
            return Err(ScheduleError::Empty);
        }
        for &s in &values {
            if !(s > 0.0 && s <= 1.0) {
                return Err(ScheduleError::OutOfRange(s));
            }
        }
        for w in values.windows(2) {
            if w[1] >= w[0] {
                return Err(ScheduleError::NonDecreasing {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(ShiftSchedule { values })
    }

    /// `start * factor^k` for `k = 0..steps`.
    pub fn geometric(
        start: f64,
        factor: f64,
        steps: usize,
    ) -> Result<ShiftSchedule, ScheduleError> {
        if !(start > 0.0 && start <= 1.0) {
            return Err(ScheduleError::BadStart(start));
        }
        if !(factor > 0.0 && factor < 1.0) {
            return Err(ScheduleError::BadFactor(factor));
        }
        if steps == 0 {
            return Err(ScheduleError::Empty);
        }
        let mut values = Vec::with_capacity(steps);
        let mut s = start;
        for _ in 0..steps {
            values.push(s);
            s *= factor;
        }
        ShiftSchedule::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn smallest(&self) -> f64 {
        *self.values.last().expect("schedule is non-empty")
    }
}

impl Default for ShiftSchedule {
    /// Geometric halving from 1e-2, 20 steps (smallest shift ~1.9e-8).
    fn default() -> Self {
        ShiftSchedule::geometric(1e-2, 0.5, 20).expect("default schedule is valid")
    }
}

/// Result of a shift-to-zero extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    /// Extrapolated limit.
    pub value: Complex64,
    /// Distance of the sample at the smallest shift from the extrapolated limit.
    pub residual: f64,
    /// Convergence order observed over the three smallest shifts; `None` with
    /// fewer than three samples or when successive differences fall below noise.
    pub observed_order: Option<f64>,
}

/// First-order Richardson extrapolation of `(shift, value)` samples.
///
/// Samples must follow the schedule order (decreasing shift). With a single
/// sample the value itself is returned.
pub fn extrapolate(samples: &[(f64, Complex64)]) -> LimitEstimate {
    assert!(
        !samples.is_empty(),
        "extrapolate requires at least one sample"
    );
    let n = samples.len();
    if n == 1 {
        return LimitEstimate {
            value: samples[0].1,
            residual: 0.0,
            observed_order: None,
        };
    }
    let (s_coarse, g_coarse) = samples[n - 2];
    let (s_fine, g_fine) = samples[n - 1];
    let ratio = s_coarse / s_fine;
    // exact for g(s) = L + a s, any step ratio > 1
    let value = (g_fine.scale(ratio) - g_coarse).unscale(ratio - 1.0);
    let residual = (g_fine - value).norm();

    let observed_order = if n >= 3 {
        let d1 = (samples[n - 3].1 - g_coarse).norm();
        let d2 = (g_coarse - g_fine).norm();
        let r = samples[n - 3].0 / s_coarse;
        if d1 > 0.0 && d2 > 0.0 && r > 1.0 {
            Some((d1 / d2).ln() / r.ln())
        } else {
            None
        }
    } else {
        None
    };

    LimitEstimate {
        value,
        residual,
        observed_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(schedule: &ShiftSchedule, g: impl Fn(f64) -> Complex64) -> Vec<(f64, Complex64)> {
        schedule.values().iter().map(|&s| (s, g(s))).collect()
    }

    #[test]
    fn schedule_rejects_bad_input() {
        assert_eq!(ShiftSchedule::new(vec![]), Err(ScheduleError::Empty));
        assert_eq!(
            ShiftSchedule::new(vec![1e-2, -1e-3]),
            Err(ScheduleError::OutOfRange(-1e-3))
        );
        assert_eq!(
            ShiftSchedule::new(vec![2.0, 1e-3]),
            Err(ScheduleError::OutOfRange(2.0))
        );
        assert!(matches!(
            ShiftSchedule::new(vec![1e-3, 1e-2]),
            Err(ScheduleError::NonDecreasing { .. })
        ));
        assert!(matches!(
            ShiftSchedule::new(vec![1e-3, 1e-3]),
            Err(ScheduleError::NonDecreasing { .. })
        ));
        assert!(matches!(
            ShiftSchedule::geometric(0.0, 0.5, 5),
            Err(ScheduleError::BadStart(_))
        ));
        assert!(matches!(
            ShiftSchedule::geometric(1e-2, 1.0, 5),
            Err(ScheduleError::BadFactor(_))
        ));
        assert_eq!(
            ShiftSchedule::geometric(1e-2, 0.5, 0),
            Err(ScheduleError::Empty)
        );
    }

    #[test]
    fn default_schedule_shape() {
        let sched = ShiftSchedule::default();
        assert_eq!(sched.values().len(), 20);
        assert_eq!(sched.values()[0], 1e-2);
        assert!((sched.smallest() - 1e-2 * 0.5f64.powi(19)).abs() < 1e-20);
    }

    #[test]
    fn recovers_linear_limit_exactly() {
        let sched = ShiftSchedule::default();
        let target = Complex64::new(0.0, 1.0);
        let est = extrapolate(&sample(&sched, |s| {
            target + Complex64::new(2.5 * s, -0.3 * s) + Complex64::new(s * s, 0.0)
        }));
        assert!((est.value - target).norm() < 1e-12);
        let order = est.observed_order.expect("three or more samples");
        assert!((order - 1.0).abs() < 0.05, "order {order}");
        assert!(est.residual > 0.0);
    }

    #[test]
    fn detects_second_order_convergence() {
        let sched = ShiftSchedule::geometric(1e-1, 0.5, 10).unwrap();
        let est = extrapolate(&sample(&sched, |s| Complex64::new(1.0 + s * s, 0.0)));
        let order = est.observed_order.expect("order reported");
        assert!((order - 2.0).abs() < 0.05, "order {order}");
    }

    #[test]
    fn constant_sequence_has_no_order() {
        let sched = ShiftSchedule::geometric(1e-1, 0.5, 6).unwrap();
        let est = extrapolate(&sample(&sched, |_| Complex64::new(0.0, 1.0)));
        assert_eq!(est.observed_order, None);
        assert_eq!(est.residual, 0.0);
        assert_eq!(est.value, Complex64::new(0.0, 1.0));
    }

    #[test]
    fn two_samples_report_no_order() {
        let est = extrapolate(&[
            (1e-2, Complex64::new(1.01, 0.0)),
            (5e-3, Complex64::new(1.005, 0.0)),
        ]);
        assert_eq!(est.observed_order, None);
        assert!((est.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
