use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniformly sampled real-valued time series.
///
/// Sample `k` corresponds to time `start_time + k * period`. The sampling
/// period is strictly positive; signals are assumed to be at rest (zero)
/// before `start_time`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal {
    start_time: f64,
    period: f64,
    samples: Vec<f64>,
}

impl SampledSignal {
    pub fn new(start_time: f64, period: f64, samples: Vec<f64>) -> Result<Self> {
        if !period.is_finite() || period <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "sampling period must be positive and finite, got {period}"
            )));
        }
        if !start_time.is_finite() {
            return Err(Error::InvalidInput(format!(
                "start time must be finite, got {start_time}"
            )));
        }
        Ok(Self {
            start_time,
            period,
            samples,
        })
    }

    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time of sample `k`.
    pub fn time_at(&self, k: usize) -> f64 {
        self.start_time + k as f64 * self.period
    }

    /// Time span from the first to the last sample.
    pub fn duration(&self) -> f64 {
        match self.samples.len() {
            0 => 0.0,
            n => (n - 1) as f64 * self.period,
        }
    }

    /// Iterator over `(time, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .enumerate()
            .map(|(k, &v)| (self.time_at(k), v))
    }

    /// Index of the sample at time `t`, which must land on the grid within
    /// a relative tolerance of 1e-9.
    pub fn index_of_time(&self, t: f64) -> Result<usize> {
        let raw = (t - self.start_time) / self.period;
        let k = raw.round();
        let tol = 1e-9 * raw.abs().max(1.0);
        if k < 0.0 || (raw - k).abs() > tol {
            return Err(Error::InvalidInput(format!(
                "time {t} does not lie on the sampling grid (start {}, period {})",
                self.start_time, self.period
            )));
        }
        let k = k as usize;
        if k >= self.samples.len() {
            return Err(Error::InvalidInput(format!(
                "time {t} is beyond the last sample at {}",
                self.time_at(self.samples.len().saturating_sub(1))
            )));
        }
        Ok(k)
    }

    /// Map every sample through `f`, keeping the time grid.
    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Self {
        Self {
            start_time: self.start_time,
            period: self.period,
            samples: self.samples.iter().copied().map(f).collect(),
        }
    }
}

/// Number of grid steps that fit in `span` at spacing `step`, i.e. ⌊span/step⌋
/// computed robustly against floating-point division landing just below an
/// integer.
pub(crate) fn grid_steps(span: f64, step: f64) -> usize {
    if !span.is_finite() {
        return usize::MAX;
    }
    ((span / step) * (1.0 + 1e-9)).floor() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_period() {
        assert!(SampledSignal::new(0.0, 0.0, vec![1.0]).is_err());
        assert!(SampledSignal::new(0.0, -0.1, vec![1.0]).is_err());
        assert!(SampledSignal::new(0.0, f64::NAN, vec![1.0]).is_err());
    }

    #[test]
    fn time_grid() {
        let s = SampledSignal::new(0.5, 0.25, vec![0.0; 5]).unwrap();
        assert_eq!(s.time_at(0), 0.5);
        assert_eq!(s.time_at(4), 1.5);
        assert_eq!(s.duration(), 1.0);
        assert_eq!(s.index_of_time(1.0).unwrap(), 2);
        assert!(s.index_of_time(1.1).is_err());
        assert!(s.index_of_time(2.0).is_err());
    }

    #[test]
    fn grid_steps_is_robust_to_rounding() {
        // 10/0.05 and 10/0.02 both land a hair off the exact integer in f64.
        assert_eq!(grid_steps(10.0, 0.05), 200);
        assert_eq!(grid_steps(10.0, 0.02), 500);
        assert_eq!(grid_steps(10.0, 0.001), 10000);
        assert_eq!(grid_steps(1.0, 0.3), 3);
        assert_eq!(grid_steps(f64::INFINITY, 0.1), usize::MAX);
    }
}
