use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::SampledSignal;

/// The five-parameter fractional process `1 / (a1·s^alpha + a2·s^beta + a3)`.
///
/// The dc gain is folded into the coefficients, so all five parameters are
/// dimensionless. A well-formed model has `a1 > 0` and `alpha > beta >= 0`;
/// [`FractionalModel::new`] enforces this. Fields are public because the
/// identification search box may touch the `a1 = 0` edge, where the implicit
/// time step is still solvable; simulation guards the actually operative
/// condition (a nonzero, finite discretization denominator) itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FractionalModel {
    pub a1: f64,
    pub alpha: f64,
    pub a2: f64,
    pub beta: f64,
    pub a3: f64,
}

impl FractionalModel {
    pub fn new(a1: f64, alpha: f64, a2: f64, beta: f64, a3: f64) -> Result<Self> {
        let model = Self {
            a1,
            alpha,
            a2,
            beta,
            a3,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a1", self.a1),
            ("alpha", self.alpha),
            ("a2", self.a2),
            ("beta", self.beta),
            ("a3", self.a3),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if self.a1 <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "a1 must be positive, got {}",
                self.a1
            )));
        }
        if self.beta < 0.0 {
            return Err(Error::InvalidInput(format!(
                "beta must be nonnegative, got {}",
                self.beta
            )));
        }
        if self.alpha <= self.beta {
            return Err(Error::InvalidInput(format!(
                "alpha ({}) must exceed beta ({})",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    /// Parameters in the canonical order `(a1, alpha, a2, beta, a3)`.
    pub fn params(&self) -> [f64; 5] {
        [self.a1, self.alpha, self.a2, self.beta, self.a3]
    }
}

impl std::fmt::Display for FractionalModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "1/({}·s^{} + {}·s^{} + {})",
            self.a1, self.alpha, self.a2, self.beta, self.a3
        )
    }
}

/// Test input applied to a simulated process.
#[derive(Debug, Clone, PartialEq)]
pub enum InputKind {
    /// Unit step `u(t) = 1` for `t >= 0`.
    Step,
    /// Unit ramp `r(t) = t`.
    Ramp,
    /// Parabola `p(t) = t²/2`, the integral of the unit ramp.
    Parabola,
    /// Arbitrary samples; the period must equal the simulation step.
    Sampled(SampledSignal),
}

impl InputKind {
    pub(crate) fn value_at(&self, k: usize, t: f64) -> f64 {
        match self {
            InputKind::Step => 1.0,
            InputKind::Ramp => t,
            InputKind::Parabola => t * t / 2.0,
            InputKind::Sampled(s) => s.samples()[k],
        }
    }
}
