use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FractionalModel;
use crate::pso::SwarmConfig;

/// One of the five process parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamName {
    A1,
    Alpha,
    A2,
    Beta,
    A3,
}

impl ParamName {
    pub const ALL: [ParamName; 5] = [
        ParamName::A1,
        ParamName::Alpha,
        ParamName::A2,
        ParamName::Beta,
        ParamName::A3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ParamName::A1 => "a1",
            ParamName::Alpha => "alpha",
            ParamName::A2 => "a2",
            ParamName::Beta => "beta",
            ParamName::A3 => "a3",
        }
    }

    pub fn value_in(self, model: &FractionalModel) -> f64 {
        match self {
            ParamName::A1 => model.a1,
            ParamName::Alpha => model.alpha,
            ParamName::A2 => model.a2,
            ParamName::Beta => model.beta,
            ParamName::A3 => model.a3,
        }
    }
}

impl std::str::FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a1" => Ok(ParamName::A1),
            "alpha" => Ok(ParamName::Alpha),
            "a2" => Ok(ParamName::A2),
            "beta" => Ok(ParamName::Beta),
            "a3" => Ok(ParamName::A3),
            other => Err(Error::InvalidInput(format!(
                "unknown parameter name {other:?} (expected a1, alpha, a2, beta, or a3)"
            ))),
        }
    }
}

impl std::fmt::Display for ParamName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A parameter searched by the optimizer, with its position and velocity
/// ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeParam {
    pub name: ParamName,
    /// `[min, max]` search range.
    pub search: [f64; 2],
    /// `[min, max]` velocity range.
    pub velocity: [f64; 2],
}

/// An identification scenario: which parameters are free (in position-vector
/// order) vs. fixed, the observation grid, and optionally the generating
/// truth for error reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    /// Free parameters; their order is the position-vector decoding order.
    pub free: Vec<FreeParam>,
    /// Values of the parameters known beforehand.
    #[serde(default)]
    pub fixed: BTreeMap<ParamName, f64>,
    /// Sampling period of the observations, seconds.
    pub observation_period: f64,
    /// Observation window, seconds.
    pub horizon: f64,
    /// Generating parameters, when known, for percent-error statistics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<FractionalModel>,
}

impl Scenario {
    pub fn free_names(&self) -> Vec<ParamName> {
        self.free.iter().map(|p| p.name).collect()
    }

    fn range_of(&self, name: ParamName) -> Option<[f64; 2]> {
        if let Some(p) = self.free.iter().find(|p| p.name == name) {
            return Some(p.search);
        }
        self.fixed.get(&name).map(|&v| [v, v])
    }

    pub fn validate(&self) -> Result<()> {
        for name in ParamName::ALL {
            let in_free = self.free.iter().filter(|p| p.name == name).count();
            let in_fixed = usize::from(self.fixed.contains_key(&name));
            if in_free + in_fixed != 1 {
                return Err(Error::InvalidInput(format!(
                    "parameter {name} must appear exactly once across free and fixed, found {} time(s)",
                    in_free + in_fixed
                )));
            }
        }
        for p in &self.free {
            for (kind, [lo, hi]) in [("search", p.search), ("velocity", p.velocity)] {
                if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
                    return Err(Error::InvalidInput(format!(
                        "{} {kind} range [{lo}, {hi}] is not a valid interval",
                        p.name
                    )));
                }
            }
        }
        // Every decodable position must yield alpha > beta >= 0 and a1 >= 0.
        let alpha = self.range_of(ParamName::Alpha).unwrap();
        let beta = self.range_of(ParamName::Beta).unwrap();
        if alpha[0] <= beta[1] {
            return Err(Error::InvalidInput(format!(
                "alpha range [{}, {}] must lie strictly above beta range [{}, {}]",
                alpha[0], alpha[1], beta[0], beta[1]
            )));
        }
        if beta[0] < 0.0 {
            return Err(Error::InvalidInput(format!(
                "beta range reaches {}, below zero",
                beta[0]
            )));
        }
        let a1 = self.range_of(ParamName::A1).unwrap();
        if a1[0] < 0.0 {
            return Err(Error::InvalidInput(format!(
                "a1 range reaches {}, below zero",
                a1[0]
            )));
        }
        if !self.observation_period.is_finite() || self.observation_period <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "observation period must be positive, got {}",
                self.observation_period
            )));
        }
        if !self.horizon.is_finite() || self.horizon < self.observation_period {
            return Err(Error::InvalidInput(format!(
                "horizon ({}) must cover at least one observation period ({})",
                self.horizon, self.observation_period
            )));
        }
        if let Some(truth) = &self.truth {
            truth.validate()?;
        }
        Ok(())
    }

    /// Decodes a position vector into a model, taking free parameters from the
    /// position (in declared order) and the rest from the fixed values.
    pub fn decode(&self, position: &[f64]) -> FractionalModel {
        debug_assert_eq!(position.len(), self.free.len());
        let mut values = BTreeMap::new();
        for (p, &v) in self.free.iter().zip(position) {
            values.insert(p.name, v);
        }
        for (&name, &v) in &self.fixed {
            values.entry(name).or_insert(v);
        }
        FractionalModel {
            a1: values[&ParamName::A1],
            alpha: values[&ParamName::Alpha],
            a2: values[&ParamName::A2],
            beta: values[&ParamName::Beta],
            a3: values[&ParamName::A3],
        }
    }

    /// Swarm configuration whose search box is this scenario's ranges, with
    /// the default learning rates and inertia schedule.
    pub fn swarm_config(&self, particles: usize, iterations: usize, seed: u64) -> SwarmConfig {
        SwarmConfig::new(
            self.free.iter().map(|p| p.search).collect(),
            self.free.iter().map(|p| p.velocity).collect(),
            particles,
            iterations,
            seed,
        )
    }

    /// Scenario with `target` removed from the free set and fixed at `value`.
    pub fn without(&self, target: ParamName, value: f64) -> Result<Scenario> {
        if !self.free.iter().any(|p| p.name == target) {
            return Err(Error::InvalidInput(format!(
                "parameter {target} is not free in this scenario"
            )));
        }
        let mut reduced = self.clone();
        reduced.free.retain(|p| p.name != target);
        reduced.fixed.insert(target, value);
        Ok(reduced)
    }

    /// Number of observation samples on the scenario grid (`t = 0 … horizon`).
    pub fn observation_count(&self) -> usize {
        crate::signal::grid_steps(self.horizon, self.observation_period) + 1
    }
}

/// The four-free-parameter scenario (`beta` known beforehand): coefficients
/// searched in `[0, 2]` with velocity `±0.5`, `alpha` in `[2.0, 2.4]` with
/// velocity `±0.1`, observed at 20 samples per second over 10 seconds.
pub fn four_parameter_scenario(truth: Option<FractionalModel>) -> Scenario {
    Scenario {
        free: vec![
            FreeParam {
                name: ParamName::A1,
                search: [0.0, 2.0],
                velocity: [-0.5, 0.5],
            },
            FreeParam {
                name: ParamName::Alpha,
                search: [2.0, 2.4],
                velocity: [-0.1, 0.1],
            },
            FreeParam {
                name: ParamName::A2,
                search: [0.0, 2.0],
                velocity: [-0.5, 0.5],
            },
            FreeParam {
                name: ParamName::A3,
                search: [0.0, 2.0],
                velocity: [-0.5, 0.5],
            },
        ],
        fixed: BTreeMap::from([(ParamName::Beta, 0.9)]),
        observation_period: 0.05,
        horizon: 10.0,
        truth,
    }
}

/// The five-free-parameter scenario: like the four-parameter one, plus `beta`
/// searched in `[0.7, 1.1]` with velocity `±0.1`.
pub fn five_parameter_scenario(truth: Option<FractionalModel>) -> Scenario {
    let mut scenario = four_parameter_scenario(truth);
    scenario.fixed.clear();
    scenario.free.insert(
        3,
        FreeParam {
            name: ParamName::Beta,
            search: [0.7, 1.1],
            velocity: [-0.1, 0.1],
        },
    );
    scenario
}
