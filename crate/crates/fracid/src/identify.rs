//! The identification experiment: fitness function, measurement noise, and
//! multi-run statistics.
//!
//! The fitness of a candidate parameter set is `F = Σ_t [c(t) − p(t)]²`, the
//! sum of squared deviations between the observed response `c` and the
//! candidate model's unit-step response `p` simulated on the observation grid
//! itself (matched-grid protocol, so the generating parameters attain exactly
//! `F = 0` on noiseless data).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FractionalModel, InputKind};
use crate::pso::{optimize, SwarmConfig};
use crate::scenario::{ParamName, Scenario};
use crate::seed::derive_seed;
use crate::signal::SampledSignal;
use crate::sim::simulate;

/// Measurement-noise settings: each reading gets an independent uniform draw
/// from `[-amplitude, +amplitude]`, redrawn per run from seeds derived off
/// `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub amplitude: f64,
    pub seed: u64,
}

/// Adds an independent uniform `[-amplitude, +amplitude]` draw to every
/// sample; deterministic per seed.
pub fn corrupt(signal: &SampledSignal, amplitude: f64, seed: u64) -> Result<SampledSignal> {
    if !amplitude.is_finite() || amplitude < 0.0 {
        return Err(Error::InvalidInput(format!(
            "noise amplitude must be nonnegative, got {amplitude}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(signal.map(|v| {
        let eps: f64 = rng.random_range(-amplitude..=amplitude);
        v + eps
    }))
}

fn check_observations(observations: &SampledSignal, scenario: &Scenario) -> Result<()> {
    let rel =
        (observations.period() - scenario.observation_period).abs() / scenario.observation_period;
    if rel > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "observations sampled at period {} but the scenario expects {}",
            observations.period(),
            scenario.observation_period
        )));
    }
    if observations.start_time().abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "observations must start at t = 0, got {}",
            observations.start_time()
        )));
    }
    let expected = scenario.observation_count();
    if observations.len() != expected {
        return Err(Error::InvalidInput(format!(
            "observations have {} samples but the scenario grid (horizon {}, period {}) has {expected}",
            observations.len(),
            scenario.horizon,
            scenario.observation_period
        )));
    }
    Ok(())
}

/// Sum of squared deviations between `observations` and the model's unit-step
/// response simulated on the observations' own grid.
pub fn fitness_of(model: &FractionalModel, observations: &SampledSignal) -> Result<f64> {
    if observations.start_time().abs() > 1e-12 {
        return Err(Error::InvalidInput(
            "observations must start at t = 0".into(),
        ));
    }
    if observations.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two observation samples".into(),
        ));
    }
    let response = simulate(
        model,
        &InputKind::Step,
        observations.period(),
        observations.duration(),
    )?;
    debug_assert_eq!(response.len(), observations.len());
    Ok(response
        .samples()
        .iter()
        .zip(observations.samples())
        .map(|(&p, &c)| (c - p) * (c - p))
        .sum())
}

/// Builds the fitness oracle for a scenario: position vector → `F`.
///
/// Simulation failures surface as a non-finite fitness value, which the
/// optimizer reports as a run failure.
pub fn make_fitness<'a>(
    observations: &'a SampledSignal,
    scenario: &'a Scenario,
) -> Result<impl Fn(&[f64]) -> f64 + 'a> {
    scenario.validate()?;
    check_observations(observations, scenario)?;
    Ok(move |position: &[f64]| {
        let model = scenario.decode(position);
        fitness_of(&model, observations).unwrap_or(f64::NAN)
    })
}

/// Outcome of a single identification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub run: usize,
    pub swarm_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_seed: Option<u64>,
    /// Estimated free parameters in the scenario's declared order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimates: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<FractionalModel>,
    /// Fitness against the data this run saw (corrupted when noise is on).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitness: Option<f64>,
    /// Fitness of the estimated model against the clean observations; only
    /// present when noise was applied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitness_clean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunOutcome {
    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

/// Per-parameter statistics across runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamStats {
    pub name: ParamName,
    pub mean: f64,
    pub std_dev: f64,
    /// `|mean − truth| / truth × 100`, when the truth is known and nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub percent_error: Option<f64>,
}

/// Report of a multi-run identification experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Position-vector decoding order.
    pub parameter_order: Vec<ParamName>,
    pub runs: Vec<RunOutcome>,
    /// Index (into `runs`) of the successful run with the least fitness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_run: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_model: Option<FractionalModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_fitness: Option<f64>,
    /// Statistics over the successful runs.
    pub stats: Vec<ParamStats>,
    pub failed_runs: usize,
}

/// Sample standard deviation (n−1 denominator); exactly zero for a single
/// value or when all values are identical.
pub(crate) fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n <= 1 || values.windows(2).all(|w| w[0] == w[1]) {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1) as f64).sqrt()
}

pub(crate) fn percent_error(estimate: f64, truth: f64) -> Option<f64> {
    if truth == 0.0 {
        return None;
    }
    Some((estimate - truth).abs() / truth.abs() * 100.0)
}

/// Runs `runs` independent swarm optimizations against the observations.
///
/// `swarm.seed` acts as the master seed; run `r` optimizes with seed
/// `derive_seed(master, "identify.run", r)`. When noise is configured, run `r`
/// sees a fresh corruption of the observations drawn with seed
/// `derive_seed(noise.seed, "identify.noise", r)`, and each outcome also
/// reports the estimate's fitness against the clean data.
pub fn identify(
    observations: &SampledSignal,
    scenario: &Scenario,
    swarm: &SwarmConfig,
    runs: usize,
    noise: Option<NoiseSpec>,
) -> Result<RunReport> {
    if runs == 0 {
        return Err(Error::InvalidInput("need at least one run".into()));
    }
    scenario.validate()?;
    check_observations(observations, scenario)?;
    if swarm.dim() != scenario.free.len() {
        return Err(Error::InvalidInput(format!(
            "swarm searches {} dimensions but the scenario has {} free parameters",
            swarm.dim(),
            scenario.free.len()
        )));
    }
    if let Some(n) = noise {
        if !n.amplitude.is_finite() || n.amplitude < 0.0 {
            return Err(Error::InvalidInput(format!(
                "noise amplitude must be nonnegative, got {}",
                n.amplitude
            )));
        }
    }

    let mut outcomes = Vec::with_capacity(runs);
    for run in 0..runs {
        let swarm_seed = derive_seed(swarm.seed, "identify.run", run as u64);
        let mut config = swarm.clone();
        config.seed = swarm_seed;

        let (data, noise_seed) = match noise {
            Some(n) => {
                let noise_seed = derive_seed(n.seed, "identify.noise", run as u64);
                (
                    corrupt(observations, n.amplitude, noise_seed)?,
                    Some(noise_seed),
                )
            }
            None => (observations.clone(), None),
        };

        let oracle = make_fitness(&data, scenario)?;
        match optimize(&oracle, &config) {
            Ok(out) => {
                let model = scenario.decode(&out.best_position);
                let fitness_clean = if noise.is_some() {
                    fitness_of(&model, observations).ok()
                } else {
                    None
                };
                outcomes.push(RunOutcome {
                    run,
                    swarm_seed,
                    noise_seed,
                    estimates: Some(out.best_position),
                    model: Some(model),
                    fitness: Some(out.best_fitness),
                    fitness_clean,
                    error: None,
                });
            }
            Err(err) => outcomes.push(RunOutcome {
                run,
                swarm_seed,
                noise_seed,
                estimates: None,
                model: None,
                fitness: None,
                fitness_clean: None,
                error: Some(err.to_string()),
            }),
        }
    }

    let successes: Vec<&RunOutcome> = outcomes.iter().filter(|o| o.succeeded()).collect();
    let failed_runs = runs - successes.len();
    if successes.is_empty() {
        return Err(Error::AllRunsFailed(runs));
    }

    let best = successes
        .iter()
        .min_by(|a, b| a.fitness.partial_cmp(&b.fitness).unwrap())
        .unwrap();
    let best_run = best.run;
    let best_model = best.model;
    let best_fitness = best.fitness;

    let parameter_order = scenario.free_names();
    let stats = parameter_order
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let values: Vec<f64> = successes
                .iter()
                .map(|o| o.estimates.as_ref().unwrap()[i])
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let std_dev = sample_std(&values);
            let truth = scenario.truth.as_ref().map(|t| name.value_in(t));
            ParamStats {
                name,
                mean,
                std_dev,
                percent_error: truth.and_then(|t| percent_error(mean, t)),
            }
        })
        .collect();

    Ok(RunReport {
        parameter_order,
        runs: outcomes,
        best_run: Some(best_run),
        best_model,
        best_fitness,
        stats,
        failed_runs,
    })
}
