//! Global-best particle swarm optimization over a box-bounded search space.
//!
//! Velocities follow `v ← ω·v + c1·ϕ1·(pbest − x) + c2·ϕ2·(gbest − x)` with
//! fresh uniform `ϕ1, ϕ2 ∈ [0, 1)` per particle per dimension per iteration,
//! then positions move by `x ← x + v`. Velocities and positions are clamped to
//! their bounds after every update; the inertia weight decreases linearly over
//! the run.
//!
//! Reproducibility: all randomness comes from a ChaCha8 stream cipher RNG
//! seeded with [`SwarmConfig::seed`] (`ChaCha8Rng::seed_from_u64`), with a
//! fixed draw order — initial positions (particle-major, dimension-minor),
//! then initial velocities, then per iteration `ϕ1, ϕ2` per particle per
//! dimension. Identical configurations therefore produce bit-identical
//! results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Hyperparameters, bounds, and stop criterion of one swarm optimization.
///
/// The stop criterion is the fixed iteration count; the run executes exactly
/// `iterations` synchronous updates.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmConfig {
    pub particle_count: usize,
    pub iterations: usize,
    /// Cognitive learning rate.
    pub c1: f64,
    /// Social learning rate.
    pub c2: f64,
    pub inertia_start: f64,
    pub inertia_end: f64,
    /// Per-dimension `[min, max]` position box.
    pub position_bounds: Vec<[f64; 2]>,
    /// Per-dimension `[min, max]` velocity clamp.
    pub velocity_bounds: Vec<[f64; 2]>,
    pub seed: u64,
}

impl SwarmConfig {
    /// Config with the default learning rates (`c1 = c2 = 1.4`) and inertia
    /// schedule (`0.9 → 0.4`).
    pub fn new(
        position_bounds: Vec<[f64; 2]>,
        velocity_bounds: Vec<[f64; 2]>,
        particle_count: usize,
        iterations: usize,
        seed: u64,
    ) -> Self {
        Self {
            particle_count,
            iterations,
            c1: 1.4,
            c2: 1.4,
            inertia_start: 0.9,
            inertia_end: 0.4,
            position_bounds,
            velocity_bounds,
            seed,
        }
    }

    pub fn dim(&self) -> usize {
        self.position_bounds.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.particle_count == 0 {
            return Err(Error::InvalidInput(
                "particle count must be positive".into(),
            ));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidInput(
                "iteration count must be positive".into(),
            ));
        }
        if self.position_bounds.is_empty() {
            return Err(Error::InvalidInput(
                "search space must have at least one dimension".into(),
            ));
        }
        if self.position_bounds.len() != self.velocity_bounds.len() {
            return Err(Error::InvalidInput(format!(
                "position bounds have {} dimensions but velocity bounds have {}",
                self.position_bounds.len(),
                self.velocity_bounds.len()
            )));
        }
        for (d, bounds) in self
            .position_bounds
            .iter()
            .chain(self.velocity_bounds.iter())
            .enumerate()
        {
            if !(bounds[0].is_finite() && bounds[1].is_finite()) || bounds[0] >= bounds[1] {
                return Err(Error::InvalidInput(format!(
                    "bound {:?} (entry {d}) is not a valid [min, max] interval",
                    bounds
                )));
            }
        }
        for v in [self.c1, self.c2, self.inertia_start, self.inertia_end] {
            if !v.is_finite() {
                return Err(Error::InvalidInput("swarm rates must be finite".into()));
            }
        }
        Ok(())
    }
}

/// Linearly interpolated inertia weight for `iteration` of `total`; equals
/// `start` when `total` is 1.
pub fn inertia_at(iteration: usize, total: usize, start: f64, end: f64) -> f64 {
    debug_assert!(total >= 1 && iteration < total);
    if total <= 1 {
        return start;
    }
    start + (end - start) * iteration as f64 / (total - 1) as f64
}

/// Result of one swarm optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmOutcome {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Global-best fitness after each iteration; nonincreasing.
    pub history: Vec<f64>,
}

struct SwarmState {
    positions: Vec<Vec<f64>>,
    velocities: Vec<Vec<f64>>,
    personal_best: Vec<Vec<f64>>,
    personal_best_fitness: Vec<f64>,
    global_best: Vec<f64>,
    global_best_fitness: f64,
}

fn clamp(v: f64, bounds: [f64; 2]) -> f64 {
    v.clamp(bounds[0], bounds[1])
}

fn evaluate_all<F>(fitness: &F, positions: &[Vec<f64>]) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    let mut out = Vec::with_capacity(positions.len());
    for (i, x) in positions.iter().enumerate() {
        let f = fitness(x);
        if !f.is_finite() {
            return Err(Error::NonFiniteFitness {
                particle: i,
                value: f,
                position: x.clone(),
            });
        }
        out.push(f);
    }
    Ok(out)
}

/// Minimizes `fitness` over the configured box, running exactly
/// `config.iterations` synchronous iterations.
pub fn optimize<F>(fitness: F, config: &SwarmConfig) -> Result<SwarmOutcome>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate()?;
    let dim = config.dim();
    let n = config.particle_count;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let positions: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..dim)
                .map(|d| {
                    let [lo, hi] = config.position_bounds[d];
                    rng.random_range(lo..=hi)
                })
                .collect()
        })
        .collect();
    let velocities: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..dim)
                .map(|d| {
                    let [lo, hi] = config.velocity_bounds[d];
                    rng.random_range(lo..=hi)
                })
                .collect()
        })
        .collect();

    let initial_fitness = evaluate_all(&fitness, &positions)?;
    let mut best_index = 0;
    for i in 1..n {
        if initial_fitness[i] < initial_fitness[best_index] {
            best_index = i;
        }
    }
    let mut state = SwarmState {
        global_best: positions[best_index].clone(),
        global_best_fitness: initial_fitness[best_index],
        personal_best: positions.clone(),
        personal_best_fitness: initial_fitness,
        positions,
        velocities,
    };

    let mut history = Vec::with_capacity(config.iterations);
    for iteration in 0..config.iterations {
        let w = inertia_at(
            iteration,
            config.iterations,
            config.inertia_start,
            config.inertia_end,
        );
        for i in 0..n {
            for d in 0..dim {
                let phi1: f64 = rng.random();
                let phi2: f64 = rng.random();
                let x = state.positions[i][d];
                let v = w * state.velocities[i][d]
                    + config.c1 * phi1 * (state.personal_best[i][d] - x)
                    + config.c2 * phi2 * (state.global_best[d] - x);
                let v = clamp(v, config.velocity_bounds[d]);
                state.velocities[i][d] = v;
                state.positions[i][d] = clamp(x + v, config.position_bounds[d]);
            }
        }

        let fits = evaluate_all(&fitness, &state.positions)?;
        for (i, &f) in fits.iter().enumerate() {
            if f < state.personal_best_fitness[i] {
                state.personal_best_fitness[i] = f;
                state.personal_best[i].clone_from(&state.positions[i]);
            }
        }
        for i in 0..n {
            if state.personal_best_fitness[i] < state.global_best_fitness {
                state.global_best_fitness = state.personal_best_fitness[i];
                state.global_best.clone_from(&state.personal_best[i]);
            }
        }

        #[cfg(debug_assertions)]
        for x in &state.positions {
            for (d, &xd) in x.iter().enumerate() {
                let [lo, hi] = config.position_bounds[d];
                debug_assert!(xd >= lo && xd <= hi, "position escaped bounds");
            }
        }

        history.push(state.global_best_fitness);
    }

    Ok(SwarmOutcome {
        best_position: state.global_best,
        best_fitness: state.global_best_fitness,
        history,
    })
}
