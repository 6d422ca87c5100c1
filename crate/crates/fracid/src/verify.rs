//! Cross-checking estimated fractional orders by reconstructing the three
//! coefficients from the response data.
//!
//! With the orders `(alpha, beta)` taken as known, applying the model operator
//! to the recorded step response at a single instant gives one linear equation
//! `a1·p + a2·q + a3·r = s` in the coefficients; integrating the relation once
//! and twice (which shifts every differintegral order down by one and turns
//! the step input into a ramp and then a parabola) gives two more. Solving the
//! resulting 3×3 system recovers `(a1, a2, a3)`, and ranking candidate models
//! by the identification fitness orders them by quality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl::gl_differint_at;
use crate::identify::fitness_of;
use crate::linsolve::solve3;
use crate::model::FractionalModel;
use crate::signal::SampledSignal;

/// Condition-estimate threshold beyond which a reconstruction is rejected: a
/// 64-bit solve past this point carries no digits trustworthy at the
/// percent level.
pub const CONDITION_GUARD: f64 = 1e12;

/// One linear equation `a1·p + a2·q + a3·r = s` in the coefficients,
/// obtained by integrating the model relation `level` times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationRow {
    /// Multiplies `a1`: the `(alpha − level)`-order differintegral of the
    /// response at the evaluation instant.
    pub p: f64,
    /// Multiplies `a2`: the `(beta − level)`-order differintegral.
    pub q: f64,
    /// Multiplies `a3`: the `(−level)`-order differintegral.
    pub r: f64,
    /// Right-hand side: the `level`-times-integrated unit step evaluated at
    /// the instant (1, then `t`, then `t²/2`).
    pub s: f64,
    pub level: usize,
}

/// Builds the level-`level` equation row from the recorded step response.
///
/// `eval_time` must lie on the signal's grid, inside its span, and at least
/// `memory` seconds after the start so the full memory window exists.
pub fn build_equation(
    c: &SampledSignal,
    alpha: f64,
    beta: f64,
    level: usize,
    eval_time: f64,
    memory: f64,
) -> Result<EquationRow> {
    if level > 2 {
        return Err(Error::InvalidInput(format!(
            "derivation level must be 0, 1, or 2, got {level}"
        )));
    }
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidInput("orders must be finite".into()));
    }
    if eval_time < memory {
        return Err(Error::InvalidInput(format!(
            "evaluation time {eval_time} is earlier than the memory window {memory}; \
             the history sum would be silently incomplete"
        )));
    }
    let index = c.index_of_time(eval_time)?;
    let lf = level as f64;
    let p = gl_differint_at(c, alpha - lf, memory, index)?;
    let q = gl_differint_at(c, beta - lf, memory, index)?;
    let r = gl_differint_at(c, -lf, memory, index)?;
    let s = match level {
        0 => 1.0,
        1 => eval_time,
        _ => eval_time * eval_time / 2.0,
    };
    Ok(EquationRow { p, q, r, s, level })
}

/// Reconstructed coefficient triple plus the evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub rows: [EquationRow; 3],
    pub condition_estimate: f64,
}

/// Solves the three stacked equation rows for `(a1, a2, a3)`.
pub fn reconstruct_coefficients(
    c: &SampledSignal,
    alpha: f64,
    beta: f64,
    eval_time: f64,
    memory: f64,
) -> Result<Reconstruction> {
    let rows = [
        build_equation(c, alpha, beta, 0, eval_time, memory)?,
        build_equation(c, alpha, beta, 1, eval_time, memory)?,
        build_equation(c, alpha, beta, 2, eval_time, memory)?,
    ];
    let matrix = [
        [rows[0].p, rows[0].q, rows[0].r],
        [rows[1].p, rows[1].q, rows[1].r],
        [rows[2].p, rows[2].q, rows[2].r],
    ];
    let rhs = [rows[0].s, rows[1].s, rows[2].s];
    let (solution, condition_estimate) = solve3(matrix, rhs)?;
    if condition_estimate > CONDITION_GUARD {
        return Err(Error::IllConditioned {
            estimate: condition_estimate,
            threshold: CONDITION_GUARD,
        });
    }
    Ok(Reconstruction {
        a1: solution[0],
        a2: solution[1],
        a3: solution[2],
        rows,
        condition_estimate,
    })
}

/// A candidate model with its identification fitness (or the failure that
/// prevented computing it).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedModel {
    /// Position of this candidate in the input list.
    pub candidate: usize,
    pub model: FractionalModel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Computes the identification fitness of every candidate against the
/// observations and sorts ascending (best first). Ties keep input order;
/// candidates whose simulation failed sort last, also in input order.
pub fn rank_models(
    candidates: &[FractionalModel],
    observations: &SampledSignal,
) -> Result<Vec<RankedModel>> {
    if candidates.is_empty() {
        return Err(Error::InvalidInput("no candidate models to rank".into()));
    }
    let mut ranked: Vec<RankedModel> = candidates
        .iter()
        .enumerate()
        .map(
            |(candidate, &model)| match fitness_of(&model, observations) {
                Ok(fitness) => RankedModel {
                    candidate,
                    model,
                    fitness: Some(fitness),
                    error: None,
                },
                Err(err) => RankedModel {
                    candidate,
                    model,
                    fitness: None,
                    error: Some(err.to_string()),
                },
            },
        )
        .collect();
    ranked.sort_by(|a, b| match (a.fitness, b.fitness) {
        (Some(fa), Some(fb)) => fa.partial_cmp(&fb).unwrap(),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    Ok(ranked)
}
