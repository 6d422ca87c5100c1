//! Time-domain simulation of the fractional process by implicit
//! Grünwald–Letnikov stepping.
//!
//! Writing the process `r(t) = a1·D^alpha c(t) + a2·D^beta c(t) + a3·c(t)` with
//! both differintegrals expanded as truncated GL history sums and solving for
//! the newest sample gives, at every grid point `t_k`,
//!
//! ```text
//! c(t_k) = [ r(t_k) - a1·h^-alpha·Σ_{j≥1} b_j^(alpha)·c(t_{k-j})
//!                   - a2·h^-beta ·Σ_{j≥1} b_j^(beta) ·c(t_{k-j}) ]
//!          / ( a1·h^-alpha + a2·h^-beta + a3 )
//! ```
//!
//! with zero initial conditions. The response generated this way satisfies the
//! discrete model equation exactly at every step, which is what the linear
//! coefficient reconstruction in [`crate::verify`] relies on.

use crate::error::{Error, Result};
use crate::gl::{cached_coefficients, memory_taps};
use crate::model::{FractionalModel, InputKind};
use crate::signal::{grid_steps, SampledSignal};

fn sample_count(step: f64, horizon: f64) -> Result<usize> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "simulation step must be positive, got {step}"
        )));
    }
    if !horizon.is_finite() || horizon < step {
        return Err(Error::InvalidInput(format!(
            "horizon ({horizon}) must be at least one step ({step})"
        )));
    }
    Ok(grid_steps(horizon, step) + 1)
}

/// Simulates the process response on `t = 0, step, …, horizon` with zero
/// initial conditions and full memory within the horizon.
pub fn simulate(
    model: &FractionalModel,
    input: &InputKind,
    step: f64,
    horizon: f64,
) -> Result<SampledSignal> {
    simulate_truncated(model, input, step, horizon, f64::INFINITY)
}

/// Same as [`simulate`], but truncating the history sums to a `memory`-second
/// window. With `memory >= horizon` the result is bit-identical to the
/// full-memory response.
pub fn simulate_truncated(
    model: &FractionalModel,
    input: &InputKind,
    step: f64,
    horizon: f64,
    memory: f64,
) -> Result<SampledSignal> {
    let n = sample_count(step, horizon)?;
    if memory.is_nan() || memory < step {
        return Err(Error::InvalidInput(format!(
            "memory ({memory}) must cover at least one step ({step})"
        )));
    }
    if let InputKind::Sampled(s) = input {
        let rel = (s.period() - step).abs() / step;
        if rel > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "sampled input period {} does not match the simulation step {step}",
                s.period()
            )));
        }
        if s.len() < n {
            return Err(Error::InvalidInput(format!(
                "sampled input has {} samples but the horizon needs {n}",
                s.len()
            )));
        }
    }

    let scale_a = model.a1 * step.powf(-model.alpha);
    let scale_b = model.a2 * step.powf(-model.beta);
    let denominator = scale_a + scale_b + model.a3;
    if !denominator.is_finite() || denominator == 0.0 {
        return Err(Error::IllPosed(format!(
            "implicit step denominator a1·h^-alpha + a2·h^-beta + a3 = {denominator} for model {model}"
        )));
    }

    let taps = memory_taps(memory, step);
    let coeff_len = n.min(taps.saturating_add(1));
    let b_alpha = cached_coefficients(model.alpha, coeff_len);
    let b_beta = cached_coefficients(model.beta, coeff_len);

    let mut c = vec![0.0; n];
    for k in 0..n {
        let t = k as f64 * step;
        let mut hist_a = 0.0;
        let mut hist_b = 0.0;
        for j in 1..=k.min(taps) {
            let past = c[k - j];
            hist_a += b_alpha[j] * past;
            hist_b += b_beta[j] * past;
        }
        let r = input.value_at(k, t);
        c[k] = (r - scale_a * hist_a - scale_b * hist_b) / denominator;
    }
    SampledSignal::new(0.0, step, c)
}

/// Applies the discrete model operator to a response, recovering the input
/// samples that would have produced it: `a1·D^alpha c + a2·D^beta c + a3·c`
/// evaluated with full memory at every grid point.
///
/// For a response produced by [`simulate`] this reproduces the input to
/// rounding error; it is the self-consistency check of the stepping scheme.
pub fn reconstruct_input(model: &FractionalModel, response: &SampledSignal) -> Result<Vec<f64>> {
    if response.is_empty() {
        return Err(Error::InvalidInput("empty response".into()));
    }
    let h = response.period();
    let n = response.len();
    let scale_a = model.a1 * h.powf(-model.alpha);
    let scale_b = model.a2 * h.powf(-model.beta);
    let b_alpha = cached_coefficients(model.alpha, n);
    let b_beta = cached_coefficients(model.beta, n);
    let c = response.samples();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut hist_a = 0.0;
        let mut hist_b = 0.0;
        for j in 1..=k {
            let past = c[k - j];
            hist_a += b_alpha[j] * past;
            hist_b += b_beta[j] * past;
        }
        out.push(scale_a * (hist_a + c[k]) + scale_b * (hist_b + c[k]) + model.a3 * c[k]);
    }
    Ok(out)
}

/// Keeps every `target_period / signal.period()`-th sample starting at index
/// 0. The ratio must be an integer within a relative tolerance of 1e-9.
pub fn downsample(signal: &SampledSignal, target_period: f64) -> Result<SampledSignal> {
    if !target_period.is_finite() || target_period <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "target period must be positive, got {target_period}"
        )));
    }
    let ratio = target_period / signal.period();
    let m = ratio.round();
    if m < 1.0 || (ratio - m).abs() > 1e-9 * m {
        return Err(Error::InvalidInput(format!(
            "target period {target_period} is not an integer multiple of the sampling period {}",
            signal.period()
        )));
    }
    let m = m as usize;
    let samples: Vec<f64> = signal.samples().iter().step_by(m).copied().collect();
    SampledSignal::new(signal.start_time(), target_period, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truth() -> FractionalModel {
        FractionalModel::new(0.8, 2.2, 0.5, 0.9, 1.0).unwrap()
    }

    /// Closed-form unit-step response of `1/(a1·s² + a2·s + a3)` (underdamped).
    pub(crate) fn second_order_step(a1: f64, a2: f64, a3: f64, t: f64) -> f64 {
        let wn = (a3 / a1).sqrt();
        let zeta = a2 / (2.0 * a1 * wn);
        let wd = wn * (1.0 - zeta * zeta).sqrt();
        let envelope = (-zeta * wn * t).exp();
        (1.0 / a3)
            * (1.0
                - envelope * ((wd * t).cos() + zeta / (1.0 - zeta * zeta).sqrt() * (wd * t).sin()))
    }

    #[test]
    fn integer_order_case_matches_closed_form() {
        let model = FractionalModel::new(0.8, 2.0, 0.5, 1.0, 1.0).unwrap();
        let h = 0.005;
        let resp = simulate(&model, &InputKind::Step, h, 10.0).unwrap();
        let mut max_err = 0.0f64;
        for (k, &c) in resp.samples().iter().enumerate() {
            let exact = second_order_step(0.8, 0.5, 1.0, k as f64 * h);
            max_err = max_err.max((c - exact).abs());
        }
        assert!(max_err <= 2e-2, "max error {max_err}");
    }

    #[test]
    fn step_size_convergence_is_monotone() {
        let model = FractionalModel::new(0.8, 2.0, 0.5, 1.0, 1.0).unwrap();
        let mut errors = Vec::new();
        for &h in &[0.02, 0.01, 0.005, 0.002, 0.001] {
            let resp = simulate(&model, &InputKind::Step, h, 10.0).unwrap();
            let mut max_err = 0.0f64;
            for (k, &c) in resp.samples().iter().enumerate() {
                let exact = second_order_step(0.8, 0.5, 1.0, k as f64 * h);
                max_err = max_err.max((c - exact).abs());
            }
            errors.push(max_err);
        }
        assert!(errors[0] <= 1e-1);
        for w in errors.windows(2) {
            assert!(w[1] < w[0], "errors not decreasing: {errors:?}");
        }
        assert!(*errors.last().unwrap() <= 1e-2, "{errors:?}");
    }

    #[test]
    fn settled_integer_order_response_reaches_dc_gain() {
        // At t = 10 the transient of 1/(0.8s²+0.5s+1) is still ~2% in
        // magnitude; the dc value 1/a3 is only reached once the envelope
        // e^(-0.3125·t) has decayed, so check at t = 20.
        let model = FractionalModel::new(0.8, 2.0, 0.5, 1.0, 1.0).unwrap();
        let resp = simulate(&model, &InputKind::Step, 0.001, 20.0).unwrap();
        let last = *resp.samples().last().unwrap();
        assert!((last - 1.0).abs() < 0.01, "final value {last}");
        // And the t = 10 sample agrees with the closed form, transient included.
        let at_10 = resp.samples()[10_000];
        let exact = second_order_step(0.8, 0.5, 1.0, 10.0);
        assert!((at_10 - exact).abs() <= 5e-3, "{at_10} vs {exact}");
    }

    #[test]
    fn response_satisfies_discrete_model_equation() {
        let resp = simulate(&truth(), &InputKind::Step, 0.05, 10.0).unwrap();
        let back = reconstruct_input(&truth(), &resp).unwrap();
        for (k, &u) in back.iter().enumerate() {
            assert!((u - 1.0).abs() <= 1e-9, "k {k}: {u}");
        }
    }

    #[test]
    fn ramp_and_parabola_inputs_are_consistent_too() {
        for input in [InputKind::Ramp, InputKind::Parabola] {
            let resp = simulate(&truth(), &input, 0.05, 5.0).unwrap();
            let back = reconstruct_input(&truth(), &resp).unwrap();
            for (k, &u) in back.iter().enumerate() {
                let t = k as f64 * 0.05;
                let expect = input.value_at(k, t);
                assert!(
                    (u - expect).abs() <= 1e-9,
                    "{input:?} k {k}: {u} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn homogeneity_in_the_coefficients() {
        let base = truth();
        let scaled = FractionalModel::new(
            base.a1 * 3.0,
            base.alpha,
            base.a2 * 3.0,
            base.beta,
            base.a3 * 3.0,
        )
        .unwrap();
        let r1 = simulate(&base, &InputKind::Step, 0.05, 10.0).unwrap();
        let r2 = simulate(&scaled, &InputKind::Step, 0.05, 10.0).unwrap();
        for k in 0..r1.len() {
            let lhs = r2.samples()[k] * 3.0;
            let rhs = r1.samples()[k];
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0), "k {k}");
        }
    }

    #[test]
    fn truncation_with_memory_beyond_horizon_is_bit_identical() {
        let full = simulate(&truth(), &InputKind::Step, 0.05, 10.0).unwrap();
        let truncated = simulate_truncated(&truth(), &InputKind::Step, 0.05, 10.0, 10.0).unwrap();
        assert_eq!(full.samples(), truncated.samples());
    }

    #[test]
    fn sampled_input_reproduces_builtin_step() {
        let n = 201;
        let samples = SampledSignal::new(0.0, 0.05, vec![1.0; n]).unwrap();
        let via_samples = simulate(&truth(), &InputKind::Sampled(samples), 0.05, 10.0).unwrap();
        let direct = simulate(&truth(), &InputKind::Step, 0.05, 10.0).unwrap();
        assert_eq!(via_samples.samples(), direct.samples());
    }

    #[test]
    fn rejects_degenerate_denominator_and_bad_inputs() {
        // All coefficients zero: denominator collapses.
        let degenerate = FractionalModel {
            a1: 0.0,
            alpha: 2.2,
            a2: 0.0,
            beta: 0.9,
            a3: 0.0,
        };
        assert!(matches!(
            simulate(&degenerate, &InputKind::Step, 0.05, 1.0),
            Err(Error::IllPosed(_))
        ));

        let model = truth();
        assert!(simulate(&model, &InputKind::Step, 0.0, 1.0).is_err());
        assert!(simulate(&model, &InputKind::Step, 0.05, 0.01).is_err());

        let wrong_period = SampledSignal::new(0.0, 0.1, vec![1.0; 100]).unwrap();
        assert!(simulate(&model, &InputKind::Sampled(wrong_period), 0.05, 1.0).is_err());
        let too_short = SampledSignal::new(0.0, 0.05, vec![1.0; 3]).unwrap();
        assert!(simulate(&model, &InputKind::Sampled(too_short), 0.05, 1.0).is_err());
    }

    #[test]
    fn downsample_keeps_every_mth_sample() {
        let fine = simulate(&truth(), &InputKind::Step, 0.001, 10.0).unwrap();
        assert_eq!(fine.len(), 10_001);
        let coarse = downsample(&fine, 0.05).unwrap();
        assert_eq!(coarse.len(), 201);
        assert_eq!(coarse.samples()[0], fine.samples()[0]);
        assert_eq!(coarse.samples()[1], fine.samples()[50]);
        assert_eq!(coarse.samples()[200], fine.samples()[10_000]);
        assert!((coarse.time_at(200) - 10.0).abs() < 1e-9);

        // Identity when the periods already match.
        let same = downsample(&coarse, 0.05).unwrap();
        assert_eq!(same.samples(), coarse.samples());

        // Non-integer ratios are rejected.
        assert!(downsample(&fine, 0.0015).is_err());
        assert!(downsample(&coarse, 0.001).is_err());
    }
}
