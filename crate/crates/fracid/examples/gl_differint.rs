//! Fractional differintegration of sampled signals.
//!
//! Computes Grünwald–Letnikov weights for a few orders, then applies a
//! half-derivative to a unit ramp and compares against the analytic result
//! `D^0.5 t = 2·sqrt(t/π)`.

use fracid::{gl_coefficients, gl_differint, SampledSignal};

fn main() -> fracid::Result<()> {
    println!("GL weights b_0..b_5 by order:");
    for order in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.2] {
        let coeffs = gl_coefficients(order, 6);
        let row: Vec<String> = coeffs.values().iter().map(|b| format!("{b:+.6}")).collect();
        println!("  q = {order:+.1}: [{}]", row.join(", "));
    }

    let h = 0.001;
    let n = 2001;
    let ramp = SampledSignal::new(0.0, h, (0..n).map(|k| k as f64 * h).collect())?;

    println!("\nhalf-derivative of the unit ramp vs analytic 2·sqrt(t/π):");
    println!("{:>6} {:>12} {:>12} {:>10}", "t", "GL", "analytic", "error");
    let half = gl_differint(&ramp, 0.5, f64::INFINITY)?;
    for &t in &[0.25, 0.5, 1.0, 1.5, 2.0] {
        let k = (t / h).round() as usize;
        let gl = half.samples()[k];
        let analytic = 2.0 * (t / std::f64::consts::PI).sqrt();
        println!(
            "{t:>6.2} {gl:>12.6} {analytic:>12.6} {:>10.2e}",
            (gl - analytic).abs()
        );
    }

    println!("\nintegral (order -1) of the ramp vs analytic t²/2:");
    let integral = gl_differint(&ramp, -1.0, f64::INFINITY)?;
    for &t in &[0.5, 1.0, 2.0] {
        let k = (t / h).round() as usize;
        println!(
            "  t = {t:.1}: GL {:.6}, analytic {:.6}",
            integral.samples()[k],
            t * t / 2.0
        );
    }

    println!("\nderivative then integral returns the ramp (near-inverse):");
    let back = gl_differint(
        &gl_differint(&ramp, -1.0, f64::INFINITY)?,
        1.0,
        f64::INFINITY,
    )?;
    let max_dev = ramp
        .samples()
        .iter()
        .zip(back.samples())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("  max |round-trip - original| = {max_dev:.2e}");
    Ok(())
}
