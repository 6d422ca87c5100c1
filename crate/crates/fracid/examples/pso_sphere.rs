//! Swarm optimization on a simple benchmark.
//!
//! Minimizes the sphere function over [-1, 1]² with the default learning
//! rates and the linearly decreasing inertia schedule, and demonstrates seed
//! determinism.

use fracid::{optimize, SwarmConfig};

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn main() -> fracid::Result<()> {
    let config = SwarmConfig::new(vec![[-1.0, 1.0]; 2], vec![[-0.5, 0.5]; 2], 40, 150, 42);
    let out = optimize(sphere, &config)?;

    println!("global best fitness after each 25 iterations:");
    for (i, f) in out.history.iter().enumerate() {
        if (i + 1) % 25 == 0 {
            println!("  iteration {:>3}: {f:.3e}", i + 1);
        }
    }
    println!(
        "best position ({:+.2e}, {:+.2e}) with fitness {:.3e}",
        out.best_position[0], out.best_position[1], out.best_fitness
    );

    let again = optimize(sphere, &config)?;
    println!(
        "same seed reproduces the result bit for bit: {}",
        again == out
    );

    let other = optimize(sphere, &SwarmConfig { seed: 43, ..config })?;
    println!(
        "a different seed takes a different path (fitness {:.3e})",
        other.best_fitness
    );
    Ok(())
}
