//! Five-parameter identification from noiseless observations.
//!
//! All of (a1, alpha, a2, beta, a3) vary. The problem is harder than the
//! four-parameter case — runs scatter more — so the swarm is larger (50
//! particles, 200 iterations) and the best of several runs is taken.

use fracid::{five_parameter_scenario, identify, simulate, FractionalModel, InputKind};

fn main() -> fracid::Result<()> {
    let truth = FractionalModel::new(0.8, 2.2, 0.5, 0.9, 1.0)?;
    let observations = simulate(&truth, &InputKind::Step, 0.05, 10.0)?;

    let scenario = five_parameter_scenario(Some(truth));
    let swarm = scenario.swarm_config(50, 200, 42);
    let report = identify(&observations, &scenario, &swarm, 5, None)?;

    println!("five runs, 50 particles, 200 iterations, noiseless:");
    println!(
        "{:>4} {:>9} {:>9} {:>9} {:>9} {:>9} {:>12}",
        "run", "a1", "alpha", "a2", "beta", "a3", "fitness"
    );
    for run in &report.runs {
        let m = run.model.unwrap();
        println!(
            "{:>4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>12.4e}",
            run.run,
            m.a1,
            m.alpha,
            m.a2,
            m.beta,
            m.a3,
            run.fitness.unwrap()
        );
    }

    println!("\nper-parameter statistics over the runs:");
    println!(
        "{:>6} {:>10} {:>12} {:>10}",
        "param", "mean", "std dev", "% error"
    );
    for s in &report.stats {
        println!(
            "{:>6} {:>10.4} {:>12.4e} {:>10.4}",
            s.name.label(),
            s.mean,
            s.std_dev,
            s.percent_error.unwrap_or(f64::NAN)
        );
    }

    let best = report.best_model.unwrap();
    println!(
        "\nbest run {}: (a1={:.4}, alpha={:.4}, a2={:.4}, beta={:.4}, a3={:.4}), F = {:.4e}",
        report.best_run.unwrap(),
        best.a1,
        best.alpha,
        best.a2,
        best.beta,
        best.a3,
        report.best_fitness.unwrap()
    );
    Ok(())
}
