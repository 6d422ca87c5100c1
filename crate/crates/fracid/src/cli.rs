//! File-based front end: the implementations behind the `fracid` binary's
//! subcommands. Signals travel as `t,value` CSV; scenarios, reports, and
//! traces as JSON. Every command materializes its full configuration and the
//! digests of the files it touched into a [`RunManifest`] — embedded in JSON
//! reports, written as a `<out>.manifest.json` sibling for CSV outputs — and
//! produces byte-identical outputs for identical flags, seeds, and inputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identify::{identify, NoiseSpec, RunReport};
use crate::io::{read_csv, signal_to_csv};
use crate::manifest::{FileDigest, RunManifest};
use crate::model::{FractionalModel, InputKind};
use crate::refine::{concentrated_search, Refinement};
use crate::scenario::{ParamName, Scenario};
use crate::sim::{downsample, simulate};
use crate::verify::{rank_models, reconstruct_coefficients, Reconstruction};

fn read_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::ReadFile {
        path: path.to_path_buf(),
        source,
    })?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(|source| Error::JsonFormat {
        path: path.to_path_buf(),
        source,
    })?;
    scenario.validate()?;
    Ok(scenario)
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::WriteFile {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report serialization cannot fail");
    bytes.push(b'\n');
    write_bytes(path, &bytes)?;
    Ok(bytes)
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn config_json<T: Serialize>(config: &T) -> serde_json::Value {
    serde_json::to_value(config).expect("config serialization cannot fail")
}

/// Default swarm sizing by number of free parameters: 40 particles and 150
/// iterations for up to four, 50 and 200 for five.
pub fn default_swarm_size(free_parameters: usize) -> (usize, usize) {
    if free_parameters >= 5 {
        (50, 200)
    } else {
        (40, 150)
    }
}

// ---------------------------------------------------------------------------
// simulate

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateCmd {
    pub a1: f64,
    pub alpha: f64,
    pub a2: f64,
    pub beta: f64,
    pub a3: f64,
    /// One of `step`, `ramp`, `parabola`.
    pub input: String,
    /// Simulation step, seconds.
    pub step: f64,
    pub horizon: f64,
    /// Output sampling rate in Hz; when set, the response is downsampled to
    /// `1/rate`, which must be an integer multiple of `step`.
    pub rate: Option<f64>,
    pub out: PathBuf,
    pub quiet: bool,
}

fn parse_input_kind(name: &str) -> Result<InputKind> {
    match name {
        "step" => Ok(InputKind::Step),
        "ramp" => Ok(InputKind::Ramp),
        "parabola" => Ok(InputKind::Parabola),
        other => Err(Error::InvalidInput(format!(
            "unknown input kind {other:?} (expected step, ramp, or parabola)"
        ))),
    }
}

/// Simulates a model's response and writes it as CSV plus a sibling manifest.
pub fn cmd_simulate(cmd: &SimulateCmd) -> Result<()> {
    let model = FractionalModel::new(cmd.a1, cmd.alpha, cmd.a2, cmd.beta, cmd.a3)?;
    let input = parse_input_kind(&cmd.input)?;
    let target_period = match cmd.rate {
        Some(rate) => {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "rate must be positive, got {rate}"
                )));
            }
            Some(1.0 / rate)
        }
        None => None,
    };

    let mut response = simulate(&model, &input, cmd.step, cmd.horizon)?;
    if let Some(period) = target_period {
        response = downsample(&response, period)?;
    }

    let csv = signal_to_csv(&response);
    write_bytes(&cmd.out, csv.as_bytes())?;

    let manifest = {
        let mut m = RunManifest::new("simulate", config_json(cmd));
        m.outputs
            .push(FileDigest::of_bytes(&cmd.out, csv.as_bytes()));
        m
    };
    write_json(&manifest_path(&cmd.out), &manifest)?;

    if !cmd.quiet {
        println!(
            "simulated {model} under {} input: {} samples at period {} -> {}",
            cmd.input,
            response.len(),
            response.period(),
            cmd.out.display()
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// corrupt

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorruptCmd {
    pub data: PathBuf,
    pub amplitude: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub quiet: bool,
}

/// Adds uniform measurement noise to a CSV signal.
pub fn cmd_corrupt(cmd: &CorruptCmd) -> Result<()> {
    let signal = read_csv(&cmd.data)?;
    let noisy = crate::identify::corrupt(&signal, cmd.amplitude, cmd.seed)?;
    let csv = signal_to_csv(&noisy);
    write_bytes(&cmd.out, csv.as_bytes())?;

    let manifest = {
        let mut m = RunManifest::new("corrupt", config_json(cmd)).with_seed("seed", cmd.seed);
        m.inputs.push(FileDigest::of_file(&cmd.data)?);
        m.outputs
            .push(FileDigest::of_bytes(&cmd.out, csv.as_bytes()));
        m
    };
    write_json(&manifest_path(&cmd.out), &manifest)?;

    if !cmd.quiet {
        println!(
            "corrupted {} samples with uniform noise of amplitude {} (seed {}) -> {}",
            noisy.len(),
            cmd.amplitude,
            cmd.seed,
            cmd.out.display()
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// identify

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentifyCmd {
    pub data: PathBuf,
    pub scenario: PathBuf,
    pub runs: usize,
    pub seed: u64,
    pub noise_amplitude: Option<f64>,
    pub noise_seed: Option<u64>,
    pub particles: Option<usize>,
    pub iterations: Option<usize>,
    pub out: PathBuf,
    pub quiet: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentifyReportFile {
    pub manifest: RunManifest,
    pub report: RunReport,
}

/// Runs a multi-run identification experiment and writes the JSON report.
pub fn cmd_identify(cmd: &IdentifyCmd) -> Result<IdentifyReportFile> {
    let observations = read_csv(&cmd.data)?;
    let scenario = read_scenario(&cmd.scenario)?;

    let (default_particles, default_iterations) = default_swarm_size(scenario.free.len());
    let particles = cmd.particles.unwrap_or(default_particles);
    let iterations = cmd.iterations.unwrap_or(default_iterations);
    let swarm = scenario.swarm_config(particles, iterations, cmd.seed);

    let noise = cmd.noise_amplitude.map(|amplitude| NoiseSpec {
        amplitude,
        seed: cmd
            .noise_seed
            .unwrap_or_else(|| crate::seed::derive_seed(cmd.seed, "cli.noise", 0)),
    });

    let report = identify(&observations, &scenario, &swarm, cmd.runs, noise)?;

    let mut resolved = config_json(cmd);
    resolved["particles"] = particles.into();
    resolved["iterations"] = iterations.into();
    let mut manifest = RunManifest::new("identify", resolved).with_seed("seed", cmd.seed);
    if let Some(n) = noise {
        manifest = manifest.with_seed("noise_seed", n.seed);
    }
    manifest.inputs.push(FileDigest::of_file(&cmd.data)?);
    manifest.inputs.push(FileDigest::of_file(&cmd.scenario)?);

    let file = IdentifyReportFile { manifest, report };
    write_json(&cmd.out, &file)?;

    if !cmd.quiet {
        for run in &file.report.runs {
            match (&run.model, run.fitness) {
                (Some(m), Some(f)) => println!(
                    "run {}: F = {f:.6e} at (a1={:.4}, alpha={:.4}, a2={:.4}, beta={:.4}, a3={:.4})",
                    run.run, m.a1, m.alpha, m.a2, m.beta, m.a3
                ),
                _ => println!(
                    "run {}: FAILED ({})",
                    run.run,
                    run.error.as_deref().unwrap_or("unknown")
                ),
            }
        }
        if let (Some(best), Some(f)) = (file.report.best_run, file.report.best_fitness) {
            println!("best run {best} with F = {f:.6e} -> {}", cmd.out.display());
        }
    }
    Ok(file)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyCmd {
    pub data: PathBuf,
    /// Single candidate order pair; alternative to `candidates`.
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    /// JSON file with `[{"alpha": .., "beta": ..}, ...]`.
    pub candidates: Option<PathBuf>,
    /// Memory length L, seconds.
    pub memory: f64,
    /// Expected sampling period T of the data; checked against the CSV.
    pub period: Option<f64>,
    /// Instant the equations are evaluated at; defaults to `memory`.
    pub eval_time: Option<f64>,
    pub out: PathBuf,
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderPair {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstruction: Option<Reconstruction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<FractionalModel>,
    /// Identification fitness of the reconstructed model against the data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReportFile {
    pub manifest: RunManifest,
    pub memory: f64,
    pub eval_time: f64,
    pub entries: Vec<VerifyEntry>,
    /// Entry indices ordered best (least fitness) to worst; failed entries
    /// are not ranked.
    pub ranking: Vec<usize>,
}

fn verify_order_pairs(cmd: &VerifyCmd) -> Result<Vec<OrderPair>> {
    match (&cmd.candidates, cmd.alpha, cmd.beta) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::ReadFile {
                path: path.clone(),
                source,
            })?;
            let pairs: Vec<OrderPair> =
                serde_json::from_str(&text).map_err(|source| Error::JsonFormat {
                    path: path.clone(),
                    source,
                })?;
            if pairs.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "{} holds no candidate order pairs",
                    path.display()
                )));
            }
            Ok(pairs)
        }
        (None, Some(alpha), Some(beta)) => Ok(vec![OrderPair { alpha, beta }]),
        _ => Err(Error::InvalidInput(
            "provide either --alpha and --beta or --candidates".into(),
        )),
    }
}

/// Reconstructs `(a1, a2, a3)` for each candidate order pair and ranks the
/// resulting models by identification fitness.
pub fn cmd_verify(cmd: &VerifyCmd) -> Result<VerifyReportFile> {
    let data = read_csv(&cmd.data)?;
    if let Some(expected) = cmd.period {
        let rel = (data.period() - expected).abs() / expected;
        if rel > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "data is sampled at period {} but --period expects {expected}",
                data.period()
            )));
        }
    }
    let pairs = verify_order_pairs(cmd)?;
    let eval_time = cmd.eval_time.unwrap_or(cmd.memory);
    let single = pairs.len() == 1;

    let mut entries = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let entry =
            match reconstruct_coefficients(&data, pair.alpha, pair.beta, eval_time, cmd.memory) {
                Ok(rec) => {
                    let model = FractionalModel {
                        a1: rec.a1,
                        alpha: pair.alpha,
                        a2: rec.a2,
                        beta: pair.beta,
                        a3: rec.a3,
                    };
                    VerifyEntry {
                        alpha: pair.alpha,
                        beta: pair.beta,
                        reconstruction: Some(rec),
                        model: Some(model),
                        fitness: None,
                        error: None,
                    }
                }
                Err(err) if single => return Err(err),
                Err(err) => VerifyEntry {
                    alpha: pair.alpha,
                    beta: pair.beta,
                    reconstruction: None,
                    model: None,
                    fitness: None,
                    error: Some(err.to_string()),
                },
            };
        entries.push(entry);
    }

    // Rank the successfully reconstructed models by identification fitness.
    let reconstructed: Vec<(usize, FractionalModel)> = entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.model.map(|m| (i, m)))
        .collect();
    let mut ranking = Vec::new();
    if !reconstructed.is_empty() {
        let models: Vec<FractionalModel> = reconstructed.iter().map(|(_, m)| *m).collect();
        for ranked in rank_models(&models, &data)? {
            let entry_index = reconstructed[ranked.candidate].0;
            match ranked.fitness {
                Some(f) => {
                    entries[entry_index].fitness = Some(f);
                    ranking.push(entry_index);
                }
                None => entries[entry_index].error = ranked.error,
            }
        }
    }

    let mut manifest = RunManifest::new("verify", config_json(cmd));
    manifest.inputs.push(FileDigest::of_file(&cmd.data)?);
    if let Some(path) = &cmd.candidates {
        manifest.inputs.push(FileDigest::of_file(path)?);
    }

    let file = VerifyReportFile {
        manifest,
        memory: cmd.memory,
        eval_time,
        entries,
        ranking,
    };
    write_json(&cmd.out, &file)?;

    if !cmd.quiet {
        for entry in &file.entries {
            match (&entry.reconstruction, entry.fitness) {
                (Some(rec), Some(f)) => println!(
                    "alpha={:.4} beta={:.4}: a1={:.4} a2={:.4} a3={:.4} (cond {:.2e}), F = {f:.4e}",
                    entry.alpha, entry.beta, rec.a1, rec.a2, rec.a3, rec.condition_estimate
                ),
                _ => println!(
                    "alpha={:.4} beta={:.4}: FAILED ({})",
                    entry.alpha,
                    entry.beta,
                    entry.error.as_deref().unwrap_or("unknown")
                ),
            }
        }
        println!(
            "ranking (best first): {:?} -> {}",
            file.ranking,
            cmd.out.display()
        );
    }
    Ok(file)
}

// ---------------------------------------------------------------------------
// refine

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefineCmd {
    pub data: PathBuf,
    pub scenario: PathBuf,
    /// Name of the parameter to refine; must be free in the scenario.
    pub target: String,
    pub range: [f64; 2],
    pub branching: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub particles: Option<usize>,
    pub iterations: Option<usize>,
    pub out: PathBuf,
    pub quiet: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefineReportFile {
    pub manifest: RunManifest,
    pub refinement: Refinement,
}

/// Runs the concentrated search and writes the JSON trace.
pub fn cmd_refine(cmd: &RefineCmd) -> Result<RefineReportFile> {
    let observations = read_csv(&cmd.data)?;
    let scenario = read_scenario(&cmd.scenario)?;
    let target: ParamName = cmd.target.parse()?;

    // Inner problems have one dimension fewer; default to the reduced
    // problem's swarm sizing.
    let (default_particles, default_iterations) =
        default_swarm_size(scenario.free.len().saturating_sub(1));
    let particles = cmd.particles.unwrap_or(default_particles);
    let iterations = cmd.iterations.unwrap_or(default_iterations);
    let midpoint = (cmd.range[0] + cmd.range[1]) / 2.0;
    let swarm = scenario
        .without(target, midpoint)?
        .swarm_config(particles, iterations, cmd.seed);

    let refinement = concentrated_search(
        &observations,
        &scenario,
        target,
        cmd.range,
        cmd.branching,
        cmd.tolerance,
        &swarm,
        cmd.seed,
    )?;

    let mut resolved = config_json(cmd);
    resolved["particles"] = particles.into();
    resolved["iterations"] = iterations.into();
    let mut manifest = RunManifest::new("refine", resolved).with_seed("seed", cmd.seed);
    manifest.inputs.push(FileDigest::of_file(&cmd.data)?);
    manifest.inputs.push(FileDigest::of_file(&cmd.scenario)?);

    let file = RefineReportFile {
        manifest,
        refinement,
    };
    write_json(&cmd.out, &file)?;

    if !cmd.quiet {
        for (i, level) in file.refinement.levels.iter().enumerate() {
            println!("level {i} over [{}, {}]:", level.parent[0], level.parent[1]);
            for (j, cell) in level.cells.iter().enumerate() {
                let marker = if j == level.chosen { " <- chosen" } else { "" };
                match cell.fitness {
                    Some(f) => println!(
                        "  [{:.4}, {:.4}] nominal {:.4}: F = {f:.4e}{marker}",
                        cell.interval[0], cell.interval[1], cell.nominal
                    ),
                    None => println!(
                        "  [{:.4}, {:.4}] nominal {:.4}: FAILED ({})",
                        cell.interval[0],
                        cell.interval[1],
                        cell.nominal,
                        cell.error.as_deref().unwrap_or("unknown")
                    ),
                }
            }
        }
        let m = &file.refinement.model;
        println!(
            "refined {target} = {:.4}; model (a1={:.4}, alpha={:.4}, a2={:.4}, beta={:.4}, a3={:.4}), F = {:.4e} -> {}",
            target.value_in(m),
            m.a1,
            m.alpha,
            m.a2,
            m.beta,
            m.a3,
            file.refinement.fitness,
            cmd.out.display()
        );
    }
    Ok(file)
}
