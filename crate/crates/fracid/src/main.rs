use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracid::cli::{
    cmd_corrupt, cmd_identify, cmd_refine, cmd_simulate, cmd_verify, CorruptCmd, IdentifyCmd,
    RefineCmd, SimulateCmd, VerifyCmd,
};

/// Fractional-order process identification from step-response data.
#[derive(Parser)]
#[command(name = "fracid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// Suppress progress output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the response of a fractional model and write it as CSV.
    Simulate {
        #[arg(long)]
        a1: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        a2: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        a3: f64,
        /// Input signal: step, ramp, or parabola.
        #[arg(long, default_value = "step")]
        input: String,
        /// Simulation step in seconds.
        #[arg(long)]
        step: f64,
        /// Simulation horizon in seconds.
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        /// Output sampling rate in Hz (downsamples the response).
        #[arg(long)]
        rate: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Add uniform measurement noise to a CSV signal.
    Corrupt {
        /// Input signal CSV.
        #[arg(long)]
        data: PathBuf,
        /// Noise amplitude a: each sample gets a uniform draw from [-a, a].
        #[arg(long)]
        amplitude: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate model parameters from observed data by swarm optimization.
    Identify {
        /// Observed step-response CSV.
        #[arg(long)]
        data: PathBuf,
        /// Scenario JSON (free/fixed parameters, ranges, grid).
        #[arg(long)]
        scenario: PathBuf,
        /// Number of independent runs.
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt each run's observations with this noise amplitude.
        #[arg(long)]
        noise_amplitude: Option<f64>,
        /// Master seed for the noise streams; derived from --seed when absent.
        #[arg(long)]
        noise_seed: Option<u64>,
        /// Particles per swarm (default: 40, or 50 for five free parameters).
        #[arg(long)]
        particles: Option<usize>,
        /// Iterations per run (default: 150, or 200 for five free parameters).
        #[arg(long)]
        iterations: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Reconstruct (a1, a2, a3) from data given candidate orders and rank the
    /// resulting models.
    Verify {
        /// Recorded step-response CSV (typically finely sampled).
        #[arg(long)]
        data: PathBuf,
        /// Candidate alpha; pair with --beta.
        #[arg(long)]
        alpha: Option<f64>,
        /// Candidate beta; pair with --alpha.
        #[arg(long)]
        beta: Option<f64>,
        /// JSON list of candidate order pairs, alternative to --alpha/--beta.
        #[arg(long)]
        candidates: Option<PathBuf>,
        /// Memory length L in seconds.
        #[arg(long, default_value_t = 10.0)]
        memory: f64,
        /// Expected sampling period T; validated against the data.
        #[arg(long)]
        period: Option<f64>,
        /// Evaluation instant; defaults to the memory length.
        #[arg(long)]
        eval_time: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Concentrated search: recursively subdivide one parameter's range.
    Refine {
        /// Observed step-response CSV.
        #[arg(long)]
        data: PathBuf,
        /// Scenario JSON; the target must be among its free parameters.
        #[arg(long)]
        scenario: PathBuf,
        /// Parameter to refine (a1, alpha, a2, beta, or a3).
        #[arg(long)]
        target: String,
        /// Range to subdivide: low high.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<f64>,
        /// Subintervals per level.
        #[arg(long, default_value_t = 5)]
        branching: usize,
        /// Stop once the chosen subinterval is at most this wide.
        #[arg(long, default_value_t = 0.002)]
        tolerance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Particles per inner swarm (default for the reduced problem).
        #[arg(long)]
        particles: Option<usize>,
        /// Iterations per inner swarm (default for the reduced problem).
        #[arg(long)]
        iterations: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> fracid::Result<()> {
    match cli.command {
        Command::Simulate {
            a1,
            alpha,
            a2,
            beta,
            a3,
            input,
            step,
            horizon,
            rate,
            common,
        } => cmd_simulate(&SimulateCmd {
            a1,
            alpha,
            a2,
            beta,
            a3,
            input,
            step,
            horizon,
            rate,
            out: common.out,
            quiet: common.quiet,
        }),
        Command::Corrupt {
            data,
            amplitude,
            seed,
            common,
        } => cmd_corrupt(&CorruptCmd {
            data,
            amplitude,
            seed,
            out: common.out,
            quiet: common.quiet,
        }),
        Command::Identify {
            data,
            scenario,
            runs,
            seed,
            noise_amplitude,
            noise_seed,
            particles,
            iterations,
            common,
        } => cmd_identify(&IdentifyCmd {
            data,
            scenario,
            runs,
            seed,
            noise_amplitude,
            noise_seed,
            particles,
            iterations,
            out: common.out,
            quiet: common.quiet,
        })
        .map(|_| ()),
        Command::Verify {
            data,
            alpha,
            beta,
            candidates,
            memory,
            period,
            eval_time,
            common,
        } => cmd_verify(&VerifyCmd {
            data,
            alpha,
            beta,
            candidates,
            memory,
            period,
            eval_time,
            out: common.out,
            quiet: common.quiet,
        })
        .map(|_| ()),
        Command::Refine {
            data,
            scenario,
            target,
            range,
            branching,
            tolerance,
            seed,
            particles,
            iterations,
            common,
        } => cmd_refine(&RefineCmd {
            data,
            scenario,
            target,
            range: [range[0], range[1]],
            branching,
            tolerance,
            seed,
            particles,
            iterations,
            out: common.out,
            quiet: common.quiet,
        })
        .map(|_| ()),
    }
}

fn main() -> ExitCode {
    // Argument errors exit with code 1; clap's default of 2 is reserved for
    // numerical failures here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS // --help / --version
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
