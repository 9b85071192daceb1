use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pldg::config::{ExperimentConfig, GeneratorKind, VariantChoice};
use pldg::experiment::{evaluate, run_experiment, ExperimentOptions};
use pldg::record::{self, InstanceRecord, PointsFile};
use pldg::{generate, svg, PldgError, Rayon};
use pldg_core::protocol::ProtocolOptions;
use pldg_core::sim::run_with;
use pldg_core::Variant;

#[derive(Parser)]
#[command(
    name = "pldg",
    version,
    about = "Plane localized Delaunay graph simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write generated instances as JSON.
    Generate {
        #[command(flatten)]
        config: ConfigArgs,
        /// Seed of the first trial.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for one file per trial; JSON lines on stdout when absent.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Generate, run, and verify trials, writing one JSON record per trial and summary.csv.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Seed of the first trial.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "results")]
        out_dir: PathBuf,
        /// Also write an SVG per trial and variant.
        #[arg(long)]
        svg: bool,
        /// Run trials one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// Re-run and check the points of instance or trial files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Variants to run; defaults to the file's configuration.
        #[arg(long, value_enum)]
        variant: Option<VariantChoice>,
    },
    /// Draw the output graph for the points of an instance or trial file.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "pldg-prime")]
        variant: VariantChoice,
    },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Side of the square region, in radio ranges.
    #[arg(long, default_value_t = 3.0)]
    side: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    generator: GeneratorKind,
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantChoice,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Degeneracy clearance, in multiples of the metric tolerance.
    #[arg(long, default_value_t = 10.0)]
    clearance: f64,
}

impl ConfigArgs {
    fn with_seed(&self, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            seed,
            n: self.n,
            side: self.side,
            generator: self.generator,
            variant: self.variant,
            trials: self.trials,
            clearance: self.clearance,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when some check failed.
fn dispatch(command: Command) -> Result<bool, PldgError> {
    match command {
        Command::Generate {
            config,
            seed,
            out_dir,
        } => {
            let config = config.with_seed(seed);
            config.validate()?;
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir).map_err(|source| PldgError::Io {
                    path: dir.clone(),
                    source,
                })?;
            }
            for t in 0..config.trials {
                let ps = generate(&config, t)?;
                let inst = InstanceRecord {
                    config: config.clone(),
                    trial: t,
                    seed: config.trial_seed(t),
                    points: ps.points.iter().copied().map(record::xy).collect(),
                };
                match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("instance_{t:05}.json"));
                        record::write_atomic(&path, record::to_json(&inst).as_bytes())?;
                    }
                    None => println!("{}", serde_json::to_string(&inst).expect("serializable")),
                }
            }
            Ok(true)
        }
        Command::Run {
            config,
            seed,
            out_dir,
            svg,
            sequential,
        } => {
            let config = config.with_seed(seed);
            let opts = ExperimentOptions {
                out_dir,
                svg,
                parallel: !sequential,
            };
            let summary = run_experiment(&config, &opts)?;
            println!(
                "{} trials, {} failed; results in {}",
                summary.rows.len(),
                summary.failed,
                opts.out_dir.display()
            );
            Ok(summary.failed == 0)
        }
        Command::Verify { files, variant } => {
            let mut ok = true;
            for path in &files {
                let good = verify_file(path, variant)?;
                println!("{}: {}", path.display(), if good { "pass" } else { "FAIL" });
                ok &= good;
            }
            Ok(ok)
        }
        Command::Render { file, out, variant } => {
            let input: PointsFile = record::read_json(&file)?;
            let ps = input.point_set()?;
            let variant = match variant {
                VariantChoice::Pldg => Variant::Pldg,
                _ => Variant::PldgPrime,
            };
            let report = run_with(&ps, variant, &Rayon, ProtocolOptions::default())?;
            record::write_atomic(&out, svg::render(&ps, &report).as_bytes())?;
            Ok(true)
        }
    }
}

fn verify_file(path: &Path, variant: Option<VariantChoice>) -> Result<bool, PldgError> {
    let input: PointsFile = record::read_json(path)?;
    let ps = input.point_set()?;
    let mut config = input.config.clone().unwrap_or_default();
    config.n = ps.len();
    if let Some(v) = variant {
        config.variant = v;
    }
    let outcome = evaluate(&config, 0, &ps, &Rayon)?;
    let mut ok = outcome.record.verdict.passed;
    for (name, verdict) in &outcome.record.verdict.variants {
        println!(
            "  {name}: plane={} consistent={} udel={} stretch={} max_messages={}",
            verdict.plane,
            verdict.consistent,
            verdict.supergraph_of_udel,
            verdict
                .stretch
                .map_or("inf".to_owned(), |s| format!("{s:.6}")),
            verdict.max_messages
        );
    }
    if let Some(recorded) = &input.pldg_edges {
        for (name, edges) in recorded {
            if let Some(now) = outcome.record.pldg_edges.get(name) {
                if now != edges {
                    println!("  {name}: recorded edges differ from a fresh run");
                    ok = false;
                }
            }
        }
    }
    Ok(ok)
}
