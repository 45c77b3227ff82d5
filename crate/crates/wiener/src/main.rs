use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wiener::record::{self, RunRecord};
use wiener::scenario::{self, RateFit, ScenarioConfig};
use wiener::selftest::run_selftest;
use wiener::{Error, Result};

#[derive(Parser)]
#[command(name = "wiener", about = "Atomic-part recovery from Fourier averages", version)]
struct Cli {
    /// Override the scenario seed (only affects randomized sub-procedures)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a method over the configured indices and points, write a CSV
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid-scan the torus for atoms at a single index, write hits as CSV
    Scan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        index: f64,
        #[arg(long)]
        grid: f64,
        #[arg(long)]
        threshold: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the internal consistency battery
    Selftest,
}

fn load_config(path: &PathBuf, seed: Option<u64>) -> Result<(ScenarioConfig, PathBuf)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {path:?}: {e}")))?;
    let mut config: ScenarioConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("config parse error: {e}")))?;
    if let Some(s) = seed {
        config.seed = Some(s);
    }
    let base = path
        .parent()
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((config, base))
}

fn cmd_run(config_path: &PathBuf, out: &PathBuf, seed: Option<u64>) -> Result<()> {
    let (config, base) = load_config(config_path, seed)?;
    let records = scenario::run_scenario(&config, &base)?;
    let d = config.group.dim();
    let mut file = std::fs::File::create(out)?;
    record::write_csv(&mut file, d, &records)?;
    println!("wrote {} records to {}", records.len(), out.display());
    for point in &config.points {
        let subset: Vec<RunRecord> = records
            .iter()
            .filter(|r| &r.point == point)
            .cloned()
            .collect();
        match scenario::rate_fit(&subset) {
            Ok(RateFit::Exact) => println!("point {point:?}: exact recovery (all errors zero)"),
            Ok(RateFit::PowerLaw { slope, residual }) => println!(
                "point {point:?}: error ~ index^{slope:.3} (log-log residual {residual:.3})"
            ),
            Err(_) => println!("point {point:?}: too few nonzero errors to fit a rate"),
        }
    }
    Ok(())
}

fn cmd_scan(
    config_path: &PathBuf,
    index: f64,
    grid: f64,
    threshold: f64,
    out: &PathBuf,
    seed: Option<u64>,
) -> Result<()> {
    let (config, base) = load_config(config_path, seed)?;
    let source = scenario::build_source(&config, &base)?;
    let hits = scenario::atom_scan(&source, &config.method, index, grid, threshold)?;
    let d = config.group.dim();
    let records: Vec<RunRecord> = hits
        .iter()
        .map(|h| {
            let truth = match &source {
                scenario::MeasureSource::Model(m) => {
                    let x = wiener::GroupPoint::new(&config.group, h.location.clone())?;
                    m.true_atom(&x)
                }
                scenario::MeasureSource::Table { .. } => num_complex::Complex64::new(0.0, 0.0),
            };
            Ok(RunRecord {
                method: config.method.label().to_string(),
                param: config.method.param(),
                index,
                point: h.location.clone(),
                value: h.weight,
                truth,
                abs_error: (h.weight - truth).norm(),
            })
        })
        .collect::<Result<_>>()?;
    let mut file = std::fs::File::create(out)?;
    record::write_csv(&mut file, d, &records)?;
    println!("detected {} atom(s); wrote {}", hits.len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, out } => cmd_run(config, out, cli.seed),
        Command::Scan {
            config,
            index,
            grid,
            threshold,
            out,
        } => cmd_scan(config, *index, *grid, *threshold, out, cli.seed),
        Command::Selftest => run_selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
