use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hexsnow::error::{ConfigError, FormatError, OneDimError};
use hexsnow::io::config::{parse_kv, RunConfig};
use hexsnow::io::{emit_analysis, emit_run, pgm, tables, trace};
use hexsnow::onedim::{compare, LineParams};
use hexsnow::presets::{line_preset, PRESETS};
use hexsnow::sweep::{run_sweep, SweepError};
use hexsnow::{Exec, Simulation};

#[derive(Parser)]
#[command(name = "hexsnow", version, about = "Hexagonal snow crystal growth simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a crystal and write its event tables, trace, state and image.
    Simulate(RunArgs),
    /// Run the line model and print the latency comparison table.
    #[command(name = "simulate-1d")]
    Simulate1d(LineArgs),
    /// Recompute the analysis tables from a saved trace.
    Analyze(AnalyzeArgs),
    /// Render a saved state as a PGM image.
    Render(RenderArgs),
    /// Run a grid of parameter combinations.
    Sweep(SweepArgs),
    /// List the named parameter sets.
    Presets,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long)]
    stop_margin: Option<u32>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    render_px: Option<u32>,
    /// Any config key, e.g. `--set emit.image=false`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Step on a single thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_delimiter = ',')]
    sweep_alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    sweep_beta: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    sweep_gamma: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    sweep_epsilon: Vec<f64>,
}

#[derive(Args)]
struct LineArgs {
    /// Only `fig4` exists.
    #[arg(long)]
    preset: Option<String>,
    /// Index of the edge cell.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    trace: PathBuf,
    #[arg(long, default_value = "analysis")]
    out_dir: PathBuf,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct RenderArgs {
    state: PathBuf,
    #[arg(long, default_value = "crystal.pgm")]
    out: PathBuf,
    #[arg(long, default_value_t = 512)]
    px: u32,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<OneDimError> for Failure {
    fn from(e: OneDimError) -> Self {
        match e {
            OneDimError::Param(p) => Failure::Usage(p.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Config(c) => c.into(),
            SweepError::Format(f) => f.into(),
        }
    }
}

fn split_set(items: &[String]) -> Result<Vec<(String, String)>, Failure> {
    items
        .iter()
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::Usage(format!("expected KEY=VALUE, got `{s}`")))
        })
        .collect()
}

fn list(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl RunArgs {
    /// Flag values as config pairs, in the order they should be applied.
    fn overrides(&self) -> Result<Vec<(String, String)>, Failure> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        push("preset", self.preset.clone());
        push("alpha", self.alpha.map(|v| v.to_string()));
        push("beta", self.beta.map(|v| v.to_string()));
        push("gamma", self.gamma.map(|v| v.to_string()));
        push("epsilon", self.epsilon.map(|v| v.to_string()));
        push("radius", self.radius.map(|v| v.to_string()));
        push("max_steps", self.max_steps.map(|v| v.to_string()));
        push("stop_margin", self.stop_margin.map(|v| v.to_string()));
        push("out_dir", self.out_dir.as_ref().map(|p| p.display().to_string()));
        push("render_px", self.render_px.map(|v| v.to_string()));
        out.extend(split_set(&self.set)?);
        Ok(out)
    }

    fn config(&self, extra: Vec<(String, String)>) -> Result<RunConfig, Failure> {
        let file = match &self.config {
            Some(path) => parse_kv(
                &std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            )?,
            None => Vec::new(),
        };
        let mut flags = self.overrides()?;
        flags.extend(extra);
        Ok(RunConfig::layered(&[&file, &flags])?)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

fn simulate(args: RunArgs) -> Result<(), Failure> {
    let cfg = args.config(Vec::new())?;
    let sim = Simulation::new(cfg.params).map_err(ConfigError::from)?.with_exec(args.exec()).run();
    let written = emit_run(&sim, &cfg, &cfg.out_dir)?;
    println!(
        "steps={} stop={} frozen={}",
        sim.trace.steps,
        sim.trace.stop.as_str(),
        sim.trace.events.frozen_count()
    );
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn simulate_1d(args: LineArgs) -> Result<(), Failure> {
    let mut p = match &args.preset {
        Some(name) => line_preset(name).ok_or_else(|| Failure::Usage(format!("unknown line preset `{name}`")))?,
        None => LineParams::default(),
    };
    p.n = args.n.unwrap_or(p.n);
    p.alpha = args.alpha.unwrap_or(p.alpha);
    p.beta = args.beta.unwrap_or(p.beta);
    p.gamma = args.gamma.unwrap_or(p.gamma);
    p.max_steps = args.max_steps.unwrap_or(p.max_steps);
    let table = tables::comparison_csv(&compare(p)?);
    match args.out {
        Some(path) => std::fs::write(path, table)?,
        None => print!("{table}"),
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let mut cfg = RunConfig::default();
    for (k, v) in split_set(&args.set)? {
        cfg.set(&k, &v)?;
    }
    let trace = trace::read_trace(&args.trace)?;
    for path in emit_analysis(&trace, &cfg.emit, &args.out_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn render(args: RenderArgs) -> Result<(), Failure> {
    if args.px < pgm::MIN_RENDER_PX {
        return Err(ConfigError::RenderSize(args.px).into());
    }
    let state = trace::read_state(&args.state)?;
    pgm::write_pgm(&state, args.px, &args.out)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut extra = Vec::new();
    for (key, values) in [
        ("sweep.alpha", &args.sweep_alpha),
        ("sweep.beta", &args.sweep_beta),
        ("sweep.gamma", &args.sweep_gamma),
        ("sweep.epsilon", &args.sweep_epsilon),
    ] {
        if !values.is_empty() {
            extra.push((key.to_string(), list(values)));
        }
    }
    let cfg = args.run.config(extra)?;
    let (summary, rows) = run_sweep(&cfg, args.run.exec())?;
    println!("{} runs, summary in {}", rows.len(), summary.display());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Simulate1d(a) => simulate_1d(a),
        Command::Analyze(a) => analyze(a),
        Command::Render(a) => render(a),
        Command::Sweep(a) => sweep(a),
        Command::Presets => {
            for p in PRESETS {
                println!(
                    "{:<8} alpha={} beta={} gamma={} epsilon={}  {}",
                    p.name, p.alpha, p.beta, p.gamma, p.epsilon, p.summary
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
