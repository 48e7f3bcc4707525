//! Parameter sweeps: one independent run per grid point, run in parallel,
//! each writing to its own directory, plus a summary table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::analysis::{fill_factor, main_branch_latency_series};
use crate::error::{ConfigError, FormatError};
use crate::exec::Exec;
use crate::io::config::{RunConfig, SweepGrid};
use crate::io::{default_envelope, emit_run};
use crate::reiter::{SimParams, Simulation};

pub const SUMMARY_FILE: &str = "summary.csv";

/// Distinct values in first-seen order, compared bitwise.
fn distinct(values: &[f64], base: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in if values.is_empty() { std::slice::from_ref(&base) } else { values } {
        if !out.iter().any(|o| o.to_bits() == v.to_bits()) {
            out.push(v);
        }
    }
    out
}

/// Cartesian product of the grid over `base`, without duplicates.
pub fn grid_points(base: &SimParams, grid: &SweepGrid) -> Result<Vec<SimParams>, ConfigError> {
    let mut out = Vec::new();
    for &alpha in &distinct(&grid.alpha, base.alpha) {
        for &beta in &distinct(&grid.beta, base.beta) {
            for &gamma in &distinct(&grid.gamma, base.gamma) {
                for &epsilon in &distinct(&grid.epsilon, base.epsilon) {
                    let p = SimParams { alpha, beta, gamma, epsilon, ..*base };
                    p.validate()?;
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

pub fn run_dir_name(index: usize, p: &SimParams) -> String {
    format!("run{index:03}_a{}_b{}_g{}_e{}", p.alpha, p.beta, p.gamma, p.epsilon)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub dir: String,
    pub params: SimParams,
    pub steps: u64,
    pub stop: &'static str,
    pub frozen: usize,
    pub fill: f64,
    /// Mean main-branch plateau latency, if the branch reached the plateau range.
    pub plateau: Option<f64>,
    pub theta: Option<f64>,
}

pub fn summary_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("dir,alpha,beta,gamma,epsilon,steps,stop,frozen,fill_factor,plateau_latency,theta_rad\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        let p = &r.params;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.dir, p.alpha, p.beta, p.gamma, p.epsilon, r.steps, r.stop, r.frozen, r.fill, opt(r.plateau), opt(r.theta)
        )
        .unwrap();
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Run every grid point of `cfg.sweep` and write `summary.csv` into
/// `cfg.out_dir`. Runs are distributed over threads by `exec`; each run
/// steps sequentially.
pub fn run_sweep(cfg: &RunConfig, exec: Exec) -> Result<(PathBuf, Vec<SweepRow>), SweepError> {
    let points = grid_points(&cfg.params, &cfg.sweep)?;
    let jobs: Vec<(usize, SimParams)> = points.into_iter().enumerate().collect();
    let results = exec.map(&jobs, |&(index, params)| -> Result<SweepRow, SweepError> {
        let sim = Simulation::new(params).map_err(ConfigError::from)?.with_exec(Exec::Sequential).run();
        let dir = run_dir_name(index, &params);
        emit_run(&sim, cfg, &cfg.out_dir.join(&dir))?;
        let log = &sim.trace.events;
        Ok(SweepRow {
            dir,
            params,
            steps: sim.trace.steps,
            stop: sim.trace.stop.as_str(),
            frozen: log.frozen_count(),
            fill: fill_factor(log),
            plateau: main_branch_latency_series(log).plateau.map(|p| p.mean),
            theta: default_envelope(&sim.trace).map(|f| f.theta),
        })
    });
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let path = cfg.out_dir.join(SUMMARY_FILE);
    std::fs::write(&path, summary_csv(&rows)).map_err(FormatError::from)?;
    Ok((path, rows))
}

/// Read back the directory column of a summary, for checks.
pub fn summary_dirs(path: &Path) -> std::io::Result<Vec<String>> {
    Ok(std::fs::read_to_string(path)?
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').next().map(str::to_string))
        .collect())
}
