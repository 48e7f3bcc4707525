//! File output: CSV tables, trace and state files, PGM renders, and run
//! configuration.

pub mod config;
pub mod pgm;
pub mod tables;
pub mod trace;

use std::path::{Path, PathBuf};

use crate::analysis::{envelope_fit, main_branch_latency_series, tips, EnvelopeFit, Exclusions};
use crate::error::FormatError;
use crate::hexgrid::to_cartesian;
use crate::reiter::{SimTrace, Trace};
use config::{Emit, RunConfig};

pub const EVENTS_FILE: &str = "events.csv";
pub const LATENCY_FILE: &str = "latency.csv";
pub const DIRECTIONS_FILE: &str = "directions.csv";
pub const TIPS_FILE: &str = "tips.csv";
pub const ENVELOPE_FILE: &str = "envelope.csv";
pub const TRACE_FILE: &str = "trace.txt";
pub const STATE_FILE: &str = "state.txt";
pub const IMAGE_FILE: &str = "crystal.pgm";

/// Envelope of the `j`-axis side branches with the default exclusions.
pub fn default_envelope(trace: &Trace) -> Option<EnvelopeFit> {
    let rows = tips(&trace.events).ok()?;
    let points: Vec<_> = rows.iter().map(|r| to_cartesian(r.tip)).collect();
    envelope_fit(&points, Exclusions::for_radius(trace.params.radius)).ok()
}

fn put(dir: &Path, name: &str, body: impl AsRef<[u8]>, written: &mut Vec<PathBuf>) -> Result<(), FormatError> {
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    written.push(path);
    Ok(())
}

/// Write the analysis tables selected by `emit`. Depends only on the trace,
/// so re-running it on a reloaded trace reproduces the same bytes.
pub fn emit_analysis(trace: &Trace, emit: &Emit, dir: &Path) -> Result<Vec<PathBuf>, FormatError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let log = &trace.events;
    if emit.events {
        put(dir, EVENTS_FILE, tables::events_csv(log), &mut written)?;
    }
    if emit.latency {
        put(dir, LATENCY_FILE, tables::latency_csv(&main_branch_latency_series(log)), &mut written)?;
    }
    if emit.directions {
        put(dir, DIRECTIONS_FILE, tables::directions_csv(log), &mut written)?;
    }
    if emit.tips {
        let rows = tips(log).unwrap_or_default();
        put(dir, TIPS_FILE, tables::tips_csv(&rows), &mut written)?;
    }
    if emit.envelope {
        put(dir, ENVELOPE_FILE, tables::envelope_csv(default_envelope(trace).as_ref()), &mut written)?;
    }
    Ok(written)
}

/// Write everything a finished run produces.
pub fn emit_run(sim: &SimTrace, cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, FormatError> {
    let mut written = emit_analysis(&sim.trace, &cfg.emit, dir)?;
    if cfg.emit.trace {
        put(dir, TRACE_FILE, trace::trace_to_string(&sim.trace), &mut written)?;
    }
    if cfg.emit.state {
        put(dir, STATE_FILE, trace::state_to_string(&sim.final_state), &mut written)?;
    }
    if cfg.emit.image {
        put(dir, IMAGE_FILE, pgm::render_raster(&sim.final_state, cfg.render_px), &mut written)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reiter::{run, SimParams};

    #[test]
    fn analysis_round_trips_through_the_trace_file() {
        let sim = run(SimParams { radius: 20, beta: 0.35, ..SimParams::default() }).unwrap();
        let cfg = RunConfig::default();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let written = emit_run(&sim, &cfg, a.path()).unwrap();
        assert_eq!(written.len(), 8);
        let reloaded = trace::read_trace(&a.path().join(TRACE_FILE)).unwrap();
        emit_analysis(&reloaded, &cfg.emit, b.path()).unwrap();
        for name in [EVENTS_FILE, LATENCY_FILE, DIRECTIONS_FILE, TIPS_FILE, ENVELOPE_FILE] {
            let x = std::fs::read(a.path().join(name)).unwrap();
            let y = std::fs::read(b.path().join(name)).unwrap();
            assert_eq!(x, y, "{name}");
        }
    }

    #[test]
    fn emit_flags_are_respected() {
        let sim = run(SimParams { radius: 10, ..SimParams::default() }).unwrap();
        let emit = Emit { events: true, latency: false, directions: false, tips: false, envelope: false, trace: false, state: false, image: true };
        let cfg = RunConfig { emit, ..RunConfig::default() };
        let dir = tempfile::tempdir().unwrap();
        let written = emit_run(&sim, &cfg, dir.path()).unwrap();
        let names: Vec<_> = written.iter().map(|p| p.file_name().unwrap().to_str().unwrap().to_string()).collect();
        assert_eq!(names, vec![EVENTS_FILE, IMAGE_FILE]);
    }
}
