//! Run configuration from flat `key=value` text.
//!
//! Values are layered: defaults, then the preset, then the config file, then
//! command-line overrides. A preset named anywhere is applied first so that
//! explicit values always win over it.

use std::path::PathBuf;

use crate::error::ConfigError;
use crate::io::pgm::MIN_RENDER_PX;
use crate::presets::preset;
use crate::reiter::SimParams;

/// Which files a run writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Emit {
    pub events: bool,
    pub latency: bool,
    pub directions: bool,
    pub tips: bool,
    pub envelope: bool,
    pub trace: bool,
    pub state: bool,
    pub image: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Self { events: true, latency: true, directions: true, tips: true, envelope: true, trace: true, state: true, image: true }
    }
}

/// Value lists for a parameter sweep; empty means "use the base value".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepGrid {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub epsilon: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: SimParams,
    pub preset: Option<String>,
    pub out_dir: PathBuf,
    pub render_px: u32,
    pub emit: Emit,
    pub sweep: SweepGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SimParams::default(),
            preset: None,
            out_dir: PathBuf::from("out"),
            render_px: 512,
            emit: Emit::default(),
            sweep: SweepGrid::default(),
        }
    }
}

/// Parse `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value { key: key.to_string(), value: v.to_string() })
}

fn flag(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(ConfigError::Value { key: key.to_string(), value: v.to_string() }),
    }
}

fn list(key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| value(key, s.trim())).collect()
}

impl RunConfig {
    /// Set one key. `preset` replaces the model constants.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        let p = &mut self.params;
        match key {
            "alpha" => p.alpha = value(key, v)?,
            "beta" => p.beta = value(key, v)?,
            "gamma" => p.gamma = value(key, v)?,
            "epsilon" => p.epsilon = value(key, v)?,
            "radius" => p.radius = value(key, v)?,
            "max_steps" => p.max_steps = value(key, v)?,
            "stop_margin" => p.stop_margin = value(key, v)?,
            "preset" => {
                preset(v).ok_or_else(|| ConfigError::UnknownPreset(v.to_string()))?.apply(p);
                self.preset = Some(v.to_string());
            }
            "out_dir" => self.out_dir = PathBuf::from(v),
            "render_px" => self.render_px = value(key, v)?,
            "emit.events" => self.emit.events = flag(key, v)?,
            "emit.latency" => self.emit.latency = flag(key, v)?,
            "emit.directions" => self.emit.directions = flag(key, v)?,
            "emit.tips" => self.emit.tips = flag(key, v)?,
            "emit.envelope" => self.emit.envelope = flag(key, v)?,
            "emit.trace" => self.emit.trace = flag(key, v)?,
            "emit.state" => self.emit.state = flag(key, v)?,
            "emit.image" => self.emit.image = flag(key, v)?,
            "sweep.alpha" => self.sweep.alpha = list(key, v)?,
            "sweep.beta" => self.sweep.beta = list(key, v)?,
            "sweep.gamma" => self.sweep.gamma = list(key, v)?,
            "sweep.epsilon" => self.sweep.epsilon = list(key, v)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Build a config from layered sources, lowest precedence first. A
    /// `preset` key in any layer is applied before all other keys; the last
    /// one named wins.
    pub fn layered(layers: &[&[(String, String)]]) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let all = || layers.iter().flat_map(|l| l.iter());
        if let Some((_, name)) = all().rfind(|(k, _)| k == "preset") {
            cfg.set("preset", name)?;
        }
        for (k, v) in all().filter(|(k, _)| k != "preset") {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        if self.render_px < MIN_RENDER_PX {
            return Err(ConfigError::RenderSize(self.render_px));
        }
        Ok(())
    }
}
