//! Named parameter sets.

use crate::onedim::LineParams;
use crate::reiter::SimParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl Preset {
    /// Overwrite the model constants of `p`, leaving grid size and stopping rules alone.
    pub fn apply(&self, p: &mut SimParams) {
        p.alpha = self.alpha;
        p.beta = self.beta;
        p.gamma = self.gamma;
        p.epsilon = self.epsilon;
    }

    pub fn params(&self) -> SimParams {
        let mut p = SimParams::default();
        self.apply(&mut p);
        p
    }
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "fig5", summary: "dendrite with a steady main branch", alpha: 1.0, beta: 0.4, gamma: 0.001, epsilon: 0.0 },
    Preset { name: "fig7", summary: "branchy dendrite", alpha: 1.0, beta: 0.35, gamma: 0.001, epsilon: 0.0 },
    Preset { name: "plate", summary: "compact hexagonal plate", alpha: 1.0, beta: 0.9, gamma: 0.05, epsilon: 0.0 },
    Preset { name: "fig11a", summary: "plate under strong interface control", alpha: 1.0, beta: 0.4, gamma: 0.001, epsilon: 0.1 },
    Preset { name: "fig11b", summary: "plate turning dendritic under weak interface control", alpha: 1.0, beta: 0.4, gamma: 0.001, epsilon: 0.01 },
];

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// Line model settings used for the latency and accumulation comparison.
pub fn line_preset(name: &str) -> Option<LineParams> {
    match name {
        "fig4" => Some(LineParams { n: 50, alpha: 1.0, beta: 0.4, gamma: 0.001, ..LineParams::default() }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        let p = preset("fig7").unwrap().params();
        assert_eq!((p.alpha, p.beta, p.gamma), (1.0, 0.35, 0.001));
        assert!(preset("fig99").is_none());
        for p in PRESETS {
            assert!(p.params().validate().is_ok(), "{}", p.name);
        }
        assert_eq!(line_preset("fig4").unwrap().n, 50);
    }
}
