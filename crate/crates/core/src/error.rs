use thiserror::Error;

use crate::hexgrid::AxialCoord;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("the origin has no ring neighbours")]
    OriginHasNoRing,
    #[error("{src} is not adjacent to {dest}")]
    NotAdjacent { dest: AxialCoord, src: AxialCoord },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("alpha must be positive and finite, got {0}")]
    Alpha(f64),
    #[error("beta must lie in (0, 1), got {0}")]
    Beta(f64),
    #[error("gamma must be non-negative and finite, got {0}")]
    Gamma(f64),
    #[error("epsilon must be non-negative and finite, got {0}")]
    Epsilon(f64),
    #[error("radius must be at least 2, got {0}")]
    Radius(u32),
    #[error("stop margin must be at least 1, got {0}")]
    StopMargin(u32),
    #[error("line length N must be at least 2, got {0}")]
    LineLength(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WulffError {
    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sample {index} is not finite")]
    NonFinite { index: usize },
    #[error("duplicate direction at samples {first} and {second}")]
    DuplicateDirection { first: usize, second: usize },
    #[error("directions leave an angular gap of {gap_deg:.3}°, the intersection is unbounded")]
    Unbounded { gap_deg: f64 },
    #[error("the half-plane intersection has empty interior")]
    EmptyInterior,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("{0} is outside the grid")]
    OutsideGrid(AxialCoord),
    #[error("{0} never became a boundary cell")]
    NeverBoundary(AxialCoord),
    #[error("{0} never froze")]
    NeverFroze(AxialCoord),
    #[error("{0} is not on the positive j-axis main branch")]
    NotOnMainBranch(AxialCoord),
    #[error("envelope fit is degenerate: {0}")]
    DegenerateFit(String),
    #[error("theta {0} rad lies outside (0, 2π/3)")]
    ThetaDomain(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OneDimError {
    #[error("invalid line parameters: {0}")]
    Param(#[from] ParamError),
    #[error("index out of domain: i={i}, k={k}, N={n}")]
    Domain { i: usize, k: usize, n: usize },
    #[error("predictor denominator is zero or negative")]
    ZeroDenominator,
    #[error("fixed-point iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("step budget of {0} exhausted before the line froze")]
    BudgetExhausted(u64),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Param(#[from] ParamError),
}

impl FormatError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Parse { line, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    Value { key: String, value: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("render size {0} is below the minimum of 64 pixels")]
    RenderSize(u32),
    #[error("sweep grid for `{0}` is empty")]
    EmptySweep(&'static str),
    #[error(transparent)]
    Param(#[from] ParamError),
}
