//! Envelope line through side-branch tips and the latency ratio it implies.

use std::f64::consts::{FRAC_PI_3, PI};

use crate::error::AnalysisError;
use crate::geometry::upper_hull;
use crate::hexgrid::CartesianPoint;

/// Tips whose lattice `j` falls outside `[j_min, j_max]` are not used for the fit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exclusions {
    pub j_min: f64,
    pub j_max: f64,
}

impl Exclusions {
    /// Keep `0.1·R ≤ j ≤ 0.9·R`.
    pub fn for_radius(radius: u32) -> Self {
        Self::fractions(radius, 0.1, 0.9)
    }

    pub fn fractions(radius: u32, lo: f64, hi: f64) -> Self {
        Self { j_min: lo * radius as f64, j_max: hi * radius as f64 }
    }

    fn keeps(&self, p: CartesianPoint) -> bool {
        let (_, j) = lattice_ij(p);
        (self.j_min - 1e-9..=self.j_max + 1e-9).contains(&j)
    }
}

/// Invert `x = i·√3/2`, `y = i/2 + j`.
fn lattice_ij(p: CartesianPoint) -> (f64, f64) {
    let i = 2.0 * p.x / 3f64.sqrt();
    (i, p.y - 0.5 * i)
}

/// Tips with `j ≥ i` belong to the `j`-axis branches; the rest of the sector
/// is grown from the neighbouring `i` axis.
fn on_branch_side(p: CartesianPoint) -> bool {
    let (i, j) = lattice_ij(p);
    j >= i - 1e-9
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Angle between the line and the downward `j` axis, in radians.
    pub theta: f64,
    pub support: Vec<CartesianPoint>,
    /// Largest height of a kept tip above the line (0 when none lies above).
    pub overshoot: f64,
}

impl EnvelopeFit {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Fit a line to the outer frontier of the tips.
///
/// Keeps the tips on the `j`-axis side of the sector that pass `excl`, takes
/// their upper hull (collinear points kept) and fits the hull vertices by
/// total least squares. Excluding first matters: the main-branch tip near the
/// edge sticks out and would otherwise hide the whole frontier.
pub fn envelope_fit(tips: &[CartesianPoint], excl: Exclusions) -> Result<EnvelopeFit, AnalysisError> {
    let kept: Vec<CartesianPoint> = tips.iter().copied().filter(|&p| on_branch_side(p) && excl.keeps(p)).collect();
    let support = upper_hull(&kept, true);
    if support.len() < 2 {
        return Err(AnalysisError::DegenerateFit(format!("{} usable hull vertices", support.len())));
    }
    let n = support.len() as f64;
    let mx = support.iter().map(|p| p.x).sum::<f64>() / n;
    let my = support.iter().map(|p| p.y).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in &support {
        let (dx, dy) = (p.x - mx, p.y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // principal axis of the scatter matrix
    let phi = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let (dy, dx) = phi.sin_cos();
    if dx.abs() < 1e-12 {
        return Err(AnalysisError::DegenerateFit("support is vertical".into()));
    }
    let slope = dy / dx;
    let intercept = my - slope * mx;
    let theta = (-slope / (1.0 + slope * slope).sqrt()).acos();
    let overshoot = kept
        .iter()
        .map(|p| p.y - (slope * p.x + intercept))
        .fold(0.0, f64::max);
    Ok(EnvelopeFit { slope, intercept, theta, support, overshoot })
}

/// `sin(2π/3 − θ) / sin θ`, the ratio of main-branch to side-branch latency
/// implied by an envelope at angle `θ`.
pub fn latency_ratio(theta: f64) -> Result<f64, AnalysisError> {
    if !(theta > 0.0 && theta < 2.0 * PI / 3.0) {
        return Err(AnalysisError::ThetaDomain(theta));
    }
    // written around π/3 so both sines see the same argument there
    let phi = theta - FRAC_PI_3;
    Ok((FRAC_PI_3 - phi).sin() / (FRAC_PI_3 + phi).sin())
}
