//! Interface control: water redistribution along rings, plus a Wulff
//! construction utility.
//!
//! After the diffusion and addition rules have produced `s⁻`, every boundary
//! cell `z0` whose two ring neighbours `z1`, `z2` are both unfrozen pulls the
//! three cells toward their common mean:
//!
//! ```text
//! s̄ = (s(z0) + s(z1) + s(z2)) / 3
//! δ(z) += ε (s̄ − s(z))     for z in {z0, z1, z2}
//! ```
//!
//! All triples read the same `s⁻` field and `δ` is applied once at the end,
//! so the result is independent of the order triples are visited in. Each
//! triple moves zero net water.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use crate::error::{GeometryError, WulffError};
use crate::exec::Exec;
use crate::geometry::{convex_hull, polygon_area};
use crate::hexgrid::{AxialCoord, CartesianPoint, HexLattice};
use crate::reiter::GridState;

/// Per-step water adjustment `δ`.
#[derive(Clone, Debug)]
pub struct RedistributionBuffer {
    lattice: Arc<HexLattice>,
    delta: Vec<f64>,
}

impl RedistributionBuffer {
    pub fn zeroed(lattice: Arc<HexLattice>) -> Self {
        let n = lattice.dense_len();
        Self { lattice, delta: vec![0.0; n] }
    }

    pub fn reset(&mut self) {
        self.delta.iter_mut().for_each(|d| *d = 0.0);
    }

    pub fn get(&self, c: AxialCoord) -> f64 {
        self.lattice.index(c).map_or(0.0, |idx| self.delta[idx])
    }

    pub fn sum(&self) -> f64 {
        self.lattice.cells().iter().map(|&idx| self.delta[idx]).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.delta
            .iter()
            .zip(&other.delta)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().all(|&d| d == 0.0)
    }
}

#[inline]
fn mean3(s: &[f64], z0: usize, pair: [usize; 2]) -> f64 {
    // offsets from the centre keep equal triples exactly neutral
    let c = s[z0];
    c + ((s[pair[0]] - c) + (s[pair[1]] - c)) / 3.0
}

/// Mean water of `z0` and its two ring neighbours.
pub fn triple_average(g: &GridState, z0: AxialCoord) -> Result<f64, GeometryError> {
    if z0.is_origin() {
        return Err(GeometryError::OriginHasNoRing);
    }
    let lat = g.lattice();
    let idx = lat.index(z0).expect("coordinate outside grid");
    Ok(mean3(g.s_field(), idx, lat.ring_neighbor_indices(idx)))
}

/// Whether the triple centred on `idx` takes part in redistribution.
#[inline]
fn qualifies(g: &GridState, idx: usize) -> bool {
    if !g.class[idx].is_boundary() {
        return false;
    }
    let [a, b] = g.lattice().ring_neighbor_indices(idx);
    !g.class[a].is_frozen() && !g.class[b].is_frozen()
}

fn accumulate_one(g: &GridState, z0: usize, eps: f64, delta: &mut [f64]) {
    if !qualifies(g, z0) {
        return;
    }
    let s = g.s_field();
    let pair = g.lattice().ring_neighbor_indices(z0);
    let mean = mean3(s, z0, pair);
    for z in [z0, pair[0], pair[1]] {
        delta[z] += eps * (mean - s[z]);
    }
}

/// Add every qualifying triple's contribution into `buf`, visiting
/// boundary cells in lattice order.
///
/// `g` must carry the post-combine water together with the classification
/// that was in force during the step (the state returned by
/// [`crate::reiter::combine`]).
pub fn accumulate(g: &GridState, buf: &mut RedistributionBuffer) {
    let eps = g.params.epsilon;
    for &idx in g.lattice().cells() {
        accumulate_one(g, idx, eps, &mut buf.delta);
    }
}

/// As [`accumulate`], visiting the triple centres in the given order.
pub fn accumulate_in_order(g: &GridState, order: &[AxialCoord], buf: &mut RedistributionBuffer) {
    let eps = g.params.epsilon;
    for &c in order {
        if let Some(idx) = g.lattice().index(c) {
            accumulate_one(g, idx, eps, &mut buf.delta);
        }
    }
}

/// The same `δ` as [`accumulate`], computed per cell by pulling the (at most
/// three) contributions that land on it: its own triple and the triples of
/// its two ring neighbours. The two neighbour terms are added first so the
/// sum is symmetric under reflection.
pub fn gather(g: &GridState, exec: Exec) -> RedistributionBuffer {
    let lat = g.lattice();
    let eps = g.params.epsilon;
    let s = g.s_field();
    let mut buf = RedistributionBuffer::zeroed(Arc::clone(lat));
    exec.fill(&mut buf.delta, |idx| {
        if !lat.is_cell(idx) || lat.distance(idx) == Some(0) {
            return 0.0;
        }
        let pair = lat.ring_neighbor_indices(idx);
        let own = if qualifies(g, idx) { eps * (mean3(s, idx, pair) - s[idx]) } else { 0.0 };
        let from = |w: usize| {
            if qualifies(g, w) {
                eps * (mean3(s, w, lat.ring_neighbor_indices(w)) - s[idx])
            } else {
                0.0
            }
        };
        own + (from(pair[0]) + from(pair[1]))
    });
    buf
}

/// `s⁺ = s⁻ + δ` on every cell.
pub fn apply(g: &GridState, buf: &RedistributionBuffer) -> GridState {
    let mut out = g.clone();
    for (s, d) in out.s.iter_mut().zip(&buf.delta) {
        *s += d;
    }
    out
}

/// Equilibrium shape `{ r : r·n ≤ γ(n) for every sample }` for samples
/// `(direction angle in radians, γ)`, returned as a counter-clockwise
/// vertex list.
pub fn wulff_shape(samples: &[(f64, f64)]) -> Result<Vec<CartesianPoint>, WulffError> {
    if samples.len() < 3 {
        return Err(WulffError::TooFewSamples(samples.len()));
    }
    let mut lines: Vec<(f64, f64, usize)> = Vec::with_capacity(samples.len());
    for (index, &(angle, gamma)) in samples.iter().enumerate() {
        if !angle.is_finite() || !gamma.is_finite() {
            return Err(WulffError::NonFinite { index });
        }
        lines.push((angle.rem_euclid(TAU), gamma, index));
    }
    lines.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    const ANGLE_TOL: f64 = 1e-12;
    let n = lines.len();
    let mut max_gap = 0.0f64;
    for k in 0..n {
        let (a, b) = (lines[k], lines[(k + 1) % n]);
        let gap = if k + 1 == n { b.0 + TAU - a.0 } else { b.0 - a.0 };
        if gap < ANGLE_TOL || (k + 1 == n && TAU - gap < ANGLE_TOL) {
            let (first, second) = (a.2.min(b.2), a.2.max(b.2));
            return Err(WulffError::DuplicateDirection { first, second });
        }
        max_gap = max_gap.max(gap);
    }
    if max_gap >= PI - ANGLE_TOL {
        return Err(WulffError::Unbounded { gap_deg: max_gap.to_degrees() });
    }

    let normals: Vec<(f64, f64, f64)> = lines.iter().map(|&(a, g, _)| (a.cos(), a.sin(), g)).collect();
    let scale = normals.iter().map(|l| l.2.abs()).fold(1.0, f64::max);
    let tol = 1e-9 * scale;
    let mut vertices = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let (a1, b1, c1) = normals[p];
            let (a2, b2, c2) = normals[q];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / det;
            let y = (a1 * c2 - a2 * c1) / det;
            if normals.iter().all(|&(a, b, c)| a * x + b * y <= c + tol) {
                vertices.push(CartesianPoint::new(x, y));
            }
        }
    }
    // several lines through one corner yield near-duplicate vertices
    let mut merged: Vec<CartesianPoint> = Vec::new();
    for v in vertices {
        if !merged.iter().any(|m| (m.x - v.x).hypot(m.y - v.y) <= tol) {
            merged.push(v);
        }
    }
    let hull = convex_hull(&merged);
    if hull.len() < 3 || polygon_area(&hull) <= tol * tol {
        return Err(WulffError::EmptyInterior);
    }
    Ok(hull)
}
