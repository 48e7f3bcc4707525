//! Binary PGM (P5) rendering of a grid state.

use std::path::Path;

use crate::hexgrid::{from_cartesian, reflect, CartesianPoint};
use crate::reiter::{CellKind, GridState};

pub const MIN_RENDER_PX: u32 = 64;

/// Grey level of a cell.
fn shade(g: &GridState, idx: usize) -> u8 {
    let lat = g.lattice();
    if lat.is_edge(idx) {
        return 0;
    }
    let cell = g.cell_at(idx);
    match cell.class.kind {
        CellKind::Frozen => 255,
        CellKind::Boundary => 160,
        CellKind::NonReceptive => (100.0 * cell.s / g.params.beta).round().clamp(0.0, 100.0) as u8,
    }
}

/// Render a `px × px` image, each pixel taking the shade of the nearest cell
/// centre. Pixels left of the vertical axis use the mirror image of their
/// partner's cell, so a reflection-symmetric state renders symmetrically
/// regardless of rounding at cell borders.
pub fn render_raster(g: &GridState, px: u32) -> Vec<u8> {
    let px = px.max(MIN_RENDER_PX);
    let lat = g.lattice();
    // the lattice spans 2R + 1 cell heights vertically and less horizontally
    let scale = px as f64 / (2.0 * lat.radius() as f64 + 1.0);
    let half = px as f64 / 2.0;
    let mut out = format!("P5\n{px} {px}\n255\n").into_bytes();
    let header = out.len();
    out.resize(header + (px * px) as usize, 0);
    for row in 0..px {
        let y = (half - (row as f64 + 0.5)) / scale;
        for col in 0..px {
            let mirrored = col < px / 2;
            let c = if mirrored { px - 1 - col } else { col };
            let x = (c as f64 + 0.5 - half) / scale;
            let mut cell = from_cartesian(CartesianPoint::new(x, y));
            if mirrored {
                cell = reflect(cell);
            }
            if let Some(idx) = lat.index(cell) {
                out[header + (row * px + col) as usize] = shade(g, idx);
            }
        }
    }
    out
}

pub fn write_pgm(g: &GridState, px: u32, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render_raster(g, px))
}
