//! Hexagonal cellular automaton for snow crystal growth.
//!
//! The model tracks a water field `s` on a hexagonal lattice. Cells with
//! `s >= 1` are frozen, their unfrozen neighbours are boundary cells, and
//! everything else diffuses. Boundary and frozen cells also gain a fixed
//! amount of vapour per step. An optional interface-control rule evens out
//! water along the boundary and turns dendrites into plates.
//!
//! - [`hexgrid`]: coordinates, neighbours, rings, symmetry maps, lattice layout.
//! - [`reiter`]: the state, the step, the run loop and the growth event log.
//! - [`interface`]: redistribution along the boundary and a Wulff construction.
//! - [`analysis`]: latencies, side branches, clusters, envelope fits.
//! - [`onedim`]: the line model and its closed-form predictors.
//! - [`io`], [`presets`], [`sweep`]: files, named parameter sets, parameter grids.

pub mod analysis;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod hexgrid;
pub mod interface;
pub mod io;
pub mod onedim;
pub mod presets;
pub mod reiter;
pub mod sweep;

pub use exec::Exec;
pub use hexgrid::{AxialCoord, DirectionAngle};
pub use reiter::{run, SimParams, Simulation, StopReason};
