//! The synchronous hexagonal automaton.
//!
//! A step reads one immutable snapshot and writes a fresh state:
//!
//! 1. receptive cells gain `gamma` in their non-diffusing water `v`,
//! 2. the diffusing water `u` relaxes toward the mean of its six neighbours
//!    (edge cells are then pinned back to `beta`),
//! 3. `s = u + v`,
//! 4. when `epsilon > 0`, water is redistributed along the rings
//!    (see [`crate::interface`]),
//! 5. every cell is reclassified and `u`/`v` are repartitioned from `s`.
//!
//! Classification therefore always describes the current `s`; a cell that
//! crosses `s >= 1` during a step acts as frozen from the next step on.

use std::sync::Arc;

use crate::error::ParamError;
use crate::exec::Exec;
use crate::hexgrid::{AxialCoord, DirectionAngle, HexLattice, ORIGIN};
use crate::interface::{self, RedistributionBuffer};

/// Model parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimParams {
    /// Diffusion coefficient.
    pub alpha: f64,
    /// Background vapour level, also the level edge cells are held at.
    pub beta: f64,
    /// Vapour added to each receptive cell per step.
    pub gamma: f64,
    /// Grid radius; cells at this hex distance are edge cells.
    pub radius: u32,
    /// Interface control strength, `0` gives the original model.
    pub epsilon: f64,
    pub max_steps: u64,
    /// Stop once a frozen cell is this close to the edge ring.
    pub stop_margin: u32,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 0.4,
            gamma: 0.001,
            radius: 100,
            epsilon: 0.0,
            max_steps: 1_000_000,
            stop_margin: 5,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(ParamError::Alpha(self.alpha));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(ParamError::Beta(self.beta));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(ParamError::Gamma(self.gamma));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(ParamError::Epsilon(self.epsilon));
        }
        if self.radius < 2 {
            return Err(ParamError::Radius(self.radius));
        }
        if self.stop_margin < 1 {
            return Err(ParamError::StopMargin(self.stop_margin));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CellKind {
    Frozen,
    Boundary,
    #[default]
    NonReceptive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: CellKind,
    pub is_edge: bool,
}

impl Classification {
    #[inline]
    pub fn is_frozen(self) -> bool {
        self.kind == CellKind::Frozen
    }

    #[inline]
    pub fn is_boundary(self) -> bool {
        self.kind == CellKind::Boundary
    }

    #[inline]
    pub fn is_receptive(self) -> bool {
        self.kind != CellKind::NonReceptive
    }
}

/// Water bookkeeping of a single cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellState {
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub class: Classification,
}

/// Complete automaton state at step `t`.
///
/// Fields are stored densely over the lattice's `(2R+1)²` layout; padding
/// entries are zero and never read by the update rules.
#[derive(Clone, Debug)]
pub struct GridState {
    pub t: u64,
    pub params: SimParams,
    lattice: Arc<HexLattice>,
    pub(crate) s: Vec<f64>,
    pub(crate) u: Vec<f64>,
    pub(crate) v: Vec<f64>,
    pub(crate) class: Vec<Classification>,
}

impl GridState {
    pub fn lattice(&self) -> &Arc<HexLattice> {
        &self.lattice
    }

    pub fn cell(&self, c: AxialCoord) -> Option<CellState> {
        let idx = self.lattice.index(c)?;
        Some(self.cell_at(idx))
    }

    pub(crate) fn cell_at(&self, idx: usize) -> CellState {
        CellState {
            s: self.s[idx],
            u: self.u[idx],
            v: self.v[idx],
            class: self.class[idx],
        }
    }

    /// Total water `s` at `c`; panics outside the grid.
    pub fn s(&self, c: AxialCoord) -> f64 {
        self.s[self.lattice.index(c).expect("coordinate outside grid")]
    }

    /// Iterate `(coord, cell)` over every grid cell.
    pub fn cells(&self) -> impl Iterator<Item = (AxialCoord, CellState)> + '_ {
        self.lattice
            .cells()
            .iter()
            .map(move |&idx| (self.lattice.coord(idx), self.cell_at(idx)))
    }

    pub fn total_water(&self) -> f64 {
        self.lattice.cells().iter().map(|&idx| self.s[idx]).sum()
    }

    pub fn frozen_count(&self) -> usize {
        self.lattice.cells().iter().filter(|&&idx| self.class[idx].is_frozen()).count()
    }

    /// Largest hex distance from the origin among frozen cells.
    pub fn max_frozen_distance(&self) -> u32 {
        self.lattice
            .cells()
            .iter()
            .filter(|&&idx| self.class[idx].is_frozen())
            .filter_map(|&idx| self.lattice.distance(idx))
            .max()
            .unwrap_or(0)
    }

    /// Raw dense `s` field, indexed like [`HexLattice`].
    pub fn s_field(&self) -> &[f64] {
        &self.s
    }

    /// Build a state from explicit water amounts, classifying and
    /// partitioning immediately. Cells missing from `s` keep `beta`.
    pub fn from_water(
        params: SimParams,
        t: u64,
        s: impl IntoIterator<Item = (AxialCoord, f64)>,
    ) -> Result<Self, ParamError> {
        params.validate()?;
        let mut g = blank_state(params);
        for (c, value) in s {
            if let Some(idx) = g.lattice.index(c) {
                g.s[idx] = value;
            }
        }
        g.t = t;
        Ok(classify_and_partition(&g, Exec::Sequential))
    }

    /// Overwrite the water of one cell without reclassifying. Intended for
    /// tests and diagnostics.
    pub fn set_s(&mut self, c: AxialCoord, value: f64) {
        let idx = self.lattice.index(c).expect("coordinate outside grid");
        self.s[idx] = value;
    }

    /// Bitwise equality of all fields.
    pub fn bit_eq(&self, other: &GridState) -> bool {
        let bits = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits());
        self.t == other.t
            && self.lattice.radius() == other.lattice.radius()
            && bits(&self.s, &other.s)
            && bits(&self.u, &other.u)
            && bits(&self.v, &other.v)
            && self.class == other.class
    }
}

fn blank_state(params: SimParams) -> GridState {
    let lattice = Arc::new(HexLattice::new(params.radius));
    let n = lattice.dense_len();
    let mut s = vec![0.0; n];
    for &idx in lattice.cells() {
        s[idx] = params.beta;
    }
    GridState {
        t: 0,
        params,
        lattice,
        s,
        u: vec![0.0; n],
        v: vec![0.0; n],
        class: vec![Classification::default(); n],
    }
}

/// Initial condition: a single frozen seed at the origin in a uniform
/// background of `beta`.
pub fn init_state(params: SimParams) -> Result<GridState, ParamError> {
    params.validate()?;
    let mut g = blank_state(params);
    let origin = g.lattice.index(ORIGIN).unwrap();
    g.s[origin] = 1.0;
    Ok(classify_and_partition(&g, Exec::Sequential))
}

/// Recompute every classification from `s` and split `s` into `u` and `v`.
///
/// Edge cells are always non-receptive and never freeze.
pub fn classify_and_partition(g: &GridState, exec: Exec) -> GridState {
    let lat = &*g.lattice;
    let s = &g.s;
    let mut frozen = vec![false; lat.dense_len()];
    exec.fill(&mut frozen, |idx| lat.is_cell(idx) && !lat.is_edge(idx) && s[idx] >= 1.0);
    let mut class = vec![Classification::default(); lat.dense_len()];
    exec.fill(&mut class, |idx| {
        if !lat.is_cell(idx) {
            return Classification::default();
        }
        if lat.is_edge(idx) {
            return Classification { kind: CellKind::NonReceptive, is_edge: true };
        }
        let kind = if frozen[idx] {
            CellKind::Frozen
        } else if lat.neighbor_indices(idx).iter().any(|&n| frozen[n]) {
            CellKind::Boundary
        } else {
            CellKind::NonReceptive
        };
        Classification { kind, is_edge: false }
    });
    let mut u = vec![0.0; lat.dense_len()];
    let mut v = vec![0.0; lat.dense_len()];
    exec.fill(&mut u, |idx| if class[idx].is_receptive() { 0.0 } else { s[idx] });
    exec.fill(&mut v, |idx| if class[idx].is_receptive() { s[idx] } else { 0.0 });
    GridState {
        t: g.t,
        params: g.params,
        lattice: Arc::clone(&g.lattice),
        s: s.clone(),
        u,
        v,
        class,
    }
}

/// Constant addition: `v+ = v- + gamma` on receptive cells, `0` elsewhere.
pub fn add_vapor(g: &GridState) -> Vec<f64> {
    let gamma = g.params.gamma;
    g.v.iter()
        .zip(&g.class)
        .map(|(&v, c)| if c.is_receptive() { v + gamma } else { 0.0 })
        .collect()
}

/// Sort six values ascending with a fixed comparator network.
#[inline(always)]
fn sort6(a: &mut [f64; 6]) {
    #[inline(always)]
    fn cx(a: &mut [f64; 6], i: usize, j: usize) {
        let (x, y) = (a[i], a[j]);
        a[i] = x.min(y);
        a[j] = x.max(y);
    }
    cx(a, 0, 5);
    cx(a, 1, 3);
    cx(a, 2, 4);
    cx(a, 1, 2);
    cx(a, 3, 4);
    cx(a, 0, 3);
    cx(a, 2, 5);
    cx(a, 0, 1);
    cx(a, 2, 3);
    cx(a, 4, 5);
    cx(a, 1, 2);
    cx(a, 3, 4);
}

/// Mean of the six neighbours' `u`, summed in ascending order so the result
/// does not depend on which neighbour comes first. This keeps the update
/// exactly invariant under the lattice symmetries. Written as an offset from
/// the smallest value so a uniform neighbourhood returns that value exactly.
#[inline]
pub(crate) fn neighbor_mean(u: &[f64], nbrs: [usize; 6]) -> f64 {
    let mut vals = nbrs.map(|n| u[n]);
    sort6(&mut vals);
    let lo = vals[0];
    let sum = (vals[1] - lo) + (vals[2] - lo) + (vals[3] - lo) + (vals[4] - lo) + (vals[5] - lo);
    lo + sum / 6.0
}

/// Diffusion of `u` from the pre-step snapshot; edge cells are reset to `beta`.
pub fn diffuse(g: &GridState, exec: Exec) -> Vec<f64> {
    let lat = &*g.lattice;
    let u = &g.u;
    let half_alpha = 0.5 * g.params.alpha;
    let beta = g.params.beta;
    let mut out = vec![0.0; lat.dense_len()];
    exec.fill(&mut out, |idx| {
        if !lat.is_cell(idx) {
            0.0
        } else if lat.is_edge(idx) {
            beta
        } else {
            let u0 = u[idx];
            u0 + half_alpha * (neighbor_mean(u, lat.neighbor_indices(idx)) - u0)
        }
    });
    out
}

/// `s_{t+1} = u+ + v+`. The step counter advances; classification is left
/// as it was so the redistribution phase can still see it.
pub fn combine(g: &GridState, u_plus: Vec<f64>, v_plus: Vec<f64>) -> GridState {
    let s = u_plus.iter().zip(&v_plus).map(|(u, v)| u + v).collect();
    GridState {
        t: g.t + 1,
        params: g.params,
        lattice: Arc::clone(&g.lattice),
        s,
        u: u_plus,
        v: v_plus,
        class: g.class.clone(),
    }
}

/// Result of advancing the state by one step, before event bookkeeping.
#[derive(Clone, Debug)]
pub struct Advanced {
    pub state: GridState,
    /// The redistribution applied this step, when `epsilon > 0`.
    pub redistribution: Option<RedistributionBuffer>,
    /// Total water right before and right after the redistribution phase.
    pub redistribution_totals: Option<(f64, f64)>,
}

/// Advance the automaton one step.
pub fn advance(g: &GridState, exec: Exec) -> Advanced {
    let v_plus = add_vapor(g);
    let u_plus = diffuse(g, exec);
    let mut combined = combine(g, u_plus, v_plus);
    let mut redistribution = None;
    let mut totals = None;
    if g.params.epsilon > 0.0 {
        let buf = interface::gather(&combined, exec);
        let before = combined.total_water();
        combined = interface::apply(&combined, &buf);
        totals = Some((before, combined.total_water()));
        redistribution = Some(buf);
    }
    Advanced {
        state: classify_and_partition(&combined, exec),
        redistribution,
        redistribution_totals: totals,
    }
}

/// Per-cell growth history.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CellRecord {
    /// First step index at which the cell had a frozen neighbour.
    pub boundary: Option<u64>,
    /// Step index at which `s >= 1` first held.
    pub frozen: Option<u64>,
    /// Neighbour whose freezing made this cell a boundary cell.
    pub source: Option<AxialCoord>,
}

/// A cell froze.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreezeEvent {
    pub cell: AxialCoord,
    pub boundary: u64,
    pub frozen: u64,
    pub source: Option<AxialCoord>,
    pub angle: Option<DirectionAngle>,
}

/// A cell received its first frozen neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryEvent {
    pub cell: AxialCoord,
    pub boundary: u64,
    pub source: Option<AxialCoord>,
    pub angle: Option<DirectionAngle>,
}

/// First-boundary and freeze times plus source cells for a whole run.
#[derive(Clone, Debug)]
pub struct EventLog {
    lattice: Arc<HexLattice>,
    records: Vec<CellRecord>,
}

impl PartialEq for EventLog {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.radius() == other.lattice.radius() && self.records == other.records
    }
}

impl EventLog {
    pub fn empty(radius: u32) -> Self {
        Self::with_lattice(Arc::new(HexLattice::new(radius)))
    }

    fn with_lattice(lattice: Arc<HexLattice>) -> Self {
        let n = lattice.dense_len();
        Self { lattice, records: vec![CellRecord::default(); n] }
    }

    /// Records implied by the initial condition: the origin is frozen at
    /// `t = 0` and its six neighbours are boundary cells sourced from it.
    pub fn initial(g: &GridState) -> Self {
        let mut log = Self::with_lattice(Arc::clone(&g.lattice));
        let lat = Arc::clone(&log.lattice);
        for &idx in lat.cells() {
            if g.class[idx].is_frozen() {
                log.records[idx].frozen = Some(g.t);
                log.records[idx].boundary = Some(g.t);
            }
        }
        for &idx in lat.cells() {
            if log.records[idx].boundary.is_none() && g.class[idx].is_boundary() {
                log.records[idx].boundary = Some(g.t);
                log.records[idx].source = log.pick_source(lat.coord(idx), g.t);
            }
        }
        log
    }

    pub fn radius(&self) -> u32 {
        self.lattice.radius()
    }

    pub fn lattice(&self) -> &Arc<HexLattice> {
        &self.lattice
    }

    pub fn record(&self, c: AxialCoord) -> Option<&CellRecord> {
        self.lattice.index(c).map(|idx| &self.records[idx])
    }

    pub(crate) fn record_mut(&mut self, c: AxialCoord) -> Option<&mut CellRecord> {
        let idx = self.lattice.index(c)?;
        Some(&mut self.records[idx])
    }

    pub fn frozen_at(&self, c: AxialCoord) -> Option<u64> {
        self.record(c).and_then(|r| r.frozen)
    }

    pub fn boundary_at(&self, c: AxialCoord) -> Option<u64> {
        self.record(c).and_then(|r| r.boundary)
    }

    pub fn source(&self, c: AxialCoord) -> Option<AxialCoord> {
        self.record(c).and_then(|r| r.source)
    }

    pub fn angle(&self, c: AxialCoord) -> Option<DirectionAngle> {
        let src = self.source(c)?;
        crate::hexgrid::direction_angle(c, src).ok()
    }

    pub fn is_frozen(&self, c: AxialCoord) -> bool {
        self.frozen_at(c).is_some()
    }

    /// All cells with any record, in dense (i-major) order.
    pub fn iter(&self) -> impl Iterator<Item = (AxialCoord, &CellRecord)> + '_ {
        self.lattice
            .cells()
            .iter()
            .filter(|&&idx| self.records[idx] != CellRecord::default())
            .map(move |&idx| (self.lattice.coord(idx), &self.records[idx]))
    }

    /// Frozen cells as freeze events, sorted by `(T, i, j)`.
    pub fn freeze_events(&self) -> Vec<FreezeEvent> {
        let mut out: Vec<FreezeEvent> = self
            .iter()
            .filter_map(|(c, r)| {
                Some(FreezeEvent {
                    cell: c,
                    boundary: r.boundary?,
                    frozen: r.frozen?,
                    source: r.source,
                    angle: r.source.and_then(|s| crate::hexgrid::direction_angle(c, s).ok()),
                })
            })
            .collect();
        out.sort_by_key(|e| (e.frozen, e.cell.i, e.cell.j));
        out
    }

    pub fn frozen_count(&self) -> usize {
        self.records.iter().filter(|r| r.frozen.is_some()).count()
    }

    /// Source tie-break: the newly frozen neighbour whose direction comes
    /// first in [`DirectionAngle::ALL`].
    fn pick_source(&self, c: AxialCoord, t: u64) -> Option<AxialCoord> {
        DirectionAngle::ALL.into_iter().find_map(|a| {
            let (di, dj) = a.offset();
            let n = c.offset(di, dj);
            (self.frozen_at(n) == Some(t)).then_some(n)
        })
    }

    /// Update the log with the transition `prev -> next`.
    pub fn record_step(
        &mut self,
        prev: &GridState,
        next: &GridState,
    ) -> (Vec<FreezeEvent>, Vec<BoundaryEvent>) {
        let t = next.t;
        let lat = Arc::clone(&self.lattice);
        let mut newly_frozen = Vec::new();
        for &idx in lat.cells() {
            if next.class[idx].is_frozen() && !prev.class[idx].is_frozen() {
                debug_assert!(self.records[idx].frozen.is_none());
                self.records[idx].frozen = Some(t);
                newly_frozen.push(lat.coord(idx));
            }
        }
        let mut boundaries = Vec::new();
        for &f in &newly_frozen {
            for n in crate::hexgrid::neighbors(f) {
                let Some(idx) = lat.index(n) else { continue };
                if self.records[idx].boundary.is_some() {
                    continue;
                }
                let source = self.pick_source(n, t);
                self.records[idx].boundary = Some(t);
                self.records[idx].source = source;
                boundaries.push(BoundaryEvent {
                    cell: n,
                    boundary: t,
                    source,
                    angle: source.and_then(|s| crate::hexgrid::direction_angle(n, s).ok()),
                });
            }
        }
        let freezes = newly_frozen
            .into_iter()
            .map(|c| {
                let rec = self.record_mut(c).unwrap();
                // a cell that froze without ever having a frozen neighbour
                let boundary = *rec.boundary.get_or_insert(t);
                let source = rec.source;
                FreezeEvent {
                    cell: c,
                    boundary,
                    frozen: t,
                    source,
                    angle: source.and_then(|s| crate::hexgrid::direction_angle(c, s).ok()),
                }
            })
            .collect();
        (freezes, boundaries)
    }
}

/// Why a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// A frozen cell came within `stop_margin` of the edge ring.
    MarginReached,
    /// `max_steps` steps were taken without reaching the margin.
    BudgetExhausted,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::MarginReached => "margin",
            StopReason::BudgetExhausted => "budget",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "margin" => Some(StopReason::MarginReached),
            "budget" => Some(StopReason::BudgetExhausted),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepDiagnostics {
    /// Post-step index.
    pub t: u64,
    pub total_water: f64,
    pub frozen_count: usize,
    pub max_frozen_distance: u32,
    /// Non-receptive cells whose water increased during the step.
    pub nr_gain_count: usize,
    /// Total water after minus before the redistribution phase.
    pub redistribution_drift: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub freezes: Vec<FreezeEvent>,
    pub boundaries: Vec<BoundaryEvent>,
    pub diagnostics: StepDiagnostics,
}

/// Growth history of a completed run, sufficient for every analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub params: SimParams,
    pub steps: u64,
    pub stop: StopReason,
    pub events: EventLog,
}

/// A completed run.
#[derive(Clone, Debug)]
pub struct SimTrace {
    pub trace: Trace,
    pub final_state: GridState,
    pub diagnostics: Vec<StepDiagnostics>,
}

/// Stepping driver that keeps the event log in sync with the state.
#[derive(Clone, Debug)]
pub struct Simulation {
    state: GridState,
    events: EventLog,
    exec: Exec,
    max_frozen_distance: u32,
    diagnostics: Vec<StepDiagnostics>,
}

impl Simulation {
    pub fn new(params: SimParams) -> Result<Self, ParamError> {
        let state = init_state(params)?;
        let events = EventLog::initial(&state);
        Ok(Self {
            max_frozen_distance: state.max_frozen_distance(),
            state,
            events,
            exec: Exec::default(),
            diagnostics: Vec::new(),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn state(&self) -> &GridState {
        &self.state
    }

    pub fn events(&self) -> &EventLog {
        &self.events
    }

    pub fn params(&self) -> &SimParams {
        &self.state.params
    }

    pub fn margin_reached(&self) -> bool {
        let p = &self.state.params;
        self.max_frozen_distance + p.stop_margin >= p.radius
    }

    /// Take one step, returning the previous state alongside the report.
    pub fn step_with_prev(&mut self) -> (GridState, StepReport) {
        let advanced = advance(&self.state, self.exec);
        let next = advanced.state;
        let (freezes, boundaries) = self.events.record_step(&self.state, &next);
        for f in &freezes {
            self.max_frozen_distance = self.max_frozen_distance.max(f.cell.norm());
        }
        let lat = Arc::clone(next.lattice());
        let nr_gain_count = lat
            .cells()
            .iter()
            .filter(|&&idx| {
                self.state.class[idx].kind == CellKind::NonReceptive && next.s[idx] > self.state.s[idx]
            })
            .count();
        let diagnostics = StepDiagnostics {
            t: next.t,
            total_water: next.total_water(),
            frozen_count: self.events.frozen_count(),
            max_frozen_distance: self.max_frozen_distance,
            nr_gain_count,
            redistribution_drift: advanced.redistribution_totals.map(|(before, after)| after - before),
        };
        self.diagnostics.push(diagnostics);
        let prev = std::mem::replace(&mut self.state, next);
        (prev, StepReport { freezes, boundaries, diagnostics })
    }

    pub fn step(&mut self) -> StepReport {
        self.step_with_prev().1
    }

    /// Run to completion.
    pub fn run(self) -> SimTrace {
        self.run_observed(|_, _, _| {})
    }

    /// Run to completion, handing each `(previous, current, report)` triple
    /// to `observer`.
    pub fn run_observed<F>(mut self, mut observer: F) -> SimTrace
    where
        F: FnMut(&GridState, &GridState, &StepReport),
    {
        let stop = loop {
            if self.margin_reached() {
                break StopReason::MarginReached;
            }
            if self.state.t >= self.state.params.max_steps {
                break StopReason::BudgetExhausted;
            }
            let (prev, report) = self.step_with_prev();
            observer(&prev, &self.state, &report);
        };
        SimTrace {
            trace: Trace {
                params: self.state.params,
                steps: self.state.t,
                stop,
                events: self.events,
            },
            final_state: self.state,
            diagnostics: self.diagnostics,
        }
    }
}

/// Run a simulation from the initial condition until it stops.
pub fn run(params: SimParams) -> Result<SimTrace, ParamError> {
    Ok(Simulation::new(params)?.run())
}
