//! Growth analytics computed from a completed event log.

mod branches;
mod envelope;

pub use branches::{cluster, cluster_roots, clusters, side_branch, straight_path, tips, Cluster, SideBranch, StraightPath, TipRow};
pub use envelope::{envelope_fit, latency_ratio, EnvelopeFit, Exclusions};

use crate::error::AnalysisError;
use crate::geometry::{convex_contains, convex_hull};
use crate::hexgrid::{reflect, rotate60, to_cartesian, AxialCoord, DirectionAngle, ORIGIN};
use crate::reiter::{EventLog, GridState};

/// Growth latency `L(c) = T(c) − B(c)`.
pub fn latency(log: &EventLog, c: AxialCoord) -> Result<u64, AnalysisError> {
    let rec = log.record(c).ok_or(AnalysisError::OutsideGrid(c))?;
    let b = rec.boundary.ok_or(AnalysisError::NeverBoundary(c))?;
    let t = rec.frozen.ok_or(AnalysisError::NeverFroze(c))?;
    Ok(t - b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainBranchPoint {
    pub j: i32,
    pub boundary: u64,
    pub frozen: u64,
    pub latency: u64,
    pub angle: Option<DirectionAngle>,
    /// Beyond 90% of the radius, where the edge distorts growth.
    pub near_edge: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateauStats {
    pub j_min: i32,
    pub j_max: i32,
    pub min: u64,
    pub max: u64,
    pub mean: f64,
}

impl PlateauStats {
    pub fn spread(&self) -> u64 {
        self.max - self.min
    }
}

/// Latencies along the positive `j` axis.
#[derive(Clone, Debug, PartialEq)]
pub struct MainBranchSeries {
    pub points: Vec<MainBranchPoint>,
    /// `j` values where `B(0, j+1) != T(0, j)`.
    pub handoff_violations: Vec<i32>,
    /// `j ≥ 1` values whose recorded direction is not −90°.
    pub angle_violations: Vec<i32>,
    /// Whether `T(0,j) − T(0,0)` equals the running latency sum for every `j`.
    pub telescoping_holds: bool,
    /// Statistics over `10 ≤ j ≤ 0.9R` (absent when that range is empty).
    pub plateau: Option<PlateauStats>,
}

impl MainBranchSeries {
    pub fn latencies(&self) -> Vec<(i32, u64)> {
        self.points.iter().map(|p| (p.j, p.latency)).collect()
    }
}

pub fn main_branch_latency_series(log: &EventLog) -> MainBranchSeries {
    let r = log.radius();
    let edge_cut = (0.9 * r as f64).floor() as i32;
    let mut points = Vec::new();
    for j in 0..=r as i32 {
        let c = AxialCoord::new(0, j);
        let Ok(l) = latency(log, c) else { break };
        let rec = log.record(c).unwrap();
        points.push(MainBranchPoint {
            j,
            boundary: rec.boundary.unwrap(),
            frozen: rec.frozen.unwrap(),
            latency: l,
            angle: log.angle(c),
            near_edge: j > edge_cut,
        });
    }
    let handoff_violations = points
        .windows(2)
        .filter(|w| w[1].boundary != w[0].frozen)
        .map(|w| w[0].j)
        .collect();
    let angle_violations = points
        .iter()
        .filter(|p| p.j >= 1 && p.angle != Some(DirectionAngle::Minus90))
        .map(|p| p.j)
        .collect();
    let t0 = points.first().map_or(0, |p| p.frozen);
    let mut sum = 0;
    let mut telescoping_holds = true;
    for p in points.iter().skip(1) {
        sum += p.latency;
        telescoping_holds &= p.frozen - t0 == sum;
    }
    let window: Vec<&MainBranchPoint> = points.iter().filter(|p| (10..=edge_cut).contains(&p.j)).collect();
    let plateau = (!window.is_empty()).then(|| PlateauStats {
        j_min: window[0].j,
        j_max: window[window.len() - 1].j,
        min: window.iter().map(|p| p.latency).min().unwrap(),
        max: window.iter().map(|p| p.latency).max().unwrap(),
        mean: window.iter().map(|p| p.latency as f64).sum::<f64>() / window.len() as f64,
    });
    MainBranchSeries { points, handoff_violations, angle_violations, telescoping_holds, plateau }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingViolation {
    /// Froze strictly before the axis cell `(0, K)`.
    BeforeAxis(AxialCoord),
    /// Froze strictly after the midpoint cell.
    AfterMidpoint(AxialCoord),
}

/// Freeze-time ordering along the diagonal `i + j = K`, `j ≥ i ≥ 0`.
///
/// A cell still unfrozen when the run stopped freezes later than every
/// recorded time, so comparisons against it are decided; only pairs where
/// both cells are unfrozen are left open.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingReport {
    pub k: i32,
    pub midpoint: AxialCoord,
    pub cells: Vec<(AxialCoord, Option<u64>)>,
    pub violations: Vec<OrderingViolation>,
    /// Cells whose comparison with the axis or the midpoint cannot be
    /// decided because both are unfrozen.
    pub undecided: Vec<AxialCoord>,
}

impl OrderingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn unfrozen(&self) -> impl Iterator<Item = AxialCoord> + '_ {
        self.cells.iter().filter(|(_, t)| t.is_none()).map(|&(c, _)| c)
    }
}

/// `Some(a < b)` with `None` read as "after every recorded time".
fn earlier(a: Option<u64>, b: Option<u64>) -> Option<bool> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a < b),
        (Some(_), None) => Some(true),
        (None, Some(_)) => Some(false),
        (None, None) => None,
    }
}

/// Check that `(0, K)` freezes first and the diagonal midpoint freezes last.
/// The midpoint is `(K/2, K/2)` for even `K` and `((K−1)/2, (K+1)/2)` for odd `K`.
pub fn growth_ordering_check(log: &EventLog, k: i32) -> OrderingReport {
    let midpoint = AxialCoord::new(k / 2, k - k / 2);
    let cells: Vec<(AxialCoord, Option<u64>)> = (0..=k / 2)
        .map(|i| {
            let c = AxialCoord::new(i, k - i);
            (c, log.frozen_at(c))
        })
        .collect();
    let axis = cells[0].1;
    let mid = log.frozen_at(midpoint);
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    for &(c, t) in &cells {
        let before_axis = if c == cells[0].0 { Some(false) } else { earlier(t, axis) };
        let after_mid = if c == midpoint { Some(false) } else { earlier(mid, t) };
        match before_axis {
            Some(true) => violations.push(OrderingViolation::BeforeAxis(c)),
            None => undecided.push(c),
            Some(false) => {}
        }
        match after_mid {
            Some(true) => violations.push(OrderingViolation::AfterMidpoint(c)),
            None if before_axis.is_some() => undecided.push(c),
            _ => {}
        }
    }
    OrderingReport { k, midpoint, cells, violations, undecided }
}

/// Recorded direction of every cell that has a source, sorted by coordinate.
pub fn direction_trace(log: &EventLog) -> Vec<(AxialCoord, DirectionAngle)> {
    log.iter().filter_map(|(c, _)| Some((c, log.angle(c)?))).collect()
}

/// How many times each direction occurs, in [`DirectionAngle::ALL`] order.
pub fn direction_histogram(log: &EventLog) -> [(DirectionAngle, usize); 6] {
    let mut out = DirectionAngle::ALL.map(|a| (a, 0));
    for (_, a) in direction_trace(log) {
        out.iter_mut().find(|(b, _)| *b == a).unwrap().1 += 1;
    }
    out
}

/// First cell whose `s`, `u` or `v` differs from its image under the 60°
/// rotation or the reflection by more than `tol`. `None` means symmetric.
pub fn check_symmetry(g: &GridState, tol: f64) -> Option<AxialCoord> {
    let lat = g.lattice();
    let fields = [&g.s, &g.u, &g.v];
    for &idx in lat.cells() {
        let c = lat.coord(idx);
        for image in [rotate60(c), reflect(c)] {
            let other = lat.index(image).expect("the lattice is closed under its symmetries");
            if fields.iter().any(|f| {
                let d = (f[idx] - f[other]).abs();
                d > tol || d.is_nan()
            }) {
                return Some(c);
            }
        }
    }
    None
}

/// Frozen cells divided by the lattice cells inside their convex hull.
pub fn fill_factor(log: &EventLog) -> f64 {
    let lat = log.lattice();
    let frozen: Vec<_> = lat
        .cells()
        .iter()
        .map(|&idx| lat.coord(idx))
        .filter(|&c| log.is_frozen(c))
        .collect();
    if frozen.len() <= 1 {
        return if frozen.is_empty() { 0.0 } else { 1.0 };
    }
    let hull = convex_hull(&frozen.iter().map(|&c| to_cartesian(c)).collect::<Vec<_>>());
    let inside = lat
        .cells()
        .iter()
        .filter(|&&idx| convex_contains(&hull, to_cartesian(lat.coord(idx)), 1e-9))
        .count();
    frozen.len() as f64 / inside as f64
}

/// Whether every cell of the event log is reached by source chains from the
/// origin, with each source adjacent and frozen no later than the cell's
/// boundary time.
pub fn sources_consistent(log: &EventLog) -> bool {
    log.iter().all(|(c, rec)| match rec.source {
        None => c == ORIGIN || rec.boundary == rec.frozen,
        Some(s) => {
            crate::hexgrid::are_adjacent(c, s) && log.frozen_at(s) == rec.boundary
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reiter::{run, SimParams};

    fn small_run() -> EventLog {
        run(SimParams { radius: 30, ..SimParams::default() }).unwrap().trace.events
    }

    #[test]
    fn latency_errors_are_distinct() {
        let log = small_run();
        assert_eq!(latency(&log, ORIGIN), Ok(0));
        let far = AxialCoord::new(0, 30);
        assert_eq!(latency(&log, far), Err(AnalysisError::NeverBoundary(far)));
        assert_eq!(latency(&log, AxialCoord::new(0, 40)), Err(AnalysisError::OutsideGrid(AxialCoord::new(0, 40))));
        let (c, _) = log.iter().find(|(_, r)| r.boundary.is_some() && r.frozen.is_none()).unwrap();
        assert_eq!(latency(&log, c), Err(AnalysisError::NeverFroze(c)));
    }

    #[test]
    fn main_branch_series_properties() {
        let log = small_run();
        let series = main_branch_latency_series(&log);
        assert!(series.points.len() > 3);
        assert!(series.handoff_violations.is_empty());
        assert!(series.angle_violations.is_empty());
        assert!(series.telescoping_holds);
        assert_eq!(series.points[0].latency, 0);
        assert!(series.points.iter().all(|p| p.near_edge == (p.j > 27)));
        assert!(sources_consistent(&log));
    }

    #[test]
    fn ordering_small_k() {
        let log = small_run();
        let one = growth_ordering_check(&log, 1);
        assert_eq!(one.cells.len(), 1);
        assert_eq!(one.midpoint, AxialCoord::new(0, 1));
        assert!(one.holds());
        assert_eq!(growth_ordering_check(&log, 7).midpoint, AxialCoord::new(3, 4));
        assert_eq!(growth_ordering_check(&log, 8).midpoint, AxialCoord::new(4, 4));
        let far = growth_ordering_check(&log, 29);
        assert!(far.unfrozen().count() > 0);
    }

    #[test]
    fn ordering_on_a_toy_diagonal() {
        use crate::reiter::CellRecord;
        let mut log = EventLog::empty(8);
        fn set(log: &mut EventLog, c: (i32, i32), t: u64) {
            *log.record_mut(c.into()).unwrap() = CellRecord { boundary: Some(0), frozen: Some(t), source: None };
        }
        set(&mut log, (0, 4), 10);
        set(&mut log, (1, 3), 12);
        set(&mut log, (2, 2), 20);
        assert!(growth_ordering_check(&log, 4).holds());
        set(&mut log, (1, 3), 25);
        assert_eq!(growth_ordering_check(&log, 4).violations, vec![OrderingViolation::AfterMidpoint((1, 3).into())]);
        set(&mut log, (1, 3), 5);
        assert_eq!(growth_ordering_check(&log, 4).violations, vec![OrderingViolation::BeforeAxis((1, 3).into())]);
        // K = 5: (2,3) is the midpoint and never froze, so it is last
        set(&mut log, (0, 5), 30);
        set(&mut log, (1, 4), 31);
        let r = growth_ordering_check(&log, 5);
        assert!(r.holds() && r.undecided.is_empty());
        assert_eq!(r.unfrozen().collect::<Vec<_>>(), vec![AxialCoord::new(2, 3)]);
        // K = 6: (2,4) and the midpoint (3,3) are both unfrozen
        set(&mut log, (0, 6), 40);
        set(&mut log, (1, 5), 41);
        let r = growth_ordering_check(&log, 6);
        assert!(r.holds());
        assert_eq!(r.undecided, vec![AxialCoord::new(2, 4)]);
    }

    #[test]
    fn direction_trace_is_symmetric() {
        let log = small_run();
        let trace = direction_trace(&log);
        assert!(!trace.is_empty());
        // ties between simultaneously frozen neighbours are broken in a fixed
        // order, so only uniquely sourced cells map onto each other
        let unique = |c: AxialCoord| {
            let b = log.boundary_at(c);
            crate::hexgrid::neighbors(c).iter().filter(|&&n| log.frozen_at(n) == b).count() == 1
        };
        let mut checked = 0;
        for &(c, a) in trace.iter().filter(|&&(c, _)| unique(c)) {
            checked += 1;
            assert_eq!(log.angle(rotate60(c)), Some(a.rotate60()), "{c}");
            assert_eq!(log.angle(reflect(c)), Some(a.reflect()), "{c}");
        }
        assert!(checked > trace.len() / 2);
        let total: usize = direction_histogram(&log).iter().map(|(_, n)| n).sum();
        assert_eq!(total, trace.len());
    }

    #[test]
    fn symmetry_detects_perturbation() {
        let p = SimParams { radius: 10, ..SimParams::default() };
        let mut g = crate::reiter::init_state(p).unwrap();
        assert_eq!(check_symmetry(&g, 0.0), None);
        let c = AxialCoord::new(2, 3);
        g.set_s(c, 0.5);
        let bad = check_symmetry(&g, 0.0).unwrap();
        // the first offender is either the cell or one of its images
        let orbit: Vec<AxialCoord> = (0..6)
            .scan(c, |z, _| {
                let out = *z;
                *z = rotate60(*z);
                Some(out)
            })
            .flat_map(|z| [z, reflect(z)])
            .collect();
        assert!(orbit.contains(&bad));
        assert_eq!(check_symmetry(&g, 1.0), None);
    }

    #[test]
    fn fill_factor_of_compact_and_sparse_sets() {
        let mut log = EventLog::empty(6);
        for c in [ORIGIN].into_iter().chain(crate::hexgrid::neighbors(ORIGIN)) {
            log.record_mut(c).unwrap().frozen = Some(0);
        }
        assert_eq!(fill_factor(&log), 1.0);
        let mut log = EventLog::empty(6);
        for c in [ORIGIN, AxialCoord::new(3, 0), AxialCoord::new(0, 3)] {
            log.record_mut(c).unwrap().frozen = Some(0);
        }
        // the triangle (0,0), (3,0), (0,3) covers 10 cells
        assert!((fill_factor(&log) - 0.3).abs() < 1e-12);
    }
}
