//! CSV tables. Floats use Rust's shortest round-trip formatting, so equal
//! inputs always give byte-identical files.

use std::fmt::Write as _;

use crate::analysis::{direction_trace, EnvelopeFit, MainBranchSeries, TipRow};
use crate::onedim::Comparison;
use crate::reiter::EventLog;

/// Source written for cells without one.
pub const NO_SOURCE: i32 = -999;

/// One row per frozen cell, sorted by `(T, i, j)`.
pub fn events_csv(log: &EventLog) -> String {
    let mut out = String::from("i,j,B,T,L,angle_deg,src_i,src_j\n");
    for e in log.freeze_events() {
        let angle = e.angle.map(|a| a.degrees().to_string()).unwrap_or_default();
        let (si, sj) = e.source.map_or((NO_SOURCE, NO_SOURCE), |s| (s.i, s.j));
        writeln!(out, "{},{},{},{},{},{},{},{}", e.cell.i, e.cell.j, e.boundary, e.frozen, e.frozen - e.boundary, angle, si, sj)
            .unwrap();
    }
    out
}

pub fn latency_csv(series: &MainBranchSeries) -> String {
    let mut out = String::from("j,L\n");
    for p in &series.points {
        writeln!(out, "{},{}", p.j, p.latency).unwrap();
    }
    out
}

pub fn tips_csv(rows: &[TipRow]) -> String {
    let mut out = String::from("root_j,tip_i,tip_j,E,F,D\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{},{}", r.root_j, r.tip.i, r.tip.j, r.e, r.f, r.d).unwrap();
    }
    out
}

/// Header only when the fit failed.
pub fn envelope_csv(fit: Option<&EnvelopeFit>) -> String {
    let mut out = String::from("slope,intercept,theta_rad,n_support\n");
    if let Some(f) = fit {
        writeln!(out, "{},{},{},{}", f.slope, f.intercept, f.theta, f.support.len()).unwrap();
    }
    out
}

/// Every cell with a recorded source, in coordinate order.
pub fn directions_csv(log: &EventLog) -> String {
    let mut out = String::from("i,j,angle_deg\n");
    for (c, a) in direction_trace(log) {
        writeln!(out, "{},{},{}", c.i, c.j, a.degrees()).unwrap();
    }
    out
}

/// Line model against its predictors, one row per grown cell.
pub fn comparison_csv(cmp: &Comparison) -> String {
    let mut out = String::from("k,B,T,L,L_hat,delta_s_min,delta_s_hat\n");
    for r in &cmp.rows {
        let b = cmp.trace.boundary[r.k].unwrap();
        let min = r.delta_s_sim.iter().copied().fold(f64::INFINITY, f64::min);
        writeln!(out, "{},{},{},{},{},{},{}", r.k, b, b + r.latency_sim, r.latency_sim, r.latency_hat, min, r.delta_s_hat)
            .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::main_branch_latency_series;
    use crate::reiter::{run, SimParams};

    #[test]
    fn events_table_shape() {
        let log = run(SimParams { radius: 20, ..SimParams::default() }).unwrap().trace.events;
        let csv = events_csv(&log);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i,j,B,T,L,angle_deg,src_i,src_j");
        assert_eq!(lines[1], "0,0,0,0,0,,-999,-999");
        assert_eq!(lines.len() - 1, log.frozen_count());
        let keys: Vec<(u64, i32, i32)> = lines[1..]
            .iter()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[3].parse().unwrap(), f[0].parse().unwrap(), f[1].parse().unwrap())
            })
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 8));
    }

    #[test]
    fn latency_table_matches_series() {
        let log = run(SimParams { radius: 20, ..SimParams::default() }).unwrap().trace.events;
        let series = main_branch_latency_series(&log);
        let csv = latency_csv(&series);
        assert!(csv.starts_with("j,L\n0,0\n"));
        assert_eq!(csv.lines().count(), series.points.len() + 1);
    }

    #[test]
    fn empty_envelope_is_header_only() {
        assert_eq!(envelope_csv(None), "slope,intercept,theta_rad,n_support\n");
    }
}
