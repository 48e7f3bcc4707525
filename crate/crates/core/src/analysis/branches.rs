//! Side branches grown off the positive `j` axis in the `+i` direction.
//!
//! For a root `z0 = (0, j)` the side branch `Φ` is the run of consecutive
//! frozen cells `(0, j), (1, j), (2, j), …`; the straight path `Ψ ⊆ Φ` stops
//! at the first cell whose source is not its `−i` predecessor; the cluster
//! `Θ` collects every frozen cell whose source chain first lands on `Ψ`.

use std::collections::HashMap;

use crate::error::AnalysisError;
use crate::hexgrid::{hex_distance, AxialCoord};
use crate::reiter::EventLog;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideBranch {
    pub root: AxialCoord,
    pub cells: Vec<AxialCoord>,
    /// `E = |cells| − 1`.
    pub length: usize,
    pub tip: AxialCoord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightPath {
    pub root: AxialCoord,
    pub cells: Vec<AxialCoord>,
    /// `F = |cells| − 1`.
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub root: AxialCoord,
    /// Sorted by coordinate.
    pub cells: Vec<AxialCoord>,
    /// Largest hex distance from a member to the root.
    pub length: u32,
    /// Length of the straight path the cluster hangs off.
    pub straight_length: usize,
    /// Members at distance `length` from the root.
    pub farthest: usize,
}

impl Cluster {
    pub fn d_equals_f(&self) -> bool {
        self.length as usize == self.straight_length
    }
}

fn check_root(log: &EventLog, root: AxialCoord) -> Result<(), AnalysisError> {
    if !log.lattice().contains(root) {
        return Err(AnalysisError::OutsideGrid(root));
    }
    if root.i != 0 || root.j < 1 {
        return Err(AnalysisError::NotOnMainBranch(root));
    }
    if !log.is_frozen(root) {
        return Err(AnalysisError::NeverFroze(root));
    }
    Ok(())
}

fn walk(log: &EventLog, root: AxialCoord, keep: impl Fn(AxialCoord, AxialCoord) -> bool) -> Vec<AxialCoord> {
    let mut cells = vec![root];
    loop {
        let prev = *cells.last().unwrap();
        let next = prev.offset(1, 0);
        if !log.is_frozen(next) || !keep(prev, next) {
            return cells;
        }
        cells.push(next);
    }
}

pub fn side_branch(log: &EventLog, root: AxialCoord) -> Result<SideBranch, AnalysisError> {
    check_root(log, root)?;
    let cells = walk(log, root, |_, _| true);
    Ok(SideBranch { root, length: cells.len() - 1, tip: *cells.last().unwrap(), cells })
}

pub fn straight_path(log: &EventLog, root: AxialCoord) -> Result<StraightPath, AnalysisError> {
    check_root(log, root)?;
    let cells = walk(log, root, |prev, next| log.source(next) == Some(prev));
    Ok(StraightPath { root, length: cells.len() - 1, cells })
}

/// Frozen roots `(0, 1), (0, 2), …` up to the first unfrozen axis cell.
pub fn cluster_roots(log: &EventLog) -> Vec<AxialCoord> {
    (1..=log.radius() as i32)
        .map(|j| AxialCoord::new(0, j))
        .take_while(|&c| log.is_frozen(c))
        .collect()
}

/// Map every frozen cell to the root of the cluster it belongs to.
fn assign(log: &EventLog) -> Result<HashMap<AxialCoord, AxialCoord>, AnalysisError> {
    // Straight-path cells own themselves; roots are added separately so that
    // chains reaching the axis directly stay unassigned.
    let mut owner: HashMap<AxialCoord, Option<AxialCoord>> = HashMap::new();
    let mut out = HashMap::new();
    for root in cluster_roots(log) {
        for &c in &straight_path(log, root)?.cells {
            if c.i >= 1 {
                owner.insert(c, Some(root));
            }
        }
        out.insert(root, root);
    }
    for (c, rec) in log.iter() {
        if rec.frozen.is_none() || owner.contains_key(&c) {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = c;
        let found = loop {
            if let Some(&o) = owner.get(&cur) {
                break o;
            }
            if cur.i == 0 {
                break None;
            }
            chain.push(cur);
            match log.source(cur) {
                Some(s) => cur = s,
                None => break None,
            }
        };
        for z in chain {
            owner.insert(z, found);
        }
    }
    out.extend(owner.into_iter().filter_map(|(c, o)| Some((c, o?))));
    Ok(out)
}

fn build(root: AxialCoord, mut cells: Vec<AxialCoord>, straight_length: usize) -> Cluster {
    cells.sort();
    let length = cells.iter().map(|&c| hex_distance(c, root)).max().unwrap_or(0);
    let farthest = cells.iter().filter(|&&c| hex_distance(c, root) == length).count();
    Cluster { root, cells, length, straight_length, farthest }
}

pub fn cluster(log: &EventLog, root: AxialCoord) -> Result<Cluster, AnalysisError> {
    let path = straight_path(log, root)?;
    let owners = assign(log)?;
    let cells = owners.into_iter().filter(|&(_, r)| r == root).map(|(c, _)| c).collect();
    Ok(build(root, cells, path.length))
}

/// Clusters of every frozen root, in root order.
pub fn clusters(log: &EventLog) -> Result<Vec<Cluster>, AnalysisError> {
    let owners = assign(log)?;
    let mut members: HashMap<AxialCoord, Vec<AxialCoord>> = HashMap::new();
    for (c, r) in owners {
        members.entry(r).or_default().push(c);
    }
    cluster_roots(log)
        .into_iter()
        .map(|root| {
            let f = straight_path(log, root)?.length;
            Ok(build(root, members.remove(&root).unwrap_or_default(), f))
        })
        .collect()
}

/// One row per root: tip position with `E`, `F` and `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TipRow {
    pub root_j: i32,
    pub tip: AxialCoord,
    pub e: usize,
    pub f: usize,
    pub d: u32,
}

pub fn tips(log: &EventLog) -> Result<Vec<TipRow>, AnalysisError> {
    clusters(log)?
        .into_iter()
        .map(|cl| {
            let branch = side_branch(log, cl.root)?;
            Ok(TipRow { root_j: cl.root.j, tip: branch.tip, e: branch.length, f: cl.straight_length, d: cl.length })
        })
        .collect()
}
