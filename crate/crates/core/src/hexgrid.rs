//! Hexagonal lattice geometry.
//!
//! Cells are addressed by axial coordinates `(i, j)`. The `j` axis points
//! straight up in the Cartesian embedding and the `i` axis points up-right at
//! +30°, so the two lattice axes meet at 60°. With this convention the cells
//! with `j >= i >= 0` span one twelfth of the plane and every cell with
//! `i + j = K` (and `i, j >= 0`) lies at hex distance `K` from the origin.

use std::fmt;

use crate::error::GeometryError;

/// The six neighbour offsets in counter-clockwise order starting at +30°.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Integer lattice coordinate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxialCoord {
    pub i: i32,
    pub j: i32,
}

pub const ORIGIN: AxialCoord = AxialCoord { i: 0, j: 0 };

impl AxialCoord {
    #[inline]
    pub const fn new(i: i32, j: i32) -> Self {
        Self { i, j }
    }

    #[inline]
    pub fn is_origin(self) -> bool {
        self == ORIGIN
    }

    #[inline]
    pub fn offset(self, di: i32, dj: i32) -> Self {
        Self::new(self.i + di, self.j + dj)
    }

    /// Hex distance from the origin.
    #[inline]
    pub fn norm(self) -> u32 {
        hex_distance(ORIGIN, self)
    }
}

impl fmt::Display for AxialCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl From<(i32, i32)> for AxialCoord {
    fn from((i, j): (i32, i32)) -> Self {
        Self::new(i, j)
    }
}

/// Orientation of a source cell as seen from its destination cell, measured
/// against the horizontal axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DirectionAngle {
    Minus150,
    Minus90,
    Minus30,
    Plus30,
    Plus90,
    Plus150,
}

impl DirectionAngle {
    /// All six values in the source tie-break order.
    pub const ALL: [DirectionAngle; 6] = [
        DirectionAngle::Minus150,
        DirectionAngle::Minus90,
        DirectionAngle::Minus30,
        DirectionAngle::Plus30,
        DirectionAngle::Plus90,
        DirectionAngle::Plus150,
    ];

    pub fn degrees(self) -> i32 {
        match self {
            DirectionAngle::Minus150 => -150,
            DirectionAngle::Minus90 => -90,
            DirectionAngle::Minus30 => -30,
            DirectionAngle::Plus30 => 30,
            DirectionAngle::Plus90 => 90,
            DirectionAngle::Plus150 => 150,
        }
    }

    pub fn from_degrees(deg: i32) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.degrees() == deg)
    }

    /// The lattice offset pointing in this direction.
    pub fn offset(self) -> (i32, i32) {
        match self {
            DirectionAngle::Plus30 => (1, 0),
            DirectionAngle::Plus90 => (0, 1),
            DirectionAngle::Plus150 => (-1, 1),
            DirectionAngle::Minus150 => (-1, 0),
            DirectionAngle::Minus90 => (0, -1),
            DirectionAngle::Minus30 => (1, -1),
        }
    }

    pub fn from_offset(di: i32, dj: i32) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.offset() == (di, dj))
    }

    /// Counter-clockwise rotation by 60°.
    pub fn rotate60(self) -> Self {
        let (di, dj) = self.offset();
        let r = rotate60(AxialCoord::new(di, dj));
        Self::from_offset(r.i, r.j).expect("rotation maps offsets to offsets")
    }

    /// Mirror image across the vertical axis.
    pub fn reflect(self) -> Self {
        let (di, dj) = self.offset();
        let r = reflect(AxialCoord::new(di, dj));
        Self::from_offset(r.i, r.j).expect("reflection maps offsets to offsets")
    }

    pub fn opposite(self) -> Self {
        let (di, dj) = self.offset();
        Self::from_offset(-di, -dj).unwrap()
    }

    pub fn radians(self) -> f64 {
        (self.degrees() as f64).to_radians()
    }
}

impl fmt::Display for DirectionAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}°", self.degrees())
    }
}

/// Position in the plane, unit lattice spacing.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// The six neighbours in the fixed order of [`NEIGHBOR_OFFSETS`].
pub fn neighbors(c: AxialCoord) -> [AxialCoord; 6] {
    NEIGHBOR_OFFSETS.map(|(di, dj)| c.offset(di, dj))
}

pub fn are_adjacent(a: AxialCoord, b: AxialCoord) -> bool {
    NEIGHBOR_OFFSETS.contains(&(b.i - a.i, b.j - a.j))
}

pub fn hex_distance(a: AxialCoord, b: AxialCoord) -> u32 {
    let di = (b.i - a.i) as i64;
    let dj = (b.j - a.j) as i64;
    ((di.abs() + dj.abs() + (di + dj).abs()) / 2) as u32
}

/// All cells at hex distance `r` from the origin, walking the ring
/// counter-clockwise from `(r, 0)`.
pub fn ring_cells(r: u32) -> Vec<AxialCoord> {
    if r == 0 {
        return vec![ORIGIN];
    }
    let r = r as i32;
    let mut out = Vec::with_capacity(6 * r as usize);
    let mut cur = AxialCoord::new(r, 0);
    // Starting at the +30° corner, each side runs along the direction 120°
    // ahead of the corner's own direction.
    for (di, dj) in [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)] {
        for _ in 0..r {
            out.push(cur);
            cur = cur.offset(di, dj);
        }
    }
    out
}

/// The two neighbours of `c` lying on the same ring as `c`.
pub fn ring_neighbors(c: AxialCoord) -> Result<(AxialCoord, AxialCoord), GeometryError> {
    if c.is_origin() {
        return Err(GeometryError::OriginHasNoRing);
    }
    let r = c.norm();
    let mut found = neighbors(c).into_iter().filter(|n| n.norm() == r);
    let a = found.next().expect("ring cell has two on-ring neighbours");
    let b = found.next().expect("ring cell has two on-ring neighbours");
    debug_assert!(found.next().is_none());
    Ok((a, b))
}

/// Orientation of `src` as seen from `dest`.
pub fn direction_angle(dest: AxialCoord, src: AxialCoord) -> Result<DirectionAngle, GeometryError> {
    DirectionAngle::from_offset(src.i - dest.i, src.j - dest.j)
        .ok_or(GeometryError::NotAdjacent { dest, src })
}

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

pub fn to_cartesian(c: AxialCoord) -> CartesianPoint {
    let i = c.i as f64;
    CartesianPoint::new(i * HALF_SQRT3, 0.5 * i + c.j as f64)
}

/// Nearest lattice cell to a point in the plane.
pub fn from_cartesian(p: CartesianPoint) -> AxialCoord {
    let fi = p.x / HALF_SQRT3;
    let fj = p.y - 0.5 * fi;
    let fk = -fi - fj;
    let (mut ri, mut rj, rk) = (fi.round(), fj.round(), fk.round());
    let (di, dj, dk) = ((ri - fi).abs(), (rj - fj).abs(), (rk - fk).abs());
    if di > dj && di > dk {
        ri = -rj - rk;
    } else if dj > dk {
        rj = -ri - rk;
    }
    AxialCoord::new(ri as i32, rj as i32)
}

/// Counter-clockwise rotation by 60° about the origin.
#[inline]
pub fn rotate60(c: AxialCoord) -> AxialCoord {
    AxialCoord::new(-c.j, c.i + c.j)
}

/// Mirror across the `j` axis.
#[inline]
pub fn reflect(c: AxialCoord) -> AxialCoord {
    AxialCoord::new(-c.i, c.i + c.j)
}

/// Dense storage layout for the hexagon of radius `R` centred on the origin.
///
/// Cells live in a `(2R+1)²` row-major array indexed by `(i+R, j+R)`; the
/// corners outside the hexagon are padding. Neighbour lookups are constant
/// index offsets, which only stay in bounds for cells strictly inside the
/// outer ring.
#[derive(Debug)]
pub struct HexLattice {
    radius: u32,
    side: usize,
    cells: Vec<usize>,
    dist: Vec<u32>,
    neighbor_delta: [isize; 6],
    ring_pairs: Vec<[usize; 2]>,
}

pub(crate) const PADDING: u32 = u32::MAX;

impl HexLattice {
    pub fn new(radius: u32) -> Self {
        let r = radius as i32;
        let side = 2 * radius as usize + 1;
        let mut dist = vec![PADDING; side * side];
        let mut cells = Vec::with_capacity(1 + 3 * radius as usize * (radius as usize + 1));
        for i in -r..=r {
            for j in -r..=r {
                let c = AxialCoord::new(i, j);
                let d = c.norm();
                if d <= radius {
                    let idx = (i + r) as usize * side + (j + r) as usize;
                    dist[idx] = d;
                    cells.push(idx);
                }
            }
        }
        let neighbor_delta = NEIGHBOR_OFFSETS.map(|(di, dj)| di as isize * side as isize + dj as isize);
        let mut lattice = Self {
            radius,
            side,
            cells,
            dist,
            neighbor_delta,
            ring_pairs: Vec::new(),
        };
        let mut ring_pairs = vec![[usize::MAX; 2]; side * side];
        for &idx in &lattice.cells {
            let c = lattice.coord(idx);
            if let Ok((a, b)) = ring_neighbors(c) {
                ring_pairs[idx] = [lattice.index(a).unwrap(), lattice.index(b).unwrap()];
            }
        }
        lattice.ring_pairs = ring_pairs;
        lattice
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Length of the dense backing arrays (includes padding).
    pub fn dense_len(&self) -> usize {
        self.side * self.side
    }

    /// Number of real cells, `1 + 3R(R+1)`.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Dense indices of the real cells.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    #[inline]
    pub fn contains(&self, c: AxialCoord) -> bool {
        c.norm() <= self.radius
    }

    #[inline]
    pub fn index(&self, c: AxialCoord) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let r = self.radius as i32;
        Some((c.i + r) as usize * self.side + (c.j + r) as usize)
    }

    #[inline]
    pub fn coord(&self, idx: usize) -> AxialCoord {
        let r = self.radius as i32;
        AxialCoord::new((idx / self.side) as i32 - r, (idx % self.side) as i32 - r)
    }

    #[inline]
    pub fn is_cell(&self, idx: usize) -> bool {
        self.dist[idx] != PADDING
    }

    /// Hex distance from the origin, or `None` for padding.
    #[inline]
    pub fn distance(&self, idx: usize) -> Option<u32> {
        let d = self.dist[idx];
        (d != PADDING).then_some(d)
    }

    #[inline]
    pub fn is_edge(&self, idx: usize) -> bool {
        self.dist[idx] == self.radius
    }

    /// Dense indices of the six neighbours. Only valid for non-edge cells.
    #[inline]
    pub fn neighbor_indices(&self, idx: usize) -> [usize; 6] {
        debug_assert!(self.is_cell(idx) && !self.is_edge(idx));
        self.neighbor_delta.map(|d| (idx as isize + d) as usize)
    }

    /// Dense indices of the two ring neighbours. Only valid for non-origin cells.
    #[inline]
    pub fn ring_neighbor_indices(&self, idx: usize) -> [usize; 2] {
        self.ring_pairs[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn c(i: i32, j: i32) -> AxialCoord {
        AxialCoord::new(i, j)
    }

    fn bfs_distances(radius: i32) -> HashMap<AxialCoord, u32> {
        let mut seen = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(ORIGIN, 0);
        queue.push_back(ORIGIN);
        while let Some(cur) = queue.pop_front() {
            let d = seen[&cur];
            for n in neighbors(cur) {
                if n.i.abs() <= radius && n.j.abs() <= radius && !seen.contains_key(&n) {
                    seen.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
        seen
    }

    #[test]
    fn neighbors_of_origin_in_order() {
        assert_eq!(
            neighbors(ORIGIN),
            [c(1, 0), c(0, 1), c(-1, 1), c(-1, 0), c(0, -1), c(1, -1)]
        );
        let n = neighbors(c(0, 5));
        assert!(n.contains(&c(0, 4)) && n.contains(&c(0, 6)));
    }

    #[test]
    fn adjacency_is_symmetric() {
        for i in -4..=4 {
            for j in -4..=4 {
                let a = c(i, j);
                for n in neighbors(a) {
                    assert!(neighbors(n).contains(&a));
                }
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hex_distance(ORIGIN, c(1, -1)), 1);
        // (1,1) is two steps away: no single offset reaches it.
        let bfs = bfs_distances(12);
        assert_eq!(bfs[&c(1, 1)], 2);
        assert_eq!(hex_distance(ORIGIN, c(1, 1)), 2);
        for k in 0..10 {
            for i in 0..=k / 2 {
                assert_eq!(hex_distance(ORIGIN, c(i, k - i)), k as u32);
            }
        }
    }

    #[test]
    fn distance_matches_bfs_within_radius_10() {
        // Search box is larger than the tested radius so shortest paths are not clipped.
        let bfs = bfs_distances(22);
        let pts: Vec<_> = (-10..=10)
            .flat_map(|i| (-10..=10).map(move |j| c(i, j)))
            .filter(|p| p.norm() <= 10)
            .collect();
        for p in &pts {
            assert_eq!(bfs[p], p.norm(), "origin to {p}");
        }
        // translation invariance lets the origin BFS cover every pair
        for a in pts.iter().step_by(7) {
            for b in &pts {
                let d = c(b.i - a.i, b.j - a.j);
                assert_eq!(hex_distance(*a, *b), bfs[&d]);
            }
        }
    }

    #[test]
    fn rings_match_box_filter() {
        assert_eq!(ring_cells(0), vec![ORIGIN]);
        let r1: HashSet<_> = ring_cells(1).into_iter().collect();
        assert_eq!(r1, neighbors(ORIGIN).into_iter().collect());
        for r in 0..=12u32 {
            let ring: HashSet<_> = ring_cells(r).into_iter().collect();
            let rr = r as i32;
            let boxed: HashSet<_> = (-rr..=rr)
                .flat_map(|i| (-rr..=rr).map(move |j| c(i, j)))
                .filter(|p| p.norm() == r)
                .collect();
            assert_eq!(ring, boxed, "ring {r}");
            assert_eq!(ring_cells(r).len(), if r == 0 { 1 } else { 6 * r as usize });
        }
        let r2: HashSet<_> = ring_cells(2).into_iter().collect();
        assert!(r2.contains(&c(0, 2)) && r2.contains(&c(-1, 2)) && r2.contains(&c(1, 1)));
    }

    #[test]
    fn ring_neighbor_examples() {
        let (a, b) = ring_neighbors(c(0, 2)).unwrap();
        let got: HashSet<_> = [a, b].into_iter().collect();
        assert_eq!(got, [c(-1, 2), c(1, 1)].into_iter().collect());
        let (a, b) = ring_neighbors(c(0, 1)).unwrap();
        let got: HashSet<_> = [a, b].into_iter().collect();
        assert_eq!(got, [c(-1, 1), c(1, 0)].into_iter().collect());
        assert_eq!(ring_neighbors(ORIGIN), Err(GeometryError::OriginHasNoRing));
    }

    #[test]
    fn ring_neighbors_exhaustive_to_50() {
        for r in 1..=50 {
            for cell in ring_cells(r) {
                let n = neighbors(cell).into_iter().filter(|n| n.norm() == r).count();
                assert_eq!(n, 2, "{cell}");
                let (a, b) = ring_neighbors(cell).unwrap();
                // ring adjacency is symmetric
                for x in [a, b] {
                    let (p, q) = ring_neighbors(x).unwrap();
                    assert!(p == cell || q == cell);
                }
            }
        }
    }

    #[test]
    fn direction_examples() {
        for j in 1..20 {
            assert_eq!(direction_angle(c(0, j), c(0, j - 1)).unwrap(), DirectionAngle::Minus90);
        }
        assert_eq!(direction_angle(ORIGIN, c(1, 0)).unwrap(), DirectionAngle::Plus30);
        // (√3/2, 1/2) sits at 30° above the horizontal
        let p = to_cartesian(c(1, 0));
        assert!((p.y.atan2(p.x).to_degrees() - 30.0).abs() < 1e-12);
        assert!(matches!(
            direction_angle(ORIGIN, c(2, 0)),
            Err(GeometryError::NotAdjacent { .. })
        ));
    }

    #[test]
    fn directions_are_antisymmetric_and_cover_all() {
        let mut seen = HashSet::new();
        for n in neighbors(c(3, -2)) {
            let fwd = direction_angle(c(3, -2), n).unwrap();
            let back = direction_angle(n, c(3, -2)).unwrap();
            assert_eq!(fwd.opposite(), back);
            assert_eq!((fwd.degrees() - back.degrees()).abs(), 180);
            seen.insert(fwd);
        }
        assert_eq!(seen.len(), 6);
        // the embedding angle of each offset is the named angle
        for a in DirectionAngle::ALL {
            let (di, dj) = a.offset();
            let p = to_cartesian(c(di, dj));
            assert!((p.y.atan2(p.x) - a.radians()).abs() < 1e-12, "{a}");
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cartesian_examples() {
        assert_eq!(to_cartesian(ORIGIN), CartesianPoint::new(0.0, 0.0));
        assert_eq!(to_cartesian(c(0, 1)), CartesianPoint::new(0.0, 1.0));
        let p = to_cartesian(c(1, 0));
        assert!((p.x - 3f64.sqrt() / 2.0).abs() < 1e-15 && (p.y - 0.5).abs() < 1e-15);
        for i in -6..=6 {
            for j in -6..=6 {
                assert_eq!(from_cartesian(to_cartesian(c(i, j))), c(i, j));
            }
        }
    }

    #[test]
    fn symmetry_transforms() {
        assert_eq!(rotate60(c(1, 0)), c(0, 1));
        for i in -5..=5 {
            for j in -5..=5 {
                let p = c(i, j);
                let mut q = p;
                for _ in 0..6 {
                    q = rotate60(q);
                }
                assert_eq!(q, p);
                assert_eq!(reflect(reflect(p)), p);
                assert_eq!(rotate60(p).norm(), p.norm());
                assert_eq!(reflect(p).norm(), p.norm());
                for n in neighbors(p) {
                    assert!(are_adjacent(rotate60(p), rotate60(n)));
                    assert!(are_adjacent(reflect(p), reflect(n)));
                }
                // reflection is the mirror x -> -x of the embedding
                let (a, b) = (to_cartesian(p), to_cartesian(reflect(p)));
                assert!((a.x + b.x).abs() < 1e-12 && (a.y - b.y).abs() < 1e-12);
            }
        }
        for a in DirectionAngle::ALL {
            let rotated = (a.degrees() + 60 + 180).rem_euclid(360) - 180;
            assert_eq!(a.rotate60().degrees(), rotated);
        }
    }

    #[test]
    fn lattice_layout() {
        let lat = HexLattice::new(2);
        assert_eq!(lat.cell_count(), 19);
        let edge = lat.cells().iter().filter(|&&i| lat.is_edge(i)).count();
        assert_eq!(edge, 12);
        for &idx in lat.cells() {
            assert_eq!(lat.index(lat.coord(idx)), Some(idx));
            if !lat.is_edge(idx) {
                let got: Vec<_> = lat.neighbor_indices(idx).iter().map(|&n| lat.coord(n)).collect();
                assert_eq!(got, neighbors(lat.coord(idx)).to_vec());
            }
        }
        assert_eq!(lat.index(c(3, 0)), None);
    }
}
