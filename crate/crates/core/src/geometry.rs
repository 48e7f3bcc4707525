//! Planar helpers: convex hulls, polygon area and containment.

use crate::hexgrid::CartesianPoint;

#[inline]
pub fn cross(o: CartesianPoint, a: CartesianPoint, b: CartesianPoint) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn sorted_unique(points: &[CartesianPoint]) -> Vec<CartesianPoint> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    pts
}

/// Convex hull in counter-clockwise order starting from the lowest-x
/// (then lowest-y) point. Collinear points are dropped.
pub fn convex_hull(points: &[CartesianPoint]) -> Vec<CartesianPoint> {
    let pts = sorted_unique(points);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<CartesianPoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<CartesianPoint> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Upper hull from the leftmost to the rightmost point (clockwise). With
/// `keep_collinear`, points lying on a hull edge (up to rounding) are retained.
pub fn upper_hull(points: &[CartesianPoint], keep_collinear: bool) -> Vec<CartesianPoint> {
    let mut pts = sorted_unique(points);
    // only the highest point of a vertical run can be on the upper hull
    pts.reverse();
    pts.dedup_by(|later, earlier| later.x == earlier.x);
    pts.reverse();
    let mut hull: Vec<CartesianPoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // relative slack so rounding in the embedding does not split a straight run
            let slack = 1e-9 * (b.x - a.x).hypot(b.y - a.y) * (p.x - b.x).hypot(p.y - b.y);
            let c = cross(a, b, p);
            let pop = if keep_collinear { c > slack } else { c >= -slack };
            if !pop {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Signed area, positive for counter-clockwise polygons.
pub fn polygon_area(poly: &[CartesianPoint]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        acc += a.x * b.y - a.y * b.x;
    }
    0.5 * acc
}

/// Whether `p` lies inside or on a counter-clockwise convex polygon, with
/// slack `tol` on each edge.
pub fn convex_contains(poly: &[CartesianPoint], p: CartesianPoint, tol: f64) -> bool {
    let n = poly.len();
    match n {
        0 => false,
        1 => (poly[0].x - p.x).hypot(poly[0].y - p.y) <= tol,
        2 => {
            let (a, b) = (poly[0], poly[1]);
            let len = (b.x - a.x).hypot(b.y - a.y);
            let t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
            (-tol..=1.0 + tol).contains(&t) && cross(a, b, p).abs() / len <= tol
        }
        _ => (0..n).all(|k| {
            let (a, b) = (poly[k], poly[(k + 1) % n]);
            let len = (b.x - a.x).hypot(b.y - a.y);
            cross(a, b, p) / len >= -tol
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> CartesianPoint {
        CartesianPoint::new(x, y)
    }

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.), p(0.5, 0.5), p(0.5, 0.), p(0.2, 0.7)];
        let hull = convex_hull(&pts);
        assert_eq!(hull, vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
        assert_eq!(polygon_area(&hull), 1.0);
        assert!(convex_contains(&hull, p(0.5, 0.5), 0.0));
        assert!(convex_contains(&hull, p(1.0, 0.5), 0.0));
        assert!(!convex_contains(&hull, p(1.01, 0.5), 0.0));
    }

    #[test]
    fn upper_hull_collinear() {
        let pts = [p(0., 2.), p(1., 1.), p(2., 0.), p(0.5, 0.), p(1.0, 0.2)];
        assert_eq!(upper_hull(&pts, true), vec![p(0., 2.), p(1., 1.), p(2., 0.)]);
        assert_eq!(upper_hull(&pts, false), vec![p(0., 2.), p(2., 0.)]);
        let stacked = [p(0., 0.), p(0., 3.), p(1., 1.), p(2., -1.), p(2., 0.)];
        assert_eq!(upper_hull(&stacked, true), vec![p(0., 3.), p(2., 0.)]);
    }
}
