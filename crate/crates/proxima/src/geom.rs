//! Exact planar geometry over rational coordinates.
//!
//! Every predicate here is decided with exact rational arithmetic; nothing
//! rounds, so set-algebra invariants built on these answers cannot flake.

use std::cmp::Ordering;

use num::rational::Rational64;
use num::{Signed, Zero};

pub type Rational = Rational64;

/// Shorthand for a reduced rational from a numerator/denominator pair.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// A point of the plane with exact rational coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    /// Integer grid point.
    pub fn int(x: i64, y: i64) -> Self {
        Point2 {
            x: Rational::from_integer(x),
            y: Rational::from_integer(y),
        }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (
            *self.x.numer() as f64 / *self.x.denom() as f64,
            *self.y.numer() as f64 / *self.y.denom() as f64,
        )
    }
}

/// Sign of the cross product (b - a) x (c - a).
pub fn cross(a: Point2, b: Point2, c: Point2) -> Rational {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

pub fn orient(a: Point2, b: Point2, c: Point2) -> Orientation {
    let s = cross(a, b, c);
    if s.is_zero() {
        Orientation::Collinear
    } else if s.is_positive() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// True when `p` lies on the closed segment [a, b]. The bounding-box test
/// runs first; it is plain comparisons and rejects most queries before any
/// multiplication.
pub fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    let (lox, hix) = if a.x <= b.x { (a.x, b.x) } else { (b.x, a.x) };
    let (loy, hiy) = if a.y <= b.y { (a.y, b.y) } else { (b.y, a.y) };
    if p.x < lox || p.x > hix || p.y < loy || p.y > hiy {
        return false;
    }
    orient(a, b, p) == Orientation::Collinear
}

/// True when open segments (a,b) and (c,d) cross at a single interior point.
pub fn segments_cross_properly(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonLocation {
    Inside,
    On,
    Outside,
}

/// Exact point-in-polygon via crossing number; vertices and edge-interiors
/// report `On`. The polygon is a closed loop of distinct vertices, the last
/// implicitly joined to the first.
pub fn locate_in_polygon(p: Point2, poly: &[Point2]) -> PolygonLocation {
    let n = poly.len();
    let mut crossings = 0usize;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if on_segment(p, a, b) {
            return PolygonLocation::On;
        }
        // Half-open rule [min_y, max_y) avoids double counting at vertices.
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate where edge ab meets the horizontal line through p
            let t = (p.y - a.y) / (b.y - a.y);
            let x = a.x + t * (b.x - a.x);
            if x > p.x {
                crossings += 1;
            }
        }
    }
    if crossings % 2 == 1 {
        PolygonLocation::Inside
    } else {
        PolygonLocation::Outside
    }
}

/// Twice the signed area of the polygon (positive when counter-clockwise).
pub fn signed_area2(poly: &[Point2]) -> Rational {
    let n = poly.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc
}

/// Exact arithmetic mean of a nonempty point set.
pub fn centroid(points: &[Point2]) -> Point2 {
    let n = Rational::from_integer(points.len() as i64);
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for p in points {
        sx += p.x;
        sy += p.y;
    }
    Point2::new(sx / n, sy / n)
}

/// Orders direction vectors counter-clockwise starting from the positive
/// x-axis, exactly. Used when sweeping edges around a vertex.
pub fn angle_cmp(u: (Rational, Rational), v: (Rational, Rational)) -> Ordering {
    fn half(d: (Rational, Rational)) -> u8 {
        // 0 = [0, pi), 1 = [pi, 2pi)
        if d.1 > Rational::zero() || (d.1.is_zero() && d.0 > Rational::zero()) {
            0
        } else {
            1
        }
    }
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let s = u.0 * v.1 - u.1 * v.0;
    if s.is_positive() {
        Ordering::Less
    } else if s.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Euclidean length of a segment, as f64 (rendering and derived features only).
pub fn segment_len_f64(a: Point2, b: Point2) -> f64 {
    let (ax, ay) = a.to_f64();
    let (bx, by) = b.to_f64();
    ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt()
}

/// Canonical `p/q` form with reduced terms and positive denominator.
pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the canonical `p/q` form; bare integers are rejected so documents
/// stay byte-stable through round trips.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let p: i64 = p.parse().ok()?;
    let q: i64 = q.parse().ok()?;
    if q <= 0 {
        return None;
    }
    Some(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_location_square() {
        let sq = vec![
            Point2::int(0, 0),
            Point2::int(2, 0),
            Point2::int(2, 2),
            Point2::int(0, 2),
        ];
        assert_eq!(
            locate_in_polygon(Point2::int(1, 1), &sq),
            PolygonLocation::Inside
        );
        assert_eq!(
            locate_in_polygon(Point2::int(2, 1), &sq),
            PolygonLocation::On
        );
        assert_eq!(
            locate_in_polygon(Point2::int(3, 1), &sq),
            PolygonLocation::Outside
        );
        assert_eq!(
            locate_in_polygon(Point2::int(0, 0), &sq),
            PolygonLocation::On
        );
    }

    #[test]
    fn polygon_location_nonconvex() {
        // L-shaped hexagon
        let poly = vec![
            Point2::int(0, 0),
            Point2::int(3, 0),
            Point2::int(3, 1),
            Point2::int(1, 1),
            Point2::int(1, 3),
            Point2::int(0, 3),
        ];
        assert_eq!(
            locate_in_polygon(Point2::new(rat(1, 2), rat(5, 2)), &poly),
            PolygonLocation::Inside
        );
        assert_eq!(
            locate_in_polygon(Point2::int(2, 2), &poly),
            PolygonLocation::Outside
        );
    }

    #[test]
    fn angle_order_sweeps_ccw() {
        let east = (rat(1, 1), rat(0, 1));
        let ne = (rat(1, 1), rat(1, 1));
        let north = (rat(0, 1), rat(1, 1));
        let south = (rat(0, 1), rat(-1, 1));
        let mut dirs = vec![south, north, east, ne];
        dirs.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(dirs, vec![east, ne, north, south]);
    }

    #[test]
    fn rational_round_trip() {
        let r = rat(-10, 4);
        let s = format_rational(r);
        assert_eq!(s, "-5/2");
        assert_eq!(parse_rational(&s), Some(r));
        assert_eq!(parse_rational("3"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn proper_crossing() {
        let a = Point2::int(0, 0);
        let b = Point2::int(2, 2);
        let c = Point2::int(0, 2);
        let d = Point2::int(2, 0);
        assert!(segments_cross_properly(a, b, c, d));
        // Shared endpoint is not a proper crossing.
        assert!(!segments_cross_properly(a, b, b, d));
    }
}
