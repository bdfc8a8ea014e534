//! Exact rational points and predicates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of floats for huge numerators/denominators
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = q_ratio(1, 2);
        Point {
            x: (&self.x + &other.x) * &half,
            y: (&self.y + &other.y) * &half,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of `abc`; positive for a counter-clockwise turn.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    let v = cross(a, b, c);
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Convex hull in counter-clockwise order starting from the lexicographically
/// smallest point; collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Where `p` sits relative to the closed triangle `abc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Outside,
    Interior,
    OnEdge,
    Corner,
}

pub fn locate_in_triangle(p: &Point, tri: [&Point; 3]) -> Location {
    if tri.contains(&p) {
        return Location::Corner;
    }
    let mut o = [Ordering::Equal; 3];
    for i in 0..3 {
        o[i] = orientation(tri[i], tri[(i + 1) % 3], p);
    }
    let has_pos = o.contains(&Ordering::Greater);
    let has_neg = o.contains(&Ordering::Less);
    if has_pos && has_neg {
        Location::Outside
    } else if o.contains(&Ordering::Equal) {
        Location::OnEdge
    } else {
        Location::Interior
    }
}

/// True when two non-degenerate triangles share interior points.
pub fn triangles_overlap(a: [&Point; 3], b: [&Point; 3]) -> bool {
    // separating axis test over the edges of both triangles, exact
    fn separated(t: [&Point; 3], other: [&Point; 3]) -> bool {
        let ccw = orientation(t[0], t[1], t[2]);
        for i in 0..3 {
            let (p, r) = (t[i], t[(i + 1) % 3]);
            // all of `other` on the outer closed side of edge p-r
            if other.iter().all(|v| {
                let s = orientation(p, r, v);
                s == Ordering::Equal || s == ccw.reverse()
            }) {
                return true;
            }
        }
        false
    }
    !(separated(a, b) || separated(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_drops_collinear_points() {
        let pts = vec![
            Point::int(0, 0),
            Point::int(2, 0),
            Point::int(1, 0),
            Point::int(0, 2),
            Point::int(1, 1),
        ];
        assert_eq!(
            convex_hull(&pts),
            vec![Point::int(0, 0), Point::int(2, 0), Point::int(0, 2)]
        );
    }

    #[test]
    fn triangle_location() {
        let (a, b, c) = (Point::int(0, 0), Point::int(2, 0), Point::int(0, 2));
        let t = [&a, &b, &c];
        assert_eq!(locate_in_triangle(&Point::int(1, 1), t), Location::OnEdge);
        assert_eq!(
            locate_in_triangle(&Point::new(q_ratio(1, 2), q_ratio(1, 2)), t),
            Location::Interior
        );
        assert_eq!(locate_in_triangle(&Point::int(2, 0), t), Location::Corner);
        assert_eq!(locate_in_triangle(&Point::int(2, 2), t), Location::Outside);
    }

    #[test]
    fn overlap_is_interior_only() {
        let p = |x, y| Point::int(x, y);
        let (a, b, c, d) = (p(0, 0), p(1, 0), p(0, 1), p(1, 1));
        assert!(!triangles_overlap([&a, &b, &c], [&b, &d, &c]));
        assert!(triangles_overlap([&a, &b, &c], [&a, &b, &d]));
        let (e, f, g) = (p(2, 0), p(3, 0), p(2, 1));
        assert!(!triangles_overlap([&a, &b, &c], [&e, &f, &g]));
    }
}
