//! Piecewise-linear curves and the topological data compared across the
//! combinatorial, tropical and traced pictures.
//!
//! Two curves are considered to match when they have the same number of
//! closed loops and open arcs, and their arc ends appear in the same cyclic
//! order around the boundary with the same pairing (which end is joined to
//! which). Positions along the boundary are not compared, only order and
//! the side each end exits through.

use crate::geom::{q, Point, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Which part of the boundary (or which direction at infinity) an arc end
/// exits through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The `l = 0` edge of Δ; `v → −∞` on log paper.
    Bottom,
    /// The edge `k + l = m`; `u + v → +∞`.
    Hypotenuse,
    /// The `k = 0` edge of Δ; `u → −∞`.
    Left,
    /// Outer edge of the quadrant copy of Δ with signs `(sx, sy)`, i.e.
    /// infinity inside that quadrant of the plane.
    Outer { sx: i8, sy: i8 },
    /// An unbounded direction that is not an outer normal of Δ.
    Direction { du: i64, dv: i64 },
}

impl Side {
    /// Classifies a primitive integer direction by the side of Δ it is the
    /// outer normal of.
    pub fn from_direction(du: i64, dv: i64) -> Side {
        let g = gcd(du.abs(), dv.abs()).max(1);
        let (du, dv) = (du / g, dv / g);
        match (du, dv) {
            (0, -1) => Side::Bottom,
            (-1, 0) => Side::Left,
            (1, 1) => Side::Hypotenuse,
            _ => Side::Direction { du, dv },
        }
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct End {
    pub side: Side,
    /// Index of the arc this end belongs to, numbered in order of first
    /// appearance along the boundary.
    pub arc: usize,
}

/// Loop/arc counts plus the cyclic sequence of arc ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub loops: usize,
    pub arcs: usize,
    /// Arc ends in counter-clockwise boundary order.
    pub ends: Vec<End>,
}

impl TopologySummary {
    pub fn empty() -> Self {
        TopologySummary {
            loops: 0,
            arcs: 0,
            ends: Vec::new(),
        }
    }

    /// Builds a summary from ends given as `(side, arc id)` in boundary order;
    /// arc ids are renumbered by first appearance.
    pub fn from_ordered_ends(loops: usize, arcs: usize, ends: &[(Side, usize)]) -> Self {
        TopologySummary {
            loops,
            arcs,
            ends: relabel(ends, 0),
        }
    }

    pub fn components(&self) -> usize {
        self.loops + self.arcs
    }

    pub fn sides(&self) -> Vec<Side> {
        self.ends.iter().map(|e| e.side).collect()
    }

    pub fn count_on(&self, side: Side) -> usize {
        self.ends.iter().filter(|e| e.side == side).count()
    }

    /// Equal counts and equal end sequences up to cyclic rotation.
    pub fn matches(&self, other: &TopologySummary) -> bool {
        if self.loops != other.loops || self.arcs != other.arcs || self.ends.len() != other.ends.len() {
            return false;
        }
        if self.ends.is_empty() {
            return true;
        }
        let mine: Vec<(Side, usize)> = self.ends.iter().map(|e| (e.side, e.arc)).collect();
        let theirs = relabel(&other.ends.iter().map(|e| (e.side, e.arc)).collect::<Vec<_>>(), 0);
        (0..mine.len()).any(|r| relabel(&mine, r) == theirs)
    }
}

fn relabel(ends: &[(Side, usize)], rotation: usize) -> Vec<End> {
    let n = ends.len();
    let mut map = std::collections::HashMap::new();
    (0..n)
        .map(|i| {
            let (side, arc) = ends[(i + rotation) % n];
            let next = map.len();
            let id = *map.entry(arc).or_insert(next);
            End { side, arc: id }
        })
        .collect()
}

/// Where a curve lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// Δ = conv{(0,0), (m,0), (0,m)}.
    Triangle { degree: i64 },
    /// AΔ = the square with vertices (±m, 0), (0, ±m).
    Square { degree: i64 },
    /// The whole (u, v)-plane; arcs end in rays.
    Plane,
}

/// A polygonal path. Open paths in the plane may start or end with a ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPath {
    pub points: Vec<Point>,
    pub closed: bool,
    /// Direction of the unbounded piece leaving `points[0]`, if any.
    pub start_ray: Option<(i64, i64)>,
    /// Direction of the unbounded piece leaving the last point, if any.
    pub end_ray: Option<(i64, i64)>,
}

impl PolyPath {
    pub fn open(points: Vec<Point>) -> Self {
        PolyPath {
            points,
            closed: false,
            start_ray: None,
            end_ray: None,
        }
    }

    pub fn closed(points: Vec<Point>) -> Self {
        PolyPath {
            points,
            closed: true,
            start_ray: None,
            end_ray: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLCurve {
    pub ambient: Ambient,
    pub paths: Vec<PolyPath>,
}

impl PLCurve {
    pub fn empty(ambient: Ambient) -> Self {
        PLCurve {
            ambient,
            paths: Vec::new(),
        }
    }

    pub fn loops(&self) -> usize {
        self.paths.iter().filter(|p| p.closed).count()
    }

    pub fn arcs(&self) -> usize {
        self.paths.iter().filter(|p| !p.closed).count()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.paths
            .iter()
            .map(|p| p.points.len().saturating_sub(1) + usize::from(p.closed))
            .sum()
    }

    pub fn summary(&self) -> TopologySummary {
        let mut keyed: Vec<(EndKey, Side, usize)> = Vec::new();
        for (i, path) in self.paths.iter().enumerate().filter(|(_, p)| !p.closed) {
            let first = &path.points[0];
            let last = path.points.last().expect("non-empty path");
            for (pt, ray) in [(first, path.start_ray), (last, path.end_ray)] {
                let (key, side) = match self.ambient {
                    Ambient::Triangle { degree } => triangle_end(pt, degree),
                    Ambient::Square { degree } => square_end(pt, degree),
                    Ambient::Plane => {
                        let d = ray.unwrap_or((0, 0));
                        (EndKey::Ray(d, ray_offset(d, pt)), Side::from_direction(d.0, d.1))
                    }
                };
                keyed.push((key, side, i));
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let ends: Vec<(Side, usize)> = keyed.into_iter().map(|(_, s, i)| (s, i)).collect();
        TopologySummary::from_ordered_ends(self.loops(), self.arcs(), &ends)
    }
}

/// Counter-clockwise boundary parameter of a point on ∂Δ or ∂(AΔ).
pub(crate) fn boundary_position(ambient: Ambient, p: &Point) -> Option<Q> {
    let (key, side) = match ambient {
        Ambient::Triangle { degree } => triangle_end(p, degree),
        Ambient::Square { degree } => square_end(p, degree),
        Ambient::Plane => return None,
    };
    match (key, side) {
        (_, Side::Direction { .. }) => None,
        (EndKey::Boundary(x), _) => Some(x),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum EndKey {
    Boundary(Q),
    Ray((i64, i64), Q),
}

impl PartialOrd for EndKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EndKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (EndKey::Boundary(a), EndKey::Boundary(b)) => a.cmp(b),
            (EndKey::Ray(d1, o1), EndKey::Ray(d2, o2)) => direction_order(*d1, *d2).then_with(|| o1.cmp(o2)),
            (EndKey::Boundary(_), EndKey::Ray(..)) => Ordering::Less,
            (EndKey::Ray(..), EndKey::Boundary(_)) => Ordering::Greater,
        }
    }
}

/// Counter-clockwise angular order of directions, starting from `(0, -1)`.
pub(crate) fn direction_order(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |d: (i64, i64)| {
        // reference r = (0, -1); cross(r, d) = d.0, dot(r, d) = -d.1
        if d.0 > 0 || (d.0 == 0 && d.1 < 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

/// Signed offset of a ray's base point to the left of its direction; among
/// parallel rays, larger offsets come later counter-clockwise.
fn ray_offset(d: (i64, i64), p: &Point) -> Q {
    q(d.0) * &p.y - q(d.1) * &p.x
}

/// Counter-clockwise boundary parameter on ∂Δ, starting at the origin.
fn triangle_end(p: &Point, m: i64) -> (EndKey, Side) {
    let mq = q(m);
    if p.y.is_zero() && p.x < mq {
        (EndKey::Boundary(p.x.clone()), Side::Bottom)
    } else if &p.x + &p.y == mq && p.x > Q::zero() {
        (EndKey::Boundary(&mq + &p.y), Side::Hypotenuse)
    } else if p.x.is_zero() {
        (EndKey::Boundary(q(2 * m) + (&mq - &p.y)), Side::Left)
    } else {
        // interior end; sorts after everything on the boundary
        (EndKey::Boundary(q(3 * m) + &p.x), Side::Direction { du: 0, dv: 0 })
    }
}

/// Counter-clockwise parameter on ∂(AΔ), starting at `(m, 0)`.
fn square_end(p: &Point, m: i64) -> (EndKey, Side) {
    let mq = q(m);
    let on = |sx: i64, sy: i64| q(sx) * &p.x + q(sy) * &p.y == mq;
    let (quadrant, param) = if on(1, 1) && p.x.is_positive() {
        ((1, 1), p.y.clone())
    } else if on(-1, 1) && !p.x.is_positive() && p.y.is_positive() {
        ((-1, 1), &mq - &p.x)
    } else if on(-1, -1) && !p.y.is_positive() && p.x.is_negative() {
        ((-1, -1), q(2 * m) - &p.y)
    } else if on(1, -1) && p.y.is_negative() {
        ((1, -1), q(3 * m) + &p.x)
    } else {
        return (EndKey::Boundary(q(4 * m) + &p.x), Side::Direction { du: 0, dv: 0 });
    };
    let side = Side::Outer {
        sx: quadrant.0,
        sy: quadrant.1,
    };
    (EndKey::Boundary(param), side)
}

/// Oval/pseudoline counts of a curve in the projective plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSummary {
    pub ovals: usize,
    pub pseudolines: usize,
}

impl ProjectiveSummary {
    pub fn components(&self) -> usize {
        self.ovals + self.pseudolines
    }
}

/// Closes the ends of an affine summary at infinity by antipodal pairing
/// (end `i` with end `i + n/2` in cyclic order) and classifies the resulting
/// closed components by the parity of their passages through infinity.
/// Returns `None` when the number of ends is odd.
pub fn close_at_infinity(summary: &TopologySummary) -> Option<ProjectiveSummary> {
    let n = summary.ends.len();
    if n % 2 == 1 {
        return None;
    }
    let arcs = summary.arcs;
    // union-find over arcs; parity of gluings per component
    let mut parent: Vec<usize> = (0..arcs).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mut gluings = vec![0usize; arcs];
    for i in 0..n / 2 {
        let a = summary.ends[i].arc;
        let b = summary.ends[i + n / 2].arc;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            gluings[rb] += gluings[ra] + 1;
        } else {
            gluings[rb] += 1;
        }
    }
    let mut ovals = summary.loops;
    let mut pseudolines = 0;
    let roots: Vec<usize> = (0..arcs).filter(|&a| find(&mut parent, a) == a).collect();
    for a in roots {
        if gluings[a] % 2 == 1 {
            pseudolines += 1;
        } else {
            ovals += 1;
        }
    }
    Some(ProjectiveSummary { ovals, pseudolines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q_ratio;

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(q_ratio(x.0, x.1), q_ratio(y.0, y.1))
    }

    #[test]
    fn rotation_and_pairing() {
        use Side::*;
        let a = TopologySummary::from_ordered_ends(0, 2, &[(Bottom, 0), (Left, 0), (Bottom, 1), (Left, 1)]);
        let b = TopologySummary::from_ordered_ends(0, 2, &[(Left, 5), (Bottom, 7), (Left, 7), (Bottom, 5)]);
        assert!(a.matches(&b));
        // same sides, different pairing (crossing chords)
        let c = TopologySummary::from_ordered_ends(0, 2, &[(Bottom, 0), (Left, 1), (Bottom, 1), (Left, 0)]);
        assert!(!a.matches(&c));
        assert!(!a.matches(&TopologySummary::from_ordered_ends(
            1,
            2,
            &[(Bottom, 0), (Left, 0), (Bottom, 1), (Left, 1)]
        )));
        assert!(TopologySummary::empty().matches(&TopologySummary::empty()));
    }

    #[test]
    fn triangle_boundary_order() {
        // arcs of the degree-2 ellipse picture
        let curve = PLCurve {
            ambient: Ambient::Triangle { degree: 2 },
            paths: vec![
                PolyPath::open(vec![pt((1, 2), (0, 1)), pt((0, 1), (1, 2))]),
                PolyPath::open(vec![pt((3, 2), (0, 1)), pt((1, 1), (1, 2)), pt((0, 1), (3, 2))]),
            ],
        };
        let s = curve.summary();
        assert_eq!(s.arcs, 2);
        assert_eq!(s.sides(), vec![Side::Bottom, Side::Bottom, Side::Left, Side::Left]);
        let arcs: Vec<usize> = s.ends.iter().map(|e| e.arc).collect();
        assert_eq!(arcs, vec![0, 1, 1, 0]);
    }

    #[test]
    fn direction_order_is_counter_clockwise_from_down() {
        let mut dirs = vec![(1, 1), (-1, 0), (0, -1), (1, 0), (0, 1), (-1, -1)];
        dirs.sort_by(|a, b| direction_order(*a, *b));
        assert_eq!(dirs, vec![(0, -1), (1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1)]);
    }

    #[test]
    fn antipodal_closure() {
        use Side::*;
        // a line: one arc with ends in opposite positions
        let line =
            TopologySummary::from_ordered_ends(0, 1, &[(Outer { sx: 1, sy: -1 }, 0), (Outer { sx: -1, sy: 1 }, 0)]);
        assert_eq!(
            close_at_infinity(&line),
            Some(ProjectiveSummary {
                ovals: 0,
                pseudolines: 1
            })
        );
        // hyperbola-like: two arcs, each end paired with the other arc
        let hyp = TopologySummary::from_ordered_ends(0, 2, &[(Bottom, 0), (Bottom, 0), (Left, 1), (Left, 1)]);
        assert_eq!(
            close_at_infinity(&hyp),
            Some(ProjectiveSummary {
                ovals: 1,
                pseudolines: 0
            })
        );
        let odd = TopologySummary::from_ordered_ends(0, 1, &[(Bottom, 0)]);
        assert_eq!(close_at_infinity(&odd), None);
    }

    #[test]
    fn side_from_direction_normalizes() {
        assert_eq!(Side::from_direction(0, -3), Side::Bottom);
        assert_eq!(Side::from_direction(2, 2), Side::Hypotenuse);
        assert_eq!(Side::from_direction(-5, 0), Side::Left);
        assert_eq!(Side::from_direction(2, -4), Side::Direction { du: 1, dv: -2 });
    }
}
