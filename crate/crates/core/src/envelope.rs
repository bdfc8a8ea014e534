//! Upper envelopes of planes `w = ku + lv + c` with integer slopes.
//!
//! The envelope `U = max_i (k_i u + l_i v + c_i)` is a convex piecewise
//! linear surface. Its faces, edges and vertices project to a subdivision of
//! the `(u, v)`-plane, which is dual to a subdivision of the convex hull of
//! the slope points `(k_i, l_i)`. Everything here is computed exactly over
//! rationals: each face is the intersection of half-planes
//! `{plane_i >= plane_j}` clipped to a box that strictly contains every
//! vertex, and whatever touches the box is reported as unbounded.

use crate::curve::{direction_order, gcd, Ambient, PLCurve, PolyPath};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, q, Point, Q};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// The plane `w = k u + l v + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePlane {
    pub k: i64,
    pub l: i64,
    pub c: Q,
}

impl AffinePlane {
    pub fn new(k: i64, l: i64, c: Q) -> Self {
        AffinePlane { k, l, c }
    }

    pub fn value(&self, p: &Point) -> Q {
        q(self.k) * &p.x + q(self.l) * &p.y + &self.c
    }

    pub fn slope(&self) -> (i64, i64) {
        (self.k, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Point,
    /// Every plane attaining the maximum here, in increasing index order.
    pub planes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeGeometry {
    Segment {
        from: usize,
        to: usize,
    },
    /// Starts at a vertex and runs off in a primitive integer direction.
    Ray {
        from: usize,
        direction: (i64, i64),
    },
    /// A full line, when the edge meets no vertex.
    Line {
        point: Point,
        direction: (i64, i64),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// The two planes whose faces share this edge, smaller index first.
    pub planes: (usize, usize),
    pub geometry: EdgeGeometry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub plane: usize,
    /// Envelope vertices on the face boundary, counter-clockwise.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub bounded: bool,
}

#[derive(Debug, Clone)]
pub struct Envelope {
    planes: Vec<AffinePlane>,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    hidden: Vec<usize>,
}

impl Envelope {
    pub fn planes(&self) -> &[AffinePlane] {
        &self.planes
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Planes that are maximal nowhere on an open set.
    pub fn hidden(&self) -> &[usize] {
        &self.hidden
    }

    pub fn face_of(&self, plane: usize) -> Option<&Face> {
        self.faces.iter().find(|f| f.plane == plane)
    }

    /// `max_i plane_i(p)`.
    pub fn value_at(&self, p: &Point) -> Q {
        self.planes
            .iter()
            .map(|pl| pl.value(p))
            .max()
            .expect("non-empty arrangement")
    }

    /// Planes attaining the maximum at `p`.
    pub fn maximal_planes(&self, p: &Point) -> Vec<usize> {
        maximal(&self.planes, p)
    }

    /// `#vertices − #edges + #faces`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Smallest length of a bounded edge or distance between two edges with
    /// no common vertex, in the Euclidean metric; `None` when neither
    /// exists.
    pub fn feature_size(&self) -> Option<f64> {
        let shapes: Vec<EdgeShape> = self.edges.iter().map(|e| self.shape(e)).collect();
        let mut best: Option<f64> = None;
        let mut keep = |d: f64| best = Some(best.map_or(d, |b| b.min(d)));
        for (i, a) in shapes.iter().enumerate() {
            if a.kind == Extent::Segment {
                keep(a.dir.0.hypot(a.dir.1));
            }
            for b in &shapes[i + 1..] {
                let shared = a.ends.iter().flatten().any(|v| b.ends.iter().flatten().any(|w| v == w));
                if !shared {
                    keep(a.distance_to(b));
                }
            }
        }
        best
    }

    fn shape(&self, e: &Edge) -> EdgeShape {
        let at = |v: usize| self.vertices[v].point.to_f64();
        let dir = |d: (i64, i64)| (d.0 as f64, d.1 as f64);
        match &e.geometry {
            EdgeGeometry::Segment { from, to } => {
                let (p, r) = (at(*from), at(*to));
                EdgeShape {
                    origin: p,
                    dir: (r.0 - p.0, r.1 - p.1),
                    kind: Extent::Segment,
                    ends: [Some(*from), Some(*to)],
                }
            }
            EdgeGeometry::Ray { from, direction } => EdgeShape {
                origin: at(*from),
                dir: dir(*direction),
                kind: Extent::Ray,
                ends: [Some(*from), None],
            },
            EdgeGeometry::Line { point, direction } => EdgeShape {
                origin: point.to_f64(),
                dir: dir(*direction),
                kind: Extent::Line,
                ends: [None, None],
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extent {
    Segment,
    Ray,
    Line,
}

/// Floating-point copy of an edge for distance estimates.
struct EdgeShape {
    origin: (f64, f64),
    dir: (f64, f64),
    kind: Extent,
    ends: [Option<usize>; 2],
}

impl EdgeShape {
    fn endpoints(&self) -> Vec<(f64, f64)> {
        match self.kind {
            Extent::Segment => vec![self.origin, (self.origin.0 + self.dir.0, self.origin.1 + self.dir.1)],
            Extent::Ray => vec![self.origin],
            Extent::Line => vec![],
        }
    }

    fn distance_to_point(&self, p: (f64, f64)) -> f64 {
        let (dx, dy) = (p.0 - self.origin.0, p.1 - self.origin.1);
        let t = (dx * self.dir.0 + dy * self.dir.1) / (self.dir.0 * self.dir.0 + self.dir.1 * self.dir.1);
        let t = match self.kind {
            Extent::Segment => t.clamp(0.0, 1.0),
            Extent::Ray => t.max(0.0),
            Extent::Line => t,
        };
        (dx - t * self.dir.0).hypot(dy - t * self.dir.1)
    }

    /// Distance between two edges that do not cross, which is attained at
    /// an endpoint of one of them unless both are full lines.
    fn distance_to(&self, other: &EdgeShape) -> f64 {
        let mut d = f64::INFINITY;
        for p in self.endpoints() {
            d = d.min(other.distance_to_point(p));
        }
        for p in other.endpoints() {
            d = d.min(self.distance_to_point(p));
        }
        if d.is_infinite() {
            d = other.distance_to_point(self.origin);
        }
        d
    }
}

fn maximal(planes: &[AffinePlane], p: &Point) -> Vec<usize> {
    let values: Vec<Q> = planes.iter().map(|pl| pl.value(p)).collect();
    let best = values.iter().max().expect("non-empty").clone();
    (0..planes.len()).filter(|&i| values[i] == best).collect()
}

/// Computes the face structure of `max_i plane_i`.
pub fn build_envelope(planes: &[AffinePlane]) -> Result<Envelope> {
    if planes.is_empty() {
        return Err(Error::EmptyArrangement);
    }
    let mut slopes = BTreeSet::new();
    for p in planes {
        if !slopes.insert(p.slope()) {
            return Err(Error::DuplicateSlope(p.k, p.l));
        }
    }
    let bound = box_bound(planes);
    let square = vec![
        Point::new(-bound.clone(), -bound.clone()),
        Point::new(bound.clone(), -bound.clone()),
        Point::new(bound.clone(), bound.clone()),
        Point::new(-bound.clone(), bound.clone()),
    ];

    let mut polygons: Vec<Option<Vec<Point>>> = Vec::with_capacity(planes.len());
    for (i, pi) in planes.iter().enumerate() {
        let mut poly = square.clone();
        for (j, pj) in planes.iter().enumerate() {
            if i == j {
                continue;
            }
            // plane_i - plane_j >= 0
            let diff = AffinePlane::new(pi.k - pj.k, pi.l - pj.l, &pi.c - &pj.c);
            poly = clip(&poly, &diff);
            if poly.len() < 3 {
                break;
            }
        }
        polygons.push(if poly.len() >= 3 { Some(poly) } else { None });
    }
    let visible: Vec<bool> = polygons.iter().map(Option::is_some).collect();
    let hidden: Vec<usize> = (0..planes.len()).filter(|&i| !visible[i]).collect();

    let on_box = |p: &Point| p.x.abs() == bound || p.y.abs() == bound;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vertex_index: HashMap<Point, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut faces: Vec<Face> = Vec::new();

    for (i, poly) in polygons.iter().enumerate() {
        let Some(poly) = poly else { continue };
        let mut face = Face {
            plane: i,
            vertices: Vec::new(),
            edges: Vec::new(),
            bounded: true,
        };
        for p in poly {
            if on_box(p) {
                face.bounded = false;
                continue;
            }
            let idx = *vertex_index.entry(p.clone()).or_insert_with(|| {
                vertices.push(Vertex {
                    point: p.clone(),
                    planes: maximal(planes, p),
                });
                vertices.len() - 1
            });
            face.vertices.push(idx);
        }
        let n = poly.len();
        for s in 0..n {
            let (a, b) = (&poly[s], &poly[(s + 1) % n]);
            if on_box(a) && on_box(b) && same_box_side(a, b, &bound) {
                continue;
            }
            let Some(j) = (0..planes.len()).find(|&j| {
                j != i
                    && visible[j]
                    && planes[j].value(a) == planes[i].value(a)
                    && planes[j].value(b) == planes[i].value(b)
            }) else {
                continue;
            };
            let key = (i.min(j), i.max(j));
            let e = *edge_index.entry(key).or_insert_with(|| {
                let dir = primitive(-(planes[i].l - planes[j].l), planes[i].k - planes[j].k);
                let geometry = match (on_box(a), on_box(b)) {
                    (false, false) => {
                        let (fa, fb) = (vertex_index[a], vertex_index[b]);
                        EdgeGeometry::Segment {
                            from: fa.min(fb),
                            to: fa.max(fb),
                        }
                    }
                    (false, true) => EdgeGeometry::Ray {
                        from: vertex_index[a],
                        direction: orient_towards(dir, a, b),
                    },
                    (true, false) => EdgeGeometry::Ray {
                        from: vertex_index[b],
                        direction: orient_towards(dir, b, a),
                    },
                    (true, true) => EdgeGeometry::Line {
                        point: a.midpoint(b),
                        direction: canonical_line_direction(dir),
                    },
                };
                edges.push(Edge { planes: key, geometry });
                edges.len() - 1
            });
            face.edges.push(e);
        }
        faces.push(face);
    }

    Ok(Envelope {
        planes: planes.to_vec(),
        faces,
        edges,
        vertices,
        hidden,
    })
}

/// A half-width that strictly exceeds every coordinate of every possible
/// envelope vertex and puts every tie line through the box interior.
fn box_bound(planes: &[AffinePlane]) -> Q {
    let n = planes.len();
    let mut bound = Q::zero();
    for i in 0..n {
        for j in i + 1..n {
            let dc = (&planes[i].c - &planes[j].c).abs();
            if dc > bound {
                bound = dc;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a1, b1) = (planes[i].k - planes[j].k, planes[i].l - planes[j].l);
                let (a2, b2) = (planes[i].k - planes[k].k, planes[i].l - planes[k].l);
                let det = a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128;
                if det == 0 {
                    continue;
                }
                let c1 = &planes[j].c - &planes[i].c;
                let c2 = &planes[k].c - &planes[i].c;
                let detq = q(det as i64);
                let u = (&c1 * q(b2) - &c2 * q(b1)) / &detq;
                let v = (q(a1) * &c2 - q(a2) * &c1) / &detq;
                for x in [u.abs(), v.abs()] {
                    if x > bound {
                        bound = x;
                    }
                }
            }
        }
    }
    bound.floor() + q(1)
}

/// Keeps the part of a convex polygon where `h >= 0`.
fn clip(poly: &[Point], h: &AffinePlane) -> Vec<Point> {
    let n = poly.len();
    let values: Vec<Q> = poly.iter().map(|p| h.value(p)).collect();
    let mut out: Vec<Point> = Vec::with_capacity(n + 1);
    for s in 0..n {
        let (a, b) = (&poly[s], &poly[(s + 1) % n]);
        let (fa, fb) = (&values[s], &values[(s + 1) % n]);
        if !fa.is_negative() {
            out.push(a.clone());
        }
        if (fa.is_positive() && fb.is_negative()) || (fa.is_negative() && fb.is_positive()) {
            let t = fa / (fa - fb);
            out.push(Point::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t));
        }
    }
    simplify(out)
}

/// Drops repeated and collinear corners.
fn simplify(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for s in 0..n {
            let (a, b, c) = (&pts[(s + n - 1) % n], &pts[s], &pts[(s + 1) % n]);
            if crate::geom::cross(a, b, c).is_zero() {
                pts.remove(s);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

fn same_box_side(a: &Point, b: &Point, bound: &Q) -> bool {
    (a.x == b.x && a.x.abs() == *bound) || (a.y == b.y && a.y.abs() == *bound)
}

fn primitive(du: i64, dv: i64) -> (i64, i64) {
    let g = gcd(du, dv).max(1);
    (du / g, dv / g)
}

fn orient_towards(d: (i64, i64), from: &Point, to: &Point) -> (i64, i64) {
    let dot = q(d.0) * (&to.x - &from.x) + q(d.1) * (&to.y - &from.y);
    if dot.is_negative() {
        (-d.0, -d.1)
    } else {
        d
    }
}

fn canonical_line_direction(d: (i64, i64)) -> (i64, i64) {
    if d.0 < 0 || (d.0 == 0 && d.1 < 0) {
        (-d.0, -d.1)
    } else {
        d
    }
}

/// A vertex where more than three planes are simultaneously maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityViolation {
    pub vertex: usize,
    pub point: Point,
    pub planes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenericityReport {
    pub violations: Vec<GenericityViolation>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that exactly three planes meet at every envelope vertex.
pub fn check_genericity(e: &Envelope) -> GenericityReport {
    let violations = e
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.planes.len() != 3)
        .map(|(i, v)| GenericityViolation {
            vertex: i,
            point: v.point.clone(),
            planes: v.planes.clone(),
        })
        .collect();
    GenericityReport { violations }
}

/// The subdivision of the slope polygon dual to an envelope: one cell per
/// envelope vertex, one edge per envelope edge, one point per face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSubdivision {
    /// Cell corners, counter-clockwise from the lexicographically smallest.
    pub cells: Vec<Vec<(i64, i64)>>,
    pub edges: Vec<((i64, i64), (i64, i64))>,
    pub points: Vec<(i64, i64)>,
}

impl DualSubdivision {
    /// Cells as unordered corner sets, for comparison with a triangulation.
    pub fn cell_sets(&self) -> BTreeSet<BTreeSet<(i64, i64)>> {
        self.cells.iter().map(|c| c.iter().copied().collect()).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<((i64, i64), (i64, i64))> {
        self.edges.iter().copied().collect()
    }
}

pub fn dual_subdivision(e: &Envelope) -> DualSubdivision {
    let slope = |i: usize| e.planes[i].slope();
    let mut cells: Vec<Vec<(i64, i64)>> = e
        .vertices
        .iter()
        .map(|v| {
            let pts: Vec<Point> = v.planes.iter().map(|&i| Point::int(slope(i).0, slope(i).1)).collect();
            convex_hull(&pts)
                .into_iter()
                .map(|p| (int_of(&p.x), int_of(&p.y)))
                .collect()
        })
        .collect();
    cells.sort();
    let mut edges: Vec<_> = e
        .edges
        .iter()
        .map(|ed| {
            let (a, b) = (slope(ed.planes.0), slope(ed.planes.1));
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort();
    let mut points: Vec<_> = e.faces.iter().map(|f| slope(f.plane)).collect();
    points.sort();
    DualSubdivision { cells, edges, points }
}

fn int_of(x: &Q) -> i64 {
    use num_traits::ToPrimitive;
    x.to_integer().to_i64().expect("lattice coordinate")
}

/// The projection of the common boundary of the `plus` and `minus` parts
/// of the envelope: every edge whose two faces lie in different classes,
/// joined into maximal paths (ending in rays) and loops.
///
/// `plus[i]` classifies plane `i`; hidden planes are ignored.
pub fn separating_line(e: &Envelope, plus: &[bool]) -> Result<PLCurve> {
    if plus.len() != e.planes.len() {
        return Err(Error::SplitIncomplete(plus.len().min(e.planes.len())));
    }
    let crossing: Vec<usize> = (0..e.edges.len())
        .filter(|&i| {
            let (a, b) = e.edges[i].planes;
            plus[a] != plus[b]
        })
        .collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); e.vertices.len()];
    for &ei in &crossing {
        match &e.edges[ei].geometry {
            EdgeGeometry::Segment { from, to } => {
                incident[*from].push(ei);
                incident[*to].push(ei);
            }
            EdgeGeometry::Ray { from, .. } => incident[*from].push(ei),
            EdgeGeometry::Line { .. } => {}
        }
    }
    if let Some(v) = incident.iter().position(|inc| inc.len() > 2) {
        let p = &e.vertices[v].point;
        return Err(Error::Branching(p.x.to_string(), p.y.to_string()));
    }

    let mut used = vec![false; e.edges.len()];
    let mut paths = Vec::new();

    // full lines first
    for &ei in &crossing {
        if let EdgeGeometry::Line { point, direction } = &e.edges[ei].geometry {
            used[ei] = true;
            paths.push(PolyPath {
                points: vec![point.clone()],
                closed: false,
                start_ray: Some((-direction.0, -direction.1)),
                end_ray: Some(*direction),
            });
        }
    }

    // paths starting from rays, in counter-clockwise order at infinity
    let mut rays: Vec<(usize, usize, (i64, i64))> = crossing
        .iter()
        .filter_map(|&ei| match &e.edges[ei].geometry {
            EdgeGeometry::Ray { from, direction } => Some((ei, *from, *direction)),
            _ => None,
        })
        .collect();
    rays.sort_by(|a, b| {
        direction_order(a.2, b.2).then_with(|| {
            let pa = &e.vertices[a.1].point;
            let pb = &e.vertices[b.1].point;
            let oa = q(a.2 .0) * &pa.y - q(a.2 .1) * &pa.x;
            let ob = q(b.2 .0) * &pb.y - q(b.2 .1) * &pb.x;
            oa.cmp(&ob)
        })
    });
    for &(ei, from, direction) in &rays {
        if used[ei] {
            continue;
        }
        used[ei] = true;
        let mut points = vec![e.vertices[from].point.clone()];
        let mut at = from;
        let end_ray = loop {
            let next = incident[at].iter().copied().find(|&x| !used[x]);
            let Some(nx) = next else { break None };
            used[nx] = true;
            match &e.edges[nx].geometry {
                EdgeGeometry::Segment { from, to } => {
                    at = if *from == at { *to } else { *from };
                    points.push(e.vertices[at].point.clone());
                }
                EdgeGeometry::Ray { direction, .. } => break Some(*direction),
                EdgeGeometry::Line { .. } => unreachable!("lines have no vertices"),
            }
        };
        paths.push(PolyPath {
            points,
            closed: false,
            start_ray: Some(direction),
            end_ray,
        });
    }

    // whatever remains closes up into loops
    loop {
        let start = crossing
            .iter()
            .copied()
            .filter(|&ei| !used[ei])
            .filter_map(|ei| match &e.edges[ei].geometry {
                EdgeGeometry::Segment { from, .. } => Some(*from),
                _ => None,
            })
            .min_by(|a, b| e.vertices[*a].point.cmp(&e.vertices[*b].point));
        let Some(start) = start else { break };
        let mut points = vec![e.vertices[start].point.clone()];
        let mut at = start;
        while let Some(nx) = incident[at].iter().copied().find(|&x| !used[x]) {
            used[nx] = true;
            if let EdgeGeometry::Segment { from, to } = &e.edges[nx].geometry {
                at = if *from == at { *to } else { *from };
                if at == start {
                    break;
                }
                points.push(e.vertices[at].point.clone());
            }
        }
        paths.push(PolyPath::closed(points));
    }

    Ok(PLCurve {
        ambient: Ambient::Plane,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Side;
    use crate::geom::q_ratio;

    fn planes(spec: &[(i64, i64, i64)]) -> Vec<AffinePlane> {
        spec.iter().map(|&(k, l, c)| AffinePlane::new(k, l, q(c))).collect()
    }

    #[test]
    fn feature_size_of_parallel_strips() {
        let e = build_envelope(&[
            AffinePlane::new(0, 0, q(0)),
            AffinePlane::new(1, 0, q(-1)),
            AffinePlane::new(2, 0, q(-3)),
        ])
        .unwrap();
        assert_eq!(e.feature_size(), Some(1.0));
        let single = build_envelope(&[
            AffinePlane::new(0, 0, q(0)),
            AffinePlane::new(1, 0, q(0)),
            AffinePlane::new(0, 1, q(0)),
        ])
        .unwrap();
        assert_eq!(single.feature_size(), None);
    }

    #[test]
    fn single_plane() {
        let e = build_envelope(&planes(&[(0, 0, 0)])).unwrap();
        assert_eq!(e.faces().len(), 1);
        assert!(e.edges().is_empty());
        assert!(e.vertices().is_empty());
        assert!(!e.faces()[0].bounded);
        assert_eq!(e.euler_characteristic(), 1);
    }

    #[test]
    fn max_of_zero_u_v() {
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0), (0, 1, 0)])).unwrap();
        assert_eq!(e.faces().len(), 3);
        assert_eq!(e.edges().len(), 3);
        assert_eq!(e.vertices().len(), 1);
        assert_eq!(e.vertices()[0].point, Point::int(0, 0));
        assert_eq!(e.vertices()[0].planes, vec![0, 1, 2]);
        assert!(e
            .edges()
            .iter()
            .all(|ed| matches!(ed.geometry, EdgeGeometry::Ray { .. })));
        assert!(check_genericity(&e).is_generic());
        assert_eq!(e.euler_characteristic(), 1);
        let d = dual_subdivision(&e);
        assert_eq!(d.cells, vec![vec![(0, 0), (1, 0), (0, 1)]]);
    }

    #[test]
    fn four_planes_through_origin() {
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])).unwrap();
        assert_eq!(e.faces().len(), 4);
        assert_eq!(e.vertices().len(), 1);
        assert_eq!(e.vertices()[0].planes.len(), 4);
        let g = check_genericity(&e);
        assert!(!g.is_generic());
        assert_eq!(g.violations[0].point, Point::int(0, 0));
        let d = dual_subdivision(&e);
        assert_eq!(d.cells, vec![vec![(0, 0), (1, 0), (1, 1), (0, 1)]]);
    }

    #[test]
    fn hidden_planes_are_reported() {
        // 1 + e^-5 x + x^2 in two variables: the middle plane never shows
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, -5), (2, 0, 0)])).unwrap();
        assert_eq!(e.hidden(), &[1]);
        assert_eq!(e.faces().len(), 2);
        assert!(matches!(e.edges()[0].geometry, EdgeGeometry::Line { .. }));
    }

    #[test]
    fn parallel_strips_without_vertices() {
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0), (2, 0, -1)])).unwrap();
        assert!(e.hidden().is_empty());
        assert_eq!(e.faces().len(), 3);
        assert_eq!(e.edges().len(), 2);
        assert!(e.vertices().is_empty());
        assert_eq!(e.euler_characteristic(), 1);
    }

    #[test]
    fn value_matches_brute_force() {
        let ps = planes(&[(0, 0, 1), (1, 0, 0), (0, 1, 0), (2, 0, -2), (0, 2, -3)]);
        let e = build_envelope(&ps).unwrap();
        for x in -6..=6 {
            for y in -6..=6 {
                let p = Point::new(q_ratio(x, 2), q_ratio(y, 3));
                let brute = ps.iter().map(|pl| pl.value(&p)).max().unwrap();
                assert_eq!(e.value_at(&p), brute);
            }
        }
    }

    #[test]
    fn separating_line_of_x_plus_y_minus_one() {
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0), (0, 1, 0)])).unwrap();
        let curve = separating_line(&e, &[false, true, true]).unwrap();
        assert_eq!(curve.arcs(), 1);
        assert_eq!(curve.loops(), 0);
        let path = &curve.paths[0];
        assert_eq!(path.points, vec![Point::int(0, 0)]);
        assert_eq!(path.start_ray, Some((0, -1)));
        assert_eq!(path.end_ray, Some((-1, 0)));
        assert_eq!(curve.summary().sides(), vec![Side::Bottom, Side::Left]);

        let none = separating_line(&e, &[true, true, true]).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn checkerboard_split_branches() {
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])).unwrap();
        assert!(matches!(
            separating_line(&e, &[true, false, false, true]),
            Err(Error::Branching(..))
        ));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(build_envelope(&[]).unwrap_err(), Error::EmptyArrangement);
        assert_eq!(
            build_envelope(&planes(&[(1, 1, 0), (1, 1, 2)])).unwrap_err(),
            Error::DuplicateSlope(1, 1)
        );
        let e = build_envelope(&planes(&[(0, 0, 0), (1, 0, 0)])).unwrap();
        assert!(separating_line(&e, &[true]).is_err());
    }
}
