//! Combinatorial and polynomial patchworking.
//!
//! Initial data is a degree `m`, a triangulation of Δ with integer
//! vertices, a sign at each vertex and a convex certificate `ν`. The
//! combinatorial curve draws, in every triangle whose corners carry both
//! signs, the midline separating them. The polynomials
//! `b_t = Σ σ_{k,l} t^{ν(k,l)} x^k y^l` realize that curve in the positive
//! quadrant for small `t`. Mirroring the data into the other three
//! quadrants (with the parity rule for signs) gives the curve in the whole
//! plane, and identifying antipodal boundary points gives the projective
//! picture.

use crate::curve::{boundary_position, Ambient, PLCurve, PolyPath, ProjectiveSummary};
use crate::envelope::{build_envelope, AffinePlane, Envelope};
use crate::error::{Error, Result};
use crate::geom::{cross, locate_in_triangle, q, to_f64, triangles_overlap, Location, Point, Q};
use crate::semiring::log_sum_exp;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self` times `(-1)^exponent`.
    pub fn times_parity(self, exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 1 {
            self.flip()
        } else {
            self
        }
    }

    /// The sign of a monomial `x^k y^l` after substituting `x -> sx x`,
    /// `y -> sy y`.
    pub fn reflected(self, k: i64, l: i64, sx: i64, sy: i64) -> Sign {
        let mut s = self;
        if sx < 0 {
            s = s.times_parity(k);
        }
        if sy < 0 {
            s = s.times_parity(l);
        }
        s
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchVertex {
    pub k: i64,
    pub l: i64,
    pub sign: Sign,
    pub nu: Q,
}

impl PatchVertex {
    pub fn new(k: i64, l: i64, sign: Sign, nu: Q) -> Self {
        PatchVertex { k, l, sign, nu }
    }

    pub fn point(&self) -> Point {
        Point::int(self.k, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Δ = conv{(0,0), (m,0), (0,m)}.
    Triangle,
    /// AΔ = conv{(±m,0), (0,±m)}.
    Square,
}

/// Validated initial data: a triangulation of Δ (or AΔ) with signs and
/// heights at its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchworkInput {
    degree: i64,
    domain: Domain,
    vertices: Vec<PatchVertex>,
    triangles: Vec<[usize; 3]>,
}

impl PatchworkInput {
    /// Validates a triangulation of Δ.
    pub fn new(degree: i64, vertices: Vec<PatchVertex>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        Self::with_domain(degree, Domain::Triangle, vertices, triangles)
    }

    pub fn with_domain(
        degree: i64,
        domain: Domain,
        vertices: Vec<PatchVertex>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self> {
        let input = PatchworkInput {
            degree,
            domain,
            vertices,
            triangles,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn vertices(&self) -> &[PatchVertex] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn ambient(&self) -> Ambient {
        match self.domain {
            Domain::Triangle => Ambient::Triangle { degree: self.degree },
            Domain::Square => Ambient::Square { degree: self.degree },
        }
    }

    /// The same data with one vertex's sign replaced.
    pub fn with_sign(&self, vertex: usize, sign: Sign) -> PatchworkInput {
        let mut out = self.clone();
        out.vertices[vertex].sign = sign;
        out
    }

    /// The same triangulation with new heights; validation is repeated.
    pub fn with_nu(&self, nu: &[Q]) -> Result<PatchworkInput> {
        let mut vertices = self.vertices.clone();
        for (v, n) in vertices.iter_mut().zip(nu) {
            v.nu = n.clone();
        }
        Self::with_domain(self.degree, self.domain, vertices, self.triangles.clone())
    }

    pub fn index_of(&self, k: i64, l: i64) -> Option<usize> {
        self.vertices.iter().position(|v| v.k == k && v.l == l)
    }

    fn in_domain(&self, k: i64, l: i64) -> bool {
        match self.domain {
            Domain::Triangle => k >= 0 && l >= 0 && k + l <= self.degree,
            Domain::Square => k.abs() + l.abs() <= self.degree,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.degree <= 0 {
            return Err(Error::Degree(self.degree));
        }
        let mut seen = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !self.in_domain(v.k, v.l) {
                return Err(Error::VertexOutside(v.k, v.l));
            }
            if seen.insert((v.k, v.l), i).is_some() {
                return Err(Error::DuplicateVertex(v.k, v.l));
            }
            if v.nu.is_negative() {
                return Err(Error::NegativeNu(v.k, v.l));
            }
        }
        let pts: Vec<Point> = self.vertices.iter().map(PatchVertex::point).collect();
        let mut used = vec![false; pts.len()];
        let mut doubled_area = Q::zero();
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= pts.len()) {
                return Err(Error::TriangleIndex(t));
            }
            let a = cross(&pts[tri[0]], &pts[tri[1]], &pts[tri[2]]);
            if a.is_zero() {
                return Err(Error::DegenerateTriangle(t));
            }
            doubled_area += a.abs();
            for &i in tri {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::UnusedVertex(i));
        }
        let corners = |t: usize| {
            let tri = self.triangles[t];
            [&pts[tri[0]], &pts[tri[1]], &pts[tri[2]]]
        };
        for a in 0..self.triangles.len() {
            for b in a + 1..self.triangles.len() {
                if triangles_overlap(corners(a), corners(b)) {
                    return Err(Error::OverlappingTriangles(a, b));
                }
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            for (vi, p) in pts.iter().enumerate() {
                if tri.contains(&vi) {
                    continue;
                }
                if locate_in_triangle(p, corners(t)) != Location::Outside {
                    return Err(Error::HangingVertex {
                        vertex: vi,
                        triangle: t,
                    });
                }
            }
        }
        let expected = match self.domain {
            Domain::Triangle => q(self.degree * self.degree),
            Domain::Square => q(4 * self.degree * self.degree),
        };
        if doubled_area != expected {
            return Err(Error::Coverage {
                found: (doubled_area / q(2)).to_string(),
                expected: (expected / q(2)).to_string(),
            });
        }
        Ok(())
    }

    /// Interior edges as `(a, b, t1, t2)` with vertex indices `a < b` and the
    /// two triangles sharing the edge, `t1 < t2`.
    pub fn interior_edges(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in 0..3 {
                let (a, b) = (tri[s], tri[(s + 1) % 3]);
                owners.entry((a.min(b), a.max(b))).or_default().push(t);
            }
        }
        owners
            .into_iter()
            .filter(|(_, ts)| ts.len() == 2)
            .map(|((a, b), ts)| (a, b, ts[0], ts[1]))
            .collect()
    }

    /// Planes `w = ku + lv − ν(k,l)`, one per vertex, in vertex order.
    pub fn planes(&self) -> Vec<AffinePlane> {
        self.vertices
            .iter()
            .map(|v| AffinePlane::new(v.k, v.l, -v.nu.clone()))
            .collect()
    }

    /// `true` for vertices carrying `+`, in vertex order.
    pub fn plus_mask(&self) -> Vec<bool> {
        self.vertices.iter().map(|v| v.sign == Sign::Plus).collect()
    }

    /// The envelope `max (ku + lv − ν(k,l))` over all vertices.
    pub fn envelope(&self) -> Envelope {
        build_envelope(&self.planes()).expect("validated vertices have distinct slopes")
    }

    /// Triangles as sets of lattice points, for comparison with a dual
    /// subdivision.
    pub fn triangle_sets(&self) -> std::collections::BTreeSet<std::collections::BTreeSet<(i64, i64)>> {
        self.triangles
            .iter()
            .map(|tri| tri.iter().map(|&i| (self.vertices[i].k, self.vertices[i].l)).collect())
            .collect()
    }
}

/// An interior edge across which the heights are not strictly convex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityFailure {
    pub edge: (usize, usize),
    pub triangles: (usize, usize),
    /// `ν(opposite) − extension`; must be positive to pass.
    pub slack: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConvexityReport {
    pub failures: Vec<ConvexityFailure>,
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `ν` is linear on each triangle and strictly convex across
/// every interior edge: the affine extension of `ν` from one triangle must
/// lie strictly below `ν` at the far corner of its neighbour.
pub fn check_convexity(input: &PatchworkInput) -> ConvexityReport {
    let mut failures = Vec::new();
    for (a, b, t1, t2) in input.interior_edges() {
        let opposite = |t: usize| {
            *input.triangles[t]
                .iter()
                .find(|&&i| i != a && i != b)
                .expect("triangle has a third corner")
        };
        let far = opposite(t2);
        let extended = affine_extension_value(input, input.triangles[t1], &input.vertices[far].point());
        let slack = &input.vertices[far].nu - extended;
        if !slack.is_positive() {
            failures.push(ConvexityFailure {
                edge: (a, b),
                triangles: (t1, t2),
                slack,
            });
        }
    }
    ConvexityReport { failures }
}

/// Value at `p` of the affine function interpolating `ν` on a triangle.
fn affine_extension_value(input: &PatchworkInput, tri: [usize; 3], p: &Point) -> Q {
    let v: Vec<&PatchVertex> = tri.iter().map(|&i| &input.vertices[i]).collect();
    let pts: Vec<Point> = v.iter().map(|x| x.point()).collect();
    let total = cross(&pts[0], &pts[1], &pts[2]);
    let w0 = cross(p, &pts[1], &pts[2]);
    let w1 = cross(&pts[0], p, &pts[2]);
    let w2 = cross(&pts[0], &pts[1], p);
    (w0 * &v[0].nu + w1 * &v[1].nu + w2 * &v[2].nu) / total
}

/// Midlines of all mixed-sign triangles, joined into arcs and loops.
///
/// Arcs run from the end that comes first counter-clockwise along the
/// boundary; paths are listed by their lexicographically smallest point.
pub fn combinatorial_patchwork(input: &PatchworkInput) -> PLCurve {
    let ambient = input.ambient();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut adjacency: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for tri in &input.triangles {
        let mixed: Vec<(usize, usize)> = (0..3)
            .map(|s| (tri[s], tri[(s + 1) % 3]))
            .filter(|&(a, b)| input.vertices[a].sign != input.vertices[b].sign)
            .map(|(a, b)| key(a, b))
            .collect();
        // three corners admit either no split or exactly two mixed edges
        if mixed.len() == 2 {
            adjacency.entry(mixed[0]).or_default().push(mixed[1]);
            adjacency.entry(mixed[1]).or_default().push(mixed[0]);
        }
    }
    let midpoint = |e: (usize, usize)| input.vertices[e.0].point().midpoint(&input.vertices[e.1].point());

    let mut visited: BTreeMap<(usize, usize), bool> = adjacency.keys().map(|&k| (k, false)).collect();
    let mut paths = Vec::new();

    let mut ends: Vec<((usize, usize), Q)> = adjacency
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(&e, _)| {
            let pos = boundary_position(ambient, &midpoint(e)).unwrap_or_else(Q::zero);
            (e, pos)
        })
        .collect();
    ends.sort_by(|a, b| a.1.cmp(&b.1));
    for (start, _) in ends {
        if visited[&start] {
            continue;
        }
        let mut nodes = vec![start];
        visited.insert(start, true);
        let mut at = start;
        while let Some(&next) = adjacency[&at].iter().find(|n| !visited[*n]) {
            visited.insert(next, true);
            nodes.push(next);
            at = next;
        }
        paths.push(PolyPath::open(nodes.into_iter().map(midpoint).collect()));
    }

    loop {
        let start = visited
            .iter()
            .filter(|(_, v)| !**v)
            .map(|(&e, _)| e)
            .min_by(|a, b| midpoint(*a).cmp(&midpoint(*b)));
        let Some(start) = start else { break };
        visited.insert(start, true);
        let mut nodes = vec![start];
        let mut at = start;
        loop {
            let mut options: Vec<(usize, usize)> = adjacency[&at].iter().copied().filter(|n| !visited[n]).collect();
            options.sort_by_key(|&n| midpoint(n));
            let Some(&next) = options.first() else { break };
            visited.insert(next, true);
            nodes.push(next);
            at = next;
        }
        paths.push(PolyPath::closed(nodes.into_iter().map(midpoint).collect()));
    }

    paths.sort_by(|a, b| {
        let min = |p: &PolyPath| p.points.iter().min().cloned();
        min(a).cmp(&min(b))
    });
    PLCurve { ambient, paths }
}

/// Mirrors triangle data into the four quadrants. A vertex keeps its sign
/// under reflection in an axis when its distance to that axis is even and
/// flips it when the distance is odd.
pub fn affine_extension(input: &PatchworkInput) -> Result<PatchworkInput> {
    if input.domain != Domain::Triangle {
        return Err(Error::NotTriangleDomain);
    }
    let mut vertices: Vec<PatchVertex> = Vec::new();
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut triangles = Vec::new();
    for (sx, sy) in QUADRANTS {
        let mut map = Vec::with_capacity(input.vertices.len());
        for v in &input.vertices {
            let (k, l) = (sx * v.k, sy * v.l);
            let idx = *index.entry((k, l)).or_insert_with(|| {
                vertices.push(PatchVertex::new(k, l, v.sign.reflected(v.k, v.l, sx, sy), v.nu.clone()));
                vertices.len() - 1
            });
            map.push(idx);
        }
        for tri in &input.triangles {
            triangles.push([map[tri[0]], map[tri[1]], map[tri[2]]]);
        }
    }
    PatchworkInput::with_domain(input.degree, Domain::Square, vertices, triangles)
}

/// Quadrant sign pairs in counter-clockwise order.
pub const QUADRANTS: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// Contractible in the projective plane.
    Oval,
    /// Not contractible: crosses the glued boundary an odd number of times.
    Pseudoline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveComponent {
    /// Indices into the affine curve's paths.
    pub paths: Vec<usize>,
    /// Number of passages through the identified boundary.
    pub boundary_crossings: usize,
    pub kind: ComponentKind,
}

/// The image of an AΔ curve after identifying `x ~ −x` on ∂(AΔ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveCurve {
    pub affine: PLCurve,
    pub components: Vec<ProjectiveComponent>,
}

impl ProjectiveCurve {
    pub fn summary(&self) -> ProjectiveSummary {
        let ovals = self.components.iter().filter(|c| c.kind == ComponentKind::Oval).count();
        ProjectiveSummary {
            ovals,
            pseudolines: self.components.len() - ovals,
        }
    }
}

/// Stitches arcs of an AΔ curve across antipodal boundary points and
/// classifies each closed component by the parity of its boundary passages.
pub fn projective_glue(curve: &PLCurve) -> Result<ProjectiveCurve> {
    if !matches!(curve.ambient, Ambient::Square { .. }) {
        return Err(Error::NotTriangleDomain);
    }
    let n = curve.paths.len();
    let mut endpoint_owner: HashMap<Point, usize> = HashMap::new();
    for (i, p) in curve.paths.iter().enumerate().filter(|(_, p)| !p.closed) {
        endpoint_owner.insert(p.points[0].clone(), i);
        endpoint_owner.insert(p.points.last().expect("non-empty").clone(), i);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut crossings = vec![0usize; n];
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    let mut pairs: Vec<(&Point, usize)> = endpoint_owner.iter().map(|(p, &i)| (p, i)).collect();
    pairs.sort();
    for (p, i) in pairs {
        let antipode = Point::new(-p.x.clone(), -p.y.clone());
        // each identified pair is visited from both sides; count it once
        if antipode < *p {
            continue;
        }
        let Some(&j) = endpoint_owner.get(&antipode) else {
            return Err(Error::UnpairedBoundaryPoint(p.to_string()));
        };
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            crossings[rj] += crossings[ri] + 1;
        } else {
            crossings[ri] += 1;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut components: Vec<ProjectiveComponent> = groups
        .into_iter()
        .map(|(root, paths)| ProjectiveComponent {
            paths,
            boundary_crossings: crossings[root],
            kind: if crossings[root] % 2 == 1 {
                ComponentKind::Pseudoline
            } else {
                ComponentKind::Oval
            },
        })
        .collect();
    components.sort_by_key(|c| c.paths[0]);
    Ok(ProjectiveCurve {
        affine: curve.clone(),
        components,
    })
}

/// Bivariate polynomial with positive coefficients stored as natural logs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PosPolynomial2 {
    terms: Vec<((i64, i64), f64)>,
}

impl PosPolynomial2 {
    pub fn from_log_terms(mut terms: Vec<((i64, i64), f64)>) -> Self {
        terms.sort_by_key(|t| t.0);
        PosPolynomial2 { terms }
    }

    pub fn log_terms(&self) -> &[((i64, i64), f64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `ln p(e^u, e^v)`; `-inf` for the empty polynomial.
    pub fn log_eval(&self, u: f64, v: f64) -> f64 {
        let exps: Vec<f64> = self
            .terms
            .iter()
            .map(|&((k, l), c)| k as f64 * u + l as f64 * v + c)
            .collect();
        log_sum_exp(&exps).unwrap_or(f64::NEG_INFINITY)
    }
}

/// `p⁺ − p⁻` with disjoint supports.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignedPolynomial2 {
    pub plus: PosPolynomial2,
    pub minus: PosPolynomial2,
}

impl SignedPolynomial2 {
    /// From `((k, l), sign, ln |coefficient|)` triples.
    pub fn from_signed_log_terms(terms: &[((i64, i64), Sign, f64)]) -> Self {
        let pick = |s: Sign| {
            PosPolynomial2::from_log_terms(terms.iter().filter(|t| t.1 == s).map(|&(e, _, c)| (e, c)).collect())
        };
        SignedPolynomial2 {
            plus: pick(Sign::Plus),
            minus: pick(Sign::Minus),
        }
    }

    pub fn signed_log_terms(&self) -> Vec<((i64, i64), Sign, f64)> {
        let mut all: Vec<_> = self
            .plus
            .terms
            .iter()
            .map(|&(e, c)| (e, Sign::Plus, c))
            .chain(self.minus.terms.iter().map(|&(e, c)| (e, Sign::Minus, c)))
            .collect();
        all.sort_by_key(|t| t.0);
        all
    }

    /// `p(sx·x, sy·y)`.
    pub fn reflected(&self, sx: i64, sy: i64) -> SignedPolynomial2 {
        let terms: Vec<_> = self
            .signed_log_terms()
            .into_iter()
            .map(|((k, l), s, c)| ((k, l), s.reflected(k, l, sx, sy), c))
            .collect();
        SignedPolynomial2::from_signed_log_terms(&terms)
    }

    /// `ln p⁺(e^u, e^v) − ln p⁻(e^u, e^v)`.
    pub fn log_difference(&self, u: f64, v: f64) -> f64 {
        self.plus.log_eval(u, v) - self.minus.log_eval(u, v)
    }

    /// Plain evaluation at a point of the plane.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.signed_log_terms()
            .into_iter()
            .map(|((k, l), s, c)| s.value() as f64 * c.exp() * x.powi(k as i32) * y.powi(l as i32))
            .sum()
    }

    /// Restriction to `y = 0` (or `x = 0` when `on_x_axis` is false) as a
    /// univariate signed coefficient list.
    pub fn axis_restriction(&self, on_x_axis: bool) -> Vec<(u32, f64)> {
        self.signed_log_terms()
            .into_iter()
            .filter(|&((k, l), _, _)| if on_x_axis { l == 0 } else { k == 0 })
            .map(|((k, l), s, c)| {
                let e = if on_x_axis { k } else { l };
                (e as u32, s.value() as f64 * c.exp())
            })
            .collect()
    }
}

/// `b_t = b_t⁺ − b_t⁻` with coefficients `t^ν` held as `ν ln t`.
pub fn polynomial_patchwork(input: &PatchworkInput, t: f64) -> Result<SignedPolynomial2> {
    if t.is_nan() || t <= 0.0 || !t.is_finite() {
        return Err(Error::PatchworkParameter(t));
    }
    Ok(polynomial_patchwork_ln(input, t.ln()))
}

/// `b_t` for `t = e^{ln_t}`, usable far below the smallest positive float.
pub fn polynomial_patchwork_ln(input: &PatchworkInput, ln_t: f64) -> SignedPolynomial2 {
    let terms: Vec<_> = input
        .vertices
        .iter()
        .map(|v| ((v.k, v.l), v.sign, to_f64(&v.nu) * ln_t))
        .collect();
    SignedPolynomial2::from_signed_log_terms(&terms)
}

/// Renders `b_t` at a numeric `t`, e.g. `-1e-3 + x + y - 1e-6*x^2`.
pub fn format_polynomial(input: &PatchworkInput, t: f64) -> String {
    let mut terms: Vec<&PatchVertex> = input.vertices.iter().collect();
    terms.sort_by_key(|v| (v.k + v.l, -v.k));
    let mut out = String::new();
    for (i, v) in terms.iter().enumerate() {
        let coeff = (to_f64(&v.nu) * t.ln()).exp();
        let sign = v.sign;
        if i == 0 {
            if sign == Sign::Minus {
                out.push('-');
            }
        } else {
            out.push_str(if sign == Sign::Plus { " + " } else { " - " });
        }
        let monomial = monomial_text(v.k, v.l);
        let unit = v.nu.is_zero();
        if unit {
            out.push_str(if monomial.is_empty() { "1" } else { &monomial });
        } else {
            out.push_str(&format_coefficient(coeff));
            if !monomial.is_empty() {
                out.push('*');
                out.push_str(&monomial);
            }
        }
    }
    out
}

/// Renders `b_t` with symbolic powers of `t`, e.g. `-t + x + y - t^2*x^2`.
pub fn format_symbolic(input: &PatchworkInput) -> String {
    let mut terms: Vec<&PatchVertex> = input.vertices.iter().collect();
    terms.sort_by_key(|v| (v.k + v.l, -v.k));
    let mut out = String::new();
    for (i, v) in terms.iter().enumerate() {
        if i == 0 {
            if v.sign == Sign::Minus {
                out.push('-');
            }
        } else {
            out.push_str(if v.sign == Sign::Plus { " + " } else { " - " });
        }
        let monomial = monomial_text(v.k, v.l);
        let power = if v.nu.is_zero() {
            String::new()
        } else if v.nu == q(1) {
            "t".to_string()
        } else if v.nu.is_integer() {
            format!("t^{}", v.nu)
        } else {
            format!("t^({})", v.nu)
        };
        match (power.is_empty(), monomial.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&monomial),
            (false, true) => out.push_str(&power),
            (false, false) => {
                out.push_str(&power);
                out.push('*');
                out.push_str(&monomial);
            }
        }
    }
    out
}

fn monomial_text(k: i64, l: i64) -> String {
    let factor = |name: &str, e: i64| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let (a, b) = (factor("x", k), factor("y", l));
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => format!("{a}*{b}"),
    }
}

/// Shortest of `{:e}` with at most 9 significant digits.
pub fn format_coefficient(x: f64) -> String {
    let s = format!("{:.8e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}e{exp}")
}

/// Converts `t` into the rational heights' `t^ν` without underflow checks;
/// useful for exact evaluation in tests with dyadic `t`.
pub fn dyadic_coefficient(nu: &Q, log2_inv_t: u32) -> Option<Q> {
    if !nu.is_integer() || nu.is_negative() {
        return None;
    }
    let e = nu.to_integer();
    let e: u32 = e.try_into().ok()?;
    let denom = num_bigint::BigInt::from(2u8).pow(e.checked_mul(log2_inv_t)?);
    Some(Q::new(1.into(), denom))
}

/// Triangulation of Δ induced by lifting lattice points to heights `ν`:
/// the triangles are the projections of the lower convex hull's faces.
/// Points lifted strictly above the hull are dropped. Fails when four
/// lifted points share a lower face, since the subdivision then has
/// non-triangular cells.
pub fn regular_triangulation(degree: i64, points: &[(i64, i64, Sign, Q)]) -> Result<PatchworkInput> {
    let pts: Vec<Point> = points.iter().map(|p| Point::int(p.0, p.1)).collect();
    let n = pts.len();
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let area = cross(&pts[a], &pts[b], &pts[c]);
                if area.is_zero() {
                    continue;
                }
                let (a, b) = if area.is_positive() { (a, b) } else { (b, a) };
                let total = area.abs();
                let mut lower = true;
                let mut touching = Vec::new();
                for p in 0..n {
                    if p == a || p == b || p == c {
                        continue;
                    }
                    let plane = (cross(&pts[p], &pts[b], &pts[c]) * &points[a].3
                        + cross(&pts[a], &pts[p], &pts[c]) * &points[b].3
                        + cross(&pts[a], &pts[b], &pts[p]) * &points[c].3)
                        / &total;
                    match points[p].3.cmp(&plane) {
                        std::cmp::Ordering::Less => {
                            lower = false;
                            break;
                        }
                        std::cmp::Ordering::Equal => touching.push(p),
                        std::cmp::Ordering::Greater => {}
                    }
                }
                if !lower {
                    continue;
                }
                if !touching.is_empty() {
                    let listed: Vec<String> = [a, b, c]
                        .iter()
                        .chain(&touching)
                        .map(|&i| format!("({}, {})", points[i].0, points[i].1))
                        .collect();
                    return Err(Error::NonGenericLifting(listed.join(", ")));
                }
                faces.push([a, b, c]);
            }
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for face in &faces {
        for &i in face {
            if remap[i] == usize::MAX {
                remap[i] = vertices.len();
                let (k, l, s, nu) = &points[i];
                vertices.push(PatchVertex::new(*k, *l, *s, nu.clone()));
            }
        }
    }
    let triangles = faces.iter().map(|f| [remap[f[0]], remap[f[1]], remap[f[2]]]).collect();
    PatchworkInput::new(degree, vertices, triangles)
}

/// The ellipse data: `b_t = −t + x + y − t²x² − t³y²`.
pub fn ellipse() -> PatchworkInput {
    let v = |k, l, s, n| PatchVertex::new(k, l, s, q(n));
    PatchworkInput::new(
        2,
        vec![
            v(0, 0, Sign::Minus, 1),
            v(1, 0, Sign::Plus, 0),
            v(0, 1, Sign::Plus, 0),
            v(2, 0, Sign::Minus, 2),
            v(0, 2, Sign::Minus, 3),
        ],
        vec![[0, 1, 2], [1, 3, 2], [3, 4, 2]],
    )
    .expect("ellipse data is a valid triangulation")
}

/// The line data: `b_t = −t + x + y`.
pub fn line() -> PatchworkInput {
    PatchworkInput::new(
        1,
        vec![
            PatchVertex::new(0, 0, Sign::Minus, q(1)),
            PatchVertex::new(1, 0, Sign::Plus, q(0)),
            PatchVertex::new(0, 1, Sign::Plus, q(0)),
        ],
        vec![[0, 1, 2]],
    )
    .expect("line data is a valid triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Side;
    use crate::envelope::{dual_subdivision, separating_line};
    use crate::geom::q_ratio;

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(q_ratio(x.0, x.1), q_ratio(y.0, y.1))
    }

    fn single(signs: [Sign; 3]) -> PatchworkInput {
        PatchworkInput::new(
            1,
            vec![
                PatchVertex::new(0, 0, signs[0], q(0)),
                PatchVertex::new(1, 0, signs[1], q(0)),
                PatchVertex::new(0, 1, signs[2], q(0)),
            ],
            vec![[0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn ellipse_is_convex() {
        assert!(check_convexity(&ellipse()).is_convex());
    }

    #[test]
    fn flat_heights_fail_every_interior_edge() {
        let e = ellipse();
        let flat = e.with_nu(&[q(0), q(0), q(0), q(0), q(0)]).unwrap();
        let report = check_convexity(&flat);
        assert_eq!(report.failures.len(), e.interior_edges().len());
        assert_eq!(report.failures.len(), 2);
        assert!(report.failures.iter().all(|f| f.slack.is_zero()));
    }

    #[test]
    fn single_triangle_is_always_convex() {
        assert!(check_convexity(&single([Sign::Plus; 3])).is_convex());
    }

    #[test]
    fn convexity_slack_values() {
        let report = check_convexity(&ellipse().with_nu(&[q(1), q(0), q(0), q(2), q(1)]).unwrap());
        // across (0,1)-(2,0): 2k + 2l - 2 at (0,2) is 2 > 1
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].slack, q(-1));
    }

    #[test]
    fn one_mixed_triangle() {
        let c = combinatorial_patchwork(&single([Sign::Plus, Sign::Plus, Sign::Minus]));
        assert_eq!(c.paths.len(), 1);
        let mut pts = c.paths[0].points.clone();
        pts.sort();
        assert_eq!(pts, vec![pt((0, 1), (1, 2)), pt((1, 2), (1, 2))]);
    }

    #[test]
    fn uniform_signs_give_nothing() {
        assert!(combinatorial_patchwork(&single([Sign::Minus; 3])).is_empty());
        let all_plus = ellipse()
            .with_sign(0, Sign::Plus)
            .with_sign(3, Sign::Plus)
            .with_sign(4, Sign::Plus);
        assert!(combinatorial_patchwork(&all_plus).is_empty());
    }

    #[test]
    fn ellipse_curve_in_triangle() {
        let c = combinatorial_patchwork(&ellipse());
        assert_eq!(c.arcs(), 2);
        assert_eq!(c.loops(), 0);
        assert_eq!(c.paths[0].points, vec![pt((1, 2), (0, 1)), pt((0, 1), (1, 2))]);
        assert_eq!(
            c.paths[1].points,
            vec![pt((3, 2), (0, 1)), pt((1, 1), (1, 2)), pt((0, 1), (3, 2))]
        );
        let s = c.summary();
        assert_eq!(s.sides(), vec![Side::Bottom, Side::Bottom, Side::Left, Side::Left]);
    }

    #[test]
    fn polynomial_of_ellipse() {
        let b = polynomial_patchwork(&ellipse(), 0.5).unwrap();
        let terms = b.signed_log_terms();
        let expect = [
            ((0, 0), Sign::Minus, 1.0),
            ((0, 1), Sign::Plus, 0.0),
            ((0, 2), Sign::Minus, 3.0),
            ((1, 0), Sign::Plus, 0.0),
            ((2, 0), Sign::Minus, 2.0),
        ];
        for (got, want) in terms.iter().zip(expect.iter()) {
            assert_eq!(got.0, want.0);
            assert_eq!(got.1, want.1);
            assert!((got.2 - want.2 * 0.5f64.ln()).abs() < 1e-15);
        }
        assert_eq!(format_symbolic(&ellipse()), "-t + x + y - t^2*x^2 - t^3*y^2");
        assert_eq!(
            format_polynomial(&ellipse(), 1e-3),
            "-1e-3 + x + y - 1e-6*x^2 - 1e-9*y^2"
        );
        let at_one = polynomial_patchwork(&ellipse(), 1.0).unwrap();
        assert!(at_one.signed_log_terms().iter().all(|t| t.2 == 0.0));
        assert!(polynomial_patchwork(&ellipse(), 0.0).is_err());
    }

    #[test]
    fn sign_rule_examples() {
        assert_eq!(Sign::Plus.reflected(1, 0, -1, 1), Sign::Minus);
        assert_eq!(Sign::Minus.reflected(0, 2, 1, -1), Sign::Minus);
        assert_eq!(Sign::Plus.reflected(0, 2, 1, -1), Sign::Plus);
        assert_eq!(Sign::Plus.reflected(1, 1, -1, -1), Sign::Plus);
    }

    #[test]
    fn sign_rule_is_an_involution() {
        for s in [Sign::Plus, Sign::Minus] {
            for k in 0..4 {
                for l in 0..4 {
                    for (sx, sy) in QUADRANTS {
                        assert_eq!(s.reflected(k, l, sx, sy).reflected(k, l, sx, sy), s);
                    }
                }
            }
        }
    }

    #[test]
    fn affine_extension_of_ellipse() {
        let a = affine_extension(&ellipse()).unwrap();
        assert_eq!(a.domain(), Domain::Square);
        // 5 vertices: origin shared by 4 copies, axis points by 2
        assert_eq!(a.vertices().len(), 1 + 4 * 2);
        assert_eq!(a.triangles().len(), 12);
        let sign_at = |k, l| a.vertices()[a.index_of(k, l).unwrap()].sign;
        assert_eq!(sign_at(-1, 0), Sign::Minus);
        assert_eq!(sign_at(0, -1), Sign::Minus);
        assert_eq!(sign_at(-2, 0), Sign::Minus);
        assert_eq!(sign_at(0, -2), Sign::Minus);
        assert!(affine_extension(&a).is_err());
    }

    #[test]
    fn projective_classification() {
        let line_curve = combinatorial_patchwork(&affine_extension(&line()).unwrap());
        assert_eq!(line_curve.arcs(), 1);
        let p = projective_glue(&line_curve).unwrap();
        assert_eq!(
            p.summary(),
            ProjectiveSummary {
                ovals: 0,
                pseudolines: 1
            }
        );

        let ell = combinatorial_patchwork(&affine_extension(&ellipse()).unwrap());
        assert_eq!(ell.loops(), 1);
        assert_eq!(ell.arcs(), 0);
        let p = projective_glue(&ell).unwrap();
        assert_eq!(
            p.summary(),
            ProjectiveSummary {
                ovals: 1,
                pseudolines: 0
            }
        );
    }

    #[test]
    fn empty_affine_curve_glues_to_empty() {
        let curve = PLCurve::empty(Ambient::Square { degree: 3 });
        let p = projective_glue(&curve).unwrap();
        assert!(p.components.is_empty());
    }

    #[test]
    fn validation_errors() {
        let v = |k, l| PatchVertex::new(k, l, Sign::Plus, q(0));
        assert_eq!(
            PatchworkInput::new(0, vec![v(0, 0)], vec![]).unwrap_err(),
            Error::Degree(0)
        );
        assert_eq!(
            PatchworkInput::new(1, vec![v(0, 0), v(1, 0), v(1, 1)], vec![[0, 1, 2]]).unwrap_err(),
            Error::VertexOutside(1, 1)
        );
        assert_eq!(
            PatchworkInput::new(1, vec![v(0, 0), v(1, 0), v(0, 1), v(0, 0)], vec![[0, 1, 2]]).unwrap_err(),
            Error::DuplicateVertex(0, 0)
        );
        assert!(matches!(
            PatchworkInput::new(2, vec![v(0, 0), v(1, 0), v(0, 1)], vec![[0, 1, 2]]),
            Err(Error::Coverage { .. })
        ));
        assert_eq!(
            PatchworkInput::new(1, vec![v(0, 0), v(1, 0), v(0, 1)], vec![[0, 1, 3]]).unwrap_err(),
            Error::TriangleIndex(0)
        );
        // (1,1) sits on the hypotenuse of the big triangle
        assert!(matches!(
            PatchworkInput::new(2, vec![v(0, 0), v(2, 0), v(0, 2), v(1, 1)], vec![[0, 1, 2], [1, 2, 3]]),
            Err(Error::DegenerateTriangle(1))
        ));
        assert!(matches!(
            PatchworkInput::new(2, vec![v(0, 0), v(2, 0), v(0, 2), v(1, 0)], vec![[0, 1, 2]]),
            Err(Error::UnusedVertex(3))
        ));
        let neg = PatchVertex::new(0, 0, Sign::Plus, q(-1));
        assert_eq!(
            PatchworkInput::new(1, vec![neg, v(1, 0), v(0, 1)], vec![[0, 1, 2]]).unwrap_err(),
            Error::NegativeNu(0, 0)
        );
    }

    #[test]
    fn overlapping_triangles_rejected() {
        let v = |k, l| PatchVertex::new(k, l, Sign::Plus, q(0));
        let r = PatchworkInput::new(
            2,
            vec![v(0, 0), v(2, 0), v(0, 2), v(1, 0), v(0, 1)],
            vec![[0, 1, 2], [3, 1, 4]],
        );
        assert!(matches!(r, Err(Error::OverlappingTriangles(0, 1))), "{r:?}");
    }

    #[test]
    fn ellipse_envelope_is_dual_to_triangulation() {
        let input = ellipse();
        let env = input.envelope();
        assert!(crate::envelope::check_genericity(&env).is_generic());
        assert!(env.hidden().is_empty());
        let dual = dual_subdivision(&env);
        assert_eq!(dual.cell_sets(), input.triangle_sets());
        let sep = separating_line(&env, &input.plus_mask()).unwrap();
        let predicted = combinatorial_patchwork(&input);
        assert!(sep.summary().matches(&predicted.summary()));
        assert_eq!(sep.arcs(), 2);
    }

    #[test]
    fn quadrant_consistency() {
        let input = ellipse();
        let ext = affine_extension(&input).unwrap();
        for (sx, sy) in QUADRANTS {
            for v in input.vertices() {
                let mirrored = &ext.vertices()[ext.index_of(sx * v.k, sy * v.l).unwrap()];
                let from_poly = polynomial_patchwork(&input, 0.5)
                    .unwrap()
                    .reflected(sx, sy)
                    .signed_log_terms()
                    .into_iter()
                    .find(|t| t.0 == (v.k, v.l))
                    .unwrap()
                    .1;
                assert_eq!(mirrored.sign, from_poly);
            }
        }
    }

    #[test]
    fn lifting_recovers_the_ellipse_triangulation() {
        let e = ellipse();
        let pts: Vec<_> = e
            .vertices()
            .iter()
            .map(|v| (v.k, v.l, v.sign, v.nu.clone()))
            .chain(std::iter::once((1, 1, Sign::Plus, q(5))))
            .collect();
        let lifted = regular_triangulation(2, &pts).unwrap();
        assert_eq!(lifted.triangle_sets(), e.triangle_sets());
        assert_eq!(lifted.vertices().len(), 5);
        assert!(check_convexity(&lifted).is_convex());

        let flat: Vec<_> = pts.iter().map(|p| (p.0, p.1, p.2, q(0))).collect();
        assert!(matches!(
            regular_triangulation(2, &flat),
            Err(Error::NonGenericLifting(_))
        ));
    }

    #[test]
    fn dyadic_coefficients() {
        assert_eq!(dyadic_coefficient(&q(3), 1), Some(q_ratio(1, 8)));
        assert_eq!(dyadic_coefficient(&q_ratio(1, 2), 1), None);
    }
}
