//! Numeric tracing of `{p⁺ = p⁻}` on log paper.
//!
//! The sign of `F(u, v) = ln p⁺(e^u, e^v) − ln p⁻(e^u, e^v)` is sampled on a
//! grid (both logs by log-sum-exp, never by exponentiating the polynomial),
//! contoured with marching squares and summarized as a [`TopologySummary`]
//! that can be compared with a piecewise-linear prediction.

use crate::curve::{close_at_infinity, Ambient, End, PLCurve, ProjectiveSummary, Side, TopologySummary};
use crate::error::{Error, Result};
use crate::patchwork::{polynomial_patchwork_ln, PatchworkInput, SignedPolynomial2, QUADRANTS};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Nodes with `|F|` below this are reported as ambiguous.
pub const AMBIGUITY_THRESHOLD: f64 = 1e-13;

/// Refinements of `t` tried by the stabilization protocol after the first.
pub const MAX_REFINEMENTS: usize = 12;

/// Consecutive values of `t` whose topology must agree before the protocol
/// accepts the first of them.
pub const AGREEING_STEPS: usize = 2;

/// The zero set of `b_t` stays within `ln(#terms) / (−ln t)` of the
/// tropical curve (in scaled coordinates); the protocol skips values of `t`
/// for which that tube is wider than this fraction of the curve's smallest
/// feature.
pub const TUBE_FRACTION: f64 = 0.125;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceWindow {
    pub u_lo: f64,
    pub u_hi: f64,
    pub v_lo: f64,
    pub v_hi: f64,
    pub resolution: usize,
}

impl TraceWindow {
    pub fn new(u_lo: f64, u_hi: f64, v_lo: f64, v_hi: f64, resolution: usize) -> Result<Self> {
        let bounds = [u_lo, u_hi, v_lo, v_hi];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::TraceWindow(format!("bounds must be finite, got {bounds:?}")));
        }
        if u_lo >= u_hi || v_lo >= v_hi {
            return Err(Error::TraceWindow(format!(
                "empty window [{u_lo}, {u_hi}] x [{v_lo}, {v_hi}]"
            )));
        }
        if resolution < 16 {
            return Err(Error::TraceWindow(format!(
                "resolution must be at least 16, got {resolution}"
            )));
        }
        Ok(TraceWindow {
            u_lo,
            u_hi,
            v_lo,
            v_hi,
            resolution,
        })
    }

    /// `[−r, r]²`.
    pub fn square(r: f64, resolution: usize) -> Result<Self> {
        Self::new(-r, r, -r, r, resolution)
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_lo + (self.u_hi - self.u_lo) * i as f64 / self.resolution as f64
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v_lo + (self.v_hi - self.v_lo) * j as f64 / self.resolution as f64
    }
}

/// Values of `F` at the `(resolution + 1)²` grid nodes, row by row in `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignField {
    pub window: TraceWindow,
    values: Vec<f64>,
    /// Nodes `(i, j)` where `|F| < 1e-13`.
    pub ambiguous: Vec<(usize, usize)>,
}

impl SignField {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.window.resolution + 1) + i]
    }

    /// `true` for `F ≥ 0`; ambiguous nodes are therefore counted as positive.
    pub fn positive(&self, i: usize, j: usize) -> bool {
        self.value(i, j) >= 0.0
    }
}

fn check_polynomial(q: &SignedPolynomial2) -> Result<()> {
    if q.plus.is_empty() && q.minus.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    Ok(())
}

/// Samples `F` on the window grid; rows are evaluated in parallel.
pub fn sign_field(q: &SignedPolynomial2, window: &TraceWindow) -> Result<SignField> {
    check_polynomial(q)?;
    let n = window.resolution;
    let rows: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|j| {
            let v = window.v(j);
            (0..=n).map(|i| q.log_difference(window.u(i), v)).collect()
        })
        .collect();
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    let ambiguous = values
        .iter()
        .enumerate()
        .filter(|(_, f)| f.abs() < AMBIGUITY_THRESHOLD)
        .map(|(idx, _)| (idx % (n + 1), idx / (n + 1)))
        .collect();
    Ok(SignField {
        window: *window,
        values,
        ambiguous,
    })
}

/// Sides of the rectangular window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowSide {
    Bottom,
    Right,
    Top,
    Left,
}

/// A point where the traced curve leaves the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub side: WindowSide,
    /// `u` on the bottom and top sides, `v` on the left and right sides.
    pub position: f64,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracedPath {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub window: TraceWindow,
    /// One polyline per component, in `(u, v)` coordinates.
    pub segments: Vec<TracedPath>,
    pub components: usize,
    /// Counter-clockwise from the bottom-left corner.
    pub crossings: Vec<Crossing>,
    pub ambiguous_nodes: usize,
    pub stabilized_t: Option<f64>,
    pub stabilized_ln_t: Option<f64>,
}

impl TraceReport {
    pub fn loops(&self) -> usize {
        self.segments.iter().filter(|s| s.closed).count()
    }

    pub fn arcs(&self) -> usize {
        self.segments.len() - self.loops()
    }

    /// Reads the window as the positive quadrant: exits to the left are
    /// `x → 0`, exits at the bottom are `y → 0`, and everything else
    /// escapes to infinity through the hypotenuse directions.
    pub fn summary(&self) -> TopologySummary {
        let ends: Vec<(Side, usize)> = self
            .crossings
            .iter()
            .map(|c| {
                let side = match c.side {
                    WindowSide::Bottom => Side::Bottom,
                    WindowSide::Left => Side::Left,
                    WindowSide::Right | WindowSide::Top => Side::Hypotenuse,
                };
                (side, c.component)
            })
            .collect();
        TopologySummary::from_ordered_ends(self.loops(), self.arcs(), &ends)
    }

    fn crossings_on(&self, side: WindowSide) -> Vec<Crossing> {
        let mut out: Vec<Crossing> = self.crossings.iter().copied().filter(|c| c.side == side).collect();
        out.sort_by(|a, b| a.position.total_cmp(&b.position));
        out
    }

    /// Exits through the top or right side in counter-clockwise order.
    fn outer_crossings(&self) -> Vec<Crossing> {
        self.crossings
            .iter()
            .copied()
            .filter(|c| matches!(c.side, WindowSide::Right | WindowSide::Top))
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Grid edges are numbered horizontals first, then verticals.
struct EdgeIndex {
    n: usize,
}

impl EdgeIndex {
    fn horizontal(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    fn vertical(&self, i: usize, j: usize) -> usize {
        (self.n + 1) * self.n + j * (self.n + 1) + i
    }

    /// Endpoints `(i0, j0)`, `(i1, j1)` of an edge.
    fn nodes(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let h = (self.n + 1) * self.n;
        if e < h {
            let (j, i) = (e / self.n, e % self.n);
            ((i, j), (i + 1, j))
        } else {
            let r = e - h;
            let (j, i) = (r / (self.n + 1), r % (self.n + 1));
            ((i, j), (i, j + 1))
        }
    }

    fn boundary_side(&self, e: usize) -> Option<WindowSide> {
        let ((i0, j0), (i1, j1)) = self.nodes(e);
        if j0 == j1 {
            match j0 {
                0 => Some(WindowSide::Bottom),
                j if j == self.n => Some(WindowSide::Top),
                _ => None,
            }
        } else {
            match i0.min(i1) {
                0 => Some(WindowSide::Left),
                i if i == self.n => Some(WindowSide::Right),
                _ => None,
            }
        }
    }
}

/// Contours `F = 0` and summarizes the result.
pub fn trace(q: &SignedPolynomial2, window: &TraceWindow) -> Result<TraceReport> {
    let field = sign_field(q, window)?;
    Ok(contour(q, &field))
}

fn contour(q: &SignedPolynomial2, field: &SignField) -> TraceReport {
    let w = &field.window;
    let n = w.resolution;
    let idx = EdgeIndex { n };
    let crossing_point = |e: usize| -> (f64, f64) {
        let ((i0, j0), (i1, j1)) = idx.nodes(e);
        let (f0, f1) = (field.value(i0, j0), field.value(i1, j1));
        let mut s = f0 / (f0 - f1);
        if !s.is_finite() {
            s = 0.5;
        }
        let s = s.clamp(0.0, 1.0);
        let (u0, v0) = (w.u(i0), w.v(j0));
        let (u1, v1) = (w.u(i1), w.v(j1));
        (u0 + s * (u1 - u0), v0 + s * (v1 - v0))
    };

    let mut links: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut link = |a: usize, b: usize| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..n {
        for i in 0..n {
            let s = [
                field.positive(i, j),
                field.positive(i + 1, j),
                field.positive(i + 1, j + 1),
                field.positive(i, j + 1),
            ];
            let edges = [
                idx.horizontal(i, j),
                idx.vertical(i + 1, j),
                idx.horizontal(i, j + 1),
                idx.vertical(i, j),
            ];
            let cut: Vec<usize> = (0..4).filter(|&k| s[k] != s[(k + 1) % 4]).collect();
            match cut.len() {
                2 => link(edges[cut[0]], edges[cut[1]]),
                4 => {
                    let center = q.log_difference(0.5 * (w.u(i) + w.u(i + 1)), 0.5 * (w.v(j) + w.v(j + 1))) >= 0.0;
                    if center == s[0] {
                        // corners 0 and 2 connect through the middle
                        link(edges[0], edges[1]);
                        link(edges[2], edges[3]);
                    } else {
                        link(edges[3], edges[0]);
                        link(edges[1], edges[2]);
                    }
                }
                _ => {}
            }
        }
    }

    let mut nodes: Vec<usize> = links.keys().copied().collect();
    nodes.sort_unstable();
    let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut uf = UnionFind::new(nodes.len());
    for (&a, bs) in &links {
        for b in bs {
            uf.union(local[&a], local[b]);
        }
    }

    let ccw_key = |e: usize| -> (WindowSide, f64) {
        let side = idx.boundary_side(e).expect("boundary edge");
        let (u, v) = crossing_point(e);
        let pos = match side {
            WindowSide::Bottom => u,
            WindowSide::Right => v,
            WindowSide::Top => -u,
            WindowSide::Left => -v,
        };
        (side, pos)
    };
    let mut boundary: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&e| idx.boundary_side(e).is_some())
        .collect();
    boundary.sort_by(|&a, &b| {
        let (ka, kb) = (ccw_key(a), ccw_key(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });

    let mut visited = vec![false; nodes.len()];
    let walk = |start: usize, visited: &mut Vec<bool>| -> Vec<usize> {
        let mut out = vec![start];
        visited[local[&start]] = true;
        let mut at = start;
        while let Some(&next) = links[&at].iter().find(|e| !visited[local[*e]]) {
            visited[local[&next]] = true;
            out.push(next);
            at = next;
        }
        out
    };

    let mut component_of_root: HashMap<usize, usize> = HashMap::new();
    let mut segments = Vec::new();
    for &start in &boundary {
        if visited[local[&start]] {
            continue;
        }
        let path = walk(start, &mut visited);
        component_of_root.insert(uf.find(local[&start]), segments.len());
        segments.push(TracedPath {
            points: path.iter().map(|&e| crossing_point(e)).collect(),
            closed: false,
        });
    }
    for &start in &nodes {
        if visited[local[&start]] {
            continue;
        }
        let path = walk(start, &mut visited);
        component_of_root.insert(uf.find(local[&start]), segments.len());
        segments.push(TracedPath {
            points: path.iter().map(|&e| crossing_point(e)).collect(),
            closed: true,
        });
    }
    let crossings = boundary
        .iter()
        .map(|&e| {
            let (side, _) = ccw_key(e);
            let (u, v) = crossing_point(e);
            Crossing {
                side,
                position: match side {
                    WindowSide::Bottom | WindowSide::Top => u,
                    WindowSide::Left | WindowSide::Right => v,
                },
                component: component_of_root[&uf.find(local[&e])],
            }
        })
        .collect();

    TraceReport {
        window: *w,
        components: component_of_root.len(),
        segments,
        crossings,
        ambiguous_nodes: field.ambiguous.len(),
        stabilized_t: None,
        stabilized_ln_t: None,
    }
}

/// Four quadrant traces of the same `b_t`, glued along the axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneTrace {
    /// Traces of `b_t(sx·x, sy·y)` for `(sx, sy)` in counter-clockwise
    /// quadrant order.
    pub quadrants: Vec<TraceReport>,
    pub components: usize,
    pub loops: usize,
    pub arcs: usize,
    /// Ends at infinity in counter-clockwise order as `(sx, sy, component)`.
    pub ends: Vec<(i8, i8, usize)>,
    pub stabilized_t: Option<f64>,
    pub stabilized_ln_t: Option<f64>,
}

impl PlaneTrace {
    pub fn summary(&self) -> TopologySummary {
        let ends: Vec<(Side, usize)> = self
            .ends
            .iter()
            .map(|&(sx, sy, c)| (Side::Outer { sx, sy }, c))
            .collect();
        TopologySummary::from_ordered_ends(self.loops, self.arcs, &ends)
    }

    pub fn projective(&self) -> Option<ProjectiveSummary> {
        close_at_infinity(&self.summary())
    }
}

/// Traces `q` in all four quadrants over the same window and joins the
/// pieces across the coordinate axes.
pub fn trace_plane(q: &SignedPolynomial2, window: &TraceWindow) -> Result<PlaneTrace> {
    let quadrants: Vec<TraceReport> = QUADRANTS
        .iter()
        .map(|&(sx, sy)| trace(&q.reflected(sx, sy), window))
        .collect::<Result<_>>()?;
    glue_quadrants(quadrants)
}

fn glue_quadrants(quadrants: Vec<TraceReport>) -> Result<PlaneTrace> {
    let offsets: Vec<usize> = quadrants
        .iter()
        .scan(0, |acc, r| {
            let start = *acc;
            *acc += r.components;
            Some(start)
        })
        .collect();
    let total: usize = quadrants.iter().map(|r| r.components).sum();
    let mut uf = UnionFind::new(total);
    // quadrant indices follow QUADRANTS: 0 = (+,+), 1 = (−,+), 2 = (−,−), 3 = (+,−)
    let seams = [
        (0, 1, WindowSide::Left),
        (3, 2, WindowSide::Left),
        (0, 3, WindowSide::Bottom),
        (1, 2, WindowSide::Bottom),
    ];
    for (a, b, side) in seams {
        let (ca, cb) = (quadrants[a].crossings_on(side), quadrants[b].crossings_on(side));
        if ca.len() != cb.len() {
            return Err(Error::AxisCrossings(format!(
                "quadrants {:?} and {:?} cross their shared axis {} and {} times",
                QUADRANTS[a],
                QUADRANTS[b],
                ca.len(),
                cb.len()
            )));
        }
        for (x, y) in ca.iter().zip(&cb) {
            uf.union(offsets[a] + x.component, offsets[b] + y.component);
        }
    }

    let mut ends_raw: Vec<(i8, i8, usize)> = Vec::new();
    for (qi, report) in quadrants.iter().enumerate() {
        let (sx, sy) = QUADRANTS[qi];
        let mut outer = report.outer_crossings();
        if sx * sy < 0 {
            outer.reverse();
        }
        for c in outer {
            ends_raw.push((sx as i8, sy as i8, uf.find(offsets[qi] + c.component)));
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    for &(_, _, root) in &ends_raw {
        let next = label.len();
        label.entry(root).or_insert(next);
    }
    let arcs = label.len();
    let mut roots: Vec<usize> = (0..total).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len();
    let ends = ends_raw.into_iter().map(|(sx, sy, r)| (sx, sy, label[&r])).collect();
    Ok(PlaneTrace {
        quadrants,
        components,
        loops: components - arcs,
        arcs,
        ends,
        stabilized_t: None,
        stabilized_ln_t: None,
    })
}

/// Half-width, in units of `−ln t`, of the window used for `input`: the
/// larger of `m + 1` and two units beyond the farthest envelope vertex.
pub fn window_scale(input: &PatchworkInput) -> f64 {
    let env = input.envelope();
    let far = env
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = v.point.to_f64();
            x.abs().max(y.abs())
        })
        .fold(0.0, f64::max);
    ((input.degree() + 1) as f64).max(far.ceil() + 2.0)
}

/// `ln t` for the `j`-th step of the protocol: `t = 1/2, 1/4, 1/16, 1/256, …`.
pub fn protocol_ln_t(step: usize) -> f64 {
    -std::f64::consts::LN_2 * (1u64 << step) as f64
}

/// First protocol step at which the tube around the tropical curve is
/// narrow compared with its smallest feature.
pub fn first_step(input: &PatchworkInput) -> usize {
    let terms = input.vertices().len() as f64;
    let Some(feature) = input.envelope().feature_size() else {
        return 0;
    };
    (0..MAX_REFINEMENTS)
        .find(|&step| terms.ln() / -protocol_ln_t(step) <= TUBE_FRACTION * feature)
        .unwrap_or(MAX_REFINEMENTS - 1)
}

/// Window for `input` at a given `ln t`.
pub fn scaled_window(input: &PatchworkInput, ln_t: f64, resolution: usize) -> Result<TraceWindow> {
    TraceWindow::square(-ln_t * window_scale(input), resolution)
}

/// One step of the protocol, kept for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolStep {
    pub ln_t: f64,
    pub components: Option<usize>,
    pub summary: Option<TopologySummary>,
}

/// Outcome of the stabilization protocol in one region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stabilized<T> {
    pub t: f64,
    pub ln_t: f64,
    pub report: T,
    pub history: Vec<ProtocolStep>,
}

/// Shrinks `t` by squaring until the first-quadrant topology of `b_t`
/// agrees for [`AGREEING_STEPS`] consecutive values; `t*` is the first of
/// them.
///
/// This is a heuristic. Nothing guarantees that agreement at two
/// consecutive scales persists for every smaller `t`.
pub fn stabilize_t(input: &PatchworkInput, resolution: usize) -> Result<Stabilized<TraceReport>> {
    stabilize(input, resolution, |q, w| {
        let r = trace(q, w)?;
        let s = r.summary();
        Ok((r, s))
    })
    .map(|mut s| {
        s.report.stabilized_t = Some(s.t);
        s.report.stabilized_ln_t = Some(s.ln_t);
        s
    })
}

/// The protocol of [`stabilize_t`] run on the whole plane.
pub fn stabilize_plane(input: &PatchworkInput, resolution: usize) -> Result<Stabilized<PlaneTrace>> {
    stabilize(input, resolution, |q, w| {
        let r = trace_plane(q, w)?;
        let s = r.summary();
        Ok((r, s))
    })
    .map(|mut s| {
        s.report.stabilized_t = Some(s.t);
        s.report.stabilized_ln_t = Some(s.ln_t);
        s
    })
}

fn stabilize<T>(
    input: &PatchworkInput,
    resolution: usize,
    run_step: impl Fn(&SignedPolynomial2, &TraceWindow) -> Result<(T, TopologySummary)>,
) -> Result<Stabilized<T>> {
    let mut history = Vec::new();
    let mut run: Vec<(T, TopologySummary, f64)> = Vec::new();
    for step in first_step(input)..=MAX_REFINEMENTS {
        let ln_t = protocol_ln_t(step);
        let window = scaled_window(input, ln_t, resolution)?;
        let q = polynomial_patchwork_ln(input, ln_t);
        match run_step(&q, &window) {
            Ok((report, summary)) => {
                history.push(ProtocolStep {
                    ln_t,
                    components: Some(summary.components()),
                    summary: Some(summary.clone()),
                });
                if run.first().is_some_and(|first| !first.1.matches(&summary)) {
                    run.clear();
                }
                run.push((report, summary, ln_t));
            }
            // pieces that disagree across an axis mean t is not yet small enough
            Err(Error::AxisCrossings(_)) => {
                history.push(ProtocolStep {
                    ln_t,
                    components: None,
                    summary: None,
                });
                run.clear();
            }
            Err(e) => return Err(e),
        }
        if run.len() == AGREEING_STEPS {
            let (report, _, ln_t) = run.swap_remove(0);
            return Ok(Stabilized {
                t: ln_t.exp(),
                ln_t,
                report,
                history,
            });
        }
    }
    Err(Error::NotStabilized(MAX_REFINEMENTS))
}

/// Result of comparing a predicted curve with a traced one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub matches: bool,
    pub predicted: TopologySummary,
    pub traced: TopologySummary,
    pub predicted_projective: Option<ProjectiveSummary>,
    pub traced_projective: Option<ProjectiveSummary>,
    /// Why the summaries differ, when they do.
    pub mismatch: Option<String>,
}

/// Compares component counts and the cyclic order of exit sides.
pub fn compare_topology(predicted: &PLCurve, traced: &TopologySummary) -> Comparison {
    let p = predicted.summary();
    let mismatch = if p.components() != traced.components() {
        Some(format!(
            "component count differs: predicted {}, traced {}",
            p.components(),
            traced.components()
        ))
    } else if p.loops != traced.loops {
        Some(format!(
            "loop count differs: predicted {}, traced {}",
            p.loops, traced.loops
        ))
    } else if !p.matches(traced) {
        Some(format!(
            "crossing pattern differs: predicted {}, traced {}",
            describe(&p.ends),
            describe(&traced.ends)
        ))
    } else {
        None
    };
    let projective = |s: &TopologySummary| match predicted.ambient {
        Ambient::Square { .. } => close_at_infinity(s),
        _ => None,
    };
    Comparison {
        matches: mismatch.is_none(),
        predicted_projective: projective(&p),
        traced_projective: projective(traced),
        predicted: p,
        traced: traced.clone(),
        mismatch,
    }
}

fn describe(ends: &[End]) -> String {
    let parts: Vec<String> = ends.iter().map(|e| format!("{:?}#{}", e.side, e.arc)).collect();
    format!("[{}]", parts.join(", "))
}

/// Exact value of `Σ σ t^ν x^k y^l` at a rational point for dyadic `t`;
/// used to cross-check the log-domain signs.
pub fn exact_sign(
    input: &PatchworkInput,
    log2_inv_t: u32,
    x: &crate::geom::Q,
    y: &crate::geom::Q,
) -> Option<std::cmp::Ordering> {
    use num_traits::{Signed, Zero};
    let mut total = crate::geom::Q::zero();
    for v in input.vertices() {
        let c = crate::patchwork::dyadic_coefficient(&v.nu, log2_inv_t)?;
        let mono = num_traits::pow(x.clone(), v.k as usize) * num_traits::pow(y.clone(), v.l as usize);
        let term = c * mono;
        total += if v.sign.value() > 0 { term } else { -term };
    }
    Some(if total.is_zero() {
        std::cmp::Ordering::Equal
    } else if total.is_positive() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patchwork::{affine_extension, combinatorial_patchwork, ellipse, line, Sign};

    fn x_plus_y_minus_one() -> SignedPolynomial2 {
        SignedPolynomial2::from_signed_log_terms(&[
            ((1, 0), Sign::Plus, 0.0),
            ((0, 1), Sign::Plus, 0.0),
            ((0, 0), Sign::Minus, 0.0),
        ])
    }

    #[test]
    fn window_validation() {
        assert!(TraceWindow::new(0.0, 1.0, 0.0, 1.0, 15).is_err());
        assert!(TraceWindow::new(1.0, 1.0, 0.0, 1.0, 16).is_err());
        assert!(TraceWindow::new(0.0, 1.0, 0.0, f64::NAN, 16).is_err());
        assert!(TraceWindow::new(0.0, 1.0, 0.0, 1.0, 16).is_ok());
    }

    #[test]
    fn sign_field_examples() {
        let w = TraceWindow::square(8.0, 16).unwrap();
        let f = sign_field(&x_plus_y_minus_one(), &w).unwrap();
        assert!((f.value(8, 8) - std::f64::consts::LN_2).abs() < 1e-15);

        let diag = SignedPolynomial2::from_signed_log_terms(&[((1, 0), Sign::Plus, 0.0), ((0, 1), Sign::Minus, 0.0)]);
        let f = sign_field(&diag, &w).unwrap();
        assert_eq!(f.ambiguous.len(), 17);
        assert!(f.ambiguous.iter().all(|&(i, j)| i == j));

        let b = polynomial_patchwork_ln(&ellipse(), 1e-3f64.ln());
        let origin = TraceWindow::square(1.0, 16).unwrap();
        assert!(sign_field(&b, &origin).unwrap().positive(8, 8));
    }

    #[test]
    fn line_trace_bends_into_both_axes() {
        let w = TraceWindow::square(8.0, 64).unwrap();
        let r = trace(&x_plus_y_minus_one(), &w).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.arcs(), 1);
        let sides: Vec<WindowSide> = r.crossings.iter().map(|c| c.side).collect();
        assert_eq!(sides, vec![WindowSide::Bottom, WindowSide::Left]);
        // v = ln(1 − e^u) is about −8 at u ≈ −3.4e−4 and about 0 at u = −8
        assert!(r.crossings[0].position.abs() < 0.01);
        assert!(r.crossings[1].position.abs() < 0.01);
        assert_eq!(r.summary().sides(), vec![Side::Bottom, Side::Left]);
    }

    #[test]
    fn no_zero_set() {
        let q = SignedPolynomial2::from_signed_log_terms(&[((1, 0), Sign::Plus, 0.0), ((0, 0), Sign::Minus, 100.0)]);
        let r = trace(&q, &TraceWindow::square(8.0, 32).unwrap()).unwrap();
        assert_eq!(r.components, 0);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn a_small_circle_is_a_loop() {
        // 5 > x + 1/x + y + 1/y only near x = y = 1
        let q = SignedPolynomial2::from_signed_log_terms(&[
            ((0, 0), Sign::Plus, (5.0f64).ln()),
            ((1, 0), Sign::Minus, 0.0),
            ((-1, 0), Sign::Minus, 0.0),
            ((0, 1), Sign::Minus, 0.0),
            ((0, -1), Sign::Minus, 0.0),
        ]);
        let r = trace(&q, &TraceWindow::square(4.0, 64).unwrap()).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.loops(), 1);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn ellipse_first_quadrant() {
        let s = stabilize_t(&ellipse(), 256).unwrap();
        assert_eq!(s.report.components, 2);
        assert_eq!(s.report.arcs(), 2);
        let predicted = combinatorial_patchwork(&ellipse());
        let c = compare_topology(&predicted, &s.report.summary());
        assert!(c.matches, "{c:?}");
        assert_eq!(s.report.summary().count_on(Side::Left), 2);
        assert_eq!(s.report.summary().count_on(Side::Bottom), 2);

        let again = trace(
            &polynomial_patchwork_ln(&ellipse(), 2.0 * s.ln_t),
            &scaled_window(&ellipse(), 2.0 * s.ln_t, 256).unwrap(),
        )
        .unwrap();
        assert_eq!(again.summary(), s.report.summary());
    }

    #[test]
    fn line_stabilizes_immediately() {
        let s = stabilize_t(&line(), 128).unwrap();
        assert_eq!(s.t, 0.5);
        assert_eq!(s.report.arcs(), 1);
        assert_eq!(s.report.stabilized_t, Some(0.5));
    }

    #[test]
    fn ellipse_whole_plane_is_an_oval() {
        let s = stabilize_plane(&ellipse(), 256).unwrap();
        assert_eq!(s.report.loops, 1);
        assert_eq!(s.report.arcs, 0);
        assert_eq!(
            s.report.projective(),
            Some(ProjectiveSummary {
                ovals: 1,
                pseudolines: 0
            })
        );
        let predicted = combinatorial_patchwork(&affine_extension(&ellipse()).unwrap());
        assert!(compare_topology(&predicted, &s.report.summary()).matches);
    }

    #[test]
    fn line_whole_plane_is_a_pseudoline() {
        let s = stabilize_plane(&line(), 128).unwrap();
        assert_eq!(s.report.arcs, 1);
        assert_eq!(
            s.report.projective(),
            Some(ProjectiveSummary {
                ovals: 0,
                pseudolines: 1
            })
        );
        let predicted = combinatorial_patchwork(&affine_extension(&line()).unwrap());
        let c = compare_topology(&predicted, &s.report.summary());
        assert!(c.matches, "{c:?}");
    }

    #[test]
    fn flipped_origin_sign_is_detected() {
        let s = stabilize_t(&ellipse(), 256).unwrap();
        let flipped = combinatorial_patchwork(&ellipse().with_sign(0, Sign::Plus));
        let c = compare_topology(&flipped, &s.report.summary());
        assert!(!c.matches);
        assert!(c.mismatch.unwrap().contains("component count"));
    }

    #[test]
    fn empty_matches_empty() {
        let c = compare_topology(
            &PLCurve::empty(Ambient::Triangle { degree: 2 }),
            &TopologySummary::empty(),
        );
        assert!(c.matches);
    }
}
