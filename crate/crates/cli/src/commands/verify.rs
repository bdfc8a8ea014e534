use super::patchwork::{convexity_doc, genericity_doc, load_input, nonconvex_error};
use crate::error::{write_file, CliError, CliResult};
use crate::svg::{FigureSpec, Frame, Layer, Stroke, Svg};
use dequant::curve::PLCurve;
use dequant::envelope::EdgeGeometry;
use dequant::patchwork::{affine_extension, combinatorial_patchwork, PatchworkInput};
use dequant::tracer::{
    compare_topology, stabilize_plane, stabilize_t, Comparison, ProtocolStep, Stabilized, TraceReport,
};
use dequant::Error;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Grid resolution used when neither the command line nor the input sets one.
pub const DEFAULT_RESOLUTION: usize = 512;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub input: PathBuf,
    pub resolution: Option<usize>,
    pub layers: Vec<Layer>,
    pub svg: Option<PathBuf>,
}

impl VerifyOptions {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        VerifyOptions {
            input: input.into(),
            resolution: None,
            layers: vec![Layer::Envelope, Layer::Traced],
            svg: None,
        }
    }
}

/// Outcome in one region: the positive quadrant or the whole plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub matches: bool,
    pub predicted_components: usize,
    pub traced_components: Option<usize>,
    pub t_star: Option<f64>,
    pub ln_t_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    /// Why the protocol gave no traced curve, when it did not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub history: Vec<ProtocolStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub matches: bool,
    pub resolution: usize,
    pub quadrant: RegionReport,
    pub plane: RegionReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

impl VerifyReport {
    /// The mismatch error for a failed verification, if any.
    pub fn mismatch(&self) -> Option<CliError> {
        if self.matches {
            return None;
        }
        let why = |name: &str, r: &RegionReport| {
            if r.matches {
                return None;
            }
            let detail = r
                .failure
                .clone()
                .or_else(|| r.comparison.as_ref().and_then(|c| c.mismatch.clone()))
                .unwrap_or_default();
            Some(format!("{name}: {detail}"))
        };
        let parts: Vec<String> = [why("quadrant", &self.quadrant), why("plane", &self.plane)]
            .into_iter()
            .flatten()
            .collect();
        Some(CliError::Mismatch(parts.join("; ")))
    }
}

fn region<T>(
    predicted: &PLCurve,
    outcome: dequant::Result<Stabilized<T>>,
    summary: impl Fn(&T) -> dequant::curve::TopologySummary,
) -> CliResult<(RegionReport, Option<Stabilized<T>>)> {
    let predicted_components = predicted.loops() + predicted.arcs();
    match outcome {
        Ok(s) => {
            let traced = summary(&s.report);
            let comparison = compare_topology(predicted, &traced);
            Ok((
                RegionReport {
                    matches: comparison.matches,
                    predicted_components,
                    traced_components: Some(traced.components()),
                    t_star: Some(s.t),
                    ln_t_star: Some(s.ln_t),
                    comparison: Some(comparison),
                    failure: None,
                    history: s.history.clone(),
                },
                Some(s),
            ))
        }
        Err(e @ (Error::NotStabilized(_) | Error::AxisCrossings(_))) => Ok((
            RegionReport {
                matches: false,
                predicted_components,
                traced_components: None,
                t_star: None,
                ln_t_star: None,
                comparison: None,
                failure: Some(e.to_string()),
                history: Vec::new(),
            },
            None,
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_verify(opts: &VerifyOptions) -> CliResult<VerifyReport> {
    let (doc, input) = load_input(&opts.input)?;
    let resolution = opts.resolution.or(doc.resolution()).unwrap_or(DEFAULT_RESOLUTION);
    run_verify(&input, resolution, opts)
}

/// [`cmd_verify`] on already parsed data; `opts.input` is ignored.
pub fn run_verify(input: &PatchworkInput, resolution: usize, opts: &VerifyOptions) -> CliResult<VerifyReport> {
    let convexity = convexity_doc(input);
    if !convexity.convex {
        return Err(nonconvex_error(&convexity));
    }
    let genericity = genericity_doc(input);
    if !genericity.generic {
        return Err(CliError::Precondition(format!(
            "envelope is not generic: {} vertices where more than three planes meet",
            genericity.violations.len()
        )));
    }

    let predicted_quadrant = combinatorial_patchwork(input);
    let predicted_plane = combinatorial_patchwork(&affine_extension(input)?);
    let (quadrant, traced) = region(
        &predicted_quadrant,
        stabilize_t(input, resolution),
        TraceReport::summary,
    )?;
    let (plane, _) = region(&predicted_plane, stabilize_plane(input, resolution), |p| p.summary())?;

    let mut report = VerifyReport {
        matches: quadrant.matches && plane.matches,
        resolution,
        quadrant,
        plane,
        svg: None,
    };
    if let Some(path) = &opts.svg {
        let figure = FigureSpec::new(&opts.layers)?;
        write_file(path, &render(input, traced.as_ref(), &figure))?;
        report.svg = Some(path.display().to_string());
    }
    Ok(report)
}

/// Envelope edges and the first-quadrant trace, both divided by `|ln t*|`
/// so that they live on the same picture.
pub fn render(input: &PatchworkInput, traced: Option<&Stabilized<TraceReport>>, figure: &FigureSpec) -> String {
    let envelope = input.envelope();
    let vertices: Vec<(f64, f64)> = envelope.vertices().iter().map(|v| v.point.to_f64()).collect();
    let reach = (input.degree() + 1) as f64;
    let frame = figure.frame.unwrap_or_else(|| {
        let f = Frame::around(vertices.iter().copied(), reach);
        Frame::new(
            f.x_lo.min(-reach),
            f.x_hi.max(reach),
            f.y_lo.min(-reach),
            f.y_hi.max(reach),
        )
    });
    let far = 4.0 * ((frame.x_hi - frame.x_lo) + (frame.y_hi - frame.y_lo));
    let mut svg = Svg::isotropic(frame, 600.0);
    svg.grid();
    if figure.has(Layer::Envelope) {
        let stroke = Stroke::solid("#999999", 1.0);
        for edge in envelope.edges() {
            let line = match &edge.geometry {
                EdgeGeometry::Segment { from, to } => [vertices[*from], vertices[*to]],
                EdgeGeometry::Ray { from, direction } => {
                    let (x, y) = vertices[*from];
                    [(x, y), (x + far * direction.0 as f64, y + far * direction.1 as f64)]
                }
                EdgeGeometry::Line { point, direction } => {
                    let (x, y) = point.to_f64();
                    let (dx, dy) = (far * direction.0 as f64, far * direction.1 as f64);
                    [(x - dx, y - dy), (x + dx, y + dy)]
                }
            };
            svg.polyline("envelope", &stroke, &line);
        }
    }
    if let (Some(s), true) = (traced, figure.has(Layer::Traced)) {
        let scale = -s.ln_t;
        for path in &s.report.segments {
            let mut pts: Vec<(f64, f64)> = path.points.iter().map(|&(u, v)| (u / scale, v / scale)).collect();
            if path.closed {
                if let Some(&first) = pts.first() {
                    pts.push(first);
                }
            }
            svg.polyline("traced", &Stroke::solid("#d62728", 2.0), &pts);
        }
    }
    svg.finish()
}
