use super::{point_doc, rational_doc, vertex_label, CurveDoc, PointDoc};
use crate::error::{read_file, write_file, CliError, CliResult};
use crate::input::InputDocument;
use crate::svg::{FigureSpec, Frame, Layer, Stroke, Svg};
use dequant::curve::PLCurve;
use dequant::envelope::check_genericity;
use dequant::geom::to_f64;
use dequant::patchwork::{
    affine_extension, check_convexity, combinatorial_patchwork, format_polynomial, format_symbolic,
    polynomial_patchwork, projective_glue, ComponentKind, PatchworkInput, Sign,
};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Convexity and genericity verdicts only.
    Check,
    /// The curve in the triangle.
    Curve,
    /// The curve on the square made of four reflected triangles.
    Affine,
    /// Ovals and pseudolines after gluing antipodal boundary points.
    Projective,
    /// The polynomial `b_t`.
    Poly,
}

impl Stage {
    /// Stages whose output is only meaningful for convex heights.
    pub fn requires_convexity(self) -> bool {
        matches!(self, Stage::Curve | Stage::Affine | Stage::Projective)
    }
}

#[derive(Debug, Clone)]
pub struct PatchworkOptions {
    pub input: PathBuf,
    pub stage: Stage,
    pub t: Option<f64>,
    /// Run curve stages even when the heights are not convex.
    pub allow_nonconvex: bool,
    pub layers: Vec<Layer>,
    pub svg: Option<PathBuf>,
}

impl PatchworkOptions {
    pub fn new(input: impl Into<PathBuf>, stage: Stage) -> Self {
        PatchworkOptions {
            input: input.into(),
            stage,
            t: None,
            allow_nonconvex: false,
            layers: vec![Layer::Subdivision, Layer::Curve],
            svg: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFailureDoc {
    /// Endpoints of the offending interior edge as `(k, l)`.
    pub edge: [(i64, i64); 2],
    pub triangles: (usize, usize),
    pub slack: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityDoc {
    pub convex: bool,
    pub failures: Vec<EdgeFailureDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub point: PointDoc,
    /// Exponents `(k, l)` of every plane maximal at the vertex.
    pub planes: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityDoc {
    pub generic: bool,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub paths: Vec<usize>,
    pub boundary_crossings: usize,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveDoc {
    pub ovals: usize,
    pub pseudolines: usize,
    pub components: Vec<ComponentDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: i64,
    pub l: i64,
    pub sign: Sign,
    /// Exponent of `t` in the coefficient.
    pub nu: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub symbolic: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchworkReport {
    pub stage: Stage,
    pub degree: i64,
    pub convexity: ConvexityDoc,
    pub genericity: GenericityDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<ProjectiveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

impl PatchworkReport {
    /// Whether the data satisfies both preconditions of the construction.
    pub fn admissible(&self) -> bool {
        self.convexity.convex && self.genericity.generic
    }
}

pub fn convexity_doc(input: &PatchworkInput) -> ConvexityDoc {
    let report = check_convexity(input);
    ConvexityDoc {
        convex: report.is_convex(),
        failures: report
            .failures
            .iter()
            .map(|f| EdgeFailureDoc {
                edge: [vertex_label(input, f.edge.0), vertex_label(input, f.edge.1)],
                triangles: f.triangles,
                slack: rational_doc(&f.slack),
            })
            .collect(),
    }
}

pub fn genericity_doc(input: &PatchworkInput) -> GenericityDoc {
    let envelope = input.envelope();
    let report = check_genericity(&envelope);
    GenericityDoc {
        generic: report.is_generic(),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationDoc {
                point: point_doc(&v.point),
                planes: v.planes.iter().map(|&i| vertex_label(input, i)).collect(),
            })
            .collect(),
    }
}

/// The precondition error listing every non-convex edge.
pub fn nonconvex_error(doc: &ConvexityDoc) -> CliError {
    let edges: Vec<String> = doc
        .failures
        .iter()
        .map(|f| format!("{:?}-{:?} (slack {})", f.edge[0], f.edge[1], f.slack))
        .collect();
    CliError::Precondition(format!("heights are not convex across edges: {}", edges.join(", ")))
}

pub fn load_input(path: &std::path::Path) -> CliResult<(InputDocument, PatchworkInput)> {
    let doc = InputDocument::from_json(&read_file(path)?)?;
    let input = doc.to_patchwork()?;
    Ok((doc, input))
}

pub fn cmd_patchwork(opts: &PatchworkOptions) -> CliResult<PatchworkReport> {
    let (_, input) = load_input(&opts.input)?;
    run_patchwork(&input, opts)
}

/// [`cmd_patchwork`] on already parsed data; `opts.input` is ignored.
pub fn run_patchwork(input: &PatchworkInput, opts: &PatchworkOptions) -> CliResult<PatchworkReport> {
    let convexity = convexity_doc(input);
    if opts.stage.requires_convexity() && !convexity.convex && !opts.allow_nonconvex {
        return Err(nonconvex_error(&convexity));
    }
    let mut report = PatchworkReport {
        stage: opts.stage,
        degree: input.degree(),
        convexity,
        genericity: genericity_doc(input),
        curve: None,
        projective: None,
        polynomial: None,
        svg: None,
    };

    let mut shown = input.clone();
    let mut curve: Option<PLCurve> = None;
    match opts.stage {
        Stage::Check => {}
        Stage::Curve => curve = Some(combinatorial_patchwork(input)),
        Stage::Affine | Stage::Projective => {
            shown = affine_extension(input)?;
            let c = combinatorial_patchwork(&shown);
            if opts.stage == Stage::Projective {
                let glued = projective_glue(&c)?;
                let summary = glued.summary();
                report.projective = Some(ProjectiveDoc {
                    ovals: summary.ovals,
                    pseudolines: summary.pseudolines,
                    components: glued
                        .components
                        .iter()
                        .map(|c| ComponentDoc {
                            paths: c.paths.clone(),
                            boundary_crossings: c.boundary_crossings,
                            kind: c.kind,
                        })
                        .collect(),
                });
            }
            curve = Some(c);
        }
        Stage::Poly => report.polynomial = Some(polynomial_doc(input, opts.t)?),
    }
    report.curve = curve.as_ref().map(CurveDoc::from);

    if let Some(path) = &opts.svg {
        let figure = FigureSpec::new(&opts.layers)?;
        write_file(path, &render(&shown, curve.as_ref(), &figure))?;
        report.svg = Some(path.display().to_string());
    }
    Ok(report)
}

fn polynomial_doc(input: &PatchworkInput, t: Option<f64>) -> CliResult<PolynomialDoc> {
    if let Some(t) = t {
        polynomial_patchwork(input, t)?;
    }
    let mut vertices: Vec<_> = input.vertices().iter().collect();
    vertices.sort_by_key(|v| (v.k + v.l, -v.k));
    Ok(PolynomialDoc {
        symbolic: format_symbolic(input),
        t,
        numeric: t.map(|t| format_polynomial(input, t)),
        terms: vertices
            .iter()
            .map(|v| TermDoc {
                k: v.k,
                l: v.l,
                sign: v.sign,
                nu: rational_doc(&v.nu),
                coefficient: t.map(|t| v.sign.value() as f64 * (to_f64(&v.nu) * t.ln()).exp()),
            })
            .collect(),
    })
}

/// Triangulation, vertex signs and curve in `(k, l)` coordinates.
pub fn render(input: &PatchworkInput, curve: Option<&PLCurve>, figure: &FigureSpec) -> String {
    let coords: Vec<(f64, f64)> = input.vertices().iter().map(|v| (v.k as f64, v.l as f64)).collect();
    let frame = figure
        .frame
        .unwrap_or_else(|| Frame::around(coords.iter().copied(), 0.5));
    let mut svg = Svg::isotropic(frame, 600.0);
    svg.grid();
    if figure.has(Layer::Subdivision) {
        for tri in input.triangles() {
            let pts: Vec<(f64, f64)> = tri.iter().map(|&i| coords[i]).collect();
            svg.polygon("triangle", &Stroke::solid("#888888", 1.0), &pts);
        }
        for (v, &at) in input.vertices().iter().zip(&coords) {
            let color = if v.sign == Sign::Plus { "#d62728" } else { "#1f77b4" };
            svg.dot(if v.sign == Sign::Plus { "plus" } else { "minus" }, color, at, 4.0);
        }
    }
    if let (Some(curve), true) = (curve, figure.has(Layer::Curve)) {
        for path in &curve.paths {
            let mut pts: Vec<(f64, f64)> = path.points.iter().map(|p| p.to_f64()).collect();
            if path.closed {
                if let Some(&first) = pts.first() {
                    pts.push(first);
                }
            }
            svg.polyline("curve", &Stroke::solid("#000000", 2.5), &pts);
        }
    }
    svg.finish()
}
