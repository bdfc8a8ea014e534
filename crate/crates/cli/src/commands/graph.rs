use crate::error::{write_file, CliError, CliResult};
use crate::literal::PolyLiteral;
use crate::svg::{FigureSpec, Frame, Layer, Stroke, Svg};
use dequant::semiring::Deform;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Samples farther than this from every corner of `M_p` count as "far".
pub const FAR_FROM_CORNERS: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct GraphOptions {
    pub poly: String,
    pub h: Vec<f64>,
    pub window: (f64, f64),
    pub samples: usize,
    pub layers: Vec<Layer>,
    pub svg: Option<PathBuf>,
}

/// Layers drawn by `graph` unless asked otherwise.
pub const GRAPH_LAYERS: [Layer; 4] = [Layer::Monomials, Layer::LogGraph, Layer::Tropical, Layer::Scaled];

impl GraphOptions {
    pub fn new(poly: &str) -> Self {
        GraphOptions {
            poly: poly.to_string(),
            h: Vec::new(),
            window: (-8.0, 8.0),
            samples: 1001,
            layers: GRAPH_LAYERS.to_vec(),
            svg: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledGraph {
    pub h: f64,
    /// Largest gap between the scaled graph and `M_p` over the samples.
    pub max_gap: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub polynomial: String,
    pub window: (f64, f64),
    pub samples: usize,
    /// Abscissae where `M_p` bends.
    pub corners: Vec<f64>,
    /// Largest `L_p − M_p` over the samples.
    pub max_deviation: f64,
    /// Largest `L_p − M_p` over samples at distance ≥ 10 from every corner.
    pub far_deviation: Option<f64>,
    /// `ln(#terms)`.
    pub bound: f64,
    pub scaled: Vec<ScaledGraph>,
    pub svg: Option<String>,
}

/// The curve `L_p`, the broken line `M_p`, the monomial lines and the
/// scaled graphs `Γ^h` for each requested `h`, on log paper.
pub fn cmd_graph(opts: &GraphOptions) -> CliResult<(GraphReport, String)> {
    let lit = PolyLiteral::parse(&opts.poly)?;
    let p = lit.positive()?;
    let (lo, hi) = opts.window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Input(format!("invalid window {lo}:{hi}")));
    }
    if opts.samples < 2 {
        return Err(CliError::Input("at least 2 samples are needed".into()));
    }
    let deforms = opts
        .h
        .iter()
        .map(|&h| {
            if h > 0.0 && h <= 1.0 {
                Ok(Deform::new(h)?)
            } else {
                Err(CliError::Input(format!("h must lie in (0, 1], got {h}")))
            }
        })
        .collect::<CliResult<Vec<_>>>()?;

    let us: Vec<f64> = (0..opts.samples)
        .map(|i| lo + (hi - lo) * i as f64 / (opts.samples - 1) as f64)
        .collect();
    let l: Vec<(f64, f64)> = us.iter().map(|&u| (u, p.eval_log(u))).collect();
    let m: Vec<(f64, f64)> = us.iter().map(|&u| (u, p.eval_max(u))).collect();
    let corners: Vec<f64> = p.tropical().corners().into_iter().map(|c| c + 0.0).collect();
    let deviation = |i: usize| l[i].1 - m[i].1;
    let max_deviation = (0..us.len()).map(deviation).fold(f64::NEG_INFINITY, f64::max);
    let far: Vec<f64> = (0..us.len())
        .filter(|&i| corners.iter().all(|c| (us[i] - c).abs() >= FAR_FROM_CORNERS))
        .map(deviation)
        .collect();
    let far_deviation = far.iter().copied().reduce(f64::max);
    let bound = (p.len() as f64).ln();

    let mut scaled = Vec::new();
    let mut scaled_curves = Vec::new();
    for d in &deforms {
        let pts = us
            .iter()
            .map(|&u| Ok((u, p.eval_scaled(u, *d)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let max_gap = pts
            .iter()
            .zip(&m)
            .map(|(a, b)| a.1 - b.1)
            .fold(f64::NEG_INFINITY, f64::max);
        scaled.push(ScaledGraph {
            h: d.h(),
            max_gap,
            bound: d.h() * bound,
        });
        scaled_curves.push(pts);
    }

    let bounds = Frame::around(l.iter().chain(&m).copied(), 1.0);
    let figure = FigureSpec::new(&opts.layers)?.with_frame(Frame::new(lo, hi, bounds.y_lo, bounds.y_hi))?;
    let mut svg = Svg::new(figure.frame.unwrap_or(bounds), 800.0, 600.0);
    svg.grid();
    if figure.has(Layer::Monomials) {
        for &(k, b) in p.log_terms() {
            let line = [(lo, k as f64 * lo + b), (hi, k as f64 * hi + b)];
            svg.polyline("monomial", &Stroke::dashed("#999999", 1.0, "4 3"), &line);
        }
    }
    const PALETTE: [&str; 4] = ["#ff7f0e", "#2ca02c", "#9467bd", "#8c564b"];
    if figure.has(Layer::Scaled) {
        for (i, pts) in scaled_curves.iter().enumerate() {
            svg.polyline("scaled", &Stroke::solid(PALETTE[i % PALETTE.len()], 1.5), pts);
        }
    }
    if figure.has(Layer::Tropical) {
        svg.polyline("tropical", &Stroke::solid("#000000", 2.0), &m);
    }
    if figure.has(Layer::LogGraph) {
        svg.polyline("log-graph", &Stroke::solid("#1f77b4", 2.0), &l);
    }
    let text = svg.finish();

    if let Some(path) = &opts.svg {
        write_file(path, &text)?;
    }
    Ok((
        GraphReport {
            polynomial: opts.poly.clone(),
            window: opts.window,
            samples: opts.samples,
            corners,
            max_deviation,
            far_deviation,
            bound,
            scaled,
            svg: opts.svg.as_ref().map(|p| p.display().to_string()),
        },
        text,
    ))
}
