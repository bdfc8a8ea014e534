use crate::error::{write_file, CliError, CliResult};
use crate::literal::PolyLiteral;
use crate::svg::{Frame, Stroke, Svg};
use dequant::logpaper::{positive_roots_bracket, RootKind, SignedPolynomial1};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct RootsOptions {
    pub poly: String,
    pub window: Option<(f64, f64)>,
    pub samples: usize,
    pub negative: bool,
    pub svg: Option<PathBuf>,
}

impl RootsOptions {
    pub fn new(poly: &str) -> Self {
        RootsOptions {
            poly: poly.to_string(),
            window: None,
            samples: 4096,
            negative: false,
            svg: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub x: f64,
    pub u: f64,
    pub bracket: (f64, f64),
    pub kind: RootKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootsReport {
    pub polynomial: String,
    pub negative: bool,
    pub window: (f64, f64),
    pub samples: usize,
    pub roots: Vec<RootReport>,
    pub svg: Option<String>,
}

/// `ln` of Cauchy's bounds on the positive roots, widened by one unit.
fn default_window(q: &SignedPolynomial1) -> (f64, f64) {
    let mut terms: Vec<(u32, f64)> = q.plus().log_terms().to_vec();
    if let Some(m) = q.minus() {
        terms.extend_from_slice(m.log_terms());
    }
    terms.sort_by_key(|t| t.0);
    let ln1p_exp = |x: f64| if x > 40.0 { x } else { x.exp().ln_1p() };
    let (low, high) = (terms[0], terms[terms.len() - 1]);
    let upper = terms[..terms.len() - 1]
        .iter()
        .map(|t| t.1 - high.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let lower = terms[1..].iter().map(|t| t.1 - low.1).fold(f64::NEG_INFINITY, f64::max);
    (-ln1p_exp(lower) - 1.0, ln1p_exp(upper) + 1.0)
}

/// Brackets the positive roots (or, with `negative`, the negative roots
/// through `p(−x)`) and draws `Γ_{p⁺}` and `Γ_{p⁻}`.
pub fn cmd_roots(opts: &RootsOptions) -> CliResult<(RootsReport, String)> {
    let lit = PolyLiteral::parse(&opts.poly)?;
    let mut q = lit.signed()?;
    if opts.negative {
        q = q.reflected();
    }
    let Some(minus) = q.minus().cloned() else {
        return Err(CliError::Precondition(format!(
            "no sign change possible: every coefficient of {:?} has the same sign{}",
            opts.poly,
            if opts.negative { " after x -> -x" } else { "" }
        )));
    };
    let window = opts.window.unwrap_or_else(|| default_window(&q));
    let brackets = positive_roots_bracket(&q, window, opts.samples)?;
    let flip = if opts.negative { -1.0 } else { 1.0 };
    let roots: Vec<RootReport> = brackets
        .iter()
        .map(|b| RootReport {
            x: flip * b.x(),
            u: b.u,
            bracket: (b.lo, b.hi),
            kind: b.kind,
        })
        .collect();

    let n = 801;
    let us: Vec<f64> = (0..n)
        .map(|i| window.0 + (window.1 - window.0) * i as f64 / (n - 1) as f64)
        .collect();
    let plus: Vec<(f64, f64)> = us.iter().map(|&u| (u, q.plus().eval_log(u))).collect();
    let minus: Vec<(f64, f64)> = us.iter().map(|&u| (u, minus.eval_log(u))).collect();
    let frame = Frame::around(plus.iter().chain(&minus).copied(), 1.0);
    let mut svg = Svg::new(Frame::new(window.0, window.1, frame.y_lo, frame.y_hi), 800.0, 600.0);
    svg.grid();
    svg.polyline("graph-plus", &Stroke::solid("#d62728", 2.0), &plus);
    svg.polyline("graph-minus", &Stroke::solid("#1f77b4", 2.0), &minus);
    for b in &brackets {
        svg.dot("root", "#000000", (b.u, q.plus().eval_log(b.u)), 4.0);
    }
    let text = svg.finish();
    if let Some(path) = &opts.svg {
        write_file(path, &text)?;
    }
    Ok((
        RootsReport {
            polynomial: opts.poly.clone(),
            negative: opts.negative,
            window,
            samples: opts.samples,
            roots,
            svg: opts.svg.as_ref().map(|p| p.display().to_string()),
        },
        text,
    ))
}
