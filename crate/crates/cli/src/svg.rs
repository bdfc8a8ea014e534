//! A small deterministic SVG 1.1 writer.
//!
//! Numbers are printed with at most 9 significant digits and nothing
//! time- or environment-dependent is emitted, so identical inputs produce
//! identical bytes.

use std::fmt::Write;

/// Formats `x` with at most 9 significant digits, without exponent.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Data-space rectangle shown by a figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Frame {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Self {
        Frame { x_lo, x_hi, y_lo, y_hi }
    }

    /// Smallest frame containing every point, widened by `pad` on each side.
    pub fn around(points: impl IntoIterator<Item = (f64, f64)>, pad: f64) -> Self {
        let mut f = Frame::new(f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            if x.is_finite() && y.is_finite() {
                f.x_lo = f.x_lo.min(x);
                f.x_hi = f.x_hi.max(x);
                f.y_lo = f.y_lo.min(y);
                f.y_hi = f.y_hi.max(y);
            }
        }
        if !f.x_lo.is_finite() {
            return Frame::new(-1.0, 1.0, -1.0, 1.0);
        }
        Frame::new(f.x_lo - pad, f.x_hi + pad, f.y_lo - pad, f.y_hi + pad)
    }
}

/// Something a figure can draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Layer {
    /// Lines `v = k·u + ln a_k` of the individual monomials.
    Monomials,
    /// The smooth log-paper graph `L_p`.
    LogGraph,
    /// The broken line `M_p`.
    Tropical,
    /// Graphs of the dequantized family for each requested `h`.
    Scaled,
    /// Edges of the upper envelope projected to the plane.
    Envelope,
    /// The triangulation with its vertex signs.
    Subdivision,
    /// The combinatorial curve.
    Curve,
    /// The numerically traced curve.
    Traced,
}

/// Which layers a figure draws and, optionally, over which frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub layers: Vec<Layer>,
    pub frame: Option<Frame>,
}

impl FigureSpec {
    pub fn new(layers: &[Layer]) -> crate::error::CliResult<Self> {
        if layers.is_empty() {
            return Err(crate::error::CliError::Input(
                "a figure needs at least one layer".into(),
            ));
        }
        let mut layers = layers.to_vec();
        layers.sort();
        layers.dedup();
        Ok(FigureSpec { layers, frame: None })
    }

    pub fn with_frame(mut self, frame: Frame) -> crate::error::CliResult<Self> {
        let finite = [frame.x_lo, frame.x_hi, frame.y_lo, frame.y_hi]
            .iter()
            .all(|v| v.is_finite());
        if !finite || frame.x_lo >= frame.x_hi || frame.y_lo >= frame.y_hi {
            return Err(crate::error::CliError::Input(
                "figure window must be finite and non-empty".into(),
            ));
        }
        self.frame = Some(frame);
        Ok(self)
    }

    pub fn has(&self, layer: Layer) -> bool {
        self.layers.contains(&layer)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stroke {
    pub color: &'static str,
    pub width: f64,
    pub dash: Option<&'static str>,
}

impl Stroke {
    pub const fn solid(color: &'static str, width: f64) -> Self {
        Stroke {
            color,
            width,
            dash: None,
        }
    }

    pub const fn dashed(color: &'static str, width: f64, dash: &'static str) -> Self {
        Stroke {
            color,
            width,
            dash: Some(dash),
        }
    }

    fn attrs(&self) -> String {
        let mut s = format!(
            "fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"",
            self.color,
            num(self.width)
        );
        if let Some(d) = self.dash {
            write!(s, " stroke-dasharray=\"{d}\"").unwrap();
        }
        s
    }
}

pub struct Svg {
    frame: Frame,
    width: f64,
    height: f64,
    layers: Vec<String>,
}

impl Svg {
    pub fn new(frame: Frame, width: f64, height: f64) -> Self {
        Svg {
            frame,
            width,
            height,
            layers: Vec::new(),
        }
    }

    /// Same frame with pixels scaled equally on both axes.
    pub fn isotropic(frame: Frame, width: f64) -> Self {
        let ratio = (frame.y_hi - frame.y_lo) / (frame.x_hi - frame.x_lo);
        Svg::new(frame, width, (width * ratio).clamp(50.0, 4.0 * width))
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let f = &self.frame;
        (
            (x - f.x_lo) / (f.x_hi - f.x_lo) * self.width,
            self.height - (y - f.y_lo) / (f.y_hi - f.y_lo) * self.height,
        )
    }

    fn points_attr(&self, points: &[(f64, f64)]) -> String {
        points
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Gridlines at integer coordinates; the spacing grows by factors of
    /// ten when unit spacing would draw more than 200 lines.
    pub fn grid(&mut self) {
        let f = self.frame;
        let span = (f.x_hi - f.x_lo).max(f.y_hi - f.y_lo);
        let mut step = 1.0;
        while span / step > 200.0 {
            step *= 10.0;
        }
        let mut g = String::from("<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n");
        let mut x = (f.x_lo / step).ceil() * step;
        while x <= f.x_hi {
            let (a, b) = (self.px((x, f.y_lo)), self.px((x, f.y_hi)));
            writeln!(
                g,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1)
            )
            .unwrap();
            x += step;
        }
        let mut y = (f.y_lo / step).ceil() * step;
        while y <= f.y_hi {
            let (a, b) = (self.px((f.x_lo, y)), self.px((f.x_hi, y)));
            writeln!(
                g,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1)
            )
            .unwrap();
            y += step;
        }
        g.push_str("</g>\n");
        self.layers.push(g);
    }

    pub fn polyline(&mut self, class: &str, stroke: &Stroke, points: &[(f64, f64)]) {
        if points.len() < 2 {
            return;
        }
        self.layers.push(format!(
            "<polyline class=\"{}\" {} points=\"{}\"/>\n",
            escape(class),
            stroke.attrs(),
            self.points_attr(points)
        ));
    }

    pub fn polygon(&mut self, class: &str, stroke: &Stroke, points: &[(f64, f64)]) {
        if points.len() < 3 {
            return;
        }
        self.layers.push(format!(
            "<polygon class=\"{}\" {} points=\"{}\"/>\n",
            escape(class),
            stroke.attrs(),
            self.points_attr(points)
        ));
    }

    pub fn dot(&mut self, class: &str, color: &str, at: (f64, f64), radius: f64) {
        let (x, y) = self.px(at);
        self.layers.push(format!(
            "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            escape(class),
            num(x),
            num(y),
            num(radius),
            color
        ));
    }

    pub fn label(&mut self, at: (f64, f64), text: &str) {
        let (x, y) = self.px(at);
        self.layers.push(format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            num(x + 4.0),
            num(y - 4.0),
            escape(text)
        ));
    }

    pub fn finish(self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = num(self.width),
            h = num(self.height)
        )
        .unwrap();
        writeln!(
            out,
            "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
            num(self.width),
            num(self.height)
        )
        .unwrap();
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g clip-path=\"url(#frame)\">\n");
        for layer in self.layers {
            out.push_str(&layer);
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(std::f64::consts::PI), "3.14159265");
        assert_eq!(num(123456.789012), "123456.789");
        assert_eq!(num(0.000123456789123), "0.000123456789");
        assert_eq!(num(-2.5), "-2.5");
    }

    #[test]
    fn output_is_reproducible() {
        let draw = || {
            let mut s = Svg::new(Frame::new(-2.0, 2.0, -1.0, 1.0), 400.0, 200.0);
            s.grid();
            s.polyline("curve", &Stroke::solid("black", 1.0), &[(-1.0, 0.0), (1.0, 0.5)]);
            s.finish()
        };
        assert_eq!(draw(), draw());
        assert!(draw().contains("points=\"100,100 300,50\""));
    }
}
