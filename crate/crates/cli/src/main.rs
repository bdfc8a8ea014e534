use clap::{Parser, Subcommand};
use dequant_cli::commands::graph::{cmd_graph, GraphOptions, GRAPH_LAYERS};
use dequant_cli::commands::patchwork::{cmd_patchwork, PatchworkOptions, Stage};
use dequant_cli::commands::roots::{cmd_roots, RootsOptions};
use dequant_cli::commands::verify::{cmd_verify, VerifyOptions};
use dequant_cli::svg::Layer;
use dequant_cli::{CliError, CliResult};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dequant",
    version,
    about = "Log-paper graphs, patchworked curves and their numeric verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a positive polynomial on log paper next to its tropical limit.
    Graph {
        /// Polynomial literal such as "1 + e^5 x + x^2".
        #[arg(long)]
        poly: String,
        /// Dequantization parameters in (0, 1], comma separated.
        #[arg(long, value_delimiter = ',')]
        h: Vec<f64>,
        /// Range of u = ln x as LO:HI.
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true, value_parser = parse_window)]
        window: (f64, f64),
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[arg(long, value_delimiter = ',')]
        layers: Vec<Layer>,
        /// Where to write the SVG figure.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a stage of the patchwork construction on a JSON input document.
    Patchwork {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "check")]
        stage: Stage,
        /// Parameter at which `poly` evaluates the coefficients.
        #[arg(long)]
        t: Option<f64>,
        /// Draw curves even when the heights are not convex.
        #[arg(long)]
        allow_nonconvex: bool,
        #[arg(long, value_delimiter = ',')]
        layers: Vec<Layer>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the patchworked polynomial and compare it with the predicted curve.
    Verify {
        input: PathBuf,
        /// Grid resolution of the tracer.
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        layers: Vec<Layer>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate the real roots of a polynomial with terms of both signs.
    Roots {
        #[arg(long)]
        poly: String,
        /// Range of u = ln |x| as LO:HI; chosen from the coefficients if absent.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        /// Report negative roots, found as the positive roots of p(-x).
        #[arg(long)]
        negative: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_window(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {text:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("bad lower end {a:?}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("bad upper end {b:?}: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("window {text:?} must be finite with LO < HI"));
    }
    Ok((lo, hi))
}

fn or_default(layers: Vec<Layer>, default: &[Layer]) -> Vec<Layer> {
    if layers.is_empty() {
        default.to_vec()
    } else {
        layers
    }
}

/// Prints the report and copies it to `out`, then reports `failure` if any.
fn emit<T: Serialize>(report: &T, out: Option<PathBuf>, failure: Option<CliError>) -> CliResult<()> {
    let json = serde_json::to_string_pretty(report)?;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{json}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            return Err(CliError::Io {
                path: "<stdout>".into(),
                source: e,
            })
        }
        _ => {}
    }
    if let Some(path) = out {
        std::fs::write(&path, format!("{json}\n")).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    failure.map_or(Ok(()), Err)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Graph {
            poly,
            h,
            window,
            samples,
            layers,
            svg,
            out,
        } => {
            let opts = GraphOptions {
                poly,
                h,
                window,
                samples,
                layers: or_default(layers, &GRAPH_LAYERS),
                svg,
            };
            let (report, _) = cmd_graph(&opts)?;
            emit(&report, out, None)
        }
        Command::Patchwork {
            input,
            stage,
            t,
            allow_nonconvex,
            layers,
            svg,
            out,
        } => {
            let mut opts = PatchworkOptions::new(input, stage);
            opts.t = t;
            opts.allow_nonconvex = allow_nonconvex;
            opts.layers = or_default(layers, &opts.layers);
            opts.svg = svg;
            let report = cmd_patchwork(&opts)?;
            let failure = (stage == Stage::Check && !report.admissible()).then(|| {
                CliError::Precondition(if report.convexity.convex {
                    "envelope is not generic".to_string()
                } else {
                    "heights are not convex".to_string()
                })
            });
            emit(&report, out, failure)
        }
        Command::Verify {
            input,
            resolution,
            layers,
            svg,
            out,
        } => {
            let mut opts = VerifyOptions::new(input);
            opts.resolution = resolution;
            opts.layers = or_default(layers, &opts.layers);
            opts.svg = svg;
            let report = cmd_verify(&opts)?;
            let failure = report.mismatch();
            emit(&report, out, failure)
        }
        Command::Roots {
            poly,
            window,
            samples,
            negative,
            svg,
            out,
        } => {
            let opts = RootsOptions {
                poly,
                window,
                samples,
                negative,
                svg,
            };
            let (report, _) = cmd_roots(&opts)?;
            emit(&report, out, None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
