//! The four subcommands. Each returns a serializable report; the binary
//! prints it and turns failures into exit codes.

pub mod graph;
pub mod patchwork;
pub mod roots;
pub mod verify;

use dequant::curve::{Ambient, PLCurve, PolyPath, TopologySummary};
use dequant::geom::{Point, Q};
use dequant::patchwork::PatchworkInput;
use serde::{Deserialize, Serialize};

/// An exact point written as two rational strings.
pub type PointDoc = [String; 2];

pub(crate) fn point_doc(p: &Point) -> PointDoc {
    [p.x.to_string(), p.y.to_string()]
}

pub(crate) fn rational_doc(x: &Q) -> String {
    x.to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub points: Vec<PointDoc>,
    pub closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_ray: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_ray: Option<(i64, i64)>,
}

impl From<&PolyPath> for PathDoc {
    fn from(p: &PolyPath) -> Self {
        PathDoc {
            points: p.points.iter().map(point_doc).collect(),
            closed: p.closed,
            start_ray: p.start_ray,
            end_ray: p.end_ray,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub ambient: Ambient,
    pub loops: usize,
    pub arcs: usize,
    pub paths: Vec<PathDoc>,
    pub topology: TopologySummary,
}

impl From<&PLCurve> for CurveDoc {
    fn from(c: &PLCurve) -> Self {
        CurveDoc {
            ambient: c.ambient,
            loops: c.loops(),
            arcs: c.arcs(),
            paths: c.paths.iter().map(PathDoc::from).collect(),
            topology: c.summary(),
        }
    }
}

pub(crate) fn vertex_label(input: &PatchworkInput, i: usize) -> (i64, i64) {
    let v = &input.vertices()[i];
    (v.k, v.l)
}
