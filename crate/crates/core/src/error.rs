use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("deformation parameter must be >= 0, got {0}")]
    NegativeDeformation(f64),
    #[error("operation needs h > 0, got {0}")]
    NonPositiveDeformation(f64),
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("exponent {0} is outside the representable range")]
    ExponentRange(f64),
    #[error("patchwork parameter t must be positive and finite, got {0}")]
    PatchworkParameter(f64),

    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error("coefficient of exponent {exponent} must be positive, got {value}")]
    NonPositiveCoefficient { exponent: String, value: f64 },
    #[error("exponent {0} listed twice")]
    DuplicateExponent(String),
    #[error("polynomial has no negative part, so it has no positive roots")]
    NoSignChange,
    #[error("invalid root window [{0}, {1}]")]
    RootWindow(f64, f64),
    #[error("at least 2 samples are needed, got {0}")]
    TooFewSamples(usize),

    #[error("arrangement needs at least one plane")]
    EmptyArrangement,
    #[error("slope ({0}, {1}) appears twice in the arrangement")]
    DuplicateSlope(i64, i64),
    #[error("split does not assign plane {0}")]
    SplitIncomplete(usize),
    #[error("separating line branches at vertex ({0}, {1})")]
    Branching(String, String),

    #[error("degree must be positive, got {0}")]
    Degree(i64),
    #[error("vertex ({0}, {1}) lies outside the domain")]
    VertexOutside(i64, i64),
    #[error("vertex ({0}, {1}) listed twice")]
    DuplicateVertex(i64, i64),
    #[error("nu at ({0}, {1}) is negative")]
    NegativeNu(i64, i64),
    #[error("triangle {0} refers to a missing vertex")]
    TriangleIndex(usize),
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
    #[error("triangles {0} and {1} overlap")]
    OverlappingTriangles(usize, usize),
    #[error("vertex {vertex} lies on triangle {triangle} without being one of its corners")]
    HangingVertex { vertex: usize, triangle: usize },
    #[error("vertex {0} is not used by any triangle")]
    UnusedVertex(usize),
    #[error("triangles do not cover the domain (area {found} of {expected})")]
    Coverage { found: String, expected: String },
    #[error("operation expects data on the first-quadrant triangle")]
    NotTriangleDomain,
    #[error("lifted points ({0}) lie on one lower face, so the lifting is not generic")]
    NonGenericLifting(String),
    #[error("boundary point {0} has no antipodal partner")]
    UnpairedBoundaryPoint(String),

    #[error("invalid trace window: {0}")]
    TraceWindow(String),
    #[error("traces disagree across a coordinate axis: {0}")]
    AxisCrossings(String),
    #[error("topology did not stabilize after {0} refinements")]
    NotStabilized(usize),
}
