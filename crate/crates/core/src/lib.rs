//! Maslov dequantization of real polynomials and the simplest combinatorial
//! patchworking of real plane curves.
//!
//! - [`semiring`]: the semirings `S_h` and the maps `D_h`.
//! - [`logpaper`]: univariate log-paper graphs, tropical limits and
//!   positive-root brackets.
//! - [`envelope`]: exact upper envelopes of integer-slope planes, their dual
//!   subdivisions and separating broken lines.
//! - [`patchwork`]: initial data, midline curves in Δ and AΔ, the projective
//!   gluing and the polynomials `b_t`.
//! - [`tracer`]: numeric tracing of `{p⁺ = p⁻}` on log paper, used to check
//!   the combinatorial predictions against true algebraic curves.

pub mod curve;
pub mod envelope;
pub mod error;
pub mod geom;
pub mod logpaper;
pub mod patchwork;
pub mod semiring;
pub mod tracer;

pub use error::{Error, Result};
