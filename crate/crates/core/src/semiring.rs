//! The deformation family of semirings `S_h`.
//!
//! Every `S_h` is the real line as a set. Multiplication is ordinary
//! addition for every `h`; addition is `h ln(e^{a/h} + e^{b/h})` for `h > 0`
//! and plain `max` at `h = 0`. The map `x -> h ln x` carries positive reals
//! with `(+, *)` isomorphically onto `S_h`.
//!
//! Sums are always evaluated as `max + h ln(1 + sum of e^{-gap/h})`, so the
//! small-`h` regime never overflows and `h = 0` is an exact branch.

use crate::error::{Error, Result};

/// An element of `S_h`: any finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct SValue(f64);

impl SValue {
    pub fn new(v: f64) -> Result<Self> {
        if v.is_finite() {
            Ok(SValue(v))
        } else {
            Err(Error::NonFinite(v))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<SValue> for f64 {
    fn from(v: SValue) -> f64 {
        v.0
    }
}

/// Deformation parameter `h >= 0`. `h = 0` selects the idempotent
/// (max-plus) semiring.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct Deform {
    h: f64,
}

impl Deform {
    pub const TROPICAL: Deform = Deform { h: 0.0 };

    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::NonFinite(h));
        }
        if h < 0.0 {
            return Err(Error::NegativeDeformation(h));
        }
        Ok(Deform { h })
    }

    /// The parameter for a dilation ratio `c` of log paper, `h = 1/c`.
    pub fn from_dilation(c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::NonPositiveDeformation(1.0 / c));
        }
        Deform::new(1.0 / c)
    }

    /// `h = -1/ln t`, the parameter under which `t^nu` coefficients form a
    /// dequantizing family.
    pub fn from_patchwork_t(t: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::PatchworkParameter(t));
        }
        Deform::new(-1.0 / t.ln())
    }

    pub fn h(self) -> f64 {
        self.h
    }

    pub fn is_tropical(self) -> bool {
        self.h == 0.0
    }

    fn positive(self) -> Result<f64> {
        if self.h > 0.0 {
            Ok(self.h)
        } else {
            Err(Error::NonPositiveDeformation(self.h))
        }
    }

    /// `a ⊕_h b`.
    pub fn add(self, a: SValue, b: SValue) -> SValue {
        let (hi, lo) = if a.0 >= b.0 { (a.0, b.0) } else { (b.0, a.0) };
        if self.h == 0.0 {
            return SValue(hi);
        }
        SValue(hi + self.h * (-(hi - lo) / self.h).exp().ln_1p())
    }

    /// `a ⊙_h b`, independent of `h`.
    pub fn mul(self, a: SValue, b: SValue) -> SValue {
        SValue(a.0 + b.0)
    }

    /// n-ary `⊕_h` with a single max extraction. Returns `None` for an
    /// empty input, since `S_h` has no finite additive unit.
    pub fn sum<I>(self, values: I) -> Option<SValue>
    where
        I: IntoIterator<Item = SValue>,
    {
        let raw: Vec<f64> = values.into_iter().map(|v| v.0).collect();
        scaled_log_sum_exp(&raw, self.h).map(SValue)
    }

    /// `D_h(x) = h ln x`.
    pub fn dequantize(self, x: f64) -> Result<SValue> {
        let h = self.positive()?;
        if !x.is_finite() {
            return Err(Error::NonFinite(x));
        }
        if x <= 0.0 {
            return Err(Error::NonPositiveArgument(x));
        }
        Ok(SValue(h * x.ln()))
    }

    /// `D_h^{-1}(b) = e^{b/h}`.
    pub fn quantize(self, b: SValue) -> Result<f64> {
        let h = self.positive()?;
        let x = (b.0 / h).exp();
        if !x.is_finite() || x == 0.0 {
            return Err(Error::ExponentRange(b.0 / h));
        }
        Ok(x)
    }
}

/// `a ⊕_h b` for a deformation `d`.
pub fn tropical_add(a: SValue, b: SValue, d: Deform) -> SValue {
    d.add(a, b)
}

/// `a ⊙_h b`.
pub fn tropical_mul(a: SValue, b: SValue, d: Deform) -> SValue {
    d.mul(a, b)
}

pub fn dequantize(x: f64, d: Deform) -> Result<SValue> {
    d.dequantize(x)
}

pub fn quantize(b: SValue, d: Deform) -> Result<f64> {
    d.quantize(b)
}

/// `h ln Σ e^{x_i/h}` (or `max x_i` when `h = 0`) over raw floats.
pub(crate) fn scaled_log_sum_exp(values: &[f64], h: f64) -> Option<f64> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if values.is_empty() {
        return None;
    }
    if h == 0.0 || max == f64::NEG_INFINITY {
        return Some(max);
    }
    let tail: f64 = values.iter().map(|&x| ((x - max) / h).exp()).sum();
    // tail >= 1 because the maximum contributes exactly e^0
    Some(max + h * tail.ln())
}

/// Natural log of `Σ e^{x_i}`.
pub(crate) fn log_sum_exp(values: &[f64]) -> Option<f64> {
    scaled_log_sum_exp(values, 1.0)
}
