//! The JSON input document for patchwork data.
//!
//! ```json
//! {"degree": 2,
//!  "vertices": [{"k": 0, "l": 0, "sign": "-", "nu": "1"}, ...],
//!  "triangles": [[0, 1, 2], ...],
//!  "trace": {"resolution": 512}}
//! ```
//!
//! `nu` is an exact rational: a JSON integer, `"p/q"`, or a decimal string
//! such as `"0.25"`.

use crate::error::{CliError, CliResult};
use dequant::geom::Q;
use dequant::patchwork::{PatchVertex, PatchworkInput, Sign};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub degree: i64,
    pub vertices: Vec<VertexDoc>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSettings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub k: i64,
    pub l: i64,
    pub sign: String,
    pub nu: RationalText,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

/// A rational written either as a JSON integer or as a string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Integer(i64),
    Text(String),
}

impl RationalText {
    pub fn parse(&self) -> CliResult<Q> {
        match self {
            RationalText::Integer(n) => Ok(Q::from_integer(BigInt::from(*n))),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"p/q"`, `"-7"` or a plain decimal such as `"2.125"` exactly.
pub fn parse_rational(text: &str) -> CliResult<Q> {
    let s = text.trim().replace('\u{2212}', "-");
    let bad = || CliError::Input(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(CliError::Input(format!("zero denominator in {text:?}")));
        }
        return Ok(Q::new(n, d));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(&s)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut numer = BigInt::from_str(&format!("0{int}{frac}")).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let mut denom = BigInt::one();
    for _ in 0..frac.len() {
        denom *= 10;
    }
    Ok(Q::new(numer, denom))
}

pub fn parse_sign(text: &str) -> CliResult<Sign> {
    match text.trim() {
        "+" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "\u{2212}" | "-1" => Ok(Sign::Minus),
        other => Err(CliError::Input(format!("sign must be \"+\" or \"-\", got {other:?}"))),
    }
}

impl InputDocument {
    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_patchwork(&self) -> CliResult<PatchworkInput> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Ok(PatchVertex::new(v.k, v.l, parse_sign(&v.sign)?, v.nu.parse()?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PatchworkInput::new(self.degree, vertices, self.triangles.clone())?)
    }

    pub fn from_patchwork(input: &PatchworkInput) -> Self {
        InputDocument {
            degree: input.degree(),
            vertices: input
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    k: v.k,
                    l: v.l,
                    sign: v.sign.to_string(),
                    nu: if v.nu.is_integer() {
                        match i64::try_from(v.nu.to_integer()) {
                            Ok(n) => RationalText::Integer(n),
                            Err(_) => RationalText::Text(v.nu.to_string()),
                        }
                    } else {
                        RationalText::Text(v.nu.to_string())
                    },
                })
                .collect(),
            triangles: input.triangles().to_vec(),
            trace: None,
        }
    }

    pub fn resolution(&self) -> Option<usize> {
        self.trace.and_then(|t| t.resolution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dequant::geom::q_ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), q_ratio(1, 2));
        assert_eq!(parse_rational("-2.125").unwrap(), q_ratio(-17, 8));
        assert_eq!(parse_rational("\u{2212}4").unwrap(), q_ratio(-4, 1));
        assert_eq!(parse_rational(".5").unwrap(), q_ratio(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "1e3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn signs() {
        assert_eq!(parse_sign("\u{2212}").unwrap(), Sign::Minus);
        assert!(parse_sign("0").is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"degree": 1, "vertices": [], "triangles": [], "extra": 1}"#;
        assert!(InputDocument::from_json(text).is_err());
    }
}
