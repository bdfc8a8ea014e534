//! Univariate polynomials on logarithmic paper.
//!
//! With `u = ln x`, a monomial `a_k x^k` becomes the line `ku + ln a_k`. A
//! polynomial with positive coefficients becomes the smooth curve
//! `L_p(u) = ln Σ e^{ku + b_k}`, which sits in the strip between the broken
//! line `M_p(u) = max_k (ku + b_k)` and its translate by `ln(#terms)`.

use crate::error::{Error, Result};
use crate::semiring::{log_sum_exp, scaled_log_sum_exp, Deform};

/// Sparse polynomial in one variable with positive coefficients. Terms are
/// kept sorted by exponent; coefficients are stored as natural logs so that
/// dequantized members (`a_k^{1/h}`) never overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct PosPolynomial1 {
    terms: Vec<(u32, f64)>,
}

impl PosPolynomial1 {
    /// Builds from `(exponent, coefficient)` pairs; coefficients must be
    /// positive and finite.
    pub fn from_coefficients(terms: &[(u32, f64)]) -> Result<Self> {
        let mut logs = Vec::with_capacity(terms.len());
        for &(k, a) in terms {
            if !a.is_finite() {
                return Err(Error::NonFinite(a));
            }
            if a <= 0.0 {
                return Err(Error::NonPositiveCoefficient {
                    exponent: k.to_string(),
                    value: a,
                });
            }
            logs.push((k, a.ln()));
        }
        Self::from_log_coefficients(&logs)
    }

    /// Builds from `(exponent, ln coefficient)` pairs.
    pub fn from_log_coefficients(terms: &[(u32, f64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let mut sorted = terms.to_vec();
        for &(_, b) in &sorted {
            if !b.is_finite() {
                return Err(Error::NonFinite(b));
            }
        }
        sorted.sort_by_key(|&(k, _)| k);
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateExponent(w[0].0.to_string()));
        }
        Ok(PosPolynomial1 { terms: sorted })
    }

    /// `(exponent, ln coefficient)` pairs in increasing exponent order.
    pub fn log_terms(&self) -> &[(u32, f64)] {
        &self.terms
    }

    /// `(exponent, coefficient)` pairs; coefficients may overflow to infinity
    /// for extreme dequantized members.
    pub fn coefficients(&self) -> Vec<(u32, f64)> {
        self.terms.iter().map(|&(k, b)| (k, b.exp())).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.last().map(|t| t.0).unwrap_or(0)
    }

    fn exponents_at(&self, u: f64) -> Vec<f64> {
        self.terms.iter().map(|&(k, b)| k as f64 * u + b).collect()
    }

    /// `L_p(u)`, the log-paper ordinate of the graph of `p`.
    pub fn eval_log(&self, u: f64) -> f64 {
        log_sum_exp(&self.exponents_at(u)).expect("non-empty polynomial")
    }

    /// `M_p(u)`, the broken line of the maximal monomial.
    pub fn eval_max(&self, u: f64) -> f64 {
        self.exponents_at(u).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Ordinate of the rescaled graph `Γ^h_{p_h}` at `u`, i.e. `p` evaluated
    /// in `S_h` with coefficients `b_k`.
    pub fn eval_scaled(&self, u: f64, d: Deform) -> Result<f64> {
        if d.h().is_nan() || d.h() <= 0.0 {
            return Err(Error::NonPositiveDeformation(d.h()));
        }
        Ok(scaled_log_sum_exp(&self.exponents_at(u), d.h()).expect("non-empty polynomial"))
    }

    /// The member `p_h = Σ a_k^{1/h} x^k` of the dequantizing family.
    pub fn dequantizing_member(&self, d: Deform) -> Result<PosPolynomial1> {
        if d.h().is_nan() || d.h() <= 0.0 {
            return Err(Error::NonPositiveDeformation(d.h()));
        }
        let terms: Vec<_> = self.terms.iter().map(|&(k, b)| (k, b / d.h())).collect();
        PosPolynomial1::from_log_coefficients(&terms)
    }

    /// The tropical limit `M_p` as a list of affine pieces.
    pub fn tropical(&self) -> TropicalPoly1 {
        TropicalPoly1 {
            pieces: self.terms.iter().map(|&(k, b)| (k as i64, b)).collect(),
        }
    }

    /// Plain evaluation `p(x)` for `x >= 0`.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(k, b)| b.exp() * x.powi(k as i32)).sum()
    }
}

/// `u ↦ max_i (k_i u + c_i)` with distinct slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalPoly1 {
    pieces: Vec<(i64, f64)>,
}

impl TropicalPoly1 {
    pub fn new(pieces: Vec<(i64, f64)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        let mut sorted = pieces;
        sorted.sort_by_key(|p| p.0);
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateExponent(w[0].0.to_string()));
        }
        Ok(TropicalPoly1 { pieces: sorted })
    }

    pub fn pieces(&self) -> &[(i64, f64)] {
        &self.pieces
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.pieces
            .iter()
            .map(|&(k, c)| k as f64 * u + c)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pieces that are maximal on an interval of positive length, ordered by
    /// slope. These are the upper hull of the points `(k, c)`.
    pub fn active_pieces(&self) -> Vec<(i64, f64)> {
        let mut hull: Vec<(i64, f64)> = Vec::new();
        for &p in &self.pieces {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // drop b if it lies on or below segment a-p
                let cross = (b.0 - a.0) as f64 * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) as f64;
                if cross >= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull
    }

    /// Abscissas of the corners of the broken line, increasing.
    pub fn corners(&self) -> Vec<f64> {
        self.active_pieces()
            .windows(2)
            .map(|w| -(w[1].1 - w[0].1) / (w[1].0 - w[0].0) as f64)
            .collect()
    }
}

/// `p = p⁺ − p⁻` split by coefficient sign.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPolynomial1 {
    plus: PosPolynomial1,
    minus: Option<PosPolynomial1>,
}

impl SignedPolynomial1 {
    /// Splits signed `(exponent, coefficient)` pairs. Zero coefficients are
    /// dropped; a polynomial without positive terms is negated first, which
    /// leaves the zero set unchanged.
    pub fn from_coefficients(terms: &[(u32, f64)]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(k, a) in terms {
            if !a.is_finite() {
                return Err(Error::NonFinite(a));
            }
            if !seen.insert(k) {
                return Err(Error::DuplicateExponent(k.to_string()));
            }
        }
        let mut plus: Vec<_> = terms.iter().filter(|t| t.1 > 0.0).map(|&(k, a)| (k, a)).collect();
        let mut minus: Vec<_> = terms.iter().filter(|t| t.1 < 0.0).map(|&(k, a)| (k, -a)).collect();
        if plus.is_empty() {
            std::mem::swap(&mut plus, &mut minus);
        }
        let plus = PosPolynomial1::from_coefficients(&plus)?;
        let minus = if minus.is_empty() {
            None
        } else {
            Some(PosPolynomial1::from_coefficients(&minus)?)
        };
        Ok(SignedPolynomial1 { plus, minus })
    }

    pub fn from_parts(plus: PosPolynomial1, minus: Option<PosPolynomial1>) -> Result<Self> {
        if let Some(m) = &minus {
            for (k, _) in m.log_terms() {
                if plus.log_terms().iter().any(|(j, _)| j == k) {
                    return Err(Error::DuplicateExponent(k.to_string()));
                }
            }
        }
        Ok(SignedPolynomial1 { plus, minus })
    }

    pub fn plus(&self) -> &PosPolynomial1 {
        &self.plus
    }

    pub fn minus(&self) -> Option<&PosPolynomial1> {
        self.minus.as_ref()
    }

    /// `p(-x)`: odd-degree terms change sign.
    pub fn reflected(&self) -> SignedPolynomial1 {
        let mut all: Vec<(u32, f64)> = self.signed_coefficients();
        for t in &mut all {
            if t.0 % 2 == 1 {
                t.1 = -t.1;
            }
        }
        SignedPolynomial1::from_coefficients(&all).expect("reflection keeps a valid support")
    }

    pub fn signed_coefficients(&self) -> Vec<(u32, f64)> {
        let mut all = self.plus.coefficients();
        if let Some(m) = &self.minus {
            all.extend(m.coefficients().into_iter().map(|(k, a)| (k, -a)));
        }
        all.sort_by_key(|t| t.0);
        all
    }

    /// `F(u) = L_{p⁺}(u) − L_{p⁻}(u)`; zero exactly where `p(e^u) = 0`.
    pub fn log_difference(&self, u: f64) -> Option<f64> {
        self.minus.as_ref().map(|m| self.plus.eval_log(u) - m.eval_log(u))
    }
}

/// How a bracket was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `F` changes sign between two consecutive grid nodes.
    SignChange,
    /// `F` vanishes at a grid node and changes sign across it.
    NodeZero,
    /// `F` vanishes at a grid node without changing sign across it
    /// (even-multiplicity root suspected).
    SuspectedTangency,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    /// Refined root in log coordinates.
    pub u: f64,
    pub kind: RootKind,
}

impl RootBracket {
    /// The root as a positive real `x = e^u`.
    pub fn x(&self) -> f64 {
        self.u.exp()
    }
}

const NODE_ZERO: f64 = 1e-13;
const BISECTION_WIDTH: f64 = 1e-12;

/// Locates positive roots of `q` with `ln x` in `[u_lo, u_hi]`.
///
/// `F = L_{p⁺} − L_{p⁻}` is sampled on `samples` uniform nodes; every sign
/// change is refined by bisection on `F` to a bracket narrower than `1e-12`.
/// Nodes with `|F| < 1e-13` are reported as `NodeZero` when the sign flips
/// across them and as `SuspectedTangency` otherwise.
pub fn positive_roots_bracket(q: &SignedPolynomial1, window: (f64, f64), samples: usize) -> Result<Vec<RootBracket>> {
    let minus = q.minus.as_ref().ok_or(Error::NoSignChange)?;
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::RootWindow(lo, hi));
    }
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let f = |u: f64| q.plus.eval_log(u) - minus.eval_log(u);
    let step = (hi - lo) / (samples - 1) as f64;
    let nodes: Vec<f64> = (0..samples)
        .map(|i| if i + 1 == samples { hi } else { lo + step * i as f64 })
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&u| f(u)).collect();
    let sign = |v: f64| {
        if v.abs() < NODE_ZERO {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i32> = values.iter().map(|&v| sign(v)).collect();

    let mut out = Vec::new();
    let mut last_nonzero: Option<usize> = None;
    let mut i = 0;
    while i < samples {
        if signs[i] != 0 {
            if let Some(p) = last_nonzero {
                if p + 1 == i && signs[p] != signs[i] {
                    let (a, b) = bisect(&f, nodes[p], nodes[i], signs[p]);
                    out.push(RootBracket {
                        lo: a,
                        hi: b,
                        u: 0.5 * (a + b),
                        kind: RootKind::SignChange,
                    });
                }
            }
            last_nonzero = Some(i);
            i += 1;
            continue;
        }
        let start = i;
        let mut end = i;
        while end + 1 < samples && signs[end + 1] == 0 {
            end += 1;
        }
        let after = (end + 1 < samples).then_some(end + 1);
        match (last_nonzero, after) {
            (Some(a), Some(b)) if signs[a] != signs[b] => {
                let (x, y) = bisect(&f, nodes[a], nodes[b], signs[a]);
                out.push(RootBracket {
                    lo: x,
                    hi: y,
                    u: 0.5 * (x + y),
                    kind: RootKind::NodeZero,
                });
            }
            _ => {
                let best = (start..=end)
                    .min_by(|&a, &b| values[a].abs().total_cmp(&values[b].abs()))
                    .unwrap_or(start);
                out.push(RootBracket {
                    lo: nodes[start],
                    hi: nodes[end],
                    u: nodes[best],
                    kind: RootKind::SuspectedTangency,
                });
            }
        }
        i = end + 1;
    }
    Ok(out)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, sign_a: i32) -> (f64, f64) {
    while b - a > BISECTION_WIDTH {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return (mid, mid);
        }
        if (v > 0.0) == (sign_a > 0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, f64)]) -> PosPolynomial1 {
        PosPolynomial1::from_coefficients(terms).unwrap()
    }

    fn e5(sign: f64) -> PosPolynomial1 {
        poly(&[(0, 1.0), (1, (5.0 * sign).exp()), (2, 1.0)])
    }

    #[test]
    fn eval_log_examples() {
        let p = poly(&[(0, 1.0), (1, 1.0)]);
        assert!((p.eval_log(0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((p.eval_log(10.0) - 10.000_045_398_899_216).abs() < 1e-12);
        assert!((e5(1.0).eval_log(0.0) - 5.013_385_901_721_449).abs() < 1e-12);
    }

    #[test]
    fn eval_max_examples() {
        assert!((e5(1.0).eval_max(0.0) - 5.0).abs() < 1e-15);
        assert_eq!(poly(&[(0, 1.0), (1, 1.0)]).eval_max(-3.0), 0.0);
        assert_eq!(e5(-1.0).eval_max(0.0), 0.0);
    }

    #[test]
    fn eval_scaled_examples() {
        let p = poly(&[(0, 1.0), (1, 1.0)]);
        let d = |h| Deform::new(h).unwrap();
        assert!((p.eval_scaled(0.0, d(1.0)).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((p.eval_scaled(0.0, d(0.1)).unwrap() - 0.1 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(p.eval_scaled(5.0, d(0.1)).unwrap(), 5.0);
        assert!(p.eval_scaled(0.0, Deform::TROPICAL).is_err());
    }

    #[test]
    fn dequantizing_member_examples() {
        let ones = poly(&[(0, 1.0), (3, 1.0)]);
        let same = ones.dequantizing_member(Deform::new(0.37).unwrap()).unwrap();
        assert_eq!(same.log_terms(), ones.log_terms());

        let p = poly(&[(0, 1.0), (1, 2.0)]);
        let q = p.dequantizing_member(Deform::new(0.5).unwrap()).unwrap();
        let c = q.coefficients();
        assert_eq!(c[0], (0, 1.0));
        assert!((c[1].1 - 4.0).abs() < 1e-14);
    }

    #[test]
    fn dequantizing_member_realizes_t_powers() {
        let nu = [(0u32, 1.0), (1, 0.0), (2, 2.5)];
        let p = PosPolynomial1::from_log_coefficients(&nu.iter().map(|&(k, v)| (k, -v)).collect::<Vec<_>>()).unwrap();
        let t: f64 = 0.01;
        let member = p.dequantizing_member(Deform::from_patchwork_t(t).unwrap()).unwrap();
        for ((_, c), (_, v)) in member.coefficients().iter().zip(nu.iter()) {
            let expect = t.powf(*v);
            assert!((c - expect).abs() <= 1e-12 * expect, "{c} vs {expect}");
        }
    }

    #[test]
    fn corners_and_active_pieces() {
        assert_eq!(e5(1.0).tropical().corners(), vec![-5.0, 5.0]);
        assert_eq!(e5(-1.0).tropical().corners(), vec![0.0]);
        assert!(poly(&[(0, 1.0)]).tropical().corners().is_empty());
        let t = TropicalPoly1::new(vec![(1, 0.0), (0, 0.0)]).unwrap();
        assert_eq!(t.corners(), vec![0.0]);
        assert!(TropicalPoly1::new(vec![(1, 0.0), (1, 2.0)]).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            PosPolynomial1::from_coefficients(&[(0, 1.0), (2, -1.0)]),
            Err(Error::NonPositiveCoefficient { .. })
        ));
        assert!(PosPolynomial1::from_coefficients(&[]).is_err());
        assert!(PosPolynomial1::from_coefficients(&[(1, 1.0), (1, 2.0)]).is_err());
    }

    #[test]
    fn roots_examples() {
        let q = SignedPolynomial1::from_coefficients(&[(1, 1.0), (0, -1.0)]).unwrap();
        let r = positive_roots_bracket(&q, (-3.0, 3.0), 100).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].u.abs() < 1e-11);

        let q = SignedPolynomial1::from_coefficients(&[(2, 1.0), (1, -3.0), (0, 2.0)]).unwrap();
        let r = positive_roots_bracket(&q, (-3.0, 3.0), 200).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].u.abs() < 1e-11);
        assert!((r[1].u - 2f64.ln()).abs() < 1e-11);
        assert!((r[1].x() - 2.0).abs() < 1e-10);

        let q = SignedPolynomial1::from_coefficients(&[(2, 1.0), (0, 1.0)]).unwrap();
        assert_eq!(positive_roots_bracket(&q, (-3.0, 3.0), 10), Err(Error::NoSignChange));
    }

    #[test]
    fn roots_on_grid_nodes() {
        // window puts u = 0 exactly on a node
        let q = SignedPolynomial1::from_coefficients(&[(1, 1.0), (0, -1.0)]).unwrap();
        let r = positive_roots_bracket(&q, (-1.0, 1.0), 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, RootKind::NodeZero);
        assert!(r[0].u.abs() < 1e-12);
    }

    #[test]
    fn tangency_is_reported_not_refined() {
        // (x - 1)^2 = x^2 - 2x + 1
        let q = SignedPolynomial1::from_coefficients(&[(2, 1.0), (1, -2.0), (0, 1.0)]).unwrap();
        let r = positive_roots_bracket(&q, (-1.0, 1.0), 21).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, RootKind::SuspectedTangency);
        assert!(r[0].u.abs() < 1e-9);
    }

    #[test]
    fn window_and_sample_errors() {
        let q = SignedPolynomial1::from_coefficients(&[(1, 1.0), (0, -1.0)]).unwrap();
        assert!(positive_roots_bracket(&q, (1.0, -1.0), 10).is_err());
        assert!(positive_roots_bracket(&q, (-1.0, 1.0), 1).is_err());
    }

    #[test]
    fn reflection_gives_negative_roots() {
        // (x + 1)(x + 2) = x^2 + 3x + 2 -> p(-x) = x^2 - 3x + 2
        let q = SignedPolynomial1::from_coefficients(&[(2, 1.0), (1, 3.0), (0, 2.0)]).unwrap();
        let r = positive_roots_bracket(&q.reflected(), (-3.0, 3.0), 200).unwrap();
        let xs: Vec<f64> = r.iter().map(|b| b.x()).collect();
        assert!((xs[0] - 1.0).abs() < 1e-10 && (xs[1] - 2.0).abs() < 1e-10);
    }
}
