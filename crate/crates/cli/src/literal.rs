//! Polynomial literals typed on the command line.
//!
//! Terms are `c`, `c x^k`, `c x^k y^l` joined by `+` and `-`. A coefficient
//! is a decimal number (`2`, `0.5`, `3e-4`), a power of e (`e^5`, `e^-5`,
//! `e^(2.5)`, or plain `e`), or a product of those; it defaults to 1.
//! Factors may be separated by `*` or written side by side, and whitespace
//! is ignored, so `1 + e^5 x + x^2` and `1+e^5*x+x^2` are the same.

use crate::error::{CliError, CliResult};
use dequant::logpaper::{PosPolynomial1, SignedPolynomial1};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiteralTerm {
    pub k: u32,
    pub l: u32,
    /// −1, 0 or 1.
    pub sign: i8,
    /// `ln |coefficient|`; `-inf` for a zero coefficient.
    pub ln_abs: f64,
    /// The term as written.
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyLiteral {
    pub source: String,
    pub terms: Vec<LiteralTerm>,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    source: &'a str,
}

fn err(source: &str, at: usize, what: &str) -> CliError {
    CliError::Input(format!("cannot parse polynomial {source:?} at offset {at}: {what}"))
}

impl<'a> Parser<'a> {
    fn new(source: &'a str) -> Self {
        let chars = source
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        Parser { chars, pos: 0, source }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.source.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn fail(&self, what: &str) -> CliError {
        err(self.source, self.offset(), what)
    }

    fn digits(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn number(&mut self) -> CliResult<f64> {
        let mut text = self.digits();
        if self.peek() == Some('.') {
            self.pos += 1;
            text.push('.');
            text.push_str(&self.digits());
        }
        let exp_digit = |c: Option<char>| c.is_some_and(|c| c.is_ascii_digit());
        if matches!(self.peek(), Some('e' | 'E'))
            && (exp_digit(self.peek_at(1))
                || (matches!(self.peek_at(1), Some('+' | '-')) && exp_digit(self.peek_at(2))))
        {
            text.push('e');
            self.pos += 1;
            if let Some(s @ ('+' | '-')) = self.peek() {
                text.push(s);
                self.pos += 1;
            }
            text.push_str(&self.digits());
        }
        text.parse::<f64>().map_err(|_| self.fail("malformed number"))
    }

    fn uint(&mut self) -> CliResult<u32> {
        let d = self.digits();
        d.parse::<u32>()
            .map_err(|_| self.fail("expected a non-negative integer exponent"))
    }

    fn exponent_of_e(&mut self) -> CliResult<f64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        if !self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            return Err(self.fail("expected a number after e^"));
        }
        let mut q = self.number()?;
        if paren && self.peek() == Some('/') {
            self.pos += 1;
            let d = self.number()?;
            if d == 0.0 {
                return Err(self.fail("zero denominator in exponent"));
            }
            q /= d;
        }
        if paren && self.bump() != Some(')') {
            return Err(self.fail("expected ')'"));
        }
        Ok(if negative { -q } else { q })
    }

    fn term(&mut self, negative: bool) -> CliResult<LiteralTerm> {
        let start = self.offset();
        let (mut k, mut l) = (0u32, 0u32);
        let mut ln_abs = 0.0f64;
        let mut zero = false;
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == '.' => {
                    let v = self.number()?;
                    if v == 0.0 {
                        zero = true;
                    } else {
                        ln_abs += v.ln();
                    }
                }
                Some('e') => {
                    self.pos += 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        ln_abs += self.exponent_of_e()?;
                    } else {
                        ln_abs += 1.0;
                    }
                }
                Some(v @ ('x' | 'y')) => {
                    self.pos += 1;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.uint()?
                    } else {
                        1
                    };
                    if v == 'x' {
                        k += e;
                    } else {
                        l += e;
                    }
                }
                _ => break,
            }
            factors += 1;
            if matches!(self.peek(), Some('*' | '\u{b7}')) {
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, '.' | 'e' | 'x' | 'y')) {
                    return Err(self.fail("expected a factor after '*'"));
                }
            }
        }
        if factors == 0 {
            return Err(self.fail("expected a term"));
        }
        let end = self.offset();
        Ok(LiteralTerm {
            k,
            l,
            sign: if zero {
                0
            } else if negative {
                -1
            } else {
                1
            },
            ln_abs: if zero { f64::NEG_INFINITY } else { ln_abs },
            text: self.source[start..end].trim().to_string(),
        })
    }

    fn polynomial(&mut self) -> CliResult<Vec<LiteralTerm>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                negative = true;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let mut t = self.term(negative)?;
            if negative {
                t.text = format!("-{}", t.text);
            }
            terms.push(t);
            match self.bump() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.fail("unexpected character"));
                }
            }
        }
        Ok(terms)
    }
}

impl PolyLiteral {
    pub fn parse(source: &str) -> CliResult<Self> {
        let terms = Parser::new(source).polynomial()?;
        let mut seen = std::collections::BTreeSet::new();
        for t in &terms {
            if !seen.insert((t.k, t.l)) {
                return Err(CliError::Input(format!(
                    "monomial x^{} y^{} appears twice in {source:?}",
                    t.k, t.l
                )));
            }
        }
        Ok(PolyLiteral {
            source: source.to_string(),
            terms,
        })
    }

    fn require_univariate(&self) -> CliResult<()> {
        match self.terms.iter().find(|t| t.l != 0) {
            Some(t) => Err(CliError::Input(format!(
                "term {:?} uses y, but a polynomial in x alone is expected",
                t.text
            ))),
            None => Ok(()),
        }
    }

    /// For drawing on log paper: every coefficient must be positive.
    pub fn positive(&self) -> CliResult<PosPolynomial1> {
        self.require_univariate()?;
        if let Some(t) = self.terms.iter().find(|t| t.sign <= 0) {
            return Err(CliError::Input(format!(
                "coefficient of term {:?} is not positive",
                t.text
            )));
        }
        let logs: Vec<(u32, f64)> = self.terms.iter().map(|t| (t.k, t.ln_abs)).collect();
        Ok(PosPolynomial1::from_log_coefficients(&logs)?)
    }

    /// Split into positive and negative parts; zero terms are dropped. A
    /// polynomial with only negative terms is negated.
    pub fn signed(&self) -> CliResult<SignedPolynomial1> {
        self.require_univariate()?;
        let part = |s: i8| -> Vec<(u32, f64)> {
            self.terms
                .iter()
                .filter(|t| t.sign == s)
                .map(|t| (t.k, t.ln_abs))
                .collect()
        };
        let (mut plus, mut minus) = (part(1), part(-1));
        if plus.is_empty() {
            std::mem::swap(&mut plus, &mut minus);
        }
        let plus = PosPolynomial1::from_log_coefficients(&plus)?;
        let minus = if minus.is_empty() {
            None
        } else {
            Some(PosPolynomial1::from_log_coefficients(&minus)?)
        };
        Ok(SignedPolynomial1::from_parts(plus, minus)?)
    }
}
