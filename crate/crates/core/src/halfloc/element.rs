use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::HalfLocError;
use crate::exact::{HalfInt, Rational};
use crate::pbw::{format_poly, NCPoly, Presentation};

/// A finite sum `Σ x_n tⁿ` in the hat algebra, `n ∈ ½ℤ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HatElement {
    support: BTreeMap<HalfInt, NCPoly>,
}

impl HatElement {
    pub fn zero() -> Self {
        HatElement::default()
    }

    /// `x tⁿ`.
    pub fn single(x: NCPoly, n: HalfInt) -> Self {
        let mut h = HatElement::zero();
        h.add_at(n, &x, &Rational::one());
        h
    }

    /// `x t⁰`.
    pub fn base(x: NCPoly) -> Self {
        Self::single(x, HalfInt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = (&HalfInt, &NCPoly)> {
        self.support.iter()
    }

    pub fn get(&self, n: HalfInt) -> Option<&NCPoly> {
        self.support.get(&n)
    }

    pub fn min_exponent(&self) -> Option<HalfInt> {
        self.support.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<HalfInt> {
        self.support.keys().next_back().copied()
    }

    /// `self += c · x tⁿ`.
    pub fn add_at(&mut self, n: HalfInt, x: &NCPoly, c: &Rational) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        let slot = self.support.entry(n).or_default();
        slot.add_scaled(x, c);
        if slot.is_zero() {
            self.support.remove(&n);
        }
    }

    pub fn add_scaled(&mut self, other: &HatElement, c: &Rational) {
        for (n, x) in &other.support {
            self.add_at(*n, x, c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> HatElement {
        let mut out = HatElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &HatElement) -> HatElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn add(&self, other: &HatElement) -> HatElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    /// Applies `f` to every coefficient, keeping exponents.
    pub fn map_coefficients<E>(&self, mut f: impl FnMut(&NCPoly) -> Result<NCPoly, E>) -> Result<HatElement, E> {
        let mut out = HatElement::zero();
        for (n, x) in &self.support {
            out.add_at(*n, &f(x)?, &Rational::one());
        }
        Ok(out)
    }

    /// Text form: `(expr) @ n` terms joined by ` + `, ascending in `n`.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (n, x)) in self.support.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "({}) @ {}", format_poly(names, x), n);
        }
        out
    }

    pub fn parse(p: &Presentation, text: &str) -> Result<HatElement, HalfLocError> {
        let text = text.trim();
        if text == "0" {
            return Ok(HatElement::zero());
        }
        let mut out = HatElement::zero();
        let mut rest = text;
        loop {
            rest = rest.trim_start();
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| HalfLocError::Parse(format!("expected `(` in `{text}`")))?;
            let close = matching_paren(body).ok_or_else(|| HalfLocError::Parse(format!("unbalanced `(` in `{text}`")))?;
            let expr = &body[..close];
            let after = body[close + 1..].trim_start();
            let after = after
                .strip_prefix('@')
                .ok_or_else(|| HalfLocError::Parse(format!("expected `@` in `{text}`")))?
                .trim_start();
            let end = after.find(" + ").unwrap_or(after.len());
            let n: HalfInt = after[..end].trim().parse().map_err(|e: crate::exact::ScalarParseError| {
                HalfLocError::Parse(e.to_string())
            })?;
            out.add_at(n, &p.parse(expr)?, &Rational::one());
            if end == after.len() {
                break;
            }
            rest = &after[end + 3..];
        }
        Ok(out)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}
