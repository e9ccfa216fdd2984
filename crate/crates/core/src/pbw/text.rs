//! Text syntax for algebra elements.
//!
//! Terms are joined by `+`/`-`; a term is `coef*gen1^a1*gen2^a2…` with the
//! coefficient written `p/q` and exponents written `k` or `k/2` (negative
//! exponents as `x^-1`). The formatter emits generators in presentation order,
//! leading term first.

use num_traits::{One, Signed};

use super::{Monomial, NCPoly, PbwError, Presentation};
use crate::exact::{format_rational, parse_rational, HalfInt, Rational};

impl Presentation {
    pub fn format(&self, p: &NCPoly) -> String {
        format_poly(self.names(), p)
    }

    /// Parses an arbitrary expression and normal-orders it.
    pub fn parse(&self, text: &str) -> Result<NCPoly, PbwError> {
        let mut out = NCPoly::zero();
        for term in parse_terms(text)? {
            let mut word = Vec::new();
            for (name, e) in &term.factors {
                word.push((self.index(name)?, *e));
            }
            out.add_scaled(&self.normal_order(&word)?, &term.coef);
        }
        Ok(out)
    }

    /// Parses text that must already be in normal form (each term's factors in
    /// presentation order, no repeats). Used for definition files, where rules
    /// are not available yet.
    pub fn parse_normal_form(&self, text: &str) -> Result<NCPoly, PbwError> {
        parse_normal_form(self.names(), text)
    }
}

pub fn format_poly(names: &[String], p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let body = format_term(names, m, &c.abs());
        match (k, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn format_term(names: &[String], m: &Monomial, c: &Rational) -> String {
    let factors: Vec<String> = m
        .exponents()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if e == HalfInt::ONE { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect();
    if factors.is_empty() {
        return format_rational(c);
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else {
        format!("{}*{}", format_rational(c), body)
    }
}

pub fn parse_normal_form(names: &[String], text: &str) -> Result<NCPoly, PbwError> {
    let mut out = NCPoly::zero();
    for term in parse_terms(text)? {
        let mut exps = vec![HalfInt::ZERO; names.len()];
        let mut last: Option<usize> = None;
        for (name, e) in &term.factors {
            let i = names
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| PbwError::UnknownGenerator(name.clone()))?;
            if last.is_some_and(|l| l >= i) {
                return Err(PbwError::Parse(format!("term `{}` is not in normal order", term.source)));
            }
            last = Some(i);
            exps[i] = *e;
        }
        out.add_term(Monomial::from_exponents(&exps), term.coef.clone());
    }
    Ok(out)
}

#[derive(Debug)]
struct Term {
    coef: Rational,
    factors: Vec<(String, HalfInt)>,
    source: String,
}

fn parse_terms(text: &str) -> Result<Vec<Term>, PbwError> {
    let text = text.replace('−', "-");
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut terms = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(PbwError::Parse("empty expression".into()));
    }
    let mut first = true;
    while pos < chars.len() {
        let mut sign = Rational::one();
        skip_ws(&mut pos);
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(PbwError::Parse(format!("expected `+` or `-` at column {pos} in `{text}`")));
        }
        first = false;
        skip_ws(&mut pos);
        let start = pos;
        let mut coef = sign;
        let mut factors = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                return Err(PbwError::Parse(format!("dangling operator in `{text}`")));
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let s = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                    pos += 1;
                }
                let lit: String = chars[s..pos].iter().collect();
                coef *= parse_rational(&lit).map_err(|e| PbwError::Parse(e.to_string()))?;
            } else if c.is_alphabetic() || c == '_' {
                let s = pos;
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_' || chars[pos] == '\'') {
                    pos += 1;
                }
                let name: String = chars[s..pos].iter().collect();
                let mut e = HalfInt::ONE;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    e = parse_exponent(&chars, &mut pos, &text)?;
                }
                factors.push((name, e));
            } else {
                return Err(PbwError::Parse(format!("unexpected `{c}` at column {pos} in `{text}`")));
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        let source: String = chars[start..pos].iter().collect();
        terms.push(Term { coef, factors, source: source.trim().to_string() });
        skip_ws(&mut pos);
    }
    Ok(terms)
}

fn parse_exponent(chars: &[char], pos: &mut usize, text: &str) -> Result<HalfInt, PbwError> {
    let paren = *pos < chars.len() && chars[*pos] == '(';
    if paren {
        *pos += 1;
    }
    let s = *pos;
    if *pos < chars.len() && chars[*pos] == '-' {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos + 1 < chars.len() && chars[*pos] == '/' && chars[*pos + 1] == '2' {
        *pos += 2;
    }
    let lit: String = chars[s..*pos].iter().collect();
    if paren {
        if *pos >= chars.len() || chars[*pos] != ')' {
            return Err(PbwError::Parse(format!("unclosed exponent in `{text}`")));
        }
        *pos += 1;
    }
    lit.parse().map_err(|e: crate::exact::ScalarParseError| PbwError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_weyl, WeylConvention};

    #[test]
    fn format_and_parse_round_trip() {
        let w = build_weyl(1, WeylConvention::PaperWd);
        let p = w.parse("d1^2*z1^2").unwrap();
        let text = w.format(&p);
        assert_eq!(text, "z1^2*d1^2 - 4*z1*d1 + 2");
        assert_eq!(w.parse(&text).unwrap(), p);
        assert_eq!(w.parse_normal_form(&text).unwrap(), p);
    }

    #[test]
    fn normal_form_parser_rejects_disorder() {
        let w = build_weyl(1, WeylConvention::PaperWd);
        assert!(w.parse_normal_form("d1*z1").is_err());
        assert!(matches!(w.parse("q*z1"), Err(PbwError::UnknownGenerator(_))));
    }

    #[test]
    fn fractional_coefficients_and_exponents() {
        let names: Vec<String> = vec!["a".into(), "x".into()];
        let p = parse_normal_form(&names, "-1/2*a*x^-1/2 + 3").unwrap();
        assert_eq!(format_poly(&names, &p), "-1/2*a*x^-1/2 + 3");
        let q = parse_normal_form(&names, "x^(-1)").unwrap();
        assert_eq!(format_poly(&names, &q), "x^-1");
    }
}
