use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::DefError;
use crate::algebras::{linear_poly, MinimalWData, StructureConstants};
use crate::exact::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::pbw::{format_poly, parse_normal_form, NCPoly};

/// JSON form of [`MinimalWData`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalWDocument {
    pub label: String,
    /// Basis of 𝔤(0).
    pub g0: Vec<String>,
    /// Nonzero brackets `[a, b]` with `a` before `b`, as linear forms.
    pub g0_brackets: Vec<BracketEntry>,
    /// Basis of 𝔤(1).
    pub g1: Vec<String>,
    /// For each element of 𝔤(0), its matrix on 𝔤(1) (rows indexed by the
    /// output basis vector).
    pub action: BTreeMap<String, Vec<Vec<String>>>,
    pub central: String,
    /// `[u, v]` for `u` before `v` in 𝔤(1), over 𝔤(0) and the central
    /// generator; omitted pairs are zero.
    pub bracket: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub pair: [String; 2],
    pub value: String,
}

pub fn minimal_w_document(data: &MinimalWData) -> MinimalWDocument {
    let g0 = data.g0.names().to_vec();
    let mut g0_brackets = Vec::new();
    for a in 0..g0.len() {
        for b in a + 1..g0.len() {
            let v = data.g0.bracket(a, b);
            if v.iter().any(|c| !c.is_zero()) {
                g0_brackets.push(BracketEntry { pair: [g0[a].clone(), g0[b].clone()], value: format_poly(&g0, &linear_poly(&v)) });
            }
        }
    }
    let action = g0
        .iter()
        .zip(&data.action)
        .map(|(name, m)| {
            let rows = (0..m.rows()).map(|r| m.row(r).iter().map(format_rational).collect()).collect();
            (name.clone(), rows)
        })
        .collect();
    let mut base = g0.clone();
    base.push(data.central_name.clone());
    let mut bracket = Vec::new();
    for u in 0..data.dim1() {
        for v in u + 1..data.dim1() {
            let b = data.b(u, v);
            if !b.is_zero() {
                bracket.push(BracketEntry {
                    pair: [data.g1_names[u].clone(), data.g1_names[v].clone()],
                    value: format_poly(&base, &b),
                });
            }
        }
    }
    MinimalWDocument {
        label: data.label.clone(),
        g0,
        g0_brackets,
        g1: data.g1_names.clone(),
        action,
        central: data.central_name.clone(),
        bracket,
    }
}

fn position(names: &[String], name: &str, field: &str) -> Result<usize, DefError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| DefError::UnknownGenerator { name: name.to_string(), field: field.to_string() })
}

fn parse_value(names: &[String], text: &str, field: &str) -> Result<NCPoly, DefError> {
    parse_normal_form(names, text).map_err(|e| match e {
        crate::pbw::PbwError::UnknownGenerator(name) => DefError::UnknownGenerator { name, field: field.to_string() },
        other => DefError::Parse { location: format!("field `{field}`"), message: other.to_string() },
    })
}

/// Rebuilds the data; [`crate::algebras::build_minimal_w`] then validates it.
pub fn minimal_w_from_document(doc: &MinimalWDocument) -> Result<MinimalWData, DefError> {
    let n0 = doc.g0.len();
    let n1 = doc.g1.len();
    let mut g0 = StructureConstants::zero(doc.g0.clone());
    for (k, e) in doc.g0_brackets.iter().enumerate() {
        let field = format!("g0_brackets[{k}]");
        let a = position(&doc.g0, &e.pair[0], &field)?;
        let b = position(&doc.g0, &e.pair[1], &field)?;
        let p = parse_value(&doc.g0, &e.value, &field)?;
        let mut v = vec![Rational::zero(); n0];
        for (m, c) in p.terms() {
            let i = match m.last_nonzero() {
                Some(i) if m.total() == crate::exact::HalfInt::ONE => i,
                _ => return Err(DefError::Parse { location: format!("field `{field}`"), message: "bracket must be linear".into() }),
            };
            v[i] = c.clone();
        }
        g0.set_bracket(a, b, &v);
    }
    let mut action = Vec::with_capacity(n0);
    for name in &doc.g0 {
        let field = format!("action.{name}");
        let rows = doc.action.get(name).ok_or_else(|| DefError::Parse { location: format!("field `{field}`"), message: "missing".into() })?;
        if rows.len() != n1 || rows.iter().any(|r| r.len() != n1) {
            return Err(DefError::Parse { location: format!("field `{field}`"), message: format!("expected a {n1}×{n1} matrix") });
        }
        let mut m = RationalMatrix::zeros(n1, n1);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                let x = parse_rational(s).map_err(|e| DefError::Parse { location: format!("field `{field}`"), message: e.to_string() })?;
                m.set(i, j, x);
            }
        }
        action.push(m);
    }
    if let Some(extra) = doc.action.keys().find(|k| !doc.g0.contains(k)) {
        return Err(DefError::UnknownGenerator { name: extra.clone(), field: "action".into() });
    }
    let mut base = doc.g0.clone();
    base.push(doc.central.clone());
    let mut bracket = BTreeMap::new();
    for (k, e) in doc.bracket.iter().enumerate() {
        let field = format!("bracket[{k}]");
        let u = position(&doc.g1, &e.pair[0], &field)?;
        let v = position(&doc.g1, &e.pair[1], &field)?;
        bracket.insert((u, v), parse_value(&base, &e.value, &field)?);
    }
    Ok(MinimalWData {
        label: doc.label.clone(),
        g0,
        g1_names: doc.g1.clone(),
        action,
        central_name: doc.central.clone(),
        bracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_minimal_w;
    use crate::whittaker::derive_walgebra;

    #[test]
    fn document_round_trip() {
        let d = derive_walgebra("sl3", 4).unwrap();
        let doc = minimal_w_document(&d.data);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: MinimalWDocument = serde_json::from_str(&text).unwrap();
        let data = minimal_w_from_document(&back).unwrap();
        assert_eq!(minimal_w_document(&data), doc);
        let w = build_minimal_w(&data, 4).unwrap();
        assert_eq!(w.presentation.ngens(), 4);
    }
}
