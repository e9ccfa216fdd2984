//! Derivation of minimal W-algebra presentations from the Whittaker model:
//! the quotient `Q_χ`, its ad 𝔪-invariants by Kazhdan degree, the generators
//! `Θ_x`, `Θ_v`, `C`, and the bracket `[Θ_u, Θ_v]` written over `U(𝔤♮) ⊗ 𝔽[C]`.

mod data;
mod extract;
mod qchi;

use serde::Serialize;
use thiserror::Error;

use crate::algebras::{build_minimal_w, AlgError, MinimalW, MinimalWData};
use crate::check::Check;
use crate::pbw::PbwError;

pub use data::{minimal_nilpotent, GradingSummary, MinimalNilpotentData};
pub use extract::{derive_bracket, extract_generators, minimal_w_data, relation_checks, Extracted};
pub use qchi::{build_qchi, QChiBasis};

#[derive(Debug, Error)]
pub enum WhittakerError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("not a minimal nilpotent: dim g(2) = {dim_top}")]
    NotMinimalOrbit { dim_top: usize },
    #[error("no Lagrangian subspace found in g(-1)")]
    NotLagrangian,
    #[error("{0}")]
    BadBasis(String),
    #[error("unsupported Lie algebra {name} (supported: sl3, sl4, sp4)")]
    Unsupported { name: String },
    #[error("Kazhdan degree {degree} is too low to reach the Casimir generator (need 4)")]
    DegreeTooLowForC { degree: u32 },
    #[error("not expressible: {what}")]
    NotExpressible { what: String },
}

/// Everything the oracle derives for one Lie algebra.
#[derive(Debug, Serialize)]
pub struct DerivedW {
    pub grading: GradingSummary,
    pub generator_count: usize,
    pub expected_generator_count: usize,
    pub invariant_dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub new_per_degree: Vec<usize>,
    /// Representatives in `U(𝔤)`, complement-of-𝔪 PBW order.
    pub representatives: Vec<(String, String)>,
    /// Largest degree of a bracket value, counting `𝔤♮` as 1 and `C` as 2.
    pub bracket_degree: u32,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub data: MinimalWData,
}

pub fn derive_walgebra(name: &str, degree: u32) -> Result<DerivedW, WhittakerError> {
    let nil = minimal_nilpotent(name)?;
    let degree = degree.max(4);
    let q = build_qchi(&nil, degree)?;
    let ex = extract_generators(&q, 4)?;
    let mut checks = relation_checks(&q, &ex)?;
    let (data, more) = minimal_w_data(&q, &ex)?;
    checks.extend(more);
    let expected = nil.part(0).len() - 1 + nil.part(1).len() + 1;
    checks.push(Check::equal("generator count", ex.count().to_string(), expected.to_string()));
    checks.push(Check::new(
        "invariant dimensions match the polynomial count",
        ex.invariant_dims == ex.expected_dims,
        format!("{:?} vs {:?}", ex.invariant_dims, ex.expected_dims),
    ));
    let mut representatives: Vec<(String, String)> = Vec::new();
    for (n, t) in nil.natural_names.iter().zip(&ex.natural) {
        representatives.push((n.clone(), q.format(t)));
    }
    for (n, t) in nil.g1_names.iter().zip(&ex.g1) {
        representatives.push((n.clone(), q.format(t)));
    }
    representatives.push(("C".into(), q.format(&ex.casimir)));
    let mut weights = vec![1u32; data.dim0()];
    weights.push(2);
    let bracket_degree = data
        .bracket
        .values()
        .filter_map(|p| p.weighted_degree(&weights))
        .map(|d| d.to_natural().unwrap_or(0) as u32)
        .max()
        .unwrap_or(0);
    Ok(DerivedW {
        grading: nil.summary(),
        generator_count: ex.count(),
        expected_generator_count: expected,
        invariant_dims: ex.invariant_dims.clone(),
        expected_dims: ex.expected_dims.clone(),
        new_per_degree: ex.new_per_degree.clone(),
        representatives,
        bracket_degree,
        checks,
        data,
    })
}

/// Builds and consistency-checks the presentation for derived data.
pub fn derived_presentation(derived: &DerivedW, consistency_degree: u32) -> Result<MinimalW, WhittakerError> {
    Ok(build_minimal_w(&derived.data, consistency_degree)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradings() {
        let sl3 = minimal_nilpotent("sl3").unwrap().summary();
        assert_eq!(sl3.dims, [1, 2, 2, 2, 1]);
        let sp4 = minimal_nilpotent("sp4").unwrap().summary();
        assert_eq!(sp4.dims, [1, 2, 4, 2, 1]);
        let sl4 = minimal_nilpotent("sl4").unwrap().summary();
        assert_eq!(sl4.dims, [1, 4, 5, 4, 1]);
        assert!(matches!(minimal_nilpotent("g2"), Err(WhittakerError::Unsupported { .. })));
    }

    #[test]
    fn qchi_sizes() {
        let q = build_qchi(&minimal_nilpotent("sl3").unwrap(), 4).unwrap();
        assert_eq!(q.complement_len, 6);
        assert_eq!(q.monomials_of_length(1), 6);
        assert_eq!(q.dims()[0], 1);
        let q = build_qchi(&minimal_nilpotent("sp4").unwrap(), 2).unwrap();
        assert_eq!(q.complement_len, 8);
        assert!(matches!(extract_generators(&q, 4), Err(WhittakerError::DegreeTooLowForC { .. })));
    }

    #[test]
    fn sl3_derivation() {
        let d = derive_walgebra("sl3", 4).unwrap();
        for c in &d.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(d.generator_count, 4);
        assert!(d.bracket_degree <= 2);
        let w = derived_presentation(&d, 4).unwrap();
        assert_eq!(w.presentation.ngens(), 4);
    }

    #[test]
    fn sp4_derivation() {
        let d = derive_walgebra("sp4", 4).unwrap();
        for c in &d.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(d.generator_count, 6);
        derived_presentation(&d, 4).unwrap();
    }

    #[test]
    fn sl4_derivation() {
        let d = derive_walgebra("sl4", 4).unwrap();
        for c in &d.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(d.generator_count, 9);
        assert_eq!(d.expected_generator_count, 9);
        assert!(d.bracket_degree <= 2);
        derived_presentation(&d, 4).unwrap();
    }
}
