//! Centralizers of `e` graded by `ad h`, the map `ψ` into `H[e^{−1/2}]`, and
//! the identities linking them.

mod psi;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebras::{AlgError, Sl2Triple};
use crate::exact::{rat, RationalMatrix};
use crate::halfloc::HalfLocError;
use crate::pbw::{MonomialIndex, NCPoly, PbwError, Presentation};

pub use psi::{
    casimir_f_identity, check_independence, gamma_independence, psi, psi_multiplicative_check, shift_identity_check,
    IndependenceReport, IndependenceResult, PsiMultiplicativity,
};

#[derive(Debug, Error)]
pub enum Sl2Error {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    HalfLoc(#[from] HalfLocError),
    #[error("ad h is not semisimple with integer eigenvalues on the degree-{degree} centralizer: {witness}")]
    NonSemisimpleH { degree: u32, witness: String },
    #[error("{element} is not an ad h eigenvector")]
    NotEigenvector { element: String },
    #[error("{element} does not commute with e")]
    NotInCentralizer { element: String },
}

/// One basis vector of the centralizer.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralizerElement {
    pub element: NCPoly,
    /// ad h eigenvalue.
    pub weight: i64,
    /// PBW length of the leading monomial.
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub struct GradedCentralizerBasis {
    pub degree: u32,
    /// `levels[d]`: basis elements first appearing in filtration degree `d`.
    pub levels: Vec<Vec<CentralizerElement>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerSummary {
    pub degree: u32,
    pub elements: Vec<(String, i64)>,
    pub dimensions: Vec<usize>,
    pub weights_nonnegative: bool,
}

impl GradedCentralizerBasis {
    pub fn elements(&self) -> impl Iterator<Item = &CentralizerElement> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights_nonnegative(&self) -> bool {
        self.elements().all(|c| c.weight >= 0)
    }

    pub fn summary(&self, p: &Presentation) -> CentralizerSummary {
        CentralizerSummary {
            degree: self.degree,
            elements: self.elements().map(|c| (p.format(&c.element), c.weight)).collect(),
            dimensions: (0..self.levels.len()).map(|d| self.levels[..=d].iter().map(Vec::len).sum()).collect(),
            weights_nonnegative: self.weights_nonnegative(),
        }
    }
}

/// Matrix of `ad x` from the span of `domain` into coordinates over `codomain`
/// (which is extended as needed).
fn ad_matrix(
    p: &Presentation,
    x: &NCPoly,
    domain: &MonomialIndex,
    codomain: &mut MonomialIndex,
) -> Result<RationalMatrix, PbwError> {
    let images: Vec<NCPoly> = domain
        .monomials()
        .iter()
        .map(|m| p.commutator(x, &NCPoly::monomial(m.clone())))
        .collect::<Result<_, _>>()?;
    for img in &images {
        codomain.extend_from(img);
    }
    let cols: Vec<Vec<_>> = images.iter().map(|img| codomain.vector(img).expect("indexed")).collect();
    Ok(RationalMatrix::from_columns(&cols, codomain.len()))
}

/// Basis of `{x ∈ F_degree : [e, x] = 0}`, split into `ad h` eigenspaces,
/// each reduced so leading monomials are distinct, with primitive integer
/// coefficients and positive leading coefficient.
pub fn centralizer_basis(p: &Presentation, triple: &Sl2Triple, degree: u32) -> Result<GradedCentralizerBasis, Sl2Error> {
    triple.validate(p)?;
    let domain = MonomialIndex::new(p.monomials_up_to(degree)).sorted_descending();
    let mut codomain = MonomialIndex::default();
    let ad_e = ad_matrix(p, &triple.e, &domain, &mut codomain)?;
    let kernel = ad_e.kernel_basis();

    // ad h restricted to the kernel, in kernel coordinates
    let kernel_cols = RationalMatrix::from_columns(&kernel, domain.len());
    let mut hcod = domain.clone();
    let ad_h = ad_matrix(p, &triple.h, &domain, &mut hcod)?;
    if hcod.len() != domain.len() {
        return Err(Sl2Error::NonSemisimpleH {
            degree,
            witness: "ad h does not preserve the filtered piece".into(),
        });
    }
    let k = kernel.len();
    let mut restricted = RationalMatrix::zeros(k, k);
    for (c, v) in kernel.iter().enumerate() {
        let image = ad_h.mul_vec(v);
        let coords = kernel_cols.solve(&image).ok_or_else(|| Sl2Error::NonSemisimpleH {
            degree,
            witness: "ad h does not preserve the centralizer".into(),
        })?;
        for (r, x) in coords.into_iter().enumerate() {
            restricted.set(r, c, x);
        }
    }

    let bound = eigenvalue_bound(p, triple)? * i64::from(degree.max(1));
    let mut found = 0;
    let mut elements = Vec::new();
    for lambda in -bound..=bound {
        let mut shifted = restricted.clone();
        for i in 0..k {
            let v = shifted.get(i, i) - rat(lambda);
            shifted.set(i, i, v);
        }
        let eig = shifted.kernel_basis();
        if eig.is_empty() {
            continue;
        }
        found += eig.len();
        let vectors: Vec<Vec<_>> = eig.iter().map(|c| kernel_cols.mul_vec(c)).collect();
        let ech = RationalMatrix::from_rows(vectors, domain.len()).echelon();
        for (row, &pivot) in ech.rows.iter().zip(&ech.pivots) {
            let element = domain.poly_from_integers(&normalize_sign(row));
            let degree = domain.monomials()[pivot].total().to_natural().expect("natural") as u32;
            elements.push(CentralizerElement { element, weight: lambda, degree });
        }
    }
    if found != k {
        return Err(Sl2Error::NonSemisimpleH {
            degree,
            witness: format!("integer eigenspaces have total dimension {found}, centralizer has {k}"),
        });
    }
    elements.sort_by(|a, b| {
        let la = a.element.leading().map(|(m, _)| m.clone());
        let lb = b.element.leading().map(|(m, _)| m.clone());
        la.cmp(&lb)
    });
    let mut levels = vec![Vec::new(); degree as usize + 1];
    for c in elements {
        levels[c.degree as usize].push(c);
    }
    Ok(GradedCentralizerBasis { degree, levels })
}

fn normalize_sign(row: &[BigInt]) -> Vec<BigInt> {
    match row.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => row.iter().map(|x| -x).collect(),
        _ => row.to_vec(),
    }
}

/// Largest |eigenvalue| of `ad h` on the span of the generators, found by
/// scanning integers; errors if that span does not decompose.
fn eigenvalue_bound(p: &Presentation, triple: &Sl2Triple) -> Result<i64, Sl2Error> {
    let domain = MonomialIndex::new(p.monomials_up_to(1));
    let mut cod = domain.clone();
    let ad_h = ad_matrix(p, &triple.h, &domain, &mut cod)?;
    if cod.len() != domain.len() {
        return Err(Sl2Error::NonSemisimpleH { degree: 1, witness: "ad h leaves the generator span".into() });
    }
    let n = domain.len();
    let mut total = 0;
    let mut max = 0;
    for lambda in -64..=64i64 {
        let mut m = ad_h.clone();
        for i in 0..n {
            let v = m.get(i, i) - rat(lambda);
            m.set(i, i, v);
        }
        let d = n - m.rank();
        if d > 0 {
            total += d;
            max = max.max(lambda.abs());
        }
    }
    if total != n {
        return Err(Sl2Error::NonSemisimpleH {
            degree: 1,
            witness: format!("integer eigenspaces on generators have total dimension {total} of {n}"),
        });
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_sl2;

    #[test]
    fn sl2_centralizer_degree_two() {
        let u = build_sl2();
        let t = Sl2Triple::standard(&u).unwrap();
        let b = centralizer_basis(&u, &t, 2).unwrap();
        let got: Vec<(String, i64)> = b.elements().map(|c| (u.format(&c.element), c.weight)).collect();
        let want = [("1", 0), ("e", 2), ("e^2", 4), ("4*f*e + h^2 + 2*h", 0)];
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert_eq!((g.0.as_str(), g.1), w);
        }
        for c in b.elements() {
            assert!(u.commutator(&t.e, &c.element).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_zero_is_scalars() {
        let u = build_sl2();
        let t = Sl2Triple::standard(&u).unwrap();
        let b = centralizer_basis(&u, &t, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.levels[0][0].element, u.one());
    }
}
