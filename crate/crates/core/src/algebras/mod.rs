//! Concrete algebras: Weyl algebras, enveloping algebras, tensor products and
//! minimal W-algebras built from bracket data.

mod lie;
mod minimal_w;
mod weyl;

use thiserror::Error;

use crate::exact::rat;
use crate::pbw::{Monomial, NCPoly, PbwError, Presentation};

pub use lie::{
    build_enveloping, build_enveloping_unchecked, build_sl2, commutator_matrix, linear_poly, matrix_from_entries, sl2_constants, sln_basis,
    sln_constants, unit_matrix, MatrixCoordinates, StructureConstants,
};
pub use minimal_w::{build_minimal_w, MinimalW, MinimalWData};
pub use weyl::{build_weyl, build_weyl_localized, WeylConvention};

#[derive(Debug, Error)]
pub enum AlgError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("bracket [{left}, {right}] is not antisymmetric")]
    AntisymmetryViolation { left: String, right: String },
    #[error("Jacobi identity fails on ({}, {}, {}): cyclic sum = {sum}", triple[0], triple[1], triple[2])]
    JacobiViolation { triple: [String; 3], sum: String },
    #[error("g(1) is not a representation of g(0): failure on [{left}, {right}]")]
    RepresentationViolation { left: String, right: String },
    #[error("bracket is not g(0)-equivariant at x = {x}, u = {u}, v = {v}: residual {residual}")]
    EquivarianceViolation { x: String, u: String, v: String, residual: String },
    #[error("presentation is not consistent: word {word:?} has defect {defect}")]
    ConsistencyFailure { word: Vec<String>, defect: String },
    #[error("tensor product would have two localized generators")]
    TwoLocalizedGenerators,
    #[error("not an sl2-triple: {0}")]
    NotSl2Triple(String),
    #[error("{0}")]
    BadData(String),
}

/// Tensor product `P ⊗ Q`: generators of `P` then generators of `Q`, factors
/// commuting. Only `Q` may carry a localized generator (it stays last).
pub fn tensor(p: &Presentation, q: &Presentation) -> Result<Presentation, AlgError> {
    if p.localized().is_some() {
        return Err(AlgError::TwoLocalizedGenerators);
    }
    let (np, nq) = (p.ngens(), q.ngens());
    let mut names = p.names().to_vec();
    names.extend_from_slice(q.names());
    let mut weights = p.weights().to_vec();
    weights.extend_from_slice(q.weights());
    let mut rules = Vec::new();
    for ((j, i), r) in p.rules() {
        rules.push(((j, i), r.map_monomials(|m| m.widen(np, nq))));
    }
    for ((j, i), r) in q.rules() {
        rules.push(((j + np, i + np), r.map_monomials(|m| m.widen(0, np))));
    }
    let name = format!("{}⊗{}", p.name(), q.name());
    Ok(Presentation::new(name, names, weights, rules, q.localized())?)
}

/// Embeds a polynomial from the left factor of a tensor product.
pub fn embed_left(p: &NCPoly, right_len: usize) -> NCPoly {
    p.map_monomials(|m| {
        let n = m.len();
        m.widen(n, right_len)
    })
}

/// Embeds a polynomial from the right factor of a tensor product.
pub fn embed_right(q: &NCPoly, left_len: usize) -> NCPoly {
    q.map_monomials(|m| m.widen(0, left_len))
}

/// Elements `e, h, f` with `[h,e]=2e`, `[h,f]=−2f`, `[e,f]=h`.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: NCPoly,
    pub h: NCPoly,
    pub f: NCPoly,
}

impl Sl2Triple {
    pub fn validate(&self, a: &Presentation) -> Result<(), AlgError> {
        let two = rat(2);
        let checks = [
            ("[h,e] = 2e", a.commutator(&self.h, &self.e)?, self.e.scaled(&two)),
            ("[h,f] = -2f", a.commutator(&self.h, &self.f)?, self.f.scaled(&-two.clone())),
            ("[e,f] = h", a.commutator(&self.e, &self.f)?, self.h.clone()),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(AlgError::NotSl2Triple(format!("{what} fails: got {}", a.format(&got))));
            }
        }
        Ok(())
    }

    /// The standard triple of `U(sl2)` with generators `f, h, e`.
    pub fn standard(u: &Presentation) -> Result<Self, AlgError> {
        Ok(Sl2Triple { e: u.gen_named("e")?, h: u.gen_named("h")?, f: u.gen_named("f")? })
    }

    /// `h` as the monomial coordinates of a single generator, if it is one.
    pub fn h_generator(&self) -> Option<usize> {
        let (m, c) = self.h.leading()?;
        (self.h.len() == 1 && *c == rat(1) && m.total() == crate::exact::HalfInt::ONE)
            .then(|| m.last_nonzero())
            .flatten()
    }
}

/// The Casimir-type element `θ = 4fe + h² + 2h` of `U(sl2)`.
pub fn sl2_casimir(u: &Presentation) -> Result<NCPoly, AlgError> {
    Ok(u.parse("4*f*e + h^2 + 2*h")?)
}

/// A single monomial with natural exponents.
pub fn monomial_poly(exps: &[u32]) -> NCPoly {
    NCPoly::monomial(Monomial::from_naturals(exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::HalfInt;
    use crate::pbw::Lattice;

    #[test]
    fn sl2_basic_swap() {
        let u = build_sl2();
        let p = u.parse("e*f").unwrap();
        assert_eq!(u.format(&p), "f*e + h");
        let t = Sl2Triple::standard(&u).unwrap();
        t.validate(&u).unwrap();
    }

    #[test]
    fn casimir_is_central() {
        let u = build_sl2();
        let theta = sl2_casimir(&u).unwrap();
        for g in ["e", "f", "h"] {
            assert!(u.commutator(&theta, &u.gen_named(g).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn broken_jacobi_is_reported() {
        let mut c = StructureConstants::zero(vec!["a".into(), "b".into(), "c".into()]);
        let v = |x: i64, y: i64, z: i64| vec![rat(x), rat(y), rat(z)];
        c.set_bracket(0, 1, &v(0, 0, 1));
        c.set_bracket(1, 2, &v(1, 0, 0));
        c.set_bracket(2, 0, &v(1, 0, 0));
        match build_enveloping(&c, &[0, 1, 2]) {
            Err(AlgError::JacobiViolation { triple, sum }) => {
                assert_eq!(triple, ["a", "b", "c"]);
                assert_eq!(sum, "c");
            }
            other => panic!("expected a Jacobi violation, got {other:?}"),
        }
        let p = build_enveloping_unchecked(&c, &[0, 1, 2]).unwrap();
        let report = p.check_consistency(3).unwrap();
        assert!(!report.passed());
        let first = &report.failures[0];
        assert_eq!(first.word, ["c", "b", "a"]);
        assert!(first.defect == "c" || first.defect == "-c", "{}", first.defect);
    }

    #[test]
    fn lie_algebras_pass_consistency() {
        assert!(build_sl2().check_consistency(4).unwrap().passed());
        let u3 = build_enveloping(&sln_constants(3), &(0..8).collect::<Vec<_>>()).unwrap();
        let r = u3.check_consistency(3).unwrap();
        assert!(r.passed());
        assert_eq!(u3.ngens(), 8);
    }

    #[test]
    fn tensor_rejects_two_localized() {
        let a = build_weyl_localized(1, WeylConvention::SectionFiveWx, Lattice::Integer).unwrap();
        assert!(matches!(tensor(&a, &a), Err(AlgError::TwoLocalizedGenerators)));
    }

    #[test]
    fn tensor_factors_commute() {
        let y = build_weyl(1, WeylConvention::PaperWd);
        let x = build_weyl_localized(1, WeylConvention::SectionFiveWx, Lattice::Integer).unwrap();
        let t = tensor(&y, &x).unwrap();
        assert_eq!(t.names(), &["z1", "d1", "dx", "x"]);
        let z = t.gen_named("z1").unwrap();
        let xi = t.index("x").unwrap();
        let xinv = t.gen_pow(xi, HalfInt::from_int(-1)).unwrap();
        assert!(t.commutator(&z, &xinv).unwrap().is_zero());
    }
}
