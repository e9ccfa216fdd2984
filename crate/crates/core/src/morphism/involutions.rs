use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use super::{extend_morphism, GenMorphism, MorphError};
use crate::algebras::{build_weyl, build_weyl_localized, MinimalW, WeylConvention};
use crate::exact::{rat, Rational};
use crate::pbw::{Lattice, NCPoly, Presentation};

/// The map negating every generator listed in `negate` and fixing the rest.
pub fn sign_involution(
    name: impl Into<String>,
    p: Arc<Presentation>,
    negate: &[usize],
) -> Result<GenMorphism, MorphError> {
    let images = (0..p.ngens())
        .map(|i| if negate.contains(&i) { p.gen(i).scaled(&-Rational::one()) } else { p.gen(i) })
        .collect();
    let m = extend_morphism(name, images, p.clone(), p)?;
    let inverse = m.images().to_vec();
    m.with_inverse(inverse)
}

/// `τ(z_i) = −z_i, τ(∂_i) = −∂_i`.
pub fn tau(p: Arc<Presentation>) -> Result<GenMorphism, MorphError> {
    let all: Vec<usize> = (0..p.ngens()).collect();
    sign_involution("tau", p, &all)
}

/// The isomorphism `z_i ↦ x_i, ∂_i ↦ −∂x_i` between the two Weyl sign
/// conventions.
pub fn convention_swap(d: usize) -> Result<GenMorphism, MorphError> {
    let source = Arc::new(build_weyl(d, WeylConvention::PaperWd));
    let target = Arc::new(build_weyl(d, WeylConvention::SectionFiveWx));
    let images = (0..2 * d)
        .map(|i| if i < d { target.gen(i) } else { target.gen(i).scaled(&rat(-1)) })
        .collect();
    let m = extend_morphism("convention-swap", images, source.clone(), target.clone())?;
    let inverse = (0..2 * d)
        .map(|i| if i < d { source.gen(i) } else { source.gen(i).scaled(&rat(-1)) })
        .collect();
    m.with_inverse(inverse)
}

/// The birational change of variables on `W_d` with `z_d` inverted, its
/// inverse, `τ`, and the expected conjugate `τ′` (negating only `z_d, ∂_d`).
pub struct BirationalPair {
    pub algebra: Arc<Presentation>,
    pub phi: GenMorphism,
    pub tau: GenMorphism,
    pub tau_prime: GenMorphism,
}

pub fn birational_pair(d: usize) -> Result<BirationalPair, MorphError> {
    assert!(d >= 2, "the substitution needs at least two pairs");
    let w = Arc::new(build_weyl_localized(d, WeylConvention::PaperWd, Lattice::Integer).expect("Weyl algebra"));
    let euler: String = (1..d).map(|i| format!(" + z{d}^-1*z{i}*d{i}")).collect();
    let euler_neg = euler.replace(" + ", " - ");
    let mut fwd = Vec::new();
    let mut back = Vec::new();
    for name in w.names() {
        let (f, b) = match name.as_str() {
            n if n == format!("z{d}") => (n.to_string(), n.to_string()),
            n if n == format!("d{d}") => (format!("{n}{euler}"), format!("{n}{euler_neg}")),
            n if n.starts_with('z') => (format!("{n}*z{d}^-1"), format!("{n}*z{d}")),
            n => (format!("z{d}*{n}"), format!("z{d}^-1*{n}")),
        };
        fwd.push(w.parse(&f)?);
        back.push(w.parse(&b)?);
    }
    let phi = extend_morphism("phi", fwd, w.clone(), w.clone())?.with_inverse(back)?;
    let tau = tau(w.clone())?;
    let last_pair = [w.index(&format!("z{d}"))?, w.index(&format!("d{d}"))?];
    let tau_prime = sign_involution("tau'", w.clone(), &last_pair)?;
    Ok(BirationalPair { algebra: w, phi, tau, tau_prime })
}

#[derive(Clone, Debug)]
pub struct Conjugation {
    pub morphism: GenMorphism,
    pub matches_expected: Option<bool>,
}

/// `φ ∘ τ ∘ φ^{−1}`, re-certified, and compared on generators with
/// `expected` when given.
pub fn conjugate_involution(
    phi: &GenMorphism,
    tau: &GenMorphism,
    expected: Option<&GenMorphism>,
) -> Result<Conjugation, MorphError> {
    let inv = phi.inverse().ok_or_else(|| MorphError::MissingInverse { morphism: phi.name.clone() })?;
    let composite = inv.then(tau)?.then(phi)?;
    let name = format!("{}∘{}∘{}", phi.name, tau.name, inv.name);
    let morphism = extend_morphism(name, composite.images().to_vec(), composite.source().clone(), composite.target().clone())?;
    let matches_expected = expected.map(|e| e.images() == morphism.images());
    Ok(Conjugation { morphism, matches_expected })
}

/// σ on a minimal W-algebra: fixes 𝔤(0) and `C`, negates 𝔤(1).
pub fn minimal_w_sigma(w: &MinimalW, algebra: Arc<Presentation>) -> Result<GenMorphism, MorphError> {
    let negate: Vec<usize> = (0..w.dim1).map(|v| w.g1_index(v)).collect();
    sign_involution("sigma", algebra, &negate)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylPairResult {
    pub commutator: String,
    /// `ab − ba = −1`.
    pub minus_one_convention: bool,
    /// `ab − ba = +1` (flagged: opposite sign convention).
    pub plus_one_convention: bool,
    pub fixed_by_group: bool,
    pub holds: bool,
}

/// Checks `ab − ba = ∓1` and that every group element fixes `a` and `b`.
pub fn verify_weyl_pair(
    p: &Presentation,
    a: &NCPoly,
    b: &NCPoly,
    group: &super::AutoGroup,
) -> Result<WeylPairResult, MorphError> {
    let c = p.commutator(a, b)?;
    let minus = c == p.constant(rat(-1));
    let plus = c == p.one();
    let mut fixed = true;
    for g in group.elements() {
        fixed &= &g.apply(a)? == a && &g.apply(b)? == b;
    }
    Ok(WeylPairResult {
        commutator: p.format(&c),
        minus_one_convention: minus,
        plus_one_convention: plus,
        fixed_by_group: fixed,
        holds: (minus || plus) && fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_is_an_involution() {
        let w = Arc::new(build_weyl(3, WeylConvention::PaperWd));
        let t = tau(w).unwrap();
        assert!(t.then(&t).unwrap().is_identity());
        assert_eq!(t.relations_checked(), 15);
    }

    #[test]
    fn relation_violation_is_reported() {
        let w = Arc::new(build_weyl(1, WeylConvention::PaperWd));
        let images = vec![w.gen(0), w.parse("z1*d1").unwrap()];
        match extend_morphism("bad", images, w.clone(), w) {
            Err(MorphError::RelationViolated { failures, .. }) => {
                assert_eq!(failures.len(), 1);
                assert_eq!((failures[0].left.as_str(), failures[0].right.as_str()), ("d1", "z1"));
            }
            other => panic!("expected RelationViolated, got {other:?}"),
        }
    }

    #[test]
    fn conventions_are_isomorphic() {
        let m = convention_swap(2).unwrap();
        assert!(m.inverse().is_some());
    }

    #[test]
    fn birational_conjugation() {
        for d in 2..=3 {
            let b = birational_pair(d).unwrap();
            let c = conjugate_involution(&b.phi, &b.tau, Some(&b.tau_prime)).unwrap();
            assert_eq!(c.matches_expected, Some(true), "d = {d}");
            // back along φ^{-1} recovers τ
            let inv = b.phi.inverse().unwrap();
            let back = conjugate_involution(&inv, &c.morphism, Some(&b.tau)).unwrap();
            assert_eq!(back.matches_expected, Some(true));
        }
        let b = birational_pair(2).unwrap();
        let w = &b.algebra;
        assert_eq!(b.phi.image(w.index("d2").unwrap()), &w.parse("d2 + z2^-1*z1*d1").unwrap());
        let id = GenMorphism::identity(w.clone());
        let c = conjugate_involution(&id, &b.tau, Some(&b.tau)).unwrap();
        assert_eq!(c.matches_expected, Some(true));
        let c = conjugate_involution(&b.phi, &id, Some(&id)).unwrap();
        assert_eq!(c.matches_expected, Some(true));
    }
}
