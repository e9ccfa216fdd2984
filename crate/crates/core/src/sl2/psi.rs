use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{GradedCentralizerBasis, Sl2Error};
use crate::algebras::{AlgError, Sl2Triple};
use crate::exact::{format_rational, rat, HalfInt, Rational, RationalMatrix};
use crate::halfloc::{HatElement, LocalizationContext};
use crate::pbw::{MonomialIndex, NCPoly, Presentation};

/// `ψ(a) = a·t^{−i/2}` for an `ad h` eigenvector `a` of weight `i` commuting
/// with `e`. Returns the image and the weight.
pub fn psi(a: &NCPoly, triple: &Sl2Triple, ctx: &LocalizationContext) -> Result<(HatElement, i64), Sl2Error> {
    let p = ctx.base();
    if !p.commutator(&triple.e, a)?.is_zero() {
        return Err(Sl2Error::NotInCentralizer { element: p.format(a) });
    }
    let weight = eigenvalue(p, &triple.h, a)?;
    Ok((HatElement::single(a.clone(), HalfInt::from_doubled(-weight)), weight))
}

fn eigenvalue(p: &Presentation, h: &NCPoly, a: &NCPoly) -> Result<i64, Sl2Error> {
    let not = || Sl2Error::NotEigenvector { element: p.format(a) };
    let image = p.commutator(h, a)?;
    let (m, c) = a.leading().ok_or_else(not)?;
    let lambda = image.coefficient(m) / c;
    if image != a.scaled(&lambda) || !lambda.is_integer() {
        return Err(not());
    }
    lambda.to_integer().try_into().map_err(|_| not())
}

/// Outcome of an exact linear-independence test in `H[e^{−1/2}]`.
#[derive(Clone, Debug, Serialize)]
pub struct IndependenceResult {
    pub size: usize,
    pub rank: usize,
    pub independent: bool,
    /// A vanishing combination, when dependent.
    pub witness: Option<String>,
}

/// Folds every element with one common shift `t^N` and compares the base
/// components by exact rank.
pub fn check_independence(ctx: &LocalizationContext, family: &[(String, HatElement)]) -> Result<IndependenceResult, Sl2Error> {
    let shift = family.iter().map(|(_, x)| LocalizationContext::shift_for(x)).max().unwrap_or(0);
    let mut folded = Vec::with_capacity(family.len());
    let mut index = MonomialIndex::default();
    for (_, x) in family {
        let (w, h) = ctx.fold_at(x, shift)?;
        index.extend_from(&w);
        index.extend_from(&h);
        folded.push((w, h));
    }
    let columns: Vec<Vec<Rational>> = folded
        .iter()
        .map(|(w, h)| {
            let mut v = index.vector(w).expect("indexed");
            v.extend(index.vector(h).expect("indexed"));
            v
        })
        .collect();
    let m = RationalMatrix::from_columns(&columns, 2 * index.len());
    let rank = m.rank();
    let witness = m.kernel_basis().into_iter().next().map(|v| {
        let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero kernel vector");
        let mut out = String::new();
        for (c, (label, _)) in v.iter().zip(family) {
            if c.is_zero() {
                continue;
            }
            let c = c / &lead;
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = if c.abs().is_one() { label.clone() } else { format!("{}*{}", format_rational(&c.abs()), label) };
            if out.is_empty() {
                out = if sign == "-" { format!("-{body}") } else { body };
            } else {
                out = format!("{out} {sign} {body}");
            }
        }
        out
    });
    Ok(IndependenceResult { size: family.len(), rank, independent: rank == family.len(), witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub max_i: u32,
    pub max_j: u32,
    pub centralizer_degree: u32,
    /// ψ images kept as an independent generating set.
    pub kept: Vec<String>,
    /// ψ images dependent on earlier ones (e.g. ψ(e) ≡ 1).
    pub dropped: Vec<String>,
    pub result: IndependenceResult,
}

/// Checks that `{t^{i/2} hʲ ψ(a_k)}` (`i ≤ max_i`, `j ≤ max_j`, `a_k` running
/// over an independent subset of the ψ-images of `basis`) is linearly
/// independent in `H[e^{−1/2}]`.
pub fn gamma_independence(
    ctx: &LocalizationContext,
    triple: &Sl2Triple,
    basis: &GradedCentralizerBasis,
    max_i: u32,
    max_j: u32,
) -> Result<IndependenceReport, Sl2Error> {
    let p = ctx.base();
    let mut kept: Vec<(String, HatElement)> = Vec::new();
    let mut dropped = Vec::new();
    for c in basis.elements() {
        let (img, _) = psi(&c.element, triple, ctx)?;
        let label = format!("psi({})", p.format(&c.element));
        let mut trial = kept.clone();
        trial.push((label.clone(), img));
        if check_independence(ctx, &trial)?.independent {
            kept = trial;
        } else {
            dropped.push(label);
        }
    }
    let mut family = Vec::new();
    for i in 0..=max_i {
        let ti = ctx.t_power(HalfInt::from_doubled(i64::from(i)));
        for j in 0..=max_j {
            let hj = HatElement::base(p.pow(&triple.h, j)?);
            for (label, a) in &kept {
                let x = ctx.multiply_all([&ti, &hj, a])?;
                family.push((format!("t^{}/2*h^{}*{}", i, j, label), x));
            }
        }
    }
    let result = check_independence(ctx, &family)?;
    Ok(IndependenceReport {
        max_i,
        max_j,
        centralizer_degree: basis.degree,
        kept: kept.into_iter().map(|(l, _)| l).collect(),
        dropped,
        result,
    })
}

/// `t^{−1} p(h) t ≡ p(h + 2)` for `p(X) = Σ coeffs[k] X^k`.
pub fn shift_identity_check(coeffs: &[Rational], triple: &Sl2Triple, ctx: &LocalizationContext) -> Result<bool, Sl2Error> {
    let p = ctx.base();
    let mut ph = NCPoly::zero();
    let mut shifted = NCPoly::zero();
    let h_plus_2 = &triple.h + &p.constant(rat(2));
    for (k, c) in coeffs.iter().enumerate() {
        ph.add_scaled(&p.pow(&triple.h, k as u32)?, c);
        shifted.add_scaled(&p.pow(&h_plus_2, k as u32)?, c);
    }
    let lhs = ctx.multiply_all([
        &ctx.t_power(HalfInt::from_int(-1)),
        &HatElement::base(ph),
        &ctx.t_power(HalfInt::ONE),
    ])?;
    Ok(ctx.equal_mod_i(&lhs, &HatElement::base(shifted))?)
}

/// With `θ = h² + 2(ef + fe)`: checks `θ − h² − 2h − 4fe = 0` and
/// `f ≡ ¼(θ − h² − 2h)·e^{−1}`.
pub fn casimir_f_identity(triple: &Sl2Triple, ctx: &LocalizationContext) -> Result<bool, Sl2Error> {
    let p = ctx.base();
    triple.validate(p)?;
    if &triple.e != ctx.e() {
        return Err(AlgError::NotSl2Triple("localization element differs from e".into()).into());
    }
    let (e, h, f) = (&triple.e, &triple.h, &triple.f);
    let hh = p.mul(h, h)?;
    let ef = p.mul(e, f)?;
    let fe = p.mul(f, e)?;
    let theta = &hh + &(&ef + &fe).scaled(&rat(2));
    let rest = &(&theta - &hh) - &h.scaled(&rat(2));
    let exact = (&rest - &fe.scaled(&rat(4))).is_zero();
    let rhs = HatElement::single(rest.scaled(&Rational::new(1.into(), 4.into())), HalfInt::from_int(-1));
    let localized = ctx.equal_mod_i(&HatElement::base(f.clone()), &rhs)?;
    Ok(exact && localized)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiMultiplicativity {
    pub degree: u32,
    pub pairs_checked: usize,
    /// `ψ(ab) ≡ ψ(a)ψ(b)` for every pair with `deg a + deg b ≤ degree`.
    pub multiplicative: bool,
    /// Every `ψ(a)` commutes with `e` and `h` in `H[e^{−1/2}]`.
    pub commutes_with_e_h: bool,
    pub failures: Vec<String>,
}

pub fn psi_multiplicative_check(
    ctx: &LocalizationContext,
    triple: &Sl2Triple,
    basis: &GradedCentralizerBasis,
) -> Result<PsiMultiplicativity, Sl2Error> {
    let p = ctx.base();
    let elements: Vec<_> = basis.elements().collect();
    let images: Vec<HatElement> =
        elements.iter().map(|c| psi(&c.element, triple, ctx).map(|r| r.0)).collect::<Result<_, _>>()?;
    let e_hat = HatElement::base(triple.e.clone());
    let h_hat = HatElement::base(triple.h.clone());
    let mut failures = Vec::new();
    let mut commutes = true;
    for (c, img) in elements.iter().zip(&images) {
        for x in [&e_hat, &h_hat] {
            if !ctx.is_zero_mod_i(&ctx.commutator(x, img)?)? {
                commutes = false;
                failures.push(format!("psi({}) does not commute with {}", p.format(&c.element), ctx.format(x)));
            }
        }
    }
    let mut pairs = 0;
    let mut multiplicative = true;
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if a.degree + b.degree > basis.degree {
                continue;
            }
            pairs += 1;
            let ab = p.mul(&a.element, &b.element)?;
            let (psi_ab, _) = psi(&ab, triple, ctx)?;
            if !ctx.equal_mod_i(&psi_ab, &ctx.multiply(&images[i], &images[j])?)? {
                multiplicative = false;
                failures.push(format!("psi({} * {})", p.format(&a.element), p.format(&b.element)));
            }
        }
    }
    Ok(PsiMultiplicativity { degree: basis.degree, pairs_checked: pairs, multiplicative, commutes_with_e_h: commutes, failures })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebras::build_sl2;
    use crate::sl2::centralizer_basis;

    fn setup() -> (Arc<Presentation>, Sl2Triple, LocalizationContext) {
        let u = Arc::new(build_sl2());
        let t = Sl2Triple::standard(&u).unwrap();
        let ctx = LocalizationContext::new(u.clone(), t.e.clone()).unwrap();
        (u, t, ctx)
    }

    #[test]
    fn psi_examples() {
        let (u, t, ctx) = setup();
        let theta = u.parse("4*f*e + h^2 + 2*h").unwrap();
        let (img, w) = psi(&theta, &t, &ctx).unwrap();
        assert_eq!(w, 0);
        assert_eq!(img, HatElement::base(theta));
        let one = HatElement::base(u.one());
        for k in 1..=2 {
            let ek = u.pow(&t.e, k).unwrap();
            let (img, w) = psi(&ek, &t, &ctx).unwrap();
            assert_eq!(w, 2 * i64::from(k));
            assert!(ctx.equal_mod_i(&img, &one).unwrap());
        }
        assert!(matches!(psi(&t.h, &t, &ctx), Err(Sl2Error::NotInCentralizer { .. })));
        let mixed = &t.e + &u.one();
        assert!(matches!(psi(&mixed, &t, &ctx), Err(Sl2Error::NotEigenvector { .. })));
    }

    #[test]
    fn independence_examples() {
        let (u, t, ctx) = setup();
        let one = HatElement::base(u.one());
        let single = check_independence(&ctx, &[("1".into(), one.clone())]).unwrap();
        assert!(single.independent);
        let (pe, _) = psi(&t.e, &t, &ctx).unwrap();
        let pair = check_independence(&ctx, &[("psi(e)".into(), pe), ("1".into(), one)]).unwrap();
        assert!(!pair.independent);
        assert_eq!(pair.witness.as_deref(), Some("psi(e) - 1"));
    }

    #[test]
    fn gamma_family_is_independent() {
        let (u, t, ctx) = setup();
        let basis = centralizer_basis(&u, &t, 4).unwrap();
        let r = gamma_independence(&ctx, &t, &basis, 3, 3).unwrap();
        assert!(r.result.independent, "{:?}", r.result.witness);
        assert!(r.dropped.contains(&"psi(e)".to_string()));
    }

    #[test]
    fn psi_is_multiplicative() {
        let (u, t, ctx) = setup();
        let basis = centralizer_basis(&u, &t, 4).unwrap();
        let r = psi_multiplicative_check(&ctx, &t, &basis).unwrap();
        assert!(r.multiplicative && r.commutes_with_e_h, "{:?}", r.failures);
        assert!(r.pairs_checked > basis.len());
    }

    #[test]
    fn shift_identity() {
        let (_, t, ctx) = setup();
        for k in 0..=6 {
            let mut coeffs = vec![rat(0); k + 1];
            coeffs[k] = rat(1);
            assert!(shift_identity_check(&coeffs, &t, &ctx).unwrap(), "X^{k}");
        }
        let p = ctx.base();
        let lhs = ctx
            .multiply_all([&ctx.t_power(HalfInt::from_int(-1)), &HatElement::base(t.h.clone()), &ctx.t_power(HalfInt::ONE)])
            .unwrap();
        let want = HatElement::base(p.parse("h + 2").unwrap());
        assert!(ctx.equal_mod_i(&lhs, &want).unwrap());
    }

    #[test]
    fn casimir_identity_and_fake_triple() {
        let (u, t, ctx) = setup();
        assert!(casimir_f_identity(&t, &ctx).unwrap());
        let fake = Sl2Triple { e: t.e.clone(), h: t.h.clone(), f: u.parse("2*f").unwrap() };
        assert!(matches!(casimir_f_identity(&fake, &ctx), Err(Sl2Error::Alg(AlgError::NotSl2Triple(_)))));
    }
}
