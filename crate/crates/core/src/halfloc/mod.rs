//! The hat algebra `Ĥ = ⊕_{n∈½ℤ} H tⁿ` attached to a locally ad-nilpotent
//! element `e`, its ideal `I` generated by `e − t`, and the quotient
//! `H[e^{−1/2}] = Ĥ / I` with an equality test.

mod checks;
mod element;
mod ideal;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{gen_binomial, HalfInt, Rational};
use crate::morphism::{GenMorphism, MorphError};
use crate::pbw::{Monomial, NCPoly, PbwError, Presentation};

pub use checks::{
    associativity_check, ev_injectivity, random_base_element, random_hat_element, sigma_t_checks, AssociativityReport,
    InjectivityReport, SigmaTReport,
};
pub use element::HatElement;
pub use ideal::{verify_ideal_two_sided, IdealReport};

/// Limit on `(ad e)^r` chains for a single monomial.
const AD_CHAIN_LIMIT: usize = 4096;
const NILPOTENCY_BOUND: usize = 64;

/// The assumption behind the equality test, recorded in reports.
pub const NO_ZERO_DIVISORS: &str =
    "base algebra assumed to have no zero divisors (filtered presentation with PBW basis)";

#[derive(Debug, Error)]
pub enum HalfLocError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Morphism(#[from] MorphError),
    #[error("cannot localize at zero")]
    ZeroElement,
    #[error("ad e is not locally nilpotent: {0}")]
    NotLocallyNilpotent(PbwError),
    #[error("morphism {morphism} is not an endomorphism of the base algebra")]
    NotEndomorphism { morphism: String },
    #[error("automorphism does not fix e: e maps to {image}")]
    DoesNotFixE { image: String },
    #[error("ideal not preserved: image of {element} is not in I")]
    IdealNotPreserved { element: String },
    #[error("{0}")]
    Parse(String),
}

/// A base algebra together with the element `e` to invert.
#[derive(Debug)]
pub struct LocalizationContext {
    base: Arc<Presentation>,
    e: NCPoly,
    certificate: Vec<usize>,
    ad_cache: Mutex<HashMap<Monomial, Arc<Vec<NCPoly>>>>,
    e_powers: Mutex<Vec<NCPoly>>,
}

impl LocalizationContext {
    pub fn new(base: Arc<Presentation>, e: NCPoly) -> Result<Self, HalfLocError> {
        if e.is_zero() {
            return Err(HalfLocError::ZeroElement);
        }
        base.check_poly(&e)?;
        let certificate = match base.ad_nilpotency_order(&e, NILPOTENCY_BOUND) {
            Ok(c) => c,
            Err(err @ PbwError::NotNilpotent { .. }) => return Err(HalfLocError::NotLocallyNilpotent(err)),
            Err(err) => return Err(err.into()),
        };
        let one = base.one();
        Ok(LocalizationContext {
            base,
            e,
            certificate,
            ad_cache: Mutex::new(HashMap::new()),
            e_powers: Mutex::new(vec![one]),
        })
    }

    pub fn base(&self) -> &Arc<Presentation> {
        &self.base
    }

    pub fn e(&self) -> &NCPoly {
        &self.e
    }

    /// For each generator `g`, the least `r` with `(ad e)^r g = 0`.
    pub fn certificate(&self) -> &[usize] {
        &self.certificate
    }

    pub fn names(&self) -> &[String] {
        self.base.names()
    }

    /// `(ad e)^r(m)` for `r = 0, 1, …` until zero.
    fn ad_chain(&self, m: &Monomial) -> Result<Arc<Vec<NCPoly>>, HalfLocError> {
        if let Some(hit) = self.ad_cache.lock().expect("cache poisoned").get(m) {
            return Ok(hit.clone());
        }
        let mut chain = vec![NCPoly::monomial(m.clone())];
        loop {
            let next = self.base.commutator(&self.e, chain.last().expect("nonempty"))?;
            if next.is_zero() {
                break;
            }
            if chain.len() > AD_CHAIN_LIMIT {
                return Err(HalfLocError::NotLocallyNilpotent(PbwError::NotNilpotent {
                    generator: self.base.format(&NCPoly::monomial(m.clone())),
                    bound: AD_CHAIN_LIMIT,
                }));
            }
            chain.push(next);
        }
        let chain = Arc::new(chain);
        self.ad_cache.lock().expect("cache poisoned").insert(m.clone(), chain.clone());
        Ok(chain)
    }

    /// `e^k` in the base algebra.
    pub fn e_power(&self, k: u32) -> Result<NCPoly, HalfLocError> {
        let mut cache = self.e_powers.lock().expect("cache poisoned");
        while cache.len() <= k as usize {
            let next = self.base.mul(cache.last().expect("nonempty"), &self.e)?;
            cache.push(next);
        }
        Ok(cache[k as usize].clone())
    }

    /// `(x tⁿ)(y tᵐ) = Σ_i C(n,i) x (ad e)ⁱ(y) t^{m+n−i}`, extended bilinearly.
    pub fn multiply(&self, a: &HatElement, b: &HatElement) -> Result<HatElement, HalfLocError> {
        let mut out = HatElement::zero();
        for (&n, x) in a.support() {
            for (&m, y) in b.support() {
                for (mono, c) in y.terms() {
                    let chain = self.ad_chain(mono)?;
                    for (i, p) in chain.iter().enumerate() {
                        let coeff = gen_binomial(n, i as u32);
                        if coeff.is_zero() {
                            continue;
                        }
                        let prod = self.base.mul(x, p)?;
                        out.add_at(m + n - HalfInt::from_int(i as i64), &prod, &(coeff * c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn multiply_all<'a>(&self, factors: impl IntoIterator<Item = &'a HatElement>) -> Result<HatElement, HalfLocError> {
        let mut acc = HatElement::base(self.base.one());
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &HatElement, b: &HatElement) -> Result<HatElement, HalfLocError> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// Smallest integer `N ≥ 0` with `min support + N ≥ 0`.
    pub fn shift_for(a: &HatElement) -> i64 {
        a.min_exponent().map_or(0, |m| (-m).ceil().max(0))
    }

    /// Right-multiplies by `t^shift` (an exact exponent shift) and folds each
    /// `x t^{m+ε}` to `(x eᵐ) t^ε`, returning the `ε = 0` and `ε = ½` parts.
    pub fn fold_at(&self, a: &HatElement, shift: i64) -> Result<(NCPoly, NCPoly), HalfLocError> {
        let mut whole = NCPoly::zero();
        let mut half = NCPoly::zero();
        let s = HalfInt::from_int(shift);
        for (&n, x) in a.support() {
            let k = n + s;
            let m = k.floor();
            assert!(m >= 0, "fold shift too small");
            let folded = self.base.mul(x, &self.e_power(m as u32)?)?;
            if k.is_integer() {
                whole.add_scaled(&folded, &Rational::one());
            } else {
                half.add_scaled(&folded, &Rational::one());
            }
        }
        Ok((whole, half))
    }

    pub fn is_zero_mod_i(&self, a: &HatElement) -> Result<bool, HalfLocError> {
        let (w, h) = self.fold_at(a, Self::shift_for(a))?;
        Ok(w.is_zero() && h.is_zero())
    }

    /// Equality in `H[e^{−1/2}]`.
    pub fn equal_mod_i(&self, a: &HatElement, b: &HatElement) -> Result<bool, HalfLocError> {
        self.is_zero_mod_i(&a.sub(b))
    }

    /// The hat element `t^n`.
    pub fn t_power(&self, n: HalfInt) -> HatElement {
        HatElement::single(self.base.one(), n)
    }

    pub fn format(&self, a: &HatElement) -> String {
        a.format(self.base.names())
    }

    pub fn parse(&self, text: &str) -> Result<HatElement, HalfLocError> {
        HatElement::parse(&self.base, text)
    }
}

/// `σ_t(x tᵐ) = (−1)^{2m} x tᵐ`.
pub fn sigma_t(a: &HatElement) -> HatElement {
    let mut out = HatElement::zero();
    for (&n, x) in a.support() {
        out.add_at(n, x, &Rational::from_integer(n.parity_sign().into()));
    }
    out
}

/// An automorphism of the hat algebra acting on coefficients and fixing `t`.
#[derive(Clone, Debug)]
pub struct HatAutomorphism {
    morphism: GenMorphism,
}

impl HatAutomorphism {
    pub fn morphism(&self) -> &GenMorphism {
        &self.morphism
    }

    pub fn apply(&self, a: &HatElement) -> Result<HatElement, HalfLocError> {
        a.map_coefficients(|x| self.morphism.apply(x).map_err(HalfLocError::from))
    }
}

/// Lifts `s` with `s(e) = e` to `x tⁿ ↦ s(x) tⁿ`, checking that the spanning
/// elements `x t^{n+m} − x eⁿ tᵐ` of `I` map into `I` for monomials `x` of
/// length ≤ `degree`, `1 ≤ n ≤ 2`, `m ∈ {−1, −½, 0, ½}`.
pub fn lift_automorphism(
    s: &GenMorphism,
    ctx: &LocalizationContext,
    degree: u32,
) -> Result<HatAutomorphism, HalfLocError> {
    if !crate::morphism::same_presentation(s.source(), ctx.base()) || !s.is_endomorphism() {
        return Err(HalfLocError::NotEndomorphism { morphism: s.name.clone() });
    }
    let image = s.apply(ctx.e())?;
    if &image != ctx.e() {
        return Err(HalfLocError::DoesNotFixE { image: ctx.base().format(&image) });
    }
    let lift = HatAutomorphism { morphism: s.clone() };
    for x in ctx.base().monomials_up_to(degree) {
        let x = NCPoly::monomial(x);
        for n in 1..=2u32 {
            for m2 in -2..=1 {
                let m = HalfInt::from_doubled(m2);
                let elt = ideal::spanning_element(ctx, &x, n, m)?;
                if !ctx.is_zero_mod_i(&lift.apply(&elt)?)? {
                    return Err(HalfLocError::IdealNotPreserved { element: ctx.format(&elt) });
                }
            }
        }
    }
    Ok(lift)
}

/// Both readings of `σ_e(e^{−1/2})`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaReadings {
    /// `σ_t(t^{−1/2})`, the reading the implementation follows.
    pub implemented: String,
    /// The literal reading `−e^{1/2}`.
    pub literal: String,
    pub readings_agree: bool,
}

pub fn sigma_e_half_inverse(ctx: &LocalizationContext) -> Result<SigmaReadings, HalfLocError> {
    let x = ctx.t_power(HalfInt::from_doubled(-1));
    let implemented = sigma_t(&x);
    let literal = ctx.t_power(HalfInt::HALF).scaled(&-Rational::one());
    Ok(SigmaReadings {
        implemented: ctx.format(&implemented),
        literal: ctx.format(&literal),
        readings_agree: ctx.equal_mod_i(&implemented, &literal)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_sl2;

    fn sl2_ctx() -> LocalizationContext {
        let u = Arc::new(build_sl2());
        let e = u.gen_named("e").unwrap();
        LocalizationContext::new(u, e).unwrap()
    }

    fn h(text: &str, ctx: &LocalizationContext) -> HatElement {
        ctx.parse(text).unwrap()
    }

    #[test]
    fn products_from_the_multiplication_formula() {
        let ctx = sl2_ctx();
        let p = ctx.multiply(&h("(h) @ 0", &ctx), &h("(h) @ 0", &ctx)).unwrap();
        assert_eq!(ctx.format(&p), "(h^2) @ 0");
        let p = ctx.multiply(&h("(1) @ 1/2", &ctx), &h("(h) @ 0", &ctx)).unwrap();
        assert_eq!(p, h("(-e) @ -1/2 + (h) @ 1/2", &ctx));
        let p = ctx.multiply(&h("(1) @ -1", &ctx), &h("(f) @ 0", &ctx)).unwrap();
        assert_eq!(p, h("(-2*e) @ -3 + (-h) @ -2 + (f) @ -1", &ctx));
    }

    #[test]
    fn equality_modulo_the_ideal() {
        let ctx = sl2_ctx();
        assert!(ctx.equal_mod_i(&h("(e) @ -1", &ctx), &h("(1) @ 0", &ctx)).unwrap());
        assert!(ctx.equal_mod_i(&h("(e) @ -1/2", &ctx), &h("(1) @ 1/2", &ctx)).unwrap());
        assert!(!ctx.equal_mod_i(&h("(1) @ 0", &ctx), &HatElement::zero()).unwrap());
        assert!(!ctx.equal_mod_i(&h("(1) @ 1/2", &ctx), &h("(1) @ 0", &ctx)).unwrap());
    }

    #[test]
    fn sigma_t_signs() {
        let ctx = sl2_ctx();
        assert_eq!(sigma_t(&h("(h) @ 1/2", &ctx)), h("(-h) @ 1/2", &ctx));
        assert_eq!(sigma_t(&h("(e) @ -1", &ctx)), h("(e) @ -1", &ctx));
        let r = sigma_e_half_inverse(&ctx).unwrap();
        assert_eq!(r.implemented, "(-1) @ -1/2");
        assert_eq!(r.literal, "(-1) @ 1/2");
        assert!(!r.readings_agree);
    }

    #[test]
    fn half_power_commutation() {
        let ctx = sl2_ctx();
        let c = ctx.commutator(&h("(h) @ 0", &ctx), &ctx.t_power(HalfInt::HALF)).unwrap();
        assert!(ctx.equal_mod_i(&c, &ctx.t_power(HalfInt::HALF)).unwrap());
    }

    #[test]
    fn ideal_is_two_sided_at_degree_three() {
        let ctx = sl2_ctx();
        let r = verify_ideal_two_sided(&ctx, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.products_checked > 0);
    }

    #[test]
    fn lifting_identity_and_bad_maps() {
        let ctx = sl2_ctx();
        let id = GenMorphism::identity(ctx.base().clone());
        let lift = lift_automorphism(&id, &ctx, 1).unwrap();
        let x = h("(f) @ -1/2", &ctx);
        assert_eq!(lift.apply(&x).unwrap(), x);

        let u = ctx.base().clone();
        let scale = crate::morphism::extend_morphism(
            "scale",
            vec![u.parse("1/2*f").unwrap(), u.gen_named("h").unwrap(), u.parse("2*e").unwrap()],
            u.clone(),
            u.clone(),
        )
        .unwrap();
        assert!(matches!(lift_automorphism(&scale, &ctx, 1), Err(HalfLocError::DoesNotFixE { .. })));
    }

    #[test]
    fn text_round_trip() {
        let ctx = sl2_ctx();
        let x = h("(f*e + 1/2) @ -3/2 + (h) @ 2", &ctx);
        assert_eq!(ctx.parse(&ctx.format(&x)).unwrap(), x);
        assert!(ctx.parse("(h) 2").is_err());
    }
}
