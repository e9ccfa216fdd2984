use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ideal::spanning_element, sigma_t, HalfLocError, HatElement, LocalizationContext};
use crate::exact::{rat, HalfInt, RationalMatrix};
use crate::pbw::{Monomial, MonomialIndex, NCPoly, Presentation};

/// A random base element: up to three natural monomials of length
/// ≤ `max_degree` with coefficients in `[−3, 3]`.
pub fn random_base_element(p: &Presentation, rng: &mut impl Rng, max_degree: u32) -> NCPoly {
    let mut out = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; p.ngens()];
        let len = rng.gen_range(0..=max_degree);
        for _ in 0..len {
            exps[rng.gen_range(0..p.ngens())] += 1;
        }
        let c = rng.gen_range(-3..=3i64);
        let m = Monomial::from_naturals(&exps);
        out.add_scaled(&NCPoly::monomial(m), &rat(c));
    }
    out
}

/// A random hat element with one or two `t`-exponents in `[−window, window]`
/// (half-integer steps).
pub fn random_hat_element(ctx: &LocalizationContext, rng: &mut impl Rng, window: HalfInt, max_degree: u32) -> HatElement {
    let mut out = HatElement::zero();
    let w = window.doubled();
    for _ in 0..rng.gen_range(1..=2) {
        let n = HalfInt::from_doubled(rng.gen_range(-w..=w));
        out.add_at(n, &random_base_element(ctx.base(), rng, max_degree), &rat(1));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub seed: u64,
    pub triples: usize,
    pub window: String,
    pub max_degree: u32,
    /// `(a, b, c)` in text form for each failing triple.
    pub failures: Vec<[String; 3]>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(ab)c = a(bc)` exactly in `Ĥ` for `count` seeded random triples.
pub fn associativity_check(
    ctx: &LocalizationContext,
    count: usize,
    seed: u64,
    window: HalfInt,
    max_degree: u32,
) -> Result<AssociativityReport, HalfLocError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let a = random_hat_element(ctx, &mut rng, window, max_degree);
        let b = random_hat_element(ctx, &mut rng, window, max_degree);
        let c = random_hat_element(ctx, &mut rng, window, max_degree);
        let left = ctx.multiply(&ctx.multiply(&a, &b)?, &c)?;
        let right = ctx.multiply(&a, &ctx.multiply(&b, &c)?)?;
        if left != right {
            failures.push([ctx.format(&a), ctx.format(&b), ctx.format(&c)]);
        }
    }
    Ok(AssociativityReport { seed, triples: count, window: window.to_string(), max_degree, failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub degree: u32,
    pub basis_size: usize,
    pub rank: usize,
    pub injective: bool,
}

/// `x ↦ x t⁰` on the PBW basis of length ≤ `degree`: no basis element is
/// `≡ 0` and the images are independent in `H[e^{−1/2}]`.
pub fn ev_injectivity(ctx: &LocalizationContext, degree: u32) -> Result<InjectivityReport, HalfLocError> {
    let basis = ctx.base().monomials_up_to(degree);
    let mut index = MonomialIndex::default();
    let mut folded = Vec::with_capacity(basis.len());
    let mut nonzero = true;
    for m in &basis {
        let x = HatElement::base(NCPoly::monomial(m.clone()));
        nonzero &= !ctx.is_zero_mod_i(&x)?;
        let (w, h) = ctx.fold_at(&x, 0)?;
        index.extend_from(&w);
        index.extend_from(&h);
        folded.push((w, h));
    }
    let columns: Vec<Vec<_>> = folded
        .iter()
        .map(|(w, h)| {
            let mut v = index.vector(w).expect("indexed");
            v.extend(index.vector(h).expect("indexed"));
            v
        })
        .collect();
    let rank = RationalMatrix::from_columns(&columns, 2 * index.len()).rank();
    Ok(InjectivityReport { degree, basis_size: basis.len(), rank, injective: nonzero && rank == basis.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaTReport {
    pub elements_checked: usize,
    pub involution: bool,
    pub preserves_ideal: bool,
}

/// `σ_t² = id` on seeded random elements and on the spanning elements of
/// `I` (monomials of length ≤ `degree`, `1 ≤ n ≤ 2`, `m ∈ {−1, −½, 0, ½}`),
/// and `σ_t` maps each spanning element into `I`.
pub fn sigma_t_checks(ctx: &LocalizationContext, degree: u32, seed: u64) -> Result<SigmaTReport, HalfLocError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut involution = true;
    let mut preserves = true;
    let mut checked = 0;
    for _ in 0..50 {
        let a = random_hat_element(ctx, &mut rng, HalfInt::from_int(2), degree);
        involution &= sigma_t(&sigma_t(&a)) == a;
        checked += 1;
    }
    for m in ctx.base().monomials_up_to(degree) {
        let x = NCPoly::monomial(m);
        for n in 1..=2u32 {
            for m2 in -2..=1 {
                let elt = spanning_element(ctx, &x, n, HalfInt::from_doubled(m2))?;
                let image = sigma_t(&elt);
                involution &= sigma_t(&image) == elt;
                preserves &= ctx.is_zero_mod_i(&image)?;
                checked += 1;
            }
        }
    }
    Ok(SigmaTReport { elements_checked: checked, involution, preserves_ideal: preserves })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebras::build_sl2;

    fn ctx() -> LocalizationContext {
        let u = Arc::new(build_sl2());
        let e = u.gen_named("e").unwrap();
        LocalizationContext::new(u, e).unwrap()
    }

    #[test]
    fn associativity_on_a_few_triples() {
        let r = associativity_check(&ctx(), 20, 7, HalfInt::from_int(2), 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn ev_is_injective_low_degree() {
        let r = ev_injectivity(&ctx(), 3).unwrap();
        assert!(r.injective);
        assert_eq!(r.basis_size, 20);
    }

    #[test]
    fn sigma_t_properties() {
        let r = sigma_t_checks(&ctx(), 2, 1).unwrap();
        assert!(r.involution && r.preserves_ideal);
    }
}
