use num_traits::One;
use serde::Serialize;

use super::{HalfLocError, HatElement, LocalizationContext, NO_ZERO_DIVISORS};
use crate::exact::{HalfInt, Rational};
use crate::pbw::NCPoly;

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub degree: u32,
    pub spanning_elements: usize,
    pub products_checked: usize,
    pub generator_witnesses: usize,
    pub failures: Vec<String>,
    pub assumption: &'static str,
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `x t^{n+m} − x eⁿ tᵐ`.
pub(super) fn spanning_element(
    ctx: &LocalizationContext,
    x: &NCPoly,
    n: u32,
    m: HalfInt,
) -> Result<HatElement, HalfLocError> {
    let mut out = HatElement::single(x.clone(), m + HalfInt::from_int(i64::from(n)));
    let xe = ctx.base().mul(x, &ctx.e_power(n)?)?;
    out.add_at(m, &xe, &-Rational::one());
    Ok(out)
}

/// `Σ_{k<n} (x e^k)(t − e) t^{n−1−k+m}`, computed with the hat product.
fn telescoped(ctx: &LocalizationContext, x: &NCPoly, n: u32, m: HalfInt) -> Result<HatElement, HalfLocError> {
    let mut t_minus_e = ctx.t_power(HalfInt::ONE);
    t_minus_e.add_at(HalfInt::ZERO, ctx.e(), &-Rational::one());
    let mut out = HatElement::zero();
    for k in 0..n {
        let left = HatElement::base(ctx.base().mul(x, &ctx.e_power(k)?)?);
        let right = ctx.t_power(HalfInt::from_int(i64::from(n - 1 - k)) + m);
        let prod = ctx.multiply_all([&left, &t_minus_e, &right])?;
        out.add_scaled(&prod, &Rational::one());
    }
    Ok(out)
}

/// Checks that `I` is closed under left and right multiplication by the
/// generators and by `t^{±1/2}`, and that every spanning element is a
/// two-sided multiple of `e − t`. Spanning elements use monomials `x` of
/// length ≤ 1, `1 ≤ n ≤ degree` and `|m|, |n + m| ≤ degree`.
pub fn verify_ideal_two_sided(ctx: &LocalizationContext, degree: u32) -> Result<IdealReport, HalfLocError> {
    let degree = degree.max(1);
    let base = ctx.base();
    let mut multipliers: Vec<HatElement> = (0..base.ngens()).map(|i| HatElement::base(base.gen(i))).collect();
    multipliers.push(ctx.t_power(HalfInt::HALF));
    multipliers.push(ctx.t_power(HalfInt::from_doubled(-1)));
    let bound = HalfInt::from_int(i64::from(degree));
    let mut report = IdealReport {
        degree,
        spanning_elements: 0,
        products_checked: 0,
        generator_witnesses: 0,
        failures: Vec::new(),
        assumption: NO_ZERO_DIVISORS,
    };
    for xm in base.monomials_up_to(1) {
        let x = NCPoly::monomial(xm);
        for n in 1..=degree {
            for m2 in -2 * i64::from(degree)..=2 * i64::from(degree) {
                let m = HalfInt::from_doubled(m2);
                let top = m + HalfInt::from_int(i64::from(n));
                if top > bound || -top > bound {
                    continue;
                }
                let elt = spanning_element(ctx, &x, n, m)?;
                report.spanning_elements += 1;
                if telescoped(ctx, &x, n, m)? != elt {
                    report.failures.push(format!("{} is not the telescoped multiple of (e - t)", ctx.format(&elt)));
                }
                report.generator_witnesses += 1;
                for g in &multipliers {
                    for prod in [ctx.multiply(g, &elt)?, ctx.multiply(&elt, g)?] {
                        report.products_checked += 1;
                        if !ctx.is_zero_mod_i(&prod)? {
                            report.failures.push(format!(
                                "product of {} with {} leaves I",
                                ctx.format(&elt),
                                ctx.format(g)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
