//! The substitution `z = y x^{−1}, ∂_z = x ∂_y, ∂_x′ = ∂_x + y x^{−1} ∂_y` on
//! `W_y ⊗ W_x[x^{−1}]`, the sign involutions around it, and the fixed-subalgebra
//! checks that follow from it.

use std::sync::Arc;

use serde::Serialize;

use super::{
    fixed_subalgebra_basis, group_closure, sign_involution, verify_weyl_pair, MorphError, WeylPairResult,
};
use crate::algebras::{build_sl2, build_weyl, build_weyl_localized, tensor, WeylConvention};
use crate::check::Check;
use crate::exact::HalfInt;
use crate::halfloc::{HalfLocError, HatElement, LocalizationContext};
use crate::pbw::{Lattice, NCPoly, Presentation};

#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfVariablesReport {
    pub checks: Vec<Check>,
    pub group_order: usize,
    pub weyl_pair: WeylPairResult,
    pub factorwise: FactorwiseReport,
}

impl ChangeOfVariablesReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn rename(p: Presentation, names: &[&str], label: &str) -> Presentation {
    p.with_names(names.iter().map(|s| s.to_string()).collect()).expect("fresh names").with_name(label)
}

/// `W_y ⊗ W_x[x^{−1}]` with generators `y, dy, dx, x`.
pub fn xy_algebra() -> Presentation {
    let wy = rename(build_weyl(1, WeylConvention::SectionFiveWx), &["y", "dy"], "Wy");
    let wx = build_weyl_localized(1, WeylConvention::SectionFiveWx, Lattice::Integer).expect("Weyl algebra");
    tensor(&wy, &wx.with_name("Wx")).expect("one localized factor")
}

/// The polynomial model `𝔽[u]` with `σ(u) = −u`.
fn model_algebra() -> Presentation {
    Presentation::new("F[u]", vec!["u".into()], vec![1], Vec::new(), None).expect("one generator")
}

pub fn change_of_variables_suite(fixed_degree: u32) -> Result<ChangeOfVariablesReport, MorphError> {
    let p = Arc::new(xy_algebra());
    let parse = |s: &str| p.parse(s);
    let x = parse("x")?;
    let z = parse("y*x^-1")?;
    let dz = parse("x*dy")?;
    let dxp = parse("dx + y*x^-1*dy")?;
    let mut checks = Vec::new();

    let comm = |a: &NCPoly, b: &NCPoly| p.commutator(a, b).map(|c| p.format(&c));
    for (name, a, b, want) in [
        ("[z, x] = 0", &z, &x, "0"),
        ("[dx', dz] = 0", &dxp, &dz, "0"),
        ("[z, dx'] = 0", &z, &dxp, "0"),
        ("[x, dz] = 0", &x, &dz, "0"),
        ("[x, dx'] = -1", &x, &dxp, "-1"),
        ("[z, dz] = -1", &z, &dz, "-1"),
    ] {
        checks.push(Check::equal(name, comm(a, b)?, want));
    }

    let sigma_x = sign_involution("sigma_x", p.clone(), &[p.index("x")?, p.index("dx")?])?;
    let sigma_y = sign_involution("sigma_y", p.clone(), &[p.index("y")?, p.index("dy")?])?;
    let sigma_xy = sigma_x.then(&sigma_y)?;
    let neg = |q: &NCPoly| -q;
    for (name, m, arg, want) in [
        ("sigma_y(z) = -z", &sigma_y, &z, neg(&z)),
        ("sigma_y(dz) = -dz", &sigma_y, &dz, neg(&dz)),
        ("sigma_y(x) = x", &sigma_y, &x, x.clone()),
        ("sigma_y(dx') = dx'", &sigma_y, &dxp, dxp.clone()),
        ("sigma_x sigma_y(x) = -x", &sigma_xy, &x, neg(&x)),
        ("sigma_x sigma_y(dx') = -dx'", &sigma_xy, &dxp, neg(&dxp)),
        ("sigma_x sigma_y(z) = z", &sigma_xy, &z, z.clone()),
        ("sigma_x sigma_y(dz) = dz", &sigma_xy, &dz, dz.clone()),
    ] {
        checks.push(Check::equal(name, p.format(&m.apply(arg)?), p.format(&want)));
    }

    // order-4 group on W_x ⊗ W_y ⊗ F[u]
    let full = Arc::new(tensor(&model_algebra(), &p).expect("one localized factor"));
    let u = full.index("u")?;
    let sx_sigma = sign_involution("sigma_x*sigma", full.clone(), &[full.index("x")?, full.index("dx")?, u])?;
    let sy_sigma = sign_involution("sigma_y*sigma", full.clone(), &[full.index("y")?, full.index("dy")?, u])?;
    let group = group_closure(full.clone(), &[sx_sigma, sy_sigma])?;
    checks.push(Check::equal("group generated by sigma_x*sigma, sigma_y*sigma", group.order().to_string(), "4"));

    // Weyl pair inside the σ_x′-fixed part of W_x′[x′^{−1}]
    let wxp = Arc::new(rename(
        build_weyl_localized(1, WeylConvention::SectionFiveWx, Lattice::Integer).expect("Weyl algebra"),
        &["dx'", "x'"],
        "Wx'",
    ));
    let sigma_xp = sign_involution("sigma_x'", wxp.clone(), &[0, 1])?;
    let g_xp = group_closure(wxp.clone(), &[sigma_xp])?;
    let a = wxp.parse("x'^2")?;
    let b = wxp.parse("1/2*x'^-1*dx'")?;
    let weyl_pair = verify_weyl_pair(&wxp, &a, &b, &g_xp)?;
    checks.push(Check::new(
        "(x'^2, 1/2 x'^-1 dx') is a Weyl pair fixed by sigma_x'",
        weyl_pair.minus_one_convention && weyl_pair.fixed_by_group,
        format!("[a, b] = {}", weyl_pair.commutator),
    ));
    let trivial = group_closure(wxp.clone(), &[])?;
    let plain = verify_weyl_pair(&wxp, &wxp.parse("x'")?, &wxp.parse("dx'")?, &trivial)?;
    checks.push(Check::new("(x', dx') is a Weyl pair", plain.minus_one_convention, plain.commutator.clone()));

    // Euler relation and the y ↔ e^{1/2}, y∂_y ↔ h correspondence
    let wy = rename(build_weyl(1, WeylConvention::SectionFiveWx), &["y", "dy"], "Wy");
    let euler = wy.commutator(&wy.parse("y*dy")?, &wy.parse("y")?)?;
    checks.push(Check::equal("[y dy, y] = y", wy.format(&euler), "y"));
    let wd = build_weyl(1, WeylConvention::PaperWd);
    let euler_plus = wd.commutator(&wd.parse("z1")?, &wd.parse("z1*d1")?)?;
    checks.push(Check::equal("[z1, z1 d1] = z1 ([z, d] = 1 convention)", wd.format(&euler_plus), "z1"));
    checks.push(half_power_correspondence().map_err(|e| match e {
        HalfLocError::Pbw(p) => MorphError::Pbw(p),
        HalfLocError::Morphism(m) => m,
        other => MorphError::NotComposable { first: other.to_string(), second: "U(sl2)".into() },
    })?);

    let factorwise = factorwise_fixed_check(fixed_degree)?;
    checks.push(Check::new(
        "factor-wise fixed dimensions",
        factorwise.matches,
        format!("{:?} vs {:?}", factorwise.fixed_dims, factorwise.product_dims),
    ));

    for m in [&sigma_x, &sigma_y] {
        checks.push(Check::new(format!("{} is an involution", m.name), m.then(m)?.is_identity(), ""));
    }
    Ok(ChangeOfVariablesReport { checks, group_order: group.order(), weyl_pair, factorwise })
}

/// `[h, t^{1/2}] ≡ t^{1/2}` in the half-localization of `U(sl2)` at `e`.
fn half_power_correspondence() -> Result<Check, HalfLocError> {
    let u = Arc::new(build_sl2());
    let ctx = LocalizationContext::new(u.clone(), u.gen_named("e")?)?;
    let half = ctx.t_power(HalfInt::HALF);
    let c = ctx.commutator(&HatElement::base(u.gen_named("h")?), &half)?;
    Ok(Check::new("[h, t^1/2] = t^1/2 mod I", ctx.equal_mod_i(&c, &half)?, ctx.format(&c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorwiseReport {
    pub degree: u32,
    /// Graded fixed dimensions of `W_x′ ⊗ W_z ⊗ 𝔽[u]`.
    pub fixed_dims: Vec<usize>,
    /// Degree-wise convolution of the factors' graded fixed dimensions.
    pub product_dims: Vec<usize>,
    pub matches: bool,
}

/// Group `⟨σ_x′ ⊗ 1 ⊗ 1, 1 ⊗ σ_z ⊗ σ⟩` on `W_x′ ⊗ W_z ⊗ 𝔽[u]`: the fixed
/// subalgebra's graded dimensions equal those of
/// `(W_x′)^{σ_x′} ⊗ (W_z ⊗ 𝔽[u])^{σ_z × σ}`.
pub fn factorwise_fixed_check(degree: u32) -> Result<FactorwiseReport, MorphError> {
    let wxp = rename(build_weyl(1, WeylConvention::SectionFiveWx), &["x'", "dx'"], "Wx'");
    let wz = rename(build_weyl(1, WeylConvention::SectionFiveWx), &["z", "dz"], "Wz");
    let right = Arc::new(tensor(&wz, &model_algebra()).expect("no localization"));
    let whole = Arc::new(tensor(&wxp, &right).expect("no localization"));
    let wxp = Arc::new(wxp);

    let left_group = group_closure(wxp.clone(), &[sign_involution("sigma_x'", wxp.clone(), &[0, 1])?])?;
    let right_group = group_closure(right.clone(), &[sign_involution("sigma_z*sigma", right.clone(), &[0, 1, 2])?])?;
    let g1 = sign_involution("sigma_x'", whole.clone(), &[0, 1])?;
    let g2 = sign_involution("sigma_z*sigma", whole.clone(), &[2, 3, 4])?;
    let whole_group = group_closure(whole.clone(), &[g1, g2])?;

    let a = fixed_subalgebra_basis(&left_group, degree)?.graded_dims();
    let b = fixed_subalgebra_basis(&right_group, degree)?.graded_dims();
    let whole_fixed = fixed_subalgebra_basis(&whole_group, degree)?;
    let fixed_dims = whole_fixed.graded_dims();
    let product_dims: Vec<usize> = (0..=degree as usize).map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum()).collect();
    Ok(FactorwiseReport {
        degree,
        matches: fixed_dims == product_dims && whole_fixed.consistent(),
        fixed_dims,
        product_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = change_of_variables_suite(4).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r.group_order, 4);
    }

    #[test]
    fn factorwise_low_degree() {
        let r = factorwise_fixed_check(6).unwrap();
        assert!(r.matches, "{:?} vs {:?}", r.fixed_dims, r.product_dims);
        assert_eq!(r.fixed_dims[0], 1);
    }
}
