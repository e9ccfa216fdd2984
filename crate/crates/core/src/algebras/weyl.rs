use serde::{Deserialize, Serialize};

use super::AlgError;
use crate::exact::rat;
use crate::pbw::{Lattice, Monomial, NCPoly, Presentation};

/// Sign convention for the Weyl commutator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeylConvention {
    /// `z_i ∂_j − ∂_j z_i = δ_ij`, generators `z1…zd, d1…dd`.
    PaperWd,
    /// `x ∂_x − ∂_x x = −1`, generators `x…, dx…`.
    SectionFiveWx,
}

impl WeylConvention {
    /// The value of `[coordinate, derivative]`.
    pub fn bracket_sign(self) -> i64 {
        match self {
            WeylConvention::PaperWd => 1,
            WeylConvention::SectionFiveWx => -1,
        }
    }

    pub fn coordinate_name(self, d: usize, i: usize) -> String {
        match (self, d) {
            (WeylConvention::PaperWd, _) => format!("z{}", i + 1),
            (WeylConvention::SectionFiveWx, 1) => "x".to_string(),
            (WeylConvention::SectionFiveWx, _) => format!("x{}", i + 1),
        }
    }

    pub fn derivative_name(self, d: usize, i: usize) -> String {
        match (self, d) {
            (WeylConvention::PaperWd, _) => format!("d{}", i + 1),
            (WeylConvention::SectionFiveWx, 1) => "dx".to_string(),
            (WeylConvention::SectionFiveWx, _) => format!("dx{}", i + 1),
        }
    }
}

/// The Weyl algebra on `d` pairs, generators ordered `z1…zd, ∂1…∂d`.
pub fn build_weyl(d: usize, convention: WeylConvention) -> Presentation {
    assert!(d >= 1, "Weyl algebra needs at least one pair");
    let coords: Vec<String> = (0..d).map(|i| convention.coordinate_name(d, i)).collect();
    let derivs: Vec<String> = (0..d).map(|i| convention.derivative_name(d, i)).collect();
    let order: Vec<(String, bool, usize)> = coords
        .into_iter()
        .enumerate()
        .map(|(i, n)| (n, true, i))
        .chain(derivs.into_iter().enumerate().map(|(i, n)| (n, false, i)))
        .collect();
    weyl_with_order(d, convention, &order, None).expect("Weyl relations are filtration-lowering")
}

/// The Weyl algebra with the last coordinate `z_d` inverted: generator order
/// `z1…z_{d−1}, ∂1…∂d, z_d`.
pub fn build_weyl_localized(d: usize, convention: WeylConvention, lattice: Lattice) -> Result<Presentation, AlgError> {
    assert!(d >= 1, "Weyl algebra needs at least one pair");
    let mut order = Vec::new();
    for i in 0..d - 1 {
        order.push((convention.coordinate_name(d, i), true, i));
    }
    for i in 0..d {
        order.push((convention.derivative_name(d, i), false, i));
    }
    order.push((convention.coordinate_name(d, d - 1), true, d - 1));
    weyl_with_order(d, convention, &order, Some(lattice))
}

/// `order` lists (name, is_coordinate, pair index).
fn weyl_with_order(
    d: usize,
    convention: WeylConvention,
    order: &[(String, bool, usize)],
    localized: Option<Lattice>,
) -> Result<Presentation, AlgError> {
    let n = 2 * d;
    let sign = convention.bracket_sign();
    let mut rules = Vec::new();
    for q in 0..n {
        for p in 0..q {
            let (_, q_coord, qi) = &order[q];
            let (_, p_coord, pi) = &order[p];
            if qi != pi || q_coord == p_coord {
                continue;
            }
            // g_q g_p − g_p g_q = [g_q, g_p]; [coord, deriv] = sign
            let value = if *q_coord { sign } else { -sign };
            rules.push(((q, p), NCPoly::term(Monomial::one(n), rat(value))));
        }
    }
    let names = order.iter().map(|(n, _, _)| n.clone()).collect();
    let label = match localized {
        Some(_) => format!("W{d}[loc]"),
        None => format!("W{d}"),
    };
    Ok(Presentation::new(label, names, vec![1; n], rules, localized)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::HalfInt;

    #[test]
    fn plus_convention_single_swap() {
        let w = build_weyl(1, WeylConvention::PaperWd);
        let p = w.normal_order(&[(1, HalfInt::ONE), (0, HalfInt::ONE)]).unwrap();
        assert_eq!(w.format(&p), "z1*d1 - 1");
        let c = w.commutator(&w.gen(0), &w.gen(1)).unwrap();
        assert_eq!(c, w.one());
    }

    #[test]
    fn minus_one_convention() {
        let w = build_weyl(1, WeylConvention::SectionFiveWx);
        assert_eq!(w.names(), &["x".to_string(), "dx".to_string()]);
        let c = w.commutator(&w.gen(0), &w.gen(1)).unwrap();
        assert_eq!(c, w.constant(rat(-1)));
    }

    #[test]
    fn different_pairs_commute() {
        let w = build_weyl(2, WeylConvention::PaperWd);
        let z1 = w.gen_named("z1").unwrap();
        let d2 = w.gen_named("d2").unwrap();
        assert!(w.commutator(&z1, &d2).unwrap().is_zero());
    }

    #[test]
    fn localized_inverse() {
        let w = build_weyl_localized(2, WeylConvention::PaperWd, Lattice::Integer).unwrap();
        let z2 = w.index("z2").unwrap();
        assert_eq!(z2, 3);
        for k in 1..=4 {
            let p = w.normal_order(&[(z2, HalfInt::from_int(k)), (z2, HalfInt::from_int(-k))]).unwrap();
            assert_eq!(p, w.one());
        }
        // ∂2 z2^{-1} = z2^{-1} ∂2 + z2^{-2}  ([z, d] = 1, ∂ acts as −d/dz)
        let d2 = w.index("d2").unwrap();
        let p = w.normal_order(&[(z2, HalfInt::from_int(-1)), (d2, HalfInt::ONE)]).unwrap();
        assert_eq!(w.format(&p), "d2*z2^-1 - z2^-2");
    }
}
