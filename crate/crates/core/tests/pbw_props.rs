use std::sync::Arc;

use proptest::prelude::*;
use wkernel::algebras::{build_enveloping, build_sl2, build_weyl, build_weyl_localized, sln_constants, WeylConvention};
use wkernel::halfloc::{sigma_t, LocalizationContext};
use wkernel::{HalfInt, Lattice, Presentation};

type Word = Vec<(usize, HalfInt)>;

fn algebras() -> Vec<Presentation> {
    vec![
        build_weyl(2, WeylConvention::PaperWd),
        build_weyl(1, WeylConvention::SectionFiveWx),
        build_weyl_localized(2, WeylConvention::PaperWd, Lattice::Half).unwrap(),
        build_sl2(),
        build_enveloping(&sln_constants(3), &(0..8).collect::<Vec<_>>()).unwrap(),
    ]
}

/// Letters are generators, plus `L^{-1}, L^{±1/2}` for a localized final `L`.
fn letter(p: &Presentation, pick: usize) -> (usize, HalfInt) {
    let n = p.ngens();
    let extra: Vec<HalfInt> = match p.localized() {
        Some(Lattice::Half) => vec![HalfInt::from_int(-1), HalfInt::HALF, HalfInt::from_doubled(-1)],
        Some(Lattice::Integer) => vec![HalfInt::from_int(-1)],
        None => vec![],
    };
    let k = pick % (n + extra.len());
    if k < n {
        (k, HalfInt::ONE)
    } else {
        (n - 1, extra[k - n])
    }
}

fn word(p: &Presentation, picks: &[usize]) -> Word {
    picks.iter().map(|&i| letter(p, i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_order_is_multiplicative(a in 0usize..5, u in prop::collection::vec(0usize..64, 0..5), v in prop::collection::vec(0usize..64, 0..5)) {
        let p = &algebras()[a];
        let (u, v) = (word(p, &u), word(p, &v));
        let whole: Word = u.iter().chain(&v).copied().collect();
        let lhs = p.normal_order(&whole).unwrap();
        let rhs = p.mul(&p.normal_order(&u).unwrap(), &p.normal_order(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn filtration_is_respected(a in 0usize..5, w in prop::collection::vec(0usize..64, 1..6)) {
        let p = &algebras()[a];
        let w = word(p, &w);
        let bound: HalfInt = w.iter().fold(HalfInt::ZERO, |acc, &(i, e)| {
            acc + HalfInt::from_doubled(e.doubled() * i64::from(p.weights()[i]))
        });
        let nf = p.normal_order(&w).unwrap();
        if let Some(d) = nf.weighted_degree(p.weights()) {
            prop_assert!(d <= bound, "{} > {}", d, bound);
        }
    }

    #[test]
    fn localized_powers_cancel(k in -6i64..=6, pre in prop::collection::vec(0usize..64, 0..3)) {
        let p = build_weyl_localized(2, WeylConvention::PaperWd, Lattice::Half).unwrap();
        let l = p.ngens() - 1;
        let e = HalfInt::from_doubled(k);
        let prefix = word(&p, &pre);
        let mut w = prefix.clone();
        w.push((l, e));
        w.push((l, -e));
        prop_assert_eq!(p.normal_order(&w).unwrap(), p.normal_order(&prefix).unwrap());
        prop_assert_eq!(p.normal_order(&[(l, e), (l, -e)]).unwrap(), p.one());
    }

    #[test]
    fn text_round_trip(a in 0usize..5, w in prop::collection::vec(0usize..64, 0..5), c in -5i64..=5) {
        let p = &algebras()[a];
        let x = p.normal_order(&word(p, &w)).unwrap().scaled(&wkernel::exact::rat(c));
        let back = p.parse(&p.format(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn sigma_t_is_an_involution(seed in any::<u64>()) {
        use rand::SeedableRng;
        let u = Arc::new(build_sl2());
        let ctx = LocalizationContext::new(u.clone(), u.gen_named("e").unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = wkernel::halfloc::random_hat_element(&ctx, &mut rng, HalfInt::from_int(2), 2);
        let b = wkernel::halfloc::random_hat_element(&ctx, &mut rng, HalfInt::from_int(2), 2);
        prop_assert_eq!(sigma_t(&sigma_t(&a)), a.clone());
        // σ_t is multiplicative on the hat algebra
        let ab = ctx.multiply(&a, &b).unwrap();
        prop_assert_eq!(sigma_t(&ab), ctx.multiply(&sigma_t(&a), &sigma_t(&b)).unwrap());
    }
}

#[test]
fn seeded_homomorphism_500_pairs() {
    for p in algebras() {
        let r = p.homomorphism_check(500, 4, 11).unwrap();
        assert!(r.passed(), "{}: {:?}", p.name(), r.failures);
    }
}
