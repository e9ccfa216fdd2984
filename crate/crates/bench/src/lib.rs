//! Shared fixtures for the kernel benchmarks.

use std::sync::Arc;

use wkernel::algebras::{build_sl2, build_weyl, WeylConvention};
use wkernel::halfloc::{random_hat_element, HatElement, LocalizationContext};
use wkernel::{HalfInt, Presentation};

pub fn weyl(d: usize) -> Presentation {
    build_weyl(d, WeylConvention::PaperWd)
}

/// `U(sl2)` localized at `e`.
pub fn sl2_context() -> LocalizationContext {
    let u = Arc::new(build_sl2());
    let e = u.gen_named("e").expect("sl2 has e");
    LocalizationContext::new(u, e).expect("ad e is nilpotent")
}

/// A word `d_1^k z_1^k ... d_n^k z_n^k` that needs many swaps to normal-order.
pub fn reversed_word(p: &Presentation, k: usize) -> Vec<(usize, HalfInt)> {
    let d = p.ngens() / 2;
    (0..d).flat_map(|i| [(d + i, HalfInt::ONE), (i, HalfInt::ONE)]).cycle().take(2 * d * k).collect()
}

/// Seeded hat elements for product benchmarks.
pub fn hat_pair(ctx: &LocalizationContext, seed: u64) -> (HatElement, HatElement) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let w = HalfInt::from_int(2);
    (random_hat_element(ctx, &mut rng, w, 3), random_hat_element(ctx, &mut rng, w, 3))
}
