//! Seeded, splittable randomness.
//!
//! Every random quantity in the crate is drawn from a [`ChaCha20Rng`] built
//! from an explicit `u64` seed. Independent streams (per trial, per restart)
//! use [`child_seed`], so results never depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::scalar::{Real, C};

pub type Rng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th child stream of `parent`.
pub fn child_seed(parent: u64, index: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ splitmix64(index.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

pub(crate) fn normal<R: Real>(rng: &mut Rng) -> R {
    let x: f64 = StandardNormal.sample(rng);
    R::lit(x)
}

/// Standard complex Gaussian with `E|z|^2 = 1`.
pub(crate) fn complex_normal<R: Real>(rng: &mut Rng) -> C<R> {
    let s = R::FRAC_1_SQRT_2();
    C::new(normal::<R>(rng) * s, normal::<R>(rng) * s)
}
