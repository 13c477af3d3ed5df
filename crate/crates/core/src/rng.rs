//! Seed derivation.
//!
//! Every random stream is a ChaCha8 generator keyed by a 64-bit value derived
//! from a parent seed, a textual label and an index:
//!
//! ```text
//! child = mix(mix(parent ^ fnv1a(label)) ^ index)
//! ```
//!
//! where `mix` is the SplitMix64 finalizer. The CLI derives
//! `derive_seed(seed, <subcommand>, 0)`, drivers derive one stream per attempt
//! (`"attempt"`, attempt index), and per-point decisions key on the point's
//! words via [`point_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::f2::PointF2;

/// The generator used for every stream.
pub type StreamRng = ChaCha8Rng;

#[inline]
#[must_use]
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[must_use]
pub fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

#[must_use]
pub fn derive_seed(parent: u64, label: &str, index: u64) -> u64 {
    mix(mix(parent ^ fnv1a(label)) ^ index)
}

/// Seed for a per-point decision.
#[must_use]
pub fn point_seed(parent: u64, x: &PointF2) -> u64 {
    x.words()
        .iter()
        .fold(mix(parent ^ x.n() as u64), |h, &w| mix(h ^ w))
}

#[must_use]
pub fn stream(parent: u64, label: &str, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(derive_seed(parent, label, index))
}

/// A fresh child seed drawn from an existing stream.
pub fn fork<R: rand::Rng + ?Sized>(rng: &mut R) -> u64 {
    rng.random()
}
